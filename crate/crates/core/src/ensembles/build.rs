//! Drawing the random inputs of one realization and assembling its matrix.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::poly::sum_form;
use super::{AGenVariant, BGenCase, DriverDraw, Exponents, Family, ModelSpec, Sign};
use crate::{Complex64, Matrix2};

/// Every random input of one realization.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Draws {
    pub driver: DriverDraw,
    pub exponents: Exponents,
    pub x: f64,
    pub t: f64,
    pub v: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Realization {
    pub matrix: Matrix2,
    /// The driver draw `Y` entering `D = k Y^(2/(q+1))`.
    pub y: f64,
    pub draws: Draws,
}

/// Whether offsets use their sampled values or are replaced by
/// `g1 = eta, g2 = 0, h = 1` (same difference, no randomness).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OffsetMode {
    Sampled,
    Neutral,
}

fn uses_aux_v(family: Family) -> bool {
    matches!(family, Family::AGeneralized(_) | Family::BGeneralized(_) | Family::L)
}

/// Draws the inputs in a fixed order: driver, exponents, `X`, `T`, `V`.
pub fn draw<R: Rng + ?Sized>(spec: &ModelSpec, rng: &mut R) -> Draws {
    let driver = spec.driver.draw(rng);
    let exponents = spec.exponents.resolve(spec.q, rng);
    let mut d = Draws { driver, exponents, ..Draws::default() };
    if let Some(o) = &spec.offsets {
        d.x = o.x.sample(rng);
        if o.uses_t() {
            d.t = o.t.sample(rng);
        }
    }
    if uses_aux_v(spec.family) {
        d.v = spec.aux_v.sample(rng);
    }
    d
}

/// Builds the matrix for the given inputs.
pub fn assemble(spec: &ModelSpec, d: &Draws, mode: OffsetMode) -> Matrix2 {
    let q = spec.q;
    let inv = 1.0 / (q + 1.0);
    let y = d.driver.y;
    let (g1, g2, h) = match (&spec.offsets, mode) {
        (None, _) => (Complex64::default(), Complex64::default(), 1.0),
        (Some(o), OffsetMode::Sampled) => {
            let (g1, g2) = o.g(d.x);
            (g1, g2, o.h(d.t))
        }
        (Some(o), OffsetMode::Neutral) => (o.eta(), Complex64::default(), 1.0),
    };
    if let Some(form) = sum_form(spec, &d.exponents) {
        let [e11, e12, e21, e22] = form.e;
        return Matrix2::new(
            g1 + e11.eval(y, inv),
            e12.eval(y, inv) * h,
            e21.eval(y, inv) / h,
            g2 + e22.eval(y, inv),
        );
    }
    let c = |i: usize| spec.c(i);
    let z = Complex64::default();
    let w = y.powf(inv);
    let w2 = y.powf(2.0 * inv);
    let v: Complex64 = d.v.into();
    match spec.family {
        Family::AGeneralized(variant) => {
            let (m12, m21) = match variant {
                AGenVariant::C2Zero => (z, v),
                AGenVariant::C3Zero => (v, z),
            };
            Matrix2::new(g1 + c(0) * w, m12 * h, m21 / h, g2 + c(1) * w)
        }
        Family::BGeneralized(case) => {
            let (p, s) = match case {
                BGenCase::I => (Complex64::from(w), v),
                BGenCase::III => (v, Complex64::from(w)),
            };
            Matrix2::new(
                c(0) * p,
                (c(1) * p + c(2) * s) * h,
                (c(3) * p + c(4) * s) / h,
                c(5) * s,
            )
        }
        Family::J => {
            let a = d.exponents.get(0) * inv;
            let b = d.exponents.get(1) * inv;
            Matrix2::new(c(0) * g1 * w, c(1) * y.powf(a) * h, c(2) * y.powf(b) / h, c(0) * g2 * w)
        }
        Family::D1(sign) => {
            let cq = c(0);
            let s = (w2 + cq * cq).sqrt();
            let g = match mode {
                OffsetMode::Sampled if spec.offsets.is_some() => 1.0 + d.x * d.x,
                _ => 1.0,
            };
            let sg = if sign == Sign::Plus { 1.0 } else { -1.0 };
            Matrix2::new(s, sg * cq * g, -sg * cq / g, -s)
        }
        Family::D2 => {
            let cq = c(0);
            let base = w2 + cq * cq;
            let i = Complex64::i();
            Matrix2::new(
                g1 + cq * i,
                base.powc(d.exponents.get(0).into()) * h,
                base.powc(d.exponents.get(1).into()) / h,
                g2 - cq * i,
            )
        }
        Family::D3 => {
            let cq = c(0);
            let off = 0.5 * (w2 - cq * cq).sqrt();
            Matrix2::new(cq * g1, off * h, off / h, cq * g2)
        }
        Family::R => {
            let (u, vv) = (d.driver.u, d.driver.v);
            let r = y.sqrt();
            let lift = r.powf(-2.0 * q * inv);
            let (a, b) = (d.exponents.get(0), d.exponents.get(1));
            Matrix2::real(u * u, 0.5 * r.powf(a) * (lift + 1.0), 0.5 * r.powf(b) * (lift - 1.0), -vv * vv)
        }
        Family::L => {
            let s1 = (q * d.v).sin();
            let s2 = (2.0 * q * d.v).sin();
            Matrix2::real(w, 0.5 * s2 * s2, 0.5 * w2, 2.0 * s1 * s1 * w)
        }
        _ => unreachable!("family {:?} has a sum form", spec.family),
    }
}

/// One realization with fresh draws.
pub fn build<R: Rng + ?Sized>(spec: &ModelSpec, rng: &mut R) -> Realization {
    let draws = draw(spec, rng);
    let matrix = assemble(spec, &draws, OffsetMode::Sampled);
    Realization { matrix, y: draws.driver.y, draws }
}
