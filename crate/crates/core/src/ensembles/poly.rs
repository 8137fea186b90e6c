//! Entry templates for the families whose entries are sums of powers of `Y`,
//! and symbolic expansion of their discriminant.

use super::{AdditiveVariant, Exponents, Family, ModelSpec};
use crate::Complex64;

/// `coef * Y^(num/(q+1))`.
pub(crate) type Term = (Complex64, f64);

const MAX_TERMS: usize = 2;

#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct Poly {
    terms: [Term; MAX_TERMS],
    len: usize,
}

impl Poly {
    fn of(terms: &[Term]) -> Self {
        let mut p = Poly::default();
        for &t in terms {
            p.terms[p.len] = t;
            p.len += 1;
        }
        p
    }

    pub(crate) fn terms(&self) -> &[Term] {
        &self.terms[..self.len]
    }

    pub(crate) fn eval(&self, y: f64, inv: f64) -> Complex64 {
        let mut s = Complex64::new(0.0, 0.0);
        for &(c, num) in self.terms() {
            if c.re != 0.0 || c.im != 0.0 {
                s += c * pow(y, num * inv);
            }
        }
        s
    }
}

#[inline]
fn pow(y: f64, e: f64) -> f64 {
    if e == 0.0 {
        1.0
    } else if e == 1.0 {
        y
    } else {
        y.powf(e)
    }
}

/// The four entries `[m11, m12, m21, m22]` without offsets.
#[derive(Debug, Clone, Copy)]
pub(crate) struct SumForm {
    pub e: [Poly; 4],
}

impl SumForm {
    fn new(e11: &[Term], e12: &[Term], e21: &[Term], e22: &[Term]) -> Self {
        Self { e: [Poly::of(e11), Poly::of(e12), Poly::of(e21), Poly::of(e22)] }
    }
}

/// Template of `spec` at resolved exponents, `None` for families whose entries
/// are not sums of powers of `Y`.
pub(crate) fn sum_form(spec: &ModelSpec, x: &Exponents) -> Option<SumForm> {
    let c = |i: usize| spec.c(i);
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let q = spec.q;
    let r = |v: f64| Complex64::new(v, 0.0);
    let f = match spec.family {
        Family::A | Family::AZeroTrace | Family::LimitQ1 => SumForm::new(
            &[(c(0), 1.0)],
            &[(c(1), x.get(0))],
            &[(c(2), x.get(1))],
            &[(c(3), 1.0)],
        ),
        Family::B(_) | Family::BComplexSymmetric(_) => {
            let (a, b) = (x.get(0), x.get(1));
            SumForm::new(
                &[(c(0), a)],
                &[(c(1), a), (c(2), b)],
                &[(c(3), a), (c(4), b)],
                &[(c(5), b)],
            )
        }
        Family::C => SumForm::new(
            &[(c(0), x.get(0))],
            &[(c(1), 0.0), (c(2), x.get(1))],
            &[(c(3), 0.0), (c(4), x.get(2))],
            &[(c(5), x.get(3))],
        ),
        Family::E => SumForm::new(
            &[(c(0), 0.0)],
            &[(c(1), 0.0), (c(2), x.get(0))],
            &[(c(3), 0.0), (c(4), x.get(1))],
            &[(c(5), 0.0)],
        ),
        Family::G => SumForm::new(
            &[(c(0), 0.0), (c(1), x.get(0))],
            &[(c(2), 0.0), (c(3), x.get(1))],
            &[(c(4), 0.0), (c(5), x.get(2))],
            &[(c(6), 0.0), (c(7), x.get(3))],
        ),
        Family::I => {
            let (a, b, cc) = (x.get(0), x.get(1), x.get(2));
            SumForm::new(&[(c(0), cc)], &[(c(1), a), (c(4), cc)], &[(c(2), b)], &[(c(3), cc)])
        }
        Family::LimitQ0 => {
            let (a, b, cc) = (x.get(0), x.get(1), x.get(2));
            SumForm::new(
                &[(c(0), a), (c(1), 0.0)],
                &[(c(2), b), (c(3), 0.0)],
                &[(c(4), b), (c(5), 0.0)],
                &[(c(6), cc), (c(7), 0.0)],
            )
        }
        Family::Additive(v) => {
            let theta = if q == 0.0 { 0.0 } else { 1.0 / q };
            let s = q + 1.0;
            match v {
                AdditiveVariant::One => SumForm::new(
                    &[(zero, 0.0)],
                    &[(r(-0.5), 0.0), (r(0.5 * q), -2.0 * q)],
                    &[(r(0.5 * q * theta), 2.0 * s)],
                    &[(one, s)],
                ),
                AdditiveVariant::Two => {
                    let (a, b) = (x.get(0), x.get(1));
                    SumForm::new(
                        &[(one, s)],
                        &[(r(q), a * s - q), (r(q * theta), a * s)],
                        &[(r(-1.0), b * s), (r(q), b * s - q)],
                        &[(r(-1.0), s)],
                    )
                }
            }
        }
        _ => return None,
    };
    Some(f)
}

/// Generalized polynomial in `Y^(1/(q+1))` with real exponents, merged.
#[derive(Debug, Clone, Default)]
pub(crate) struct Expansion {
    /// `(exponent numerator, coefficient)`, ascending in exponent.
    pub terms: Vec<(f64, Complex64)>,
    /// Sum of magnitudes of all contributions before merging.
    pub scale: f64,
}

const MERGE_TOL: f64 = 1e-9;

fn merge(mut raw: Vec<(f64, Complex64)>) -> Expansion {
    raw.retain(|(_, c)| c.re != 0.0 || c.im != 0.0);
    raw.sort_by(|a, b| a.0.total_cmp(&b.0));
    let scale = raw.iter().map(|(_, c)| c.norm()).sum();
    let mut terms: Vec<(f64, Complex64)> = Vec::new();
    for (e, c) in raw {
        match terms.last_mut() {
            Some((le, lc)) if (e - *le).abs() <= MERGE_TOL * (1.0 + e.abs()) => *lc += c,
            _ => terms.push((e, c)),
        }
    }
    Expansion { terms, scale }
}

impl Expansion {
    /// Coefficient of the term with exponent numerator `e` (0 if absent).
    pub fn coefficient(&self, e: f64) -> Complex64 {
        self.terms
            .iter()
            .find(|(te, _)| (te - e).abs() <= MERGE_TOL * (1.0 + e.abs()))
            .map(|&(_, c)| c)
            .unwrap_or_default()
    }

    /// Largest coefficient magnitude once `k Y^(2/(q+1))` is removed, relative to `1 + scale`.
    pub fn residual_against(&self, k: Complex64) -> f64 {
        let mut worst: f64 = 0.0;
        let mut matched = false;
        for &(e, c) in &self.terms {
            let c = if (e - 2.0).abs() <= MERGE_TOL * 3.0 {
                matched = true;
                c - k
            } else {
                c
            };
            worst = worst.max(c.norm());
        }
        if !matched {
            worst = worst.max(k.norm());
        }
        worst / (1.0 + self.scale)
    }
}

/// `(m11 - m22 + eta)^2 + 4 m12 m21` expanded symbolically.
pub(crate) fn discriminant_expansion(form: &SumForm, eta: Complex64) -> Expansion {
    let mut delta: Vec<Term> = form.e[0].terms().to_vec();
    delta.extend(form.e[3].terms().iter().map(|&(c, e)| (-c, e)));
    delta.push((eta, 0.0));
    let mut raw = Vec::new();
    for &(c1, e1) in &delta {
        for &(c2, e2) in &delta {
            raw.push((e1 + e2, c1 * c2));
        }
    }
    for &(c1, e1) in form.e[1].terms() {
        for &(c2, e2) in form.e[2].terms() {
            raw.push((e1 + e2, 4.0 * c1 * c2));
        }
    }
    merge(raw)
}

/// `m11 + m22` expanded symbolically (offsets excluded).
pub(crate) fn trace_expansion(form: &SumForm) -> Expansion {
    let mut raw: Vec<(f64, Complex64)> = Vec::new();
    for &(c, e) in form.e[0].terms().iter().chain(form.e[3].terms()) {
        raw.push((e, c));
    }
    merge(raw)
}
