//! Exponent providers: fixed constants, `q`-dependent rules and random rules.
//!
//! Every value is the numerator `p` of a power `Y^(p/(q+1))`.

use std::f64::consts::PI;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::AuxDist;
use crate::special::{bessel_j0, bessel_j1, bessel_y0, bessel_y1};

pub const MAX_EXPONENTS: usize = 4;

/// A resolved exponent tuple.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Exponents {
    values: [f64; MAX_EXPONENTS],
    len: usize,
}

impl Exponents {
    pub fn from_slice(v: &[f64]) -> Self {
        let mut values = [0.0; MAX_EXPONENTS];
        let len = v.len().min(MAX_EXPONENTS);
        values[..len].copy_from_slice(&v[..len]);
        Self { values, len }
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.values[..self.len]
    }

    /// Exponent `i`, or 0 when the tuple is shorter.
    pub fn get(&self, i: usize) -> f64 {
        if i < self.len {
            self.values[i]
        } else {
            0.0
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }
}

/// Deterministic rules depending only on `q` (and rule parameters).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "kebab-case")]
pub enum ParamRule {
    /// `a = -q`, `b = q + 2`.
    ShiftedPair,
    /// `a = sec^2 q + csc^2 (q+1)`, `b = -(tan^2 q + cot^2 (q+1))`.
    TrigZeroTrace,
    /// `a = -(q+1)`, `b = q + 3`.
    ComplexShift,
    /// `a = sin^2(l pi/2) + sin^2 p`, `b = cos^2(l pi/2) + cos^2 p`.
    SinCos { ell: i64, p: f64 },
    /// `a = 1 - q`, `b = q + 1`.
    OneMinusQ,
    /// `a = 1`, `b = q + 2`.
    CaseIShift,
    /// `a = q + 2`, `b = 1`.
    CaseIIIShift,
    /// `a = sin^2 q - 2 cos^2 q`, `b = sin^2 q + 2 cos^2 q`, `c = sin^2 q`.
    SinI,
    /// `a = -2 sinh^2 q`, `b = 4 cosh^2 q`, `c = -4 cosh 2q`, `d = 2 cosh^2 q`.
    CoshC,
    /// `a = 4 asin(q-1)/pi`, `b = 4 acos(q-1)/pi`.
    ArcsinArccos,
}

/// Rules drawing fresh auxiliary variables on every resolution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "kebab-case")]
pub enum StochasticRule {
    /// `a = sech^2 U + coth^2 V`, `b = tanh^2 U - csch^2 V`.
    HyperbolicUV { u: AuxDist, v: AuxDist },
    /// `a = 2 sin^2 V`, `b = 4 cos^2 V`, `c = -4 cos 2V`, `d = 2 cos^2 V`.
    TrigV { v: AuxDist },
    /// `a ~ dist`, `b = total - a`.
    ConstrainedSum { a: AuxDist, total: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "provider", rename_all = "kebab-case")]
pub enum ExponentProvider {
    Constants { values: Vec<f64> },
    Parametric { rule: ParamRule },
    Stochastic { rule: StochasticRule },
}

impl ExponentProvider {
    pub fn constants(values: &[f64]) -> Self {
        Self::Constants { values: values.to_vec() }
    }

    pub fn none() -> Self {
        Self::Constants { values: Vec::new() }
    }

    pub fn parametric(rule: ParamRule) -> Self {
        Self::Parametric { rule }
    }

    pub fn stochastic(rule: StochasticRule) -> Self {
        Self::Stochastic { rule }
    }

    /// `a = J1(1/pi) Y0(1/pi)`, `b = -J0(1/pi) Y1(1/pi)`; their sum is the
    /// Wronskian `2 / (pi x)` at `x = 1/pi`, i.e. 2.
    pub fn bessel() -> Self {
        let x = 1.0 / PI;
        Self::constants(&[bessel_j1(x) * bessel_y0(x), -bessel_j0(x) * bessel_y1(x)])
    }

    pub fn is_stochastic(&self) -> bool {
        matches!(self, Self::Stochastic { .. })
    }

    /// One concrete exponent tuple; stochastic rules draw fresh variables.
    pub fn resolve<R: Rng + ?Sized>(&self, q: f64, rng: &mut R) -> Exponents {
        match self {
            Self::Constants { values } => Exponents::from_slice(values),
            Self::Parametric { rule } => Exponents::from_slice(&param(*rule, q)),
            Self::Stochastic { rule } => stochastic(*rule, rng),
        }
    }
}

fn param(rule: ParamRule, q: f64) -> Vec<f64> {
    match rule {
        ParamRule::ShiftedPair => vec![-q, q + 2.0],
        ParamRule::TrigZeroTrace => {
            let r = q + 1.0;
            let sec2 = 1.0 / q.cos().powi(2);
            let csc2 = 1.0 / r.sin().powi(2);
            let tan2 = q.tan().powi(2);
            let cot2 = 1.0 / r.tan().powi(2);
            vec![sec2 + csc2, -(tan2 + cot2)]
        }
        ParamRule::ComplexShift => vec![-(q + 1.0), q + 3.0],
        ParamRule::SinCos { ell, p } => {
            let t = ell as f64 * PI / 2.0;
            vec![t.sin().powi(2) + p.sin().powi(2), t.cos().powi(2) + p.cos().powi(2)]
        }
        ParamRule::OneMinusQ => vec![1.0 - q, q + 1.0],
        ParamRule::CaseIShift => vec![1.0, q + 2.0],
        ParamRule::CaseIIIShift => vec![q + 2.0, 1.0],
        ParamRule::SinI => {
            let s2 = q.sin().powi(2);
            let c2 = q.cos().powi(2);
            vec![s2 - 2.0 * c2, s2 + 2.0 * c2, s2]
        }
        ParamRule::CoshC => {
            let sh2 = q.sinh().powi(2);
            let ch2 = q.cosh().powi(2);
            vec![-2.0 * sh2, 4.0 * ch2, -4.0 * (2.0 * q).cosh(), 2.0 * ch2]
        }
        ParamRule::ArcsinArccos => {
            vec![4.0 * (q - 1.0).asin() / PI, 4.0 * (q - 1.0).acos() / PI]
        }
    }
}

fn stochastic<R: Rng + ?Sized>(rule: StochasticRule, rng: &mut R) -> Exponents {
    match rule {
        StochasticRule::HyperbolicUV { u, v } => {
            let u = u.sample(rng);
            let v = v.sample(rng);
            let sech2 = 1.0 / u.cosh().powi(2);
            let tanh2 = u.tanh().powi(2);
            let coth2 = 1.0 / v.tanh().powi(2);
            let csch2 = 1.0 / v.sinh().powi(2);
            Exponents::from_slice(&[sech2 + coth2, tanh2 - csch2])
        }
        StochasticRule::TrigV { v } => {
            let v = v.sample(rng);
            let s2 = v.sin().powi(2);
            let c2 = v.cos().powi(2);
            Exponents::from_slice(&[2.0 * s2, 4.0 * c2, -4.0 * (2.0 * v).cos(), 2.0 * c2])
        }
        StochasticRule::ConstrainedSum { a, total } => {
            let a = a.sample(rng);
            Exponents::from_slice(&[a, total - a])
        }
    }
}

/// Resolves `provider` at Brody parameter `q`.
pub fn resolve_exponents<R: Rng + ?Sized>(provider: &ExponentProvider, q: f64, rng: &mut R) -> Vec<f64> {
    provider.resolve(q, rng).as_slice().to_vec()
}
