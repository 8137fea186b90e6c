//! Diagonal offset pairs `g1(X), g2(X)` with constant difference and the
//! off-diagonal balancing factor `h(T)`.

use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use super::AuxDist;
use crate::Complex64;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "kebab-case")]
pub enum DiagRule {
    /// `g1 = g2 = 0`.
    Zero,
    /// `g1 = g2 = X`.
    Shared,
    /// `g1 = X + eta`, `g2 = X`.
    UserConstant { eta_re: f64, eta_im: f64 },
    /// `g1 = c log2(|X| + 1)`, `g2 = c log2((|X| + 1) / 2)`.
    Log2Pair { c: f64 },
    /// `g1 = atan X`, `g2 = -acot X` with `acot x = pi/2 - atan x`.
    ArctanArccot,
    /// `g1 = asec(s |X| + 1)`, `g2 = -acsc(s |X| + 1)`.
    ArcsecArccsc { scale: f64 },
    /// `d1 = cos^2 X`, `d2 = cos(2X) / 2`.
    TrigPair,
    /// `d1 = X + 1`, `d2 = X`.
    UnitShift,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum HRule {
    One,
    Exp,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OffsetSpec {
    pub diag: DiagRule,
    pub h: HRule,
    pub x: AuxDist,
    pub t: AuxDist,
}

impl OffsetSpec {
    pub fn diag(rule: DiagRule) -> Self {
        Self { diag: rule, h: HRule::One, x: AuxDist::StdNormal, t: AuxDist::StdNormal }
    }

    pub fn with_h(mut self, h: HRule) -> Self {
        self.h = h;
        self
    }

    pub fn uses_t(&self) -> bool {
        self.h != HRule::One
    }

    /// The constant difference `g1 - g2`.
    pub fn eta(&self) -> Complex64 {
        match self.diag {
            DiagRule::Zero | DiagRule::Shared => Complex64::new(0.0, 0.0),
            DiagRule::UserConstant { eta_re, eta_im } => Complex64::new(eta_re, eta_im),
            DiagRule::Log2Pair { c } => c.into(),
            DiagRule::ArctanArccot | DiagRule::ArcsecArccsc { .. } => FRAC_PI_2.into(),
            DiagRule::TrigPair => 0.5.into(),
            DiagRule::UnitShift => 1.0.into(),
        }
    }

    /// `(g1(x), g2(x))`.
    pub fn g(&self, x: f64) -> (Complex64, Complex64) {
        let (a, b) = match self.diag {
            DiagRule::Zero => (0.0, 0.0),
            DiagRule::Shared => (x, x),
            DiagRule::UserConstant { eta_re, eta_im } => {
                return (Complex64::new(x + eta_re, eta_im), x.into());
            }
            DiagRule::Log2Pair { c } => {
                let m = x.abs() + 1.0;
                (c * m.log2(), c * (m / 2.0).log2())
            }
            DiagRule::ArctanArccot => (x.atan(), x.atan() - FRAC_PI_2),
            DiagRule::ArcsecArccsc { scale } => {
                let z = scale * x.abs() + 1.0;
                ((1.0 / z).acos(), -(1.0 / z).asin())
            }
            DiagRule::TrigPair => (x.cos().powi(2), 0.5 * (2.0 * x).cos()),
            DiagRule::UnitShift => (x + 1.0, x),
        };
        (a.into(), b.into())
    }

    pub fn h(&self, t: f64) -> f64 {
        match self.h {
            HRule::One => 1.0,
            HRule::Exp => t.exp(),
        }
    }

    /// Whether `g1 + g2` is real for every `x`.
    pub fn real_trace(&self) -> bool {
        !matches!(self.diag, DiagRule::UserConstant { eta_im, .. } if eta_im != 0.0)
    }
}
