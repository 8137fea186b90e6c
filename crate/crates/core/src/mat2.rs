//! Closed-form algebra for 2x2 complex matrices.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Default absolute tolerance on imaginary parts when deciding that a pair is real.
pub const DEFAULT_IMAG_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Matrix2 {
    pub m11: Complex64,
    pub m12: Complex64,
    pub m21: Complex64,
    pub m22: Complex64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PairKind {
    RealPair,
    ConjugatePair,
    GenericComplex,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EigenPair {
    pub plus: Complex64,
    pub minus: Complex64,
    pub kind: PairKind,
}

impl Matrix2 {
    pub fn new(m11: Complex64, m12: Complex64, m21: Complex64, m22: Complex64) -> Self {
        Self { m11, m12, m21, m22 }
    }

    pub fn real(m11: f64, m12: f64, m21: f64, m22: f64) -> Self {
        Self::new(m11.into(), m12.into(), m21.into(), m22.into())
    }

    pub fn is_finite(&self) -> bool {
        [self.m11, self.m12, self.m21, self.m22].iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn trace(&self) -> Complex64 {
        self.m11 + self.m22
    }

    pub fn det(&self) -> Complex64 {
        self.m11 * self.m22 - self.m12 * self.m21
    }

    /// `Tr^2 - 4 det`, evaluated as `(m11 - m22)^2 + 4 m12 m21`.
    ///
    /// The two forms are algebraically identical; the second never forms the
    /// squared trace, so shared diagonal offsets cancel exactly.
    pub fn discriminant(&self) -> Complex64 {
        let d = self.m11 - self.m22;
        d * d + 4.0 * self.m12 * self.m21
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        (self.m11.norm_sqr() + self.m12.norm_sqr() + self.m21.norm_sqr() + self.m22.norm_sqr()).sqrt()
    }

    /// `|det(M - lambda I)|`.
    pub fn char_poly_residual(&self, lambda: Complex64) -> f64 {
        ((self.m11 - lambda) * (self.m22 - lambda) - self.m12 * self.m21).norm()
    }

    /// Eigenvalues via `(Tr +- sqrt(D)) / 2`, classified with [`DEFAULT_IMAG_TOL`].
    pub fn eigenvalues(&self) -> EigenPair {
        self.eigenvalues_with_tol(DEFAULT_IMAG_TOL)
    }

    pub fn eigenvalues_with_tol(&self, tol: f64) -> EigenPair {
        let half_tr = 0.5 * self.trace();
        let half_root = 0.5 * self.discriminant().sqrt();
        let plus = half_tr + half_root;
        let minus = half_tr - half_root;
        EigenPair { plus, minus, kind: classify(plus, minus, tol) }
    }
}

fn classify(plus: Complex64, minus: Complex64, tol: f64) -> PairKind {
    let scale = 1f64.max(plus.norm()).max(minus.norm());
    let t = tol * scale;
    if plus.im.abs() <= t && minus.im.abs() <= t {
        PairKind::RealPair
    } else if (plus.re - minus.re).abs() <= t && (plus.im + minus.im).abs() <= t {
        PairKind::ConjugatePair
    } else {
        PairKind::GenericComplex
    }
}

impl EigenPair {
    /// Gap between the eigenvalues: `|re+ - re-|` for a real pair, `2 |im|` for a
    /// conjugate pair.
    pub fn spacing(&self) -> Result<f64> {
        match self.kind {
            PairKind::RealPair => Ok((self.plus.re - self.minus.re).abs()),
            PairKind::ConjugatePair => Ok(2.0 * self.plus.im.abs()),
            PairKind::GenericComplex => Err(Error::UnsupportedSpacing),
        }
    }
}

/// Computes the eigenvalue gap of a classified pair.
pub fn spacing(pair: &EigenPair) -> Result<f64> {
    pair.spacing()
}

/// Drops imaginary round-off: when both `|im| < tol`, the imaginary parts are
/// zeroed and the pair becomes real. Otherwise the pair is returned unchanged.
pub fn clean_spurious_imag(pair: EigenPair, tol: f64) -> EigenPair {
    if pair.plus.im.abs() < tol && pair.minus.im.abs() < tol {
        EigenPair {
            plus: Complex64::new(pair.plus.re, 0.0),
            minus: Complex64::new(pair.minus.re, 0.0),
            kind: PairKind::RealPair,
        }
    } else {
        pair
    }
}
