//! Catalogued random-matrix families, their exponent and offset rules,
//! constraint validation and discriminant constants.

mod build;
pub mod catalog;
mod exponents;
mod offsets;
mod poly;
mod validate;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::dist::{check_positive, sample_exponential, sample_gamma2, sample_normal, sample_rayleigh, uniform_open};
use crate::special::gamma;
use crate::{Complex64, Result, SpacingLaw};

pub use build::{assemble, build, draw, Draws, OffsetMode, Realization};
pub use exponents::{resolve_exponents, ExponentProvider, Exponents, ParamRule, StochasticRule};
pub use offsets::{DiagRule, HRule, OffsetSpec};
pub use validate::{discriminant_constant, validate, SpacingMode, ValidationReport, Violation};

/// Distribution of the driver `Y` whose powers populate the matrix.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Driver {
    /// `Y ~ Exp(sigma_e)`.
    Exponential { sigma_e: f64 },
    /// `Y ~ Gamma(sigma_g, shape 2)`.
    Gamma2 { sigma_g: f64 },
    /// `Y = U^2 + V^2` with `U, V ~ N(0, sigma_r^2)` independent.
    RayleighSquares { sigma_r: f64 },
}

/// One draw of the driver; `u`, `v` are the normal components for
/// [`Driver::RayleighSquares`] and zero otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct DriverDraw {
    pub y: f64,
    pub u: f64,
    pub v: f64,
}

impl Driver {
    pub fn check(&self) -> Result<()> {
        match *self {
            Driver::Exponential { sigma_e } => check_positive("sigma_e", sigma_e),
            Driver::Gamma2 { sigma_g } => check_positive("sigma_g", sigma_g),
            Driver::RayleighSquares { sigma_r } => check_positive("sigma_r", sigma_r),
        }
    }

    pub fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> DriverDraw {
        match *self {
            Driver::Exponential { sigma_e } => {
                DriverDraw { y: sample_exponential(rng, sigma_e), u: 0.0, v: 0.0 }
            }
            Driver::Gamma2 { sigma_g } => DriverDraw { y: sample_gamma2(rng, sigma_g), u: 0.0, v: 0.0 },
            Driver::RayleighSquares { sigma_r } => {
                let u = sample_normal(rng, 0.0, sigma_r);
                let v = sample_normal(rng, 0.0, sigma_r);
                DriverDraw { y: u * u + v * v, u, v }
            }
        }
    }

    /// Mean-scaled spacing law produced by a valid model under this driver.
    pub fn target_law(&self, q: f64) -> SpacingLaw {
        match self {
            Driver::Gamma2 { .. } => SpacingLaw::BrodyII { q },
            _ => SpacingLaw::Brody { q },
        }
    }

    /// Law of the unscaled spacing `sqrt|k| Y^(1/(q+1))`.
    pub fn spacing_law(&self, k: f64, q: f64) -> SpacingLaw {
        let tau = q + 1.0;
        let root = k.abs().sqrt();
        match *self {
            Driver::Exponential { sigma_e } => SpacingLaw::Weibull { sigma: sigma_e * root.powf(tau), tau },
            Driver::RayleighSquares { sigma_r } => {
                SpacingLaw::Weibull { sigma: 2.0 * sigma_r * sigma_r * root.powf(tau), tau }
            }
            Driver::Gamma2 { sigma_g } => SpacingLaw::GeneralizedGamma {
                ell: root * sigma_g.powf(1.0 / tau),
                omega: 2.0 * tau,
                big_omega: tau,
            },
        }
    }

    /// Population mean spacing for discriminant constant `k`.
    pub fn mean_spacing(&self, k: f64, q: f64) -> f64 {
        let root = k.abs().sqrt();
        let inv = 1.0 / (q + 1.0);
        match *self {
            Driver::Exponential { sigma_e } => root * sigma_e.powf(inv) * gamma((q + 2.0) * inv),
            Driver::RayleighSquares { sigma_r } => {
                root * (2.0 * sigma_r * sigma_r).powf(inv) * gamma((q + 2.0) * inv)
            }
            Driver::Gamma2 { sigma_g } => root * sigma_g.powf(inv) * gamma((2.0 * q + 3.0) * inv),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Driver::Exponential { .. } => "exp",
            Driver::Gamma2 { .. } => "gamma2",
            Driver::RayleighSquares { .. } => "normal-squares",
        }
    }
}

/// Distributions for the auxiliary variables `X`, `T`, `U`, `V`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum AuxDist {
    StdNormal,
    Normal { mean: f64, sd: f64 },
    /// `|T|` with `T ~ N(mean, sd^2)`, redrawn until `|T| >= floor`.
    AbsNormalFloored { mean: f64, sd: f64, floor: f64 },
    Rayleigh { sigma: f64 },
    Uniform { lo: f64, hi: f64 },
    Exponential { sigma: f64 },
}

impl AuxDist {
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match *self {
            AuxDist::StdNormal => sample_normal(rng, 0.0, 1.0),
            AuxDist::Normal { mean, sd } => sample_normal(rng, mean, sd),
            AuxDist::AbsNormalFloored { mean, sd, floor } => loop {
                let t = sample_normal(rng, mean, sd).abs();
                if t >= floor {
                    break t;
                }
            },
            AuxDist::Rayleigh { sigma } => sample_rayleigh(rng, sigma),
            AuxDist::Uniform { lo, hi } => lo + (hi - lo) * uniform_open(rng),
            AuxDist::Exponential { sigma } => sample_exponential(rng, sigma),
        }
    }

    /// Whether draws can come arbitrarily close to zero.
    pub(crate) fn reaches_zero(&self) -> bool {
        match *self {
            AuxDist::AbsNormalFloored { floor, .. } => floor <= 0.0,
            AuxDist::Uniform { lo, hi } => lo <= 0.0 && hi >= 0.0,
            _ => true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum AGenVariant {
    /// Upper off-diagonal vanishes; the lower one is `V`.
    C2Zero,
    /// Lower off-diagonal vanishes; the upper one is `V`.
    C3Zero,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BCase {
    I,
    II,
    III,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BGenCase {
    I,
    III,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CsVariant {
    Cs1,
    Cs2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum AdditiveVariant {
    One,
    Two,
}

/// Structural family of a model.
///
/// Constant layouts (`c1, c2, ...` in order):
/// - `A`, `AZeroTrace`, `LimitQ1`: `[[X + c1 Y^1, c2 Y^a], [c3 Y^b, X + c4 Y^1]]`
/// - `AGeneralized`: `[c1, c4]`, the remaining off-diagonal is `V`
/// - `B`, `BComplexSymmetric`: `[[c1 Y^a, c2 Y^a + c3 Y^b], [c4 Y^a + c5 Y^b, c6 Y^b]]`
/// - `BGeneralized`: as `B` with `Y^1` and `V` in place of the two powers
/// - `C`: `[[c1 Y^a, c2 + c3 Y^b], [c4 + c5 Y^c, c6 Y^d]]`
/// - `E`: `[[c1 + g1, c2 + c3 Y^a], [c4 + c5 Y^b, c6 + g2]]`
/// - `G`: `[[g1 + c1 + c2 Y^a, c3 + c4 Y^b], [c5 + c6 Y^c, g2 + c7 + c8 Y^d]]`
/// - `I`: `[[X + c1 Y^c, c2 Y^a + c5 Y^c], [c3 Y^b, X + c4 Y^c]]`
/// - `J`: `[[c1 d1 Y^1, c2 Y^a], [c3 Y^b, c1 d2 Y^1]]`
/// - `D1`, `D2`, `D3`: `[c]`, the `c(q)` of each model
/// - `LimitQ0`: `[[c1 Y^a + c2, c3 Y^b + c4], [c5 Y^b + c6, c7 Y^c + c8]]`
///
/// Here `Y^p` abbreviates `Y^(p/(q+1))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    A,
    AZeroTrace,
    AGeneralized(AGenVariant),
    B(BCase),
    BGeneralized(BGenCase),
    BComplexSymmetric(CsVariant),
    C,
    E,
    G,
    I,
    J,
    D1(Sign),
    D2,
    D3,
    R,
    L,
    Additive(AdditiveVariant),
    LimitQ0,
    LimitQ1,
}

impl Family {
    pub fn name(&self) -> String {
        match self {
            Family::A => "A".into(),
            Family::AZeroTrace => "A (zero trace)".into(),
            Family::AGeneralized(AGenVariant::C2Zero) => "A generalized (c2 = 0)".into(),
            Family::AGeneralized(AGenVariant::C3Zero) => "A generalized (c3 = 0)".into(),
            Family::B(c) => format!("B case {c:?}"),
            Family::BGeneralized(c) => format!("B generalized case {c:?}"),
            Family::BComplexSymmetric(CsVariant::Cs1) => "B complex symmetric 1".into(),
            Family::BComplexSymmetric(CsVariant::Cs2) => "B complex symmetric 2".into(),
            Family::C => "C".into(),
            Family::E => "E".into(),
            Family::G => "G".into(),
            Family::I => "I".into(),
            Family::J => "J".into(),
            Family::D1(Sign::Plus) => "D1 (+)".into(),
            Family::D1(Sign::Minus) => "D1 (-)".into(),
            Family::D2 => "D2".into(),
            Family::D3 => "D3".into(),
            Family::R => "R".into(),
            Family::L => "L".into(),
            Family::Additive(AdditiveVariant::One) => "additive 1".into(),
            Family::Additive(AdditiveVariant::Two) => "additive 2".into(),
            Family::LimitQ0 => "q = 0 preset".into(),
            Family::LimitQ1 => "q = 1 preset".into(),
        }
    }

    /// Number of constants the family reads.
    pub fn constant_count(&self) -> usize {
        match self {
            Family::A | Family::AZeroTrace | Family::LimitQ1 => 4,
            Family::AGeneralized(_) => 2,
            Family::B(_) | Family::BGeneralized(_) | Family::BComplexSymmetric(_) => 6,
            Family::C | Family::E => 6,
            Family::G | Family::LimitQ0 => 8,
            Family::I => 5,
            Family::J => 3,
            Family::D1(_) | Family::D2 | Family::D3 => 1,
            Family::R | Family::L | Family::Additive(_) => 0,
        }
    }

    /// Number of exponents the family reads.
    pub fn exponent_count(&self) -> usize {
        match self {
            Family::A
            | Family::AZeroTrace
            | Family::LimitQ1
            | Family::B(_)
            | Family::BComplexSymmetric(_)
            | Family::E
            | Family::J
            | Family::D2
            | Family::R
            | Family::Additive(AdditiveVariant::Two) => 2,
            Family::C | Family::G => 4,
            Family::I | Family::LimitQ0 => 3,
            _ => 0,
        }
    }
}

/// A fully specified model: family, constants, exponent rule, offsets, driver and `q`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelSpec {
    pub id: String,
    pub family: Family,
    pub q: f64,
    pub constants: Vec<Complex64>,
    pub exponents: ExponentProvider,
    pub offsets: Option<OffsetSpec>,
    /// Distribution of the auxiliary `V` used by the generalized, `C`-random,
    /// `L` and `R`-exponent families.
    pub aux_v: AuxDist,
    pub driver: Driver,
}

impl ModelSpec {
    pub(crate) fn c(&self, i: usize) -> Complex64 {
        self.constants.get(i).copied().unwrap_or_default()
    }

    pub fn with_driver(mut self, driver: Driver) -> Self {
        self.driver = driver;
        self
    }

    /// Spacing law the mean-scaled spacings follow.
    pub fn target_law(&self) -> SpacingLaw {
        self.driver.target_law(self.q)
    }
}
