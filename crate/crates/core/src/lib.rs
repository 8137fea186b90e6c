//! Correlated 2x2 random-matrix ensembles whose eigenvalue spacings follow the
//! Brody law exactly (and the Brody-II law under a gamma(2) driver).
//!
//! The crate is organised bottom-up:
//!
//! * [`special`]: gamma, incomplete gamma and Bessel functions.
//! * [`dist`]: driver samplers and the exact spacing laws.
//! * [`mat2`]: closed-form 2x2 complex eigenvalue algebra.
//! * [`ensembles`]: the model catalog, constraint validation and builders.
//! * [`sim`]: the seeded Monte Carlo engine and goodness-of-fit statistics.
//! * [`verify`]: per-sample oracles for the discriminant conditions.

pub mod dist;
pub mod ensembles;
mod error;
pub mod mat2;
pub mod rng;
pub mod sim;
pub mod special;
pub mod verify;

pub use dist::{ScaleParams, SpacingLaw};
pub use ensembles::{
    build, discriminant_constant, resolve_exponents, validate, Driver, ExponentProvider, Family,
    ModelSpec, OffsetSpec, Realization, ValidationReport,
};
pub use error::{Error, Result};
pub use mat2::{EigenPair, Matrix2, PairKind};
pub use num_complex::Complex64;
pub use sim::{GofReport, Histogram, SampleSet, SimConfig};
pub use verify::VerifyOutcome;
