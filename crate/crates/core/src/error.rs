use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("unsupported spacing mode: eigenvalues are neither real nor a complex-conjugate pair")]
    UnsupportedSpacing,

    #[error("realization {index} produced a generic complex eigenvalue pair")]
    GenericComplexPair { index: usize },

    #[error("discriminant constant undefined for model `{0}`; verify it with the Weibull-square condition instead")]
    KUndefined(String),

    #[error("model `{model}` failed validation: {summary}")]
    Validation { model: String, summary: String },

    #[error("exponent rule `{rule}` broke its sum constraint (residual {residual:e})")]
    ExponentConstraint { rule: String, residual: f64 },

    #[error("empty input")]
    EmptyInput,

    #[error("unknown model id `{0}`")]
    UnknownModel(String),

    #[error("unknown law `{0}`")]
    UnknownLaw(String),
}
