use thiserror::Error;

use crate::exact::{Polynomial, Rational, Spectrum};

/// Everything that can go wrong in the library.
///
/// Variants are grouped by the layer that raises them; the CLI maps them onto
/// exit codes (parse errors vs. generator errors).
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("shape error: {0}")]
    Shape(String),

    /// The characteristic polynomial has a factor without rational roots.
    /// `rational_part` holds whatever rational eigenvalues were extracted.
    #[error("spectrum is not fully rational; unfactored residual {residual}")]
    NonRationalSpectrum {
        residual: Polynomial,
        rational_part: Spectrum,
    },

    #[error("unsupported root system or algebra: {0}")]
    UnsupportedType(String),

    #[error("unknown summand label: {0}")]
    UnknownLabel(String),

    #[error("spectrum has no zero eigenvalue; the structural constants are inconsistent")]
    MissingKernel,

    #[error("out of range: {0}")]
    OutOfRange(String),

    #[error("embedding chain does not compose: {0}")]
    NonComposable(String),

    #[error("Einstein constant {0} lies outside [1/4, 1/2]")]
    OutOfBracket(Rational),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("metric is not Einstein: {0}")]
    EinsteinViolation(String),

    #[error("factors do not satisfy the Einstein condition: {0}")]
    NotEinstein(String),

    #[error("incompatible factors: {0}")]
    IncompatibleFactors(String),

    #[error("structural constants are parametric; a numeric value is required")]
    ParametricConstants,

    #[error("invalid case: {0}")]
    InvalidCase(String),

    #[error("no explicit matrix model for factor: {0}")]
    UnsupportedFactor(String),

    #[error("Killing-ratio registry: {0}")]
    Registry(String),
}

pub type Result<T> = std::result::Result<T, Error>;
