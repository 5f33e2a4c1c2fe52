use thiserror::Error;

/// Errors raised by the numerical routines in this crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("exponent p must be finite and at least 1, got {0}")]
    InvalidExponent(f64),

    #[error("sample grid of {size} points cannot resolve band {band} (need at least {needed})")]
    GridTooSmall { size: usize, band: usize, needed: usize },

    #[error("duplicate harmonic k = {0} in spectrum")]
    DuplicateHarmonic(i64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("shape function {label}: {reason}")]
    InvalidShape { label: String, reason: String },

    #[error("weight measure {label}: {reason}")]
    InvalidMeasure { label: String, reason: String },

    #[error("majorant {label}: {reason}")]
    InvalidMajorant { label: String, reason: String },

    #[error("integrand is not finite at t = {t} (value {value})")]
    NonFiniteIntegrand { t: f64, value: f64 },

    #[error("quadrature budget of {budget} evaluations exhausted on [{a}, {b}]")]
    QuadratureBudget { budget: usize, a: f64, b: f64 },

    #[error("multiplier psi({k}) is zero and the zero-set policy is 'reject'")]
    ZeroMultiplier { k: i64 },

    #[error("coefficient {k} overflows after division by psi({k})")]
    DerivativeOverflow { k: i64 },

    #[error("extremal construction requires |psi(n)| or |psi(-n)| to attain nu(n) = {nu} (n = {n})")]
    ExtremalNotAttained { n: u32, nu: f64 },

    #[error("sharpness not certified: {0}")]
    SharpnessNotCertified(String),

    #[error("json: {0}")]
    Json(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
