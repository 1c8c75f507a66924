use thiserror::Error;

/// Errors raised by the numerical core.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("no coexistence steady state: a1*a2 = {product} >= 1")]
    NoCoexistence { product: f64 },

    #[error("array length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("unknown initial profile `{0}`")]
    UnknownProfile(String),

    #[error("malformed initial profile `{0}`")]
    MalformedProfile(String),

    #[error("initial profile `{profile}` is negative ({value}) at x = {x}")]
    NegativeInitialData { profile: String, x: f64, value: f64 },

    #[error("zero pivot in tridiagonal elimination at row {row}")]
    ZeroPivot { row: usize },

    #[error(
        "time step {dt} exceeds diffusive stability limit {limit} (allow_unstable_dt overrides)"
    )]
    StepTooLarge { dt: f64, limit: f64 },

    #[error("non-finite value in `{field}` at node {index}, t = {t}")]
    NonFinite {
        field: &'static str,
        index: usize,
        t: f64,
    },

    #[error("nonpositive denominator `{0}`")]
    NonpositiveDenominator(&'static str),

    #[error("invalid logistic ODE: {0}")]
    InvalidOde(&'static str),

    #[error("empty averaging window [{start}, {end}]")]
    EmptyWindow { start: f64, end: f64 },

    #[error("sample time {t} does not follow previous sample {prev}")]
    NonMonotoneTime { prev: f64, t: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
