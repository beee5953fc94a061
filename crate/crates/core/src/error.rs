use thiserror::Error;

/// Errors produced by the quadrature library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("jet mismatch: {0}")]
    JetMismatch(String),

    #[error("jet order {requested} exceeds the cap of {cap}")]
    JetOrderTooLarge { requested: usize, cap: usize },

    #[error("jet division by a series with zero constant term")]
    DivisionByZeroConstant,

    #[error("{function} is undefined at {value}")]
    Domain { function: &'static str, value: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("unsupported parameter: {0}")]
    Unsupported(String),

    #[error("{value} lies outside the open interval ({lo}, {hi})")]
    OutOfInterval { value: f64, lo: f64, hi: f64 },

    #[error("root solver failed to converge after {iterations} iterations")]
    SolverFailure { iterations: usize },

    #[error("endpoint exponent {0} is not integrable (must exceed -1)")]
    NonIntegrableEndpoint(f64),

    #[error("integrand evaluated at the pole xi = {0}")]
    PoleEvaluation(f64),

    #[error("integrand evaluated at an endpoint xi = {0}")]
    EndpointEvaluation(f64),

    #[error("periodic extension is undefined at the period boundary (q < 1)")]
    UndefinedAtBoundary,

    #[error("integrand produced a non-finite value at xi = {0}")]
    NonFinite(f64),

    #[error("pole order {m} with level {level} has no published closed form")]
    UnsupportedLevel { m: u32, level: u32 },

    #[error("extrapolation level {s} exceeds the maximum {max} for pole order {m}")]
    LevelTooHigh { s: u32, m: u32, max: u32 },

    #[error("oracle integration did not converge (estimated error {estimate:e})")]
    OracleFailure { estimate: f64 },

    #[error("unknown example `{0}`")]
    UnknownExample(String),
}

pub type Result<T> = std::result::Result<T, Error>;
