use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error in {func}: {msg}")]
    Domain { func: &'static str, msg: String },

    #[error("{func} did not converge after {iterations} iterations")]
    Convergence { func: &'static str, iterations: usize },

    #[error("quadrature failed: estimated error {est_error:e} exceeds tolerance {tolerance:e}")]
    Quadrature { est_error: f64, tolerance: f64 },

    #[error("numeric routes disagree: {first} vs {second} (tolerance {tolerance:e})")]
    Disagreement { first: f64, second: f64, tolerance: f64 },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("the constant C is infinite for {0}")]
    InfiniteC(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("missing argument: {0}")]
    MissingArgument(&'static str),

    #[error("parse error at line {line}, column {column}: {msg}")]
    Parse { line: usize, column: usize, msg: String },

    #[error("empty input: {0}")]
    EmptyInput(String),

    #[error("numerical failure: {0}")]
    NumericalFailure(String),

    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn domain(func: &'static str, msg: impl Into<String>) -> Self {
        Error::Domain { func, msg: msg.into() }
    }

    /// Short machine-readable tag for the error variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Domain { .. } => "domain",
            Error::Convergence { .. } => "convergence",
            Error::Quadrature { .. } => "quadrature",
            Error::Disagreement { .. } => "disagreement",
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::InfiniteC(_) => "infinite_c",
            Error::InvalidParameter(_) => "invalid_parameter",
            Error::MissingArgument(_) => "missing_argument",
            Error::Parse { .. } => "parse",
            Error::EmptyInput(_) => "empty_input",
            Error::NumericalFailure(_) => "numerical_failure",
            Error::Io(_) => "io",
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
