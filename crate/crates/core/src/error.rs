use thiserror::Error;

/// Errors raised by the numerical kernels.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{func}: argument {value} outside domain ({expected})")]
    Domain {
        func: &'static str,
        value: f64,
        expected: &'static str,
    },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("{what}: enumeration exceeded cap of {cap}")]
    CapExceeded { what: &'static str, cap: usize },
    #[error("{what}: precision loss ({detail})")]
    Precision { what: &'static str, detail: String },
    #[error("{what}: no convergence after {iterations} iterations")]
    NoConvergence { what: &'static str, iterations: usize },
    #[error("symbol vanishes on the unit circle near angle {angle}")]
    ZeroOnCircle { angle: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
