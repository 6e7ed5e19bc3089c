use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A distribution or operation parameter violates its constraints.
    #[error("invalid parameter: {0}")]
    Parameter(String),
    /// An argument lies outside the domain of the requested function.
    #[error("argument outside domain: {0}")]
    Domain(String),
    /// A Kullback-Leibler integral diverges (the reference density vanishes
    /// on the support of the lead density).
    #[error("divergent integral: {0}")]
    Divergence(String),
    /// Adaptive quadrature exhausted its budget before reaching tolerance.
    #[error("quadrature did not converge: {0}")]
    Integration(String),
    /// A bracketing or minimization step failed.
    #[error("optimization failed: {0}")]
    Optimization(String),
    /// A kernel was called with the wrong number of arguments.
    #[error("kernel arity mismatch: expected {expected} arguments, got {got}")]
    Arity { expected: usize, got: usize },
    /// Tied observations; the statistics assume a continuous df.
    #[error("tied observations at {value}; continuous data required")]
    Ties { value: f64 },
    /// An enumeration or simulation would exceed the configured budget.
    #[error("size budget exceeded: {0}")]
    Size(String),
    /// Unknown test or alternative identifier.
    #[error("unknown identifier: {0}")]
    UnknownId(String),
    /// Too few replications for the requested quantile or tail.
    #[error("insufficient replications: {0}")]
    Precision(String),
    /// The kernel family is degenerate (variance function vanishes).
    #[error("degenerate family: {0}")]
    Degenerate(String),
    /// A limit estimate did not stabilize across refinement levels.
    #[error("estimate did not stabilize: {0}")]
    NonConvergence(String),
    /// A ratio with vanishing denominator was requested.
    #[error("indeterminate ratio: {0}")]
    Indeterminate(String),
    /// Input data could not be parsed.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
