use thiserror::Error;

/// Errors shared across the workbench.
#[derive(Debug, Error)]
pub enum QError {
    #[error("zero divisor")]
    ZeroDivisor,
    #[error("bad specialization: denominator vanishes at the sample point")]
    BadSpecialization,
    #[error("resource limit: {0}")]
    ResourceLimit(String),
    #[error("degenerate calculus: theta_tau vanishes on this branch")]
    DegenerateCalculus,
    #[error("V-minus vanishes for N = 2; no W- element exists")]
    VMinusVanishes,
    #[error("convention mismatch: {0}")]
    ConventionMismatch(String),
    #[error("exact kernel required for normal forms; got a probabilistic rank")]
    ExactKernelRequired,
    #[error("ambient dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("modular sampling exhausted: all points hit denominator zeros")]
    SamplingExhausted,
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}
