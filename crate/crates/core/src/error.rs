use thiserror::Error;

/// Errors raised by the simulator.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid logical qubit: {0}")]
    InvalidQubit(String),

    #[error("acceleration parameter r must be finite and non-negative, got {0}")]
    InvalidR(f64),

    #[error("proper acceleration and mode frequency must be positive (a = {a}, omega = {omega})")]
    InvalidAcceleration { a: f64, omega: f64 },

    #[error("truncation budget must lie in (0, 1), got {0}")]
    InvalidEpsilon(f64),

    #[error("cutoff infeasible at r = {r}: epsilon = {epsilon} needs more than {limit} terms per mode")]
    CutoffInfeasible { r: f64, epsilon: f64, limit: usize },

    #[error("eigenvalue {value:e} in sector {sector} is below the positivity tolerance")]
    NegativeEigenvalue { value: f64, sector: usize },

    #[error("states are not comparable: {0}")]
    Mismatch(String),

    #[error("Holevo quantity {0:e} is negative beyond tolerance")]
    NegativeInformation(f64),

    #[error("invalid ensemble: {0}")]
    InvalidEnsemble(String),

    #[error("moment order must be even for the inequality chain, got {0}")]
    OddMoment(u32),

    #[error("convergence report needs at least 3 records, got {0}")]
    TooFewRecords(usize),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("{0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
