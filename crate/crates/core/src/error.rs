use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid epsilon value {0}: must be -1, 0 or 1")]
    InvalidEpsilon(i64),

    #[error("invalid spec: {0}")]
    InvalidSpec(String),

    #[error("unknown builtin {0:?}")]
    UnknownBuiltin(String),

    #[error("invalid exact real: {0}")]
    InvalidReal(String),

    #[error("argument out of domain: {0}")]
    Domain(String),

    #[error("operation requires (eps1, eps2) = {expected}, spec has ({eps1}, {eps2})")]
    WrongCase {
        expected: &'static str,
        eps1: i8,
        eps2: i8,
    },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("requested precision {target:e} is unreachable (best bound {achieved:e})")]
    Precision { target: f64, achieved: f64 },

    #[error("zero-bias parameters rejected: {0}")]
    ZeroBiasConstraint(String),

    #[error("Euler product diverges: local factor at p = {prime} is {value}")]
    Divergent { prime: u64, value: f64 },

    #[error(
        "sieve needs about {needed} bytes but the memory budget is {budget}; \
         use a smaller limit, a smaller segment size or fewer workers"
    )]
    MemoryBudget { needed: u64, budget: u64 },

    #[error("report and classification describe different specs")]
    SpecMismatch,

    #[error("report has no checkpoints")]
    EmptyReport,

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
