use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("pair ({student}, {college}) is not acceptable")]
    UnacceptablePair { student: String, college: String },
    #[error("student {0} appears in more than one pair")]
    DuplicateStudent(String),
    #[error("witness is not a subset of the students assigned to {0}")]
    WitnessNotSubset(String),
    #[error("matching is not feasible")]
    InfeasibleInput,
    #[error("instance has a nonzero lower quota")]
    NonZeroLowerQuota,
    #[error("instance has ties")]
    TiesPresent,
    #[error("budget of {limit} steps exceeded{detail}")]
    BudgetExceeded { limit: u64, detail: String },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("internal verification failed: {0}")]
    VerificationFailed(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
