use crate::bisect::BisectionStep;
use crate::ordinal::OrdinalIndex;
use thiserror::Error;

/// Errors surfaced by the library.
///
/// Every failure mode an operation documents maps onto one of these
/// variants; the CLI turns the variant class into its exit code.
#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("period word must be nonempty")]
    EmptyPeriod,

    #[error("invalid interval: left endpoint is not lexicographically below the right")]
    InvalidInterval,

    #[error("{0} has no predecessor")]
    NoPredecessor(OrdinalIndex),

    #[error("carry undefined at {0}: the position is not a successor")]
    LimitCarry(OrdinalIndex),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("set at index {0} is not nowhere dense at the requested depth")]
    NotNowhereDense(usize),

    #[error("budget exceeded: {0}")]
    Budget(String),

    #[error("bisection budget of {max_steps} steps exhausted before localization")]
    BisectionBudget {
        max_steps: u64,
        trace: Vec<BisectionStep>,
    },

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("metric axiom violated: {0}")]
    MetricAxiom(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code the CLI reports for this error class.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Malformed(_)
            | Error::EmptyPeriod
            | Error::InvalidInterval
            | Error::NoPredecessor(_)
            | Error::LimitCarry(_)
            | Error::Precondition(_)
            | Error::NotNowhereDense(_) => 3,
            Error::Budget(_) | Error::BisectionBudget { .. } => 4,
            Error::Invariant(_) | Error::MetricAxiom(_) => 5,
        }
    }
}
