use thiserror::Error;

/// Errors raised by the optimization toolkit.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// The evaluation budget (in MO-fevals) has been spent.
    #[error("evaluation budget of {budget} MO-fevals exhausted")]
    BudgetExhausted { budget: u64 },
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),
    #[error("{what} requires at least {required} points, got {got}")]
    TooFewPoints {
        what: &'static str,
        required: usize,
        got: usize,
    },
    #[error("parameter {name} out of range: {value}")]
    OutOfRange { name: &'static str, value: f64 },
    #[error("invalid problem definition: {0}")]
    InvalidProblem(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("unknown problem id `{0}`")]
    UnknownProblem(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
