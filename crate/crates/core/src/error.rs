use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A caller-side precondition does not hold.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("budget {budget} too small: at least {required} pulls required")]
    BudgetTooSmall { budget: u64, required: u64 },

    /// Every arm's mean sits on a tied selection boundary, so no gap contributes.
    #[error("complexity is undefined: {0}")]
    InfeasibleComplexity(String),

    #[error("exact enumeration limited to budgets of at most {limit} pulls, got {budget}")]
    EnumerationTooLarge { budget: u64, limit: u64 },

    #[error("config error: {0}")]
    Config(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
