use thiserror::Error;

/// Errors raised by graph construction, enumeration and the experiment layer.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("enumeration budget exceeded: {required} states required, budget is {budget}")]
    BudgetExceeded { required: u128, budget: u128 },

    #[error("pattern error: {0}")]
    Pattern(String),

    #[error("pattern has {h} vertices, exhaustive search is limited to {limit}")]
    PatternTooLarge { h: usize, limit: usize },

    #[error("malformed graph dump: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_budget(required: u128, budget: u128) -> Result<()> {
    if required > budget {
        Err(Error::BudgetExceeded { required, budget })
    } else {
        Ok(())
    }
}
