use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("budget exceeded: {what} needs {needed} records, budget is {budget}")]
    BudgetExceeded {
        what: String,
        needed: usize,
        budget: usize,
    },
    #[error("index sets differ: {0:?} vs {1:?}")]
    IndexSetMismatch(Vec<String>, Vec<String>),
    #[error("invalid groupoid: {0}")]
    InvalidGroupoid(String),
    #[error("invalid functor: {0}")]
    InvalidFunctor(String),
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("support outside basis: {0}")]
    OutOfBasis(String),
    #[error("non-integral multiplicity {0} in character decomposition")]
    NonIntegral(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_budget(what: &str, needed: usize, budget: usize) -> Result<()> {
    if needed > budget {
        return Err(Error::BudgetExceeded {
            what: what.to_string(),
            needed,
            budget,
        });
    }
    Ok(())
}
