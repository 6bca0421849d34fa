use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The parameters lie outside the region where the quantity is defined,
    /// typically because the stability gap `2/n - q^2` is not positive.
    #[error("domain error: {0}")]
    Domain(String),
    /// Free absorption parameters violate the feasibility constraint of the
    /// inequality they parameterize.
    #[error("infeasible parameters: {0}")]
    Feasibility(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn feasibility(msg: impl Into<String>) -> Self {
        Error::Feasibility(msg.into())
    }
}
