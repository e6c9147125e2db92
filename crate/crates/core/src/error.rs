use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// Dense oracle state would exceed the configured amplitude budget.
    #[error("dense state needs {needed} amplitudes, limit is {limit}")]
    Resource { needed: u128, limit: u128 },

    /// The full prefix-sum test and the largest-coefficient shortcut gave
    /// different answers. Cannot happen for a valid spectrum.
    #[error("prefix-sum and largest-coefficient criteria disagree for target dimension {target}")]
    CriterionMismatch { target: u64 },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn param_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Parameter(msg.into()))
}
