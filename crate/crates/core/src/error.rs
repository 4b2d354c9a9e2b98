use thiserror::Error;

/// Errors produced by the analysis and simulation routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("at least one user is required")]
    NoUsers,

    #[error("channel gain of user {user} must be positive and finite, got {value}")]
    InvalidGain { user: usize, value: f64 },

    #[error("{name} must be positive and finite, got {value}")]
    NonPositive { name: &'static str, value: f64 },

    #[error("{name} = {value} is outside the domain {domain}")]
    Domain {
        name: &'static str,
        value: f64,
        domain: &'static str,
    },

    #[error("expected exactly {expected} users, got {actual}")]
    UserCount { expected: usize, actual: usize },

    #[error("user count {0} cannot be split into pairs")]
    OddUserCount(usize),

    #[error("empty sample set")]
    EmptySamples,

    #[error("all rates are zero")]
    AllZeroRates,

    #[error("invalid configuration key `{key}`: {reason}")]
    Config { key: String, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn ensure_positive(name: &'static str, value: f64) -> Result<()> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(Error::NonPositive { name, value })
    }
}
