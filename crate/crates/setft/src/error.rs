use crate::set::SubsetMask;

/// Errors shared across the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A dense vector of length 2^n would overflow addressable memory.
    #[error("capacity: 2^{n} values exceed addressable memory")]
    Capacity { n: usize },

    /// The sampled linear system for known-support recovery was singular
    /// even after one resample. Carries the support that was being solved.
    #[error("recovery failed: rank-deficient system over {} frequencies", support.len())]
    RankDeficient { support: Vec<SubsetMask> },

    /// A filter frequency response was too close to zero to divide by.
    /// Reseeding the filter and rerunning is the expected remedy.
    #[error("degenerate filter: |response| < 1e-12 at frequency {frequency}")]
    DegenerateFilter { frequency: SubsetMask },

    /// Relative error is undefined because the reference norm is zero.
    #[error("relative error undefined: reference function is zero on all {samples} samples")]
    ZeroNorm { samples: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
