use thiserror::Error;

use crate::guard::SizeGuard;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("good index {index} out of range for {goods} goods")]
    GoodOutOfRange { index: usize, goods: usize },

    #[error("agent index {index} out of range for {agents} agents")]
    AgentOutOfRange { index: usize, agents: usize },

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("invalid instance: {}", .0.join("; "))]
    InvalidInstance(Vec<String>),

    #[error("not a partition: {0}")]
    InvalidPartition(String),

    #[error("instance with m = {m}, n = {n} exceeds the size guard {guard}{hint}")]
    GuardExceeded {
        m: usize,
        n: usize,
        guard: SizeGuard,
        hint: &'static str,
    },

    #[error("epsilon must lie strictly between 0 and 1/2, got {0}")]
    EpsilonOutOfRange(String),

    #[error("the MMS mechanism requires an epsilon")]
    MissingEpsilon,

    #[error("estimate {mu_bar} exceeds the maximin share: {reason}")]
    InvalidEstimate { mu_bar: String, reason: String },

    #[error("search limit reached: {0}")]
    SearchLimit(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
