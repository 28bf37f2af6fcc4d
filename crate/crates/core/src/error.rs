use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("incompatible questions: spaces of size {left} and {right}")]
    IncompatibleSpaces { left: usize, right: usize },

    #[error("a possibility space needs at least one world")]
    EmptySpace,

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("independence needs at least {needed} partitions, got {got}")]
    TooFewPartitions { needed: usize, got: usize },

    #[error("the zero gamble is not an admissible assessment")]
    ZeroGamble,

    #[error("invalid probability mass function: {0}")]
    InvalidPmf(String),

    #[error("not maximal: the chain leaves a nonzero gamble with all expectations zero (rank {rank} < {size})")]
    NotMaximal { rank: usize, size: usize },

    #[error("the contradictory element has no atoms or generators here")]
    TopNotAllowed,

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("partitions do not commute")]
    NotCommuting,

    #[error("operation needs a nonempty list")]
    EmptyList,

    #[error("variable index {index} out of range for {count} variables")]
    VariableOutOfRange { index: usize, count: usize },

    #[error("question set is not closed under join")]
    NotJoinClosed,

    #[error("label is not a member of the declared question set")]
    UnknownLabel,

    #[error("label does not support the content")]
    NotSupport,

    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
