use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("m must be at least 2, got {0}")]
    InvalidM(i32),

    #[error("k must satisfy 0 <= k <= {m}, got {k}")]
    InvalidK { m: i32, k: i32 },

    #[error("source {0} outside the window 1..={1}")]
    SourceOutOfWindow(i32, i32),

    #[error("duplicate source {0}")]
    DuplicateSource(i32),

    #[error("sources {0} and {1} land in the same orbit")]
    OrbitCollision(i32, i32),

    #[error("group element (neg={neg}, c={c}) invalid for m={m}")]
    InvalidGroupElement { m: i32, neg: bool, c: i32 },

    #[error("elements live over different (m, k)")]
    AmbientMismatch,

    #[error("({0}, {1}) is not a crossing of this diagram")]
    NotACrossing(i32, i32),

    #[error("right states of the first factor differ from left states of the second")]
    NotComposable,

    #[error("element is not homogeneous")]
    NotHomogeneous,

    #[error("state has {got} slots, expected {want}")]
    StateSize { want: usize, got: usize },

    #[error("state entry {0} outside 1..={1}")]
    StateEntryOutOfRange(i32, i32),

    #[error("weight vector has {got} entries, expected {want}")]
    WeightSize { want: usize, got: usize },

    #[error("doubled weight {0} at index {1} not realizable by any positive-weight diagram")]
    WeightNotRealizable(i32, usize),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("boundary equation has no solution")]
    NotABoundary,

    #[error("triple (x, y, w) is not compatible")]
    NotCompatible,

    #[error("states are not interleaved")]
    NotInterleaved,

    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
}
