use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("partition must have at least one part")]
    EmptyPartition,

    #[error("partition {0:?} is not weakly decreasing")]
    NotDecreasing(Vec<u32>),

    #[error("cannot parse `{0}` as a comma-separated list of nonnegative integers")]
    Parse(String),

    #[error("length mismatch: lambda has {lambda} parts, mu has {mu}")]
    LengthMismatch { lambda: usize, mu: usize },

    #[error("triangular sequence of order {expected} expected, got order {got}")]
    OrderMismatch { expected: usize, got: usize },

    #[error("triangular sequence of order {p} needs {expected} entries, got {got}")]
    EntryCount { p: usize, expected: usize, got: usize },

    #[error("sequence {entries:?} is not in triangular order with respect to lambda {lambda:?}")]
    NotTriangular { entries: Vec<i64>, lambda: Vec<u32> },

    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("operation requires p = {expected}, got p = {got}")]
    WrongOrder { expected: usize, got: usize },

    #[error("f = {f} outside 0..={max}")]
    FOutOfRange { f: i64, max: i64 },

    #[error("horizontal distance needs the first start strictly north of the second ({0} vs {1})")]
    NotStrictlyNorth(i64, i64),

    #[error("both diagonal lines meet the other path at different lengths ({0} and {1})")]
    AmbiguousDistance(u64, u64),

    #[error("distance between the paths is infinite")]
    InfiniteDistance,

    #[error("swap precondition violated: {0}")]
    SwapPrecondition(String),

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("{0}")]
    Usage(String),
}
