use thiserror::Error;

/// Errors raised by the library.
///
/// Everything except [`Error::InternalConsistency`] is caused by bad input;
/// the CLI maps the former to exit code 2 and the rest to exit code 1.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("n = {n} is not admissible for the partition: row {row} has {part} boxes but n - {row} = {room}")]
    Inadmissible {
        row: usize,
        part: usize,
        n: usize,
        room: i64,
    },

    #[error(
        "n = {n} is below the stabilization index {required} (largest part plus number of parts)"
    )]
    NotLimiting { n: usize, required: usize },

    #[error("invalid netflow: {0}")]
    InvalidNetflow(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("vertex {vertex} out of range 1..={max}")]
    VertexOutOfRange { vertex: usize, max: usize },

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("vertex {0} has no outgoing edge")]
    NoOutEdge(usize),

    #[error("invalid flow: {0}")]
    InvalidFlow(String),

    #[error("invalid spanning choice: {0}")]
    InvalidChoice(String),

    #[error("parts {parts:?} are not a weak composition of {total}")]
    BadMultinomial { total: i64, parts: Vec<i64> },

    #[error("duplicate abscissa {0} in interpolation data")]
    DuplicateAbscissa(String),

    #[error("box ({row}, {col}) lies outside the augmented Young diagram")]
    BoxOutOfRange { row: usize, col: usize },

    #[error("face descriptor has no box in row {0}")]
    RowNotCovered(usize),

    #[error("edge ({0}, {1}) is not an edge of the graph")]
    NotSubgraph(usize, usize),

    #[error("instance too large: {0}")]
    TooLarge(String),

    #[error("truncation bound {bound} too small (need at least {required})")]
    TruncationTooSmall { bound: u32, required: u32 },

    #[error("arithmetic overflow: {0}")]
    Overflow(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal consistency check failed: {0}")]
    InternalConsistency(String),
}

impl Error {
    /// Whether this error signals a bug (two methods disagreeing) rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::InternalConsistency(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
