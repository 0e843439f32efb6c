use thiserror::Error;

/// Errors surfaced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("value exceeds the f64 range")]
    MagnitudeOverflow,

    #[error("interpolation nodes must be pairwise distinct (node {0} repeated)")]
    DuplicateNode(String),

    #[error("interpolation failed: fewer than {needed} nonsingular nodes among the first {tried} candidates")]
    InterpolationFailure { needed: usize, tried: usize },

    #[error("polygon length must be even, got {0}")]
    OddLength(usize),

    #[error("polygon length {0} exceeds the storage format limit of 64")]
    LengthLimit(usize),

    #[error("invalid step character {0:?}, expected one of D, L, R, U")]
    BadStepChar(char),

    #[error("word is not a closed self-avoiding polygon: {0}")]
    InvalidPolygon(String),

    #[error("C table too small: entry ({i},{j}) requested but max index is {max_index}")]
    TableTooSmall { i: usize, j: usize, max_index: usize },

    #[error("table file format error at line {line}: {msg}")]
    TableFormat { line: usize, msg: String },

    #[error("store format error at byte {offset}: {msg}")]
    StoreFormat { offset: usize, msg: String },

    #[error("words must be sorted ascending and distinct: violation at index {0}")]
    UnsortedWords(usize),

    #[error("word of length {got} in a stream of length-{expected} polygons")]
    StreamMismatch { expected: usize, got: usize },

    #[error("matrix is ill-conditioned (|det| below {threshold:e} of scaled norm); use exact mode")]
    IllConditioned { threshold: f64 },

    #[error("H(n) is undefined for n = 0")]
    TriDomain,

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
