use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate block {{{},{},{}}}", block[0], block[1], block[2])]
    DuplicateBlock { block: [usize; 3] },

    #[error("point {point} out of range for order {order}")]
    OutOfRange { point: usize, order: usize },

    #[error("not a valid triple: {{{},{},{}}} has repeated points", points[0], points[1], points[2])]
    InvalidBlock { points: [usize; 3] },

    #[error("difference {a} is not admissible for Z_2^{n}")]
    BadDifference { a: usize, n: u32 },

    #[error("{{{a},{b},{c}}} is not a difference triple for Z_2^{n}")]
    InvalidTriple { a: usize, b: usize, c: usize, n: u32 },

    #[error("order {m} is odd; a 1-factorization needs an even order")]
    OddOrder { m: usize },

    #[error("size mismatch for {what}: expected {expected}, got {got}")]
    SizeMismatch {
        what: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("not a Steiner triple system: {detail}")]
    NotAnSts { detail: String },

    #[error("cardinality mismatch: {detail}")]
    CardinalityMismatch { detail: String },

    #[error("set is not independent: contains block {{{},{},{}}}", block[0], block[1], block[2])]
    NotIndependent { block: [usize; 3] },

    #[error("order {order} exceeds the exhaustive-search limit {limit}")]
    TooLarge { order: usize, limit: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("verification failed for {subject}: {detail}")]
    VerificationFailed { subject: String, detail: String },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
