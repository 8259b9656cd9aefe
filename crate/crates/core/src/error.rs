use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("generator index must be >= 1")]
    ZeroIndex,
    #[error("letter sign must be +1 or -1, got {0}")]
    BadSign(i64),
    #[error("malformed word token `{0}`")]
    Syntax(String),
    #[error("endomorphism pair is not mutually inverse")]
    NotInverse,
    #[error("map is not a bijection of positive integers: {0}")]
    NotBijective(String),
    #[error("invalid Nielsen generator: {0}")]
    InvalidNielsen(String),
    #[error("support violation: {0}")]
    Support(String),
    #[error("automorphism does not fix x1..x{m}")]
    NotInH { m: u32 },
    #[error("tuple lengths differ ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("tuple must be non-empty")]
    EmptyTuple,
    #[error("unknown group `{0}`")]
    UnknownGroup(String),
    #[error("invalid group table: {0}")]
    InvalidGroup(String),
    #[error("invalid subgroup: {0}")]
    InvalidSubgroup(String),
    #[error("generator x{index} out of range for a point of length {len}")]
    IndexOutOfRange { index: u32, len: usize },
    #[error("configuration needs {points} points, limit is {limit}")]
    TooManyPoints { points: u128, limit: u64 },
    #[error("matrix does not commute with conjugation by U")]
    NotInvariant,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("json: {0}")]
    Json(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
