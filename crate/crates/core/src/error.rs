use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("not an exact rational (expected `p/q` or an integer): {0:?}")]
    Rational(String),
    #[error("malformed polynomial: {0:?}")]
    Polynomial(String),
    #[error("malformed expression at token {pos}: {msg}")]
    Expression { pos: usize, msg: String },
    #[error("bad identity corpus: {0}")]
    Corpus(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("generator index {index} exceeds the configured bound {limit}")]
    IndexOutOfRange { index: i128, limit: i64 },
    #[error("word of length {len} exceeds the configured bound {limit}")]
    WordTooLong { len: usize, limit: usize },
    #[error("level {level} exceeds the configured bound {limit}")]
    LevelTooHigh { level: usize, limit: usize },
    #[error(transparent)]
    Parse(#[from] ParseError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
