use thiserror::Error;

/// Errors produced by word parsing, presentation construction and the
/// graph/search machinery built on top of them.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {position}: unexpected token `{token}`")]
    Syntax { position: usize, token: String },
    #[error("rank must be at least 1, got {0}")]
    Rank(i64),
    #[error("the empty word is not allowed here")]
    EmptyWord,
    #[error("word `{0}` is not cyclically reduced")]
    NotCyclicallyReduced(String),
    #[error("word has rank {word} but the presentation has {expected} generators")]
    RankMismatch { expected: u32, word: u32 },
    #[error("word `{0}` is a proper power")]
    ProperPower(String),
    #[error("word must have length at least {min}, got {got}")]
    TooShort { min: usize, got: usize },
    #[error("presentation is orientable, no non-orientable normal form exists")]
    NotNonOrientable,
    #[error("difference multisets: {0}")]
    Multisets(String),
    #[error("graph has {got} vertices, isomorphism testing is capped at {cap}")]
    SizeCap { got: usize, cap: usize },
    #[error("enumeration needs {needed} raw candidates, budget is {budget}")]
    Budget { needed: u128, budget: u128 },
    #[error("perfect difference set needs at least 2 elements, got {0}")]
    DifferenceSetSize(usize),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
