use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid alphabet: {0}")]
    Alphabet(String),
    #[error("alphabet mismatch between operands")]
    AlphabetMismatch,
    #[error("regex syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown letter {0:?}")]
    UnknownLetter(String),
    #[error("malformed automaton: {0}")]
    Format(String),
    #[error("word {0:?} does not belong to the language")]
    NotInLanguage(String),
    #[error("the language is finite; a numeration system needs an infinite language")]
    FiniteLanguage,
    #[error("value {0} is out of range for this finite language")]
    OutOfRange(String),
    #[error("construction exceeded the state cap of {0}")]
    StateCap(usize),
    #[error("containment violated: {0}")]
    Containment(String),
    #[error("hypothesis not satisfied: {0}")]
    Hypothesis(String),
    #[error("{0} is a perfect square")]
    PerfectSquare(String),
    #[error("{0} is not a perfect square: multiplication by it does not preserve recognizable sets")]
    NotSquare(String),
    #[error("the image is not recognizable: {0}")]
    NotRecognizable(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("singular matrix")]
    SingularMatrix,
}
