use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("carrier mismatch: {0}")]
    CarrierMismatch(String),
    #[error("element {element} does not belong to {semiring}")]
    NotInCarrier { element: String, semiring: String },
    #[error("an ideal needs at least one generator")]
    EmptyGenerators,
    #[error("malformed table: {0}")]
    MalformedTable(String),
    #[error("unsupported on {semiring}: {what}")]
    Unsupported { semiring: String, what: String },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("value too large: {0}")]
    TooLarge(String),
    #[error("arithmetic overflow in {0}")]
    Overflow(String),
    #[error("unknown semiring `{0}`")]
    UnknownSemiring(String),
    #[error("undecided: {0}")]
    Undecided(String),
    #[error("{0}")]
    Parse(#[from] crate::expr::ParseError),
    #[error("evaluation error: {0}")]
    Eval(String),
}

impl Error {
    pub(crate) fn unsupported(semiring: &str, what: impl Into<String>) -> Self {
        Error::Unsupported { semiring: semiring.to_string(), what: what.into() }
    }
}
