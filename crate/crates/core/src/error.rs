use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("alphabet must not be empty")]
    EmptyAlphabet,
    #[error("duplicate letter '{0}' in alphabet")]
    DuplicateLetter(char),
    #[error("duplicate state \"{0}\"")]
    DuplicateState(String),
    #[error("unknown state \"{0}\"")]
    UnknownState(String),
    #[error("letter '{0}' is not in the alphabet")]
    ForeignLetter(char),
    #[error("duplicate transition {from} --{head}:{letter}--> {to}")]
    DuplicateTransition {
        from: String,
        head: crate::Head,
        letter: char,
        to: String,
    },
    #[error("automaton is not deterministic (state \"{0}\")")]
    NotDeterministic(String),
    #[error("automaton is not complete (state \"{0}\")")]
    NotComplete(String),
    #[error("invalid BC spec: {0}")]
    InvalidSpec(String),
    #[error("invalid rate: {0}")]
    InvalidRate(String),
    #[error("enumeration needs {needed} membership tests, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
    #[error("{field}: {message}")]
    Parse { field: String, message: String },
    #[error("json: {0}")]
    Json(String),
    #[error("merged states \"{0}\" and \"{1}\" disagree on acceptance")]
    AcceptanceConflict(String, String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
