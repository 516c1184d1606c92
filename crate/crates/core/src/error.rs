use thiserror::Error;

/// Errors shared by every module of the crate.
///
/// Cap-style errors ([`Error::is_cap_exceeded`]) are loud by design: a search
/// that outgrows its configured budget fails instead of silently truncating.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),
    #[error("unknown symbol token {token:?}")]
    UnknownSymbol { token: String },
    #[error("symbol id {id} does not belong to this alphabet of {size} symbols")]
    ForeignSymbol { id: u32, size: usize },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("word of length {len} is shorter than the required minimum {min}")]
    WordTooShort { len: usize, min: usize },
    #[error("word count cap of {cap} exceeded")]
    WordCapExceeded { cap: usize },
    #[error("class cap of {cap} exceeded after discovering {have} classes")]
    ClassCapExceeded { cap: usize, have: usize },
    #[error("sentential form budget of {cap} exceeded")]
    FormBudgetExceeded { cap: usize },
    #[error("state cap of {cap} exceeded")]
    StateCapExceeded { cap: usize },
    #[error("invalid grammar: {0}")]
    InvalidGrammar(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("malformed json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for budget overruns, false for validation failures.
    pub fn is_cap_exceeded(&self) -> bool {
        matches!(
            self,
            Error::WordCapExceeded { .. }
                | Error::ClassCapExceeded { .. }
                | Error::FormBudgetExceeded { .. }
                | Error::StateCapExceeded { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
