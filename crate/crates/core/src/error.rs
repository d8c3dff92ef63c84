use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("variable `{0}` is not bound by the quantifier prefix")]
    UnboundVariable(String),

    #[error("quantifier `{quantifier}` at byte {position} appears inside the matrix; formulas must be prenex")]
    NonPrenex { quantifier: String, position: usize },

    #[error("variable `{0}` is quantified more than once")]
    ShadowedVariable(String),

    #[error("invalid vocabulary: {0}")]
    InvalidVocabulary(String),

    #[error("invalid structure: {0}")]
    InvalidStructure(String),

    #[error("unknown relation symbol `{0}`")]
    UnknownSymbol(String),

    #[error("symbol `{symbol}` has arity {expected} but is used with {found} arguments")]
    ArityMismatch {
        symbol: String,
        expected: usize,
        found: usize,
    },

    #[error("invalid modulator: {0}")]
    InvalidModulator(String),

    #[error("invalid pattern `{0}`: only the letters `a` and `e` are allowed")]
    InvalidPattern(String),

    #[error("structure is not of type `{0}`")]
    TypeMismatch(String),

    #[error("solver `{solver}` does not accept pattern `{pattern}` on type `{structure_type}`")]
    PatternMismatch {
        solver: String,
        pattern: String,
        structure_type: String,
    },

    #[error("node budget of {0} exceeded")]
    NodeBudgetExceeded(u64),

    #[error("time budget exceeded after {0} nodes")]
    TimeBudgetExceeded(u64),

    #[error("invalid source instance: {0}")]
    InvalidInstance(String),

    #[error("unknown {kind} `{name}`")]
    UnknownName { kind: &'static str, name: String },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn syntax(position: usize, message: impl Into<String>) -> Self {
        Error::Syntax {
            position,
            message: message.into(),
        }
    }

    /// True for errors caused by hitting a resource limit rather than bad input.
    pub fn is_resource_limit(&self) -> bool {
        matches!(
            self,
            Error::NodeBudgetExceeded(_) | Error::TimeBudgetExceeded(_)
        )
    }
}
