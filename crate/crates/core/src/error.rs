use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("negative rational {0}")]
    NegativeRational(String),

    #[error("empty alphabet")]
    EmptyAlphabet,

    #[error("symbol `{0}` is not in the alphabet")]
    UnknownSymbol(String),

    #[error("transition {transition} references unknown state {state}")]
    DanglingState { transition: usize, state: usize },

    #[error("initial state {0} does not exist")]
    BadInitial(usize),

    #[error("guard is not in region form for K={k}: {guard}")]
    NotRegionForm { k: u32, guard: String },

    #[error("automaton is not a 1-IRTA: transition {0} resets on a non-equality guard")]
    NotIrta(usize),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("not a K-acceptor: {0}")]
    NotKAcceptor(String),

    #[error("clock values {x} and {x_prime} are not region-equivalent for K={k}")]
    NotRegionEquivalent { x: String, x_prime: String, k: u32 },

    #[error("value {0} is outside the open unit interval")]
    OutsideUnitInterval(String),

    #[error("word is not half-integral and small: {0}")]
    NotHalfIntegral(String),

    #[error("K or alphabet mismatch: {0}")]
    Mismatch(String),

    #[error("observation table is not closed and consistent")]
    TableNotReady,

    #[error("learning limit exceeded: {0}")]
    LimitExceeded(String),

    #[error("json: {0}")]
    Json(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
