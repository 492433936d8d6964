use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("width mismatch: {0}")]
    WidthMismatch(String),

    /// No bin carried a sample, so the estimator is undefined.
    #[error("no non-empty bin; estimate undefined")]
    NoSample,

    #[error("sketches are not comparable: {0}")]
    IncompatibleSketches(String),

    #[error("cannot densify a sketch whose slots are all empty")]
    EmptySketch,

    #[error("enumeration budget exceeded: {needed} > {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },

    #[error("gave up after {attempts} attempts")]
    RetriesExhausted { attempts: u32 },

    #[error("probability {0} is not dyadic with at most {1} bits")]
    NonDyadic(f64, u32),

    #[error("query key {0:#x} collides with a data key")]
    QueryKeyCollision(u64),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("malformed binary data: {0}")]
    Decode(String),
}

impl Error {
    pub(crate) fn params(msg: impl Into<String>) -> Self {
        Error::InvalidParams(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }

    /// True for the enumeration-guard failures the CLI reports with a distinct exit code.
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::BudgetExceeded { .. })
    }
}
