use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid tree: {0}")]
    InvalidTree(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("{what} limited to n <= {limit}, got n = {requested}")]
    CapExceeded {
        what: &'static str,
        limit: usize,
        requested: usize,
    },

    #[error("size n = {n} is not attainable for offspring support {support:?}")]
    Unattainable { n: usize, support: Vec<usize> },

    #[error("rejection budget exhausted after {attempts} attempts")]
    RejectionBudget { attempts: u64 },

    #[error("count table holds sizes up to {capacity}, need {required}")]
    TableTooSmall { capacity: usize, required: usize },

    #[error("series coefficient diverged at order {order}")]
    Divergent { order: usize },

    #[error("exp requires a zero constant term, got {0}")]
    NonZeroConstant(f64),

    #[error("no root found in bracket: {0}")]
    Bracket(String),

    #[error("invalid weights: {0}")]
    InvalidWeights(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
