use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("group order exceeds the enumeration bound {0}")]
    OrderExceeded(usize),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("permutations of different degrees: {0} and {1}")]
    MixedDegrees(usize, usize),

    #[error("{0} is not an element of the group")]
    NotAMember(String),

    #[error("subgroup indices differ: [G:H1] = {0}, [G:H2] = {1}")]
    IndexMismatch(usize, usize),

    #[error("factor degrees sum to {found}, but the matrix has size {expected}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("unsupported factor form: {0}")]
    UnsupportedForm(String),

    #[error("invalid local datum: {0}")]
    InvalidDatum(String),

    #[error("{r} is not a quadratic nonresidue mod {p}")]
    NotNonresidue { r: u64, p: u64 },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("search exhausted after {0} attempts")]
    SearchExhausted(usize),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}
