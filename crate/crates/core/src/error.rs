use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("invalid flag type: {0}")]
    InvalidFlagType(String),
    #[error("permutation {perm} is not in W^a for flag type {flag_type}")]
    NotInWa { perm: String, flag_type: String },
    #[error("invalid Schubert data: {0}")]
    InvalidSchubertData(String),
    #[error("variable count mismatch: {0} vs {1}")]
    VariableMismatch(usize, usize),
    #[error("too many variables: {0} (at most {max})", max = crate::algebra::MAX_VARS)]
    TooManyVariables(usize),
    #[error("zero polynomial where a nonzero one is required")]
    ZeroPolynomial,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("positive-dimensional ideal")]
    PositiveDimensional,
    #[error("necklace does not match the conditions: {0}")]
    NecklaceMismatch(String),
    #[error("point pool exhausted: cannot draw {requested} distinct nonzero points from [-{bound}, {bound}]")]
    PoolExhausted { requested: usize, bound: u64 },
    #[error("invalid config: {0}")]
    Config(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
