use crate::poly::PolyError;
use crate::sets::expr::ParseError;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("no feasible point found; the set appears to be empty")]
    EmptySet,
    #[error("point {0:?} is not feasible")]
    Infeasible(Vec<f64>),
    #[error("dense sphere sampling supports dimensions 1..=4, got {0}")]
    UnsupportedDimension(usize),
    #[error("form is not homogeneous of degree >= 1")]
    NotHomogeneous,
    #[error("invalid weights: {0}")]
    BadWeights(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("stability is only probed for ZeroOnly or Empty classifications, base is Unbounded")]
    UnstableBase,
    #[error("cone matrix is rank deficient")]
    RankDeficient,
    #[error("sample count must be positive")]
    NoSamples,
    #[error("no feasible sample in the search box")]
    NoFeasibleSample,
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
