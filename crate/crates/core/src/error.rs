use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension {0} outside supported range 1..=24")]
    InvalidDim(usize),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimMismatch { expected: usize, found: usize },
    #[error("point index {index} out of range for n={n}")]
    PointOutOfRange { index: u64, n: usize },
    #[error("cannot parse point {0:?}")]
    ParsePoint(String),
    #[error("cannot parse rational {0:?}")]
    ParseRational(String),
    #[error("{op} requires n <= {cap}, got n={n}")]
    DimAboveCap { op: &'static str, cap: usize, n: usize },
    #[error("empty input set")]
    EmptySet,
    #[error("expected a set of size {expected}, got {found}")]
    WrongSize { expected: usize, found: usize },
    #[error("set is not an intersection pattern: {0}")]
    NotAPattern(&'static str),
    #[error("hyperplane has all coefficients zero")]
    ZeroHyperplane,
    #[error("invalid automorphism: {0}")]
    InvalidAutomorphism(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("no cover within budget {budget} after {nodes} nodes (exhaustive: {exhaustive})")]
    BudgetExhausted { budget: usize, nodes: u64, exhaustive: bool },
    #[error("construction produced an invalid cover: {0}")]
    Construction(String),
    #[error("catalog format error: {0}")]
    Format(String),
    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
