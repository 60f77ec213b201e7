use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unsupported Del Pezzo degree {0} (expected 2 or 3)")]
    UnsupportedDegree(u32),
    #[error("dimension mismatch: expected {expected} coefficients, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("{0} is not a root (need D.D = -2 and D.K = 0)")]
    NotARoot(String),
    #[error("{0} is not a blow-down class")]
    NotABlowDown(String),
    #[error("operation requires degree {expected}, lattice has degree {got}")]
    WrongDegree { expected: u32, got: u32 },
    #[error("invalid nodal configuration: {0}")]
    InvalidConfig(String),
    #[error("classes of mixed kinds passed to a partition")]
    MixedKinds,
    #[error("invalid dual graph: {0}")]
    InvalidGraph(String),
    #[error("edge subset is not even at vertex {0}")]
    NotEven(usize),
    #[error("invalid spin table request: {0}")]
    InvalidSpinTable(String),
    #[error("invalid theta characteristic input: {0}")]
    InvalidTheta(String),
    #[error("polynomial variable sets differ: {0:?} vs {1:?}")]
    VariableMismatch(Vec<String>, Vec<String>),
    #[error("polynomial parse error: {0}")]
    Parse(String),
    #[error("degree violation: {0}")]
    Degree(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
}

pub type Result<T> = std::result::Result<T, Error>;
