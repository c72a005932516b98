use alloc::string::String;
use alloc::vec::Vec;

/// Errors raised by the core computations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("subspace is not contained in the ambient subspace")]
    NotASubspace,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid cone: {0}")]
    InvalidCone(String),
    #[error("invalid fan: {0}")]
    InvalidFan(String),
    #[error("ray {0:?} is not in the support of the fan")]
    RayOutsideSupport(Vec<i64>),
    #[error("unknown built-in fan `{0}`")]
    UnknownBuiltin(String),
    #[error("fan is not smooth")]
    NotSmooth,
    #[error("fan is not complete")]
    NotComplete,
    #[error("fan is not simplicial")]
    NotSimplicial,
    #[error("expected a fan of rank {expected}, found rank {found}")]
    WrongRank { expected: usize, found: usize },
    #[error("invalid tropical complex: {0}")]
    InvalidComplex(String),
    #[error("cell {face} is not a face of cell {coface}")]
    NotAFace { face: usize, coface: usize },
    #[error("complex has no cell for the intermediate face {0}")]
    MissingIntermediateCell(String),
    #[error("cell set is not a closed subcomplex")]
    NotASubcomplex,
    #[error("input too large for the Čech oracle: {cells} cells (limit {limit})")]
    OversizedInput { cells: usize, limit: usize },
    #[error("open-star cover is not good: {0}")]
    CoverNotGood(String),
    #[error("weight missing for cone {0}")]
    MissingWeight(usize),
    #[error("weight function is not balanced at {} cone(s)", .0.len())]
    Unbalanced(Vec<usize>),
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("chain is not supported on cells of the complex: {0}")]
    CellsMissing(String),
}

pub type Result<T> = core::result::Result<T, Error>;
