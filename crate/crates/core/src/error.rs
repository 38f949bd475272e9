use thiserror::Error;

/// Errors produced by the library.
///
/// `Structural` marks a violated mathematical invariant; seeing one means a bug,
/// not bad input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unsupported type label `{0}`")]
    UnsupportedLabel(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("vector {0} is isotropic for the form")]
    Isotropic(String),
    #[error("reflection of {xi} in {alpha} is not integral")]
    NotIntegral { alpha: String, xi: String },
    #[error("{0} is not a real root")]
    NotARealRoot(String),
    #[error("element is not a reflection")]
    NotAReflection,
    #[error("invalid permutation {0:?}")]
    InvalidPermutation(Vec<usize>),
    #[error("the Weyl group of {0} is infinite")]
    InfiniteGroup(String),
    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),
    #[error("element is not in the lattice")]
    NotInLattice,
    #[error("braid generator index {index} out of range for {len} strands")]
    BraidIndex { index: usize, len: usize },
    #[error("operation not available for {0}")]
    WrongKind(String),
    #[error("knitting window exhausted at level {0}")]
    Window(i64),
    #[error("invalid window {0}")]
    InvalidWindow(String),
    #[error("structural error: {0}")]
    Structural(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
