use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix rows have different lengths")]
    Ragged,
    #[error("Gram matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("Gram matrix is not symmetric")]
    NotSymmetric,
    #[error("bilinear form is degenerate (determinant 0)")]
    Degenerate,
    #[error("rescaling factor must be nonzero")]
    ZeroScale,
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("vector is not isotropic (square {square})")]
    NotIsotropic { square: String },
    #[error("vector or sublattice is not primitive")]
    NotPrimitive,
    #[error("vector does not lie in the given sublattice")]
    NotInSublattice,
    #[error("lattice is not unimodular (determinant {det})")]
    NotUnimodular { det: String },
    #[error("quadratic form q is only defined on even lattices")]
    OddLatticeNoQ,
    #[error("finite module of order {order} exceeds the search bound {bound}")]
    SearchSpaceTooLarge { order: String, bound: u64 },
    #[error("isometry search budget exhausted after {nodes} nodes")]
    BudgetExhausted { nodes: u64 },
    #[error("subset is not a subgroup of the ambient group: {0}")]
    NotSubgroup(String),
    #[error("gcd(2d, n) must be 1 (d = {d}, n = {n})")]
    NotCoprime { d: u64, n: u64 },
    #[error("rank {rank} is unsupported for this computation (max {max})")]
    RankUnsupported { rank: usize, max: usize },
    #[error("Nikulin hypothesis failed: {0}")]
    HypothesisFailed(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("integer overflow: {0}")]
    Overflow(String),
    #[error("internal verification failed: {0}")]
    VerificationFailed(String),
    #[error("malformed input: {0}")]
    Parse(String),
}
