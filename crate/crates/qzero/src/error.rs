use thiserror::Error;

/// Errors shared by the whole crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquareMatrix { rows: usize, cols: usize },
    #[error("matrix does not have full column rank")]
    RankDeficient,
    #[error("lattices span different subspaces")]
    RankMismatch,
    #[error("generator outside the ambient lattice")]
    NotSublattice,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("alpha and beta must both be negative")]
    NotDefinite,
    #[error("order basis is not closed under multiplication")]
    NotClosed,
    #[error("1 is not in the span of the order basis")]
    MissingUnit,
    #[error("order basis does not have rank 4")]
    Degenerate,
    #[error("orders live in different algebras")]
    AlgebraMismatch,
    #[error("coordinate is not in the order")]
    CoordinateNotInOrder,
    #[error("zero vector has no height")]
    ZeroVector,
    #[error("coefficient matrix is not hermitian")]
    NotHermitian,
    #[error("determinant of a split matrix has a nonzero sqrt(alpha) part")]
    NonRationalDeterminant,
    #[error("quadratic form is degenerate on the subspace")]
    DegenerateRestriction,
    #[error("no hyperbolic partner found for an isotropic vector")]
    NoHyperbolicPartner,
    #[error("could not select a D-basis among the zeros")]
    SelectionFailed,
    #[error("enumeration cap {cap} exceeded without finding a zero")]
    CapExceeded { cap: u64 },
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
