use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix has rank {rank} but {cols} columns")]
    ColumnRankDeficient { rank: usize, cols: usize },
    #[error("matrix has no nonzero entry")]
    ZeroMatrix,
    #[error("matrix is singular")]
    Singular,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("endomorphism is not in the image of the Hopf action")]
    NotInImage,
    #[error("action matrix has rank {rank}, expected {expected}")]
    RankDeficient { rank: usize, expected: usize },
    #[error("candidate generator has a non-integral coordinate")]
    NonIntegralBeta,
    #[error("the two extensions are not arithmetically disjoint")]
    NotArithmeticallyDisjoint,
    #[error("group carries no semidirect decomposition")]
    NoDecomposition,
    #[error("degree {degree} exceeds the enumeration cap {cap}")]
    DegreeTooLarge { degree: usize, cap: usize },
    #[error("group order {order} exceeds the classification cap {cap}")]
    OrderTooLarge { order: usize, cap: usize },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("validation failed: {0}")]
    Validation(String),
}
