use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("integer overflow in exact arithmetic")]
    Overflow,
    #[error("the zero vector has no primitive direction")]
    ZeroVector,
    #[error("a matrix needs at least one row and one column")]
    EmptyMatrix,
    #[error("expected {expected} entries, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("ray {0} is not a primitive lattice vector")]
    NotPrimitive(usize),
    #[error("a fan in dimension {dim} needs {} rays, found {count}", dim + 1)]
    WrongCount { dim: usize, count: usize },
    #[error("rays span a space of rank {rank}, expected {dim}")]
    NotSpanning { rank: usize, dim: usize },
    #[error("no strictly positive relation among the rays; 0 is not interior to their convex hull")]
    NoPositiveRelation,
    #[error("rays {0} and {1} coincide")]
    DuplicateRay(usize, usize),
    #[error("cone {cone} references ray {index}, but only {rays} rays exist")]
    InvalidConeIndex { cone: usize, index: usize, rays: usize },
    #[error("fan has {rays} rays in dimension {dim}; the Picard rank formula needs at least {dim}")]
    Underflow { rays: usize, dim: usize },

    #[error("weight {0} is not a positive integer")]
    NonPositiveWeight(usize),
    #[error("a weight vector needs at least two entries")]
    TooFewWeights,

    #[error("modulus must be at least 1, got {0}")]
    InvalidModulus(i64),
    #[error("gcd of numerators and modulus is {gcd}; the extension has index smaller than the modulus")]
    DegenerateExtension { gcd: i64 },
    #[error("exponent difference {difference} is not a unit modulo {r}")]
    NotFreeInCodim1 { r: i64, difference: i64 },
    #[error("(r = {r}, a = {a}) violates gcd(a, r) = gcd(a + 1, r) = 1")]
    InvalidNormalForm { r: i64, a: i64 },
    #[error("expected a fan of dimension {expected}, found {found}")]
    WrongDimension { expected: usize, found: usize },
    #[error("universal cover has weights {weights:?}, not those of the projective plane")]
    CoverNotP2 { weights: Vec<i64> },
}

impl Error {
    /// Stable machine-readable name, used by the CLI error objects.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Overflow => "Overflow",
            Error::ZeroVector => "ZeroVector",
            Error::EmptyMatrix => "EmptyMatrix",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::NotPrimitive(_) => "NotPrimitive",
            Error::WrongCount { .. } => "WrongCount",
            Error::NotSpanning { .. } => "NotSpanning",
            Error::NoPositiveRelation => "NoPositiveRelation",
            Error::DuplicateRay(..) => "DuplicateRay",
            Error::InvalidConeIndex { .. } => "InvalidConeIndex",
            Error::Underflow { .. } => "Underflow",
            Error::NonPositiveWeight(_) => "NonPositiveWeight",
            Error::TooFewWeights => "TooFewWeights",
            Error::InvalidModulus(_) => "InvalidModulus",
            Error::DegenerateExtension { .. } => "DegenerateExtension",
            Error::NotFreeInCodim1 { .. } => "NotFreeInCodim1",
            Error::InvalidNormalForm { .. } => "InvalidNormalForm",
            Error::WrongDimension { .. } => "WrongDimension",
            Error::CoverNotP2 { .. } => "CoverNotP2",
        }
    }
}
