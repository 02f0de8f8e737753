use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable count mismatch: {left} vs {right}")]
    VarCountMismatch { left: usize, right: usize },

    #[error("expected a vector of length {expected}, got {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("matrix dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("polynomial is not homogeneous: found terms of degree {0} and {1}")]
    NotHomogeneous(u32, u32),

    #[error("the zero polynomial is not allowed here")]
    ZeroPolynomial,

    #[error("degree {found} is below the minimum {min}")]
    DegreeTooLow { found: u32, min: u32 },

    #[error("contraction of a degree-{from} basis element leaves F^{to}")]
    ContractionLeavesSystem { from: usize, to: usize },

    #[error("invalid degree range {from} -> {to} for a system of rank {rank}")]
    InvalidDegreeRange { from: usize, to: usize, rank: usize },

    #[error("the all-zero point is not a projective point")]
    ZeroPoint,

    #[error("point layout does not match the ambient space")]
    PointLayout,

    #[error("torus parameter must be nonzero")]
    ZeroTorusParameter,

    #[error("unknown catalog entry `{0}`")]
    UnknownCatalogName(String),

    #[error("parameter {value} out of range for `{family}` (allowed {min}..={max})")]
    ParameterOutOfRange {
        family: String,
        value: usize,
        min: usize,
        max: usize,
    },

    #[error("invalid catalog parameter: {0}")]
    InvalidParameter(String),

    #[error("an empty product has no polynomial")]
    EmptyProduct,

    #[error("polynomial is not EKP-homaloidal: {0}")]
    NotEkp(String),
}
