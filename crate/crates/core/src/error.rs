use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("space dimension must be at least {min}, got {dim}")]
    DimensionTooSmall { dim: usize, min: usize },

    #[error("invalid exponent p = {0}; expected 1 <= p <= inf")]
    InvalidExponent(f64),

    #[error("non-finite coordinate")]
    NonFinite,

    #[error("vector is numerically zero")]
    ZeroVector,

    #[error("space is not polyhedral")]
    NotPolyhedral,

    #[error("support set would have 2^{zeros} extreme points (limit 2^{limit})")]
    TooManyExtremes { zeros: usize, limit: usize },

    #[error("facet functionals do not span the dual space (rank {rank} < {dim})")]
    DegenerateFacets { rank: usize, dim: usize },

    #[error("the zero operator has no proper norm attainment set")]
    ZeroOperator,

    #[error("norm attainment set has {orbits} sign orbits, expected exactly one")]
    NotSingleOrbit { orbits: usize },

    #[error("norm attainment set was found by ascent and is not certified exact")]
    UncertifiedAttainment,

    #[error("all three spaces must be smooth (l_p with 1 < p < inf)")]
    NotSmoothSpaces,

    #[error("anchor is not a smooth point of its space")]
    NotSmoothAnchor,

    #[error("vector is not on the unit sphere (norm {norm})")]
    NotUnit { norm: f64 },

    #[error("coefficient tensor has shape {found:?}, expected {expected:?}")]
    ShapeMismatch {
        expected: (usize, usize, usize),
        found: (usize, usize, usize),
    },

    #[error("singular basis")]
    SingularBasis,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
}
