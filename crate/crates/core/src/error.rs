use thiserror::Error;

use crate::angle::Angle;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),

    #[error("denominator must be positive")]
    ZeroDenominator,

    #[error("{p}/{q} is not a reduced fraction with 0 <= p < q")]
    NotReduced { p: i64, q: i64 },

    #[error("twist angles differ: {0} vs {1}")]
    ThetaMismatch(Angle, Angle),

    #[error("window half-width {half_width} is smaller than the translation reach {reach}")]
    WindowTooSmall { half_width: usize, reach: u64 },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix contains non-finite entries")]
    NonFinite,

    #[error("chi must lie on the unit circle, got modulus {0}")]
    NotUnimodular(f64),

    #[error("the zero polynomial has Mahler measure -inf")]
    ZeroPolynomial,

    #[error("the specialization of {0} vanishes identically")]
    VanishingSpecialization(&'static str),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("singular value decomposition did not converge")]
    NoConvergence,

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
