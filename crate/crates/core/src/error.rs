use thiserror::Error;

use crate::algebra::CoefficientRing;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("coefficient rings differ: {left} vs {right}")]
    CoefficientMismatch {
        left: CoefficientRing,
        right: CoefficientRing,
    },

    #[error("integral tensor product needs a torsion-free factor; compute over a prime field instead")]
    UnsupportedTensor,

    #[error("operation requires prime-field coefficients, got {0}")]
    RequiresField(CoefficientRing),

    #[error("{manifold} has no cohomology model over {ring}")]
    UnsupportedCoefficients {
        manifold: String,
        ring: CoefficientRing,
    },

    #[error("invalid manifold: {0}")]
    InvalidManifold(String),

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("no node with index {0}")]
    UnknownNode(usize),

    #[error("{0}")]
    InvalidSpace(String),

    #[error("prime list is empty")]
    EmptyPrimeList,

    #[error("degree {degree} is outside 1..={top}")]
    DegreeOutOfRange { degree: usize, top: usize },

    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
