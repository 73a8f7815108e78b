//! Error type shared across the library.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("invalid star spec: {0}")]
    InvalidStarSpec(String),
    #[error("all edges vanish; the polygon carries no projective point")]
    NullPolygon,
    #[error("perimeter is zero; all vertices coincide")]
    NullConfiguration,
    #[error("an edge passes through the winding center")]
    CenterOnBoundary,
    #[error("winding angle sum {0} is not close to an integer multiple of 2*pi")]
    NonIntegerWinding(f64),
    #[error("configuration lies on the collision stratum; A/P^2 is not differentiable here")]
    NonSmoothPoint,
    #[error("no edge vanishes; the configuration is a smooth point")]
    NotOnCollisionStratum,
    #[error("{0} edges vanish simultaneously; the one-collision certificate does not apply")]
    MultipleCollisions(usize),
    #[error("the tail sum of the non-vanishing edges is zero; certificate undefined")]
    ZeroTail,
    #[error("iteration did not converge within {0} steps")]
    NoConvergence(usize),
    #[error("trajectory persistently enters the collision stratum")]
    HitNonSmoothStratum,
    #[error("closure constraint is singular at this configuration")]
    ClosureSingular,
    #[error("constraint gradient vanishes; the Lagrange condition is ill-posed")]
    ZeroConstraintGradient,
    #[error("constraint value {found} differs from the required level {expected}")]
    ConstraintViolated { expected: f64, found: f64 },
    #[error("oriented area is zero; the dual problem is degenerate here")]
    ZeroArea,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
