//! Planar polygons with fixed perimeter, their configuration space CP^{n-2},
//! and the critical points of the oriented-area functional.
//!
//! The library models the space of planar `n`-gons of perimeter one (modulo
//! rotations and translations) through homogeneous complex edge coordinates,
//! evaluates the scale-invariant functional `A / P^2` together with its
//! analytic gradient and numerical Hessian, and locates/classifies all of its
//! critical points: the regular stars `S(n, w)` and, for even `n`, the
//! complete fold.
//!
//! Module map:
//! - [`polygon`]: exact planar polygon geometry (area, perimeter, winding
//!   numbers, star and fold constructors, congruence).
//! - [`projective`]: homogeneous edge coordinates, affine charts, and the
//!   Fubini-Study metric used for deduplication.
//! - [`functional`]: the normalized area `A / P^2`, its derivatives, and the
//!   Clarke non-criticality certificate at collision configurations.
//! - [`solver`]: Newton search for all critical points, Morse index tables,
//!   and gradient-flow experiments.
//! - [`submanifold`]: relative Morse data on the cyclic and equilateral
//!   submanifolds, including closed-form second-order jets.
//! - [`extensions`]: criticality under p-power side-length constraints and
//!   the dual fixed-area problem.

pub mod error;
pub mod extensions;
pub mod functional;
pub mod numeric;
pub mod polygon;
pub mod projective;
pub mod solver;
pub mod submanifold;
pub mod tol;

pub use error::{Error, Result};
pub use polygon::{Polygon, StarKind, StarSpec};
pub use projective::{ChartPoint, EdgeWord};
