//! Centralized numerical tolerances.
//!
//! Every threshold used by the library lives here so that the verification
//! suites and the CLI share one auditable set of defaults.

/// Relative threshold below which an edge (or the closing edge) counts as
/// vanished, placing the configuration on the collision stratum.
pub const COLLISION_REL: f64 = 1e-10;

/// Gradient norm below which a configuration is accepted as critical.
pub const GRADIENT_TOL: f64 = 1e-9;

/// An eigenvalue counts as zero when `|lambda| < EIGEN_ZERO_REL * max|lambda_i|`;
/// the point is then flagged possibly degenerate instead of being indexed.
pub const EIGEN_ZERO_REL: f64 = 1e-6;

/// Maximum relative discrepancy allowed between numerical second-order jets
/// and their closed forms.
pub const JET_TOL: f64 = 1e-5;

/// Residual threshold for classifying a configuration as equilateral/cyclic.
pub const CLASSIFY_RESIDUAL: f64 = 1e-8;

/// Winding angle sums must land within this distance of an integer turn.
pub const WINDING_INT_TOL: f64 = 1e-6;

/// Distance (relative to perimeter) within which a winding center counts as
/// lying on the boundary.
pub const WINDING_BOUNDARY_REL: f64 = 1e-9;

/// Default congruence tolerance, scaled by the perimeter.
pub const CONGRUENCE_REL: f64 = 1e-9;

/// Lagrange residual threshold certifying constrained criticality.
pub const LAGRANGE_TOL: f64 = 1e-9;

/// A chart is abandoned when the pivot entry's share of the norm drops below
/// `1 / (2 (n-1))`; see `projective::ChartPoint`.
pub fn rechart_threshold(n: usize) -> f64 {
    1.0 / (2.0 * (n as f64 - 1.0))
}
