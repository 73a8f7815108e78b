//! Planar polygon geometry: oriented area, perimeter, winding numbers, the
//! cyclic relabeling action, and constructors for regular stars and complete
//! folds.
//!
//! A polygon is a labeled tuple of points; coincident vertices are legal.
//! Vertices are stored as complex numbers, which keeps rotations and edge
//! vectors one multiplication away.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tol;

/// A labeled planar `n`-gon, `n >= 3`. Vertices may coincide.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Polygon {
    vertices: Vec<Complex64>,
}

/// Which critical configuration a [`StarSpec`] names.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum StarKind {
    /// Regular star with nonzero winding number `w`, `1 <= |w| <= (n-1)/2`.
    Star { w: i32 },
    /// Complete fold: the doubly-traversed segment, even `n` only.
    Fold,
}

/// Symbolic description of a predicted critical configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarSpec {
    pub n: usize,
    pub kind: StarKind,
}

impl StarSpec {
    pub fn star(n: usize, w: i32) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidStarSpec(format!("n = {n} < 3")));
        }
        let wmax = ((n - 1) / 2) as i32;
        if w == 0 || w.abs() > wmax {
            return Err(Error::InvalidStarSpec(format!(
                "winding {w} outside [1, {wmax}] in modulus for n = {n}"
            )));
        }
        Ok(StarSpec { n, kind: StarKind::Star { w } })
    }

    pub fn fold(n: usize) -> Result<Self> {
        if n < 4 || !n.is_multiple_of(2) {
            return Err(Error::InvalidStarSpec(format!(
                "complete fold requires even n >= 4, got {n}"
            )));
        }
        Ok(StarSpec { n, kind: StarKind::Fold })
    }

    pub fn winding(&self) -> Option<i32> {
        match self.kind {
            StarKind::Star { w } => Some(w),
            StarKind::Fold => None,
        }
    }

    /// Builds the canonical unit-perimeter representative.
    pub fn build(&self) -> Polygon {
        match self.kind {
            StarKind::Star { w } => regular_star_unchecked(self.n, w),
            StarKind::Fold => complete_fold_unchecked(self.n),
        }
    }
}

impl Polygon {
    pub fn new(vertices: Vec<Complex64>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::InvalidArgument(format!(
                "a polygon needs at least 3 vertices, got {}",
                vertices.len()
            )));
        }
        Ok(Polygon { vertices })
    }

    pub fn from_xy(points: &[(f64, f64)]) -> Result<Self> {
        Self::new(points.iter().map(|&(x, y)| Complex64::new(x, y)).collect())
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn vertices(&self) -> &[Complex64] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> Complex64 {
        self.vertices[i % self.vertices.len()]
    }

    /// Edge vector from vertex `i` to vertex `i+1` (indices mod `n`).
    pub fn edge(&self, i: usize) -> Complex64 {
        self.vertex(i + 1) - self.vertex(i)
    }

    pub fn centroid(&self) -> Complex64 {
        self.vertices.iter().sum::<Complex64>() / self.vertices.len() as f64
    }

    pub fn translated(&self, t: Complex64) -> Polygon {
        Polygon { vertices: self.vertices.iter().map(|v| v + t).collect() }
    }

    pub fn rotated(&self, angle: f64) -> Polygon {
        let r = Complex64::from_polar(1.0, angle);
        Polygon { vertices: self.vertices.iter().map(|v| v * r).collect() }
    }

    pub fn scaled(&self, s: f64) -> Polygon {
        Polygon { vertices: self.vertices.iter().map(|v| v * s).collect() }
    }

    /// Mirror image across the x-axis. Negates the oriented area.
    pub fn reflected(&self) -> Polygon {
        Polygon { vertices: self.vertices.iter().map(|v| v.conj()).collect() }
    }
}

/// Signed shoelace area; the sign encodes the traversal orientation.
pub fn oriented_area(p: &Polygon) -> f64 {
    let n = p.len();
    let mut twice = 0.0;
    for i in 0..n {
        let a = p.vertex(i);
        let b = p.vertex(i + 1);
        twice += a.re * b.im - b.re * a.im;
    }
    twice / 2.0
}

/// Sum of consecutive edge lengths, closing edge included.
pub fn perimeter(p: &Polygon) -> f64 {
    (0..p.len()).map(|i| p.edge(i).norm()).sum()
}

fn regular_star_unchecked(n: usize, w: i32) -> Polygon {
    let nf = n as f64;
    let r = 1.0 / (2.0 * nf * (PI * w.abs() as f64 / nf).sin());
    let vertices = (0..n)
        .map(|k| Complex64::from_polar(r, TAU * w as f64 * k as f64 / nf))
        .collect();
    Polygon { vertices }
}

/// The regular star `S(n, w)`: equilateral, inscribed in a circle around the
/// origin, winding number `w`, perimeter one. Vertex `k` sits at angle
/// `2 pi w k / n`.
pub fn regular_star(spec: &StarSpec) -> Result<Polygon> {
    match spec.kind {
        StarKind::Star { w } => {
            // StarSpec::star already validated the range.
            StarSpec::star(spec.n, w)?;
            Ok(regular_star_unchecked(spec.n, w))
        }
        StarKind::Fold => Err(Error::InvalidStarSpec(
            "regular_star expects a star, not a fold".into(),
        )),
    }
}

fn complete_fold_unchecked(n: usize) -> Polygon {
    let step = Complex64::new(1.0 / n as f64, 0.0);
    let vertices = (0..n)
        .map(|k| if k % 2 == 0 { Complex64::new(0.0, 0.0) } else { step })
        .collect();
    Polygon { vertices }
}

/// The complete fold on `n` vertices (even `n` only): vertices alternate
/// between the origin and `(1/n, 0)`, so `p_i = p_{i+2}` exactly and the
/// perimeter is one.
pub fn complete_fold(n: usize) -> Result<Polygon> {
    StarSpec::fold(n)?;
    Ok(complete_fold_unchecked(n))
}

/// The cyclic relabeling `sigma`: `(p_1, ..., p_n) -> (p_2, ..., p_n, p_1)`.
pub fn cyclic_shift(p: &Polygon) -> Polygon {
    let mut vertices = p.vertices.clone();
    vertices.rotate_left(1);
    Polygon { vertices }
}

/// Winding number of the closed polygonal path around `center`, via summed
/// signed turn angles. Fails when an edge passes through the center or the
/// angle sum does not land near an integer turn.
pub fn winding_number(p: &Polygon, center: Complex64) -> Result<i32> {
    let n = p.len();
    let scale = perimeter(p).max(f64::MIN_POSITIVE);
    let boundary_tol = tol::WINDING_BOUNDARY_REL * scale;
    for i in 0..n {
        if segment_distance(p.vertex(i), p.vertex(i + 1), center) < boundary_tol {
            return Err(Error::CenterOnBoundary);
        }
    }
    let mut total = 0.0;
    for i in 0..n {
        let a = p.vertex(i) - center;
        let b = p.vertex(i + 1) - center;
        // Signed angle from a to b in (-pi, pi].
        total += (b / a).arg();
    }
    let turns = total / TAU;
    let rounded = turns.round();
    if (turns - rounded).abs() > tol::WINDING_INT_TOL {
        return Err(Error::NonIntegerWinding(turns));
    }
    Ok(rounded as i32)
}

fn segment_distance(a: Complex64, b: Complex64, q: Complex64) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    if len2 == 0.0 {
        return (q - a).norm();
    }
    let t = ((q - a).re * ab.re + (q - a).im * ab.im) / len2;
    let t = t.clamp(0.0, 1.0);
    (q - (a + ab * t)).norm()
}

/// Canonical form modulo rotation and translation: centroid at the origin,
/// first nonzero edge rotated onto the positive real axis.
fn canonical_form(p: &Polygon, edge_tol: f64) -> Option<Vec<Complex64>> {
    let c = p.centroid();
    let shifted: Vec<Complex64> = p.vertices.iter().map(|v| v - c).collect();
    let n = shifted.len();
    let first_edge = (0..n)
        .map(|i| shifted[(i + 1) % n] - shifted[i])
        .find(|e| e.norm() > edge_tol)?;
    let phase = first_edge / first_edge.norm();
    Some(shifted.iter().map(|v| v / phase).collect())
}

/// True iff a rotation plus translation carries the labeled vertices of `p`
/// onto those of `q` within `tol`. Reflections do not count.
pub fn congruent_mod_rotation_translation(p: &Polygon, q: &Polygon, tol: f64) -> bool {
    if p.len() != q.len() {
        return false;
    }
    let edge_tol = tol.max(f64::EPSILON);
    match (canonical_form(p, edge_tol), canonical_form(q, edge_tol)) {
        (Some(cp), Some(cq)) => cp
            .iter()
            .zip(cq.iter())
            .all(|(a, b)| (a - b).norm() <= tol),
        // Fully degenerate polygons (all vertices coincident) are congruent.
        (None, None) => true,
        _ => false,
    }
}

/// Default scale-aware congruence tolerance for a pair of polygons.
pub fn congruence_tol(p: &Polygon) -> f64 {
    tol::CONGRUENCE_REL * perimeter(p).max(1e-300)
}

/// Closed-form oriented area of `S(n, w)` at perimeter one:
/// `sin(2 pi w / n) / (8 n sin^2(pi w / n))`.
pub fn star_area_closed_form(n: usize, w: i32) -> f64 {
    let nf = n as f64;
    let wf = w as f64;
    (TAU * wf / nf).sin() / (8.0 * nf * (PI * wf / nf).sin().powi(2))
}
