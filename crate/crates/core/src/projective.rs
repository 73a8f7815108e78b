//! The configuration space of `n`-gons as `CP^{n-2}`: homogeneous edge
//! coordinates, affine charts, and the Fubini-Study metric.
//!
//! A polygon modulo translation is the `(n-1)`-tuple of its first `n-1` edge
//! vectors read as complex numbers; the closing edge is the negated sum.
//! Rescaling by a nonzero complex number rotates and scales the polygon, so
//! the projective class captures the shape.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polygon::{perimeter, Polygon};
use crate::tol;

/// Homogeneous edge coordinates: `n-1` complex numbers, not all zero.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdgeWord {
    u: Vec<Complex64>,
}

/// Real local coordinates on the affine chart `{u_pivot = 1}`.
///
/// `coords` interleaves real and imaginary parts of the `n-2` non-pivot
/// entries, so the chart dimension is `2(n-2)`, the real dimension of
/// `CP^{n-2}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChartPoint {
    pub n: usize,
    pub pivot: usize,
    pub coords: Vec<f64>,
}

impl EdgeWord {
    pub fn new(u: Vec<Complex64>) -> Result<Self> {
        if u.len() < 2 {
            return Err(Error::InvalidArgument(format!(
                "an edge word needs at least 2 entries, got {}",
                u.len()
            )));
        }
        if u.iter().all(|z| z.norm() == 0.0) {
            return Err(Error::NullPolygon);
        }
        Ok(EdgeWord { u })
    }

    /// Number of polygon vertices `n` (one more than the stored entries).
    pub fn n(&self) -> usize {
        self.u.len() + 1
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.u
    }

    /// The implied closing edge `-(u_1 + ... + u_{n-1})`.
    pub fn closing_edge(&self) -> Complex64 {
        -self.u.iter().sum::<Complex64>()
    }

    /// All `n` edges of the closed polygon, closing edge last.
    pub fn full_edges(&self) -> Vec<Complex64> {
        let mut e = self.u.clone();
        e.push(self.closing_edge());
        e
    }

    pub fn euclidean_norm(&self) -> f64 {
        self.u.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn scaled(&self, lambda: Complex64) -> EdgeWord {
        EdgeWord { u: self.u.iter().map(|z| z * lambda).collect() }
    }

    pub fn conjugated(&self) -> EdgeWord {
        EdgeWord { u: self.u.iter().map(|z| z.conj()).collect() }
    }

    /// Indices (into the `n` full edges) whose length falls below the
    /// collision threshold. Nonempty means the configuration has colliding
    /// consecutive vertices and `A/P^2` is not differentiable there.
    pub fn collision_indices(&self) -> Vec<usize> {
        let scale = self.euclidean_norm();
        self.full_edges()
            .iter()
            .enumerate()
            .filter(|(_, e)| e.norm() < tol::COLLISION_REL * scale)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn is_smooth_point(&self) -> bool {
        self.collision_indices().is_empty()
    }
}

/// Edge word of a polygon: `u_k = p_{k+1} - p_k`, `k = 1..n-1`.
pub fn polygon_to_edgeword(p: &Polygon) -> Result<EdgeWord> {
    let u: Vec<Complex64> = (0..p.len() - 1).map(|i| p.edge(i)).collect();
    if u.iter().all(|z| z.norm() == 0.0) {
        return Err(Error::NullPolygon);
    }
    EdgeWord::new(u)
}

/// Unit-perimeter representative of the class of `e`: vertices accumulated
/// from the origin, rescaled by the positive factor `1/P(u)`.
pub fn edgeword_to_polygon(e: &EdgeWord) -> Result<Polygon> {
    let mut vertices = Vec::with_capacity(e.n());
    let mut q = Complex64::new(0.0, 0.0);
    vertices.push(q);
    for &u in e.entries() {
        q += u;
        vertices.push(q);
    }
    let p = Polygon::new(vertices)?;
    let per = perimeter(&p);
    if per == 0.0 {
        return Err(Error::NullConfiguration);
    }
    Ok(p.scaled(1.0 / per))
}

/// Canonical representative: Euclidean norm one, phase fixed so the
/// largest-modulus entry is real positive. Idempotent.
pub fn normalize(e: &EdgeWord) -> EdgeWord {
    let norm = e.euclidean_norm();
    let k = argmax_modulus(e.entries());
    let phase = e.entries()[k] / e.entries()[k].norm();
    e.scaled(phase.conj() / norm)
}

fn argmax_modulus(u: &[Complex64]) -> usize {
    let mut best = 0;
    for (i, z) in u.iter().enumerate() {
        if z.norm_sqr() > u[best].norm_sqr() {
            best = i;
        }
    }
    best
}

/// Angular distance between the complex lines spanned by `e1` and `e2`:
/// `arccos(|<e1, e2>| / (|e1| |e2|))`, in `[0, pi/2]`.
pub fn fubini_study_distance(e1: &EdgeWord, e2: &EdgeWord) -> f64 {
    assert_eq!(e1.n(), e2.n(), "edge words of different length");
    let inner: Complex64 = e1
        .entries()
        .iter()
        .zip(e2.entries())
        .map(|(a, b)| a.conj() * b)
        .sum();
    let c = inner.norm() / (e1.euclidean_norm() * e2.euclidean_norm());
    c.min(1.0).acos()
}

/// Chart around `e`: pivot = largest-modulus entry (lowest index on ties),
/// coordinates = the remaining entries divided by the pivot entry.
pub fn chart_at(e: &EdgeWord) -> ChartPoint {
    let pivot = argmax_modulus(e.entries());
    chart_with_pivot(e, pivot).expect("argmax pivot entry cannot vanish")
}

/// Chart with an explicitly chosen pivot entry.
pub fn chart_with_pivot(e: &EdgeWord, pivot: usize) -> Result<ChartPoint> {
    let p = e.entries()[pivot];
    if p.norm() == 0.0 {
        return Err(Error::InvalidArgument(format!(
            "pivot entry {pivot} vanishes; not in this chart's domain"
        )));
    }
    let mut coords = Vec::with_capacity(2 * (e.n() - 2));
    for (i, z) in e.entries().iter().enumerate() {
        if i == pivot {
            continue;
        }
        let z = z / p;
        coords.push(z.re);
        coords.push(z.im);
    }
    Ok(ChartPoint { n: e.n(), pivot, coords })
}

/// Reinserts `1` at the pivot position; inverse of [`chart_at`] on its domain.
pub fn embed(c: &ChartPoint) -> EdgeWord {
    let mut u = Vec::with_capacity(c.n - 1);
    let mut it = c.coords.chunks_exact(2);
    for i in 0..c.n - 1 {
        if i == c.pivot {
            u.push(Complex64::new(1.0, 0.0));
        } else {
            let pair = it.next().expect("chart coords length mismatch");
            u.push(Complex64::new(pair[0], pair[1]));
        }
    }
    EdgeWord { u }
}

impl ChartPoint {
    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// True once the pivot entry's share of the norm has dropped below the
    /// re-charting threshold; the solver then moves to a fresh chart.
    pub fn needs_rechart(&self) -> bool {
        let e = embed(self);
        1.0 / e.euclidean_norm() < tol::rechart_threshold(self.n)
    }
}
