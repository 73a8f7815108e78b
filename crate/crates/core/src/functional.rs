//! The normalized area functional `A / P^2` on homogeneous edge coordinates:
//! evaluation, analytic first derivatives in chart coordinates, numerical
//! Hessians, and the Clarke non-criticality certificate on the collision
//! stratum.
//!
//! With edges `u_1, ..., u_{n-1}` and closing edge `-(u_1 + ... + u_{n-1})`,
//!
//! ```text
//!   A(u) = 1/2 sum_{i<j} Im(conj(u_i) u_j)
//!   P(u) = |u_1| + ... + |u_{n-1}| + |u_1 + ... + u_{n-1}|
//! ```
//!
//! `A` is homogeneous of degree 2 and `P` of degree 1 under `u -> |l| u`, and
//! both pick up nothing from a global phase, so `A / P^2` descends to
//! `CP^{n-2}`. The factor in `A` is pinned by exact agreement with the
//! shoelace area of the accumulated vertices.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric;
use crate::projective::{embed, ChartPoint, EdgeWord};
use crate::tol;

/// Raw area, raw perimeter, and their scale-invariant ratio `A / P^2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FunctionalValue {
    pub area_raw: f64,
    pub perimeter_raw: f64,
    pub normalized: f64,
}

/// Witness that a single-collision configuration is not Clarke-critical.
///
/// At a configuration with one vanishing edge (reindexed to slot 1) and tail
/// sum `w` of the remaining edges, criticality of `A / P^2` in the collapsed
/// direction would force `P_0^2 |w|^2 + 4 A_0^2 <= 4 A_0^2`. The stored
/// `margin = P_0^2 |w|^2` is the amount by which that fails; positive margin
/// certifies a Lipschitz-regular point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClarkeCertificate {
    pub perimeter0: f64,
    pub area0: f64,
    pub tail: Complex64,
    pub margin: f64,
}

/// `A(u) = 1/2 sum_{i<j} Im(conj(u_i) u_j)` over the `n-1` stored edges.
///
/// Equals the shoelace area of the polygon accumulated from the origin.
pub fn area_homogeneous(e: &EdgeWord) -> f64 {
    area_of_entries(e.entries())
}

fn area_of_entries(u: &[Complex64]) -> f64 {
    // Running prefix sum keeps this O(n): sum_{i<j} Im(conj(u_i) u_j)
    // = sum_j Im(conj(prefix_j) u_j).
    let mut prefix = Complex64::new(0.0, 0.0);
    let mut twice = 0.0;
    for &z in u {
        twice += (prefix.conj() * z).im;
        prefix += z;
    }
    twice / 2.0
}

/// `P(u) = sum |u_k| + |sum u_k|`: perimeter of the accumulated polygon.
pub fn perimeter_homogeneous(e: &EdgeWord) -> f64 {
    perimeter_of_entries(e.entries())
}

fn perimeter_of_entries(u: &[Complex64]) -> f64 {
    let sum: Complex64 = u.iter().sum();
    u.iter().map(|z| z.norm()).sum::<f64>() + sum.norm()
}

/// The triple `(A, P, A/P^2)`.
pub fn normalized_area(e: &EdgeWord) -> Result<FunctionalValue> {
    let area_raw = area_homogeneous(e);
    let perimeter_raw = perimeter_homogeneous(e);
    if perimeter_raw == 0.0 {
        return Err(Error::NullConfiguration);
    }
    Ok(FunctionalValue {
        area_raw,
        perimeter_raw,
        normalized: area_raw / (perimeter_raw * perimeter_raw),
    })
}

/// `A / P^2` in chart coordinates.
pub fn value_in_chart(c: &ChartPoint) -> f64 {
    let e = embed(c);
    let a = area_homogeneous(&e);
    let p = perimeter_homogeneous(&e);
    a / (p * p)
}

/// Analytic chart gradient of the raw area `A` (a quadratic form in the
/// coordinates). Interleaved as `(d/dx_k, d/dy_k)` over non-pivot entries.
pub fn area_gradient_in_chart(c: &ChartPoint) -> Vec<f64> {
    let e = embed(c);
    let u = e.entries();
    let m = u.len();
    // suffix_k = sum_{j>k} u_j, prefix_k = sum_{j<k} u_j.
    let mut prefix = vec![Complex64::new(0.0, 0.0); m];
    for k in 1..m {
        prefix[k] = prefix[k - 1] + u[k - 1];
    }
    let total: Complex64 = u.iter().sum();
    let mut grad = Vec::with_capacity(2 * (m - 1));
    for k in 0..m {
        if k == c.pivot {
            continue;
        }
        let d = (total - prefix[k] - u[k]) - prefix[k];
        grad.push(d.im / 2.0);
        grad.push(-d.re / 2.0);
    }
    grad
}

/// Analytic chart gradient of the raw perimeter `P` (a sum of Euclidean
/// norms). Fails on the collision stratum where some norm loses its
/// derivative.
pub fn perimeter_gradient_in_chart(c: &ChartPoint) -> Result<Vec<f64>> {
    let e = embed(c);
    if !e.is_smooth_point() {
        return Err(Error::NonSmoothPoint);
    }
    let u = e.entries();
    let total: Complex64 = u.iter().sum();
    let closing_dir = total / total.norm();
    let mut grad = Vec::with_capacity(2 * (u.len() - 1));
    for (k, z) in u.iter().enumerate() {
        if k == c.pivot {
            continue;
        }
        let own = z / z.norm();
        grad.push(own.re + closing_dir.re);
        grad.push(own.im + closing_dir.im);
    }
    Ok(grad)
}

/// Analytic chart gradient of `A / P^2` by the quotient rule
/// `(A' P - 2 A P') / P^3`.
pub fn gradient(c: &ChartPoint) -> Result<Vec<f64>> {
    let e = embed(c);
    if !e.is_smooth_point() {
        return Err(Error::NonSmoothPoint);
    }
    let a = area_homogeneous(&e);
    let p = perimeter_homogeneous(&e);
    let ga = area_gradient_in_chart(c);
    let gp = perimeter_gradient_in_chart(c)?;
    let p3 = p * p * p;
    Ok(ga
        .iter()
        .zip(&gp)
        .map(|(da, dp)| (da * p - 2.0 * a * dp) / p3)
        .collect())
}

pub fn gradient_norm(c: &ChartPoint) -> Result<f64> {
    Ok(gradient(c)?.iter().map(|g| g * g).sum::<f64>().sqrt())
}

/// Numerical Hessian of `A / P^2`: central differences of the analytic
/// gradient, symmetrized. Also reports the pre-symmetrization asymmetry
/// residual as a smoothness check.
pub fn hessian_with_residual(c: &ChartPoint) -> Result<(DMatrix<f64>, f64)> {
    // Fail loudly at the center; off-center stencil points falling onto the
    // stratum would be a step-size bug, so let the closure panic there.
    gradient(c)?;
    let h = numeric::gradient_diff_step(&c.coords);
    let grad_at = |coords: &[f64]| {
        let probe = ChartPoint { n: c.n, pivot: c.pivot, coords: coords.to_vec() };
        gradient(&probe).expect("finite-difference stencil crossed the collision stratum")
    };
    Ok(numeric::hessian_from_gradient(grad_at, &c.coords, h))
}

/// Symmetrized numerical Hessian of `A / P^2` in chart coordinates.
pub fn hessian(c: &ChartPoint) -> Result<DMatrix<f64>> {
    Ok(hessian_with_residual(c)?.0)
}

/// Clarke non-criticality certificate at a configuration with exactly one
/// vanishing edge. The vanishing edge is cyclically reindexed to slot 1.
pub fn clarke_certificate(e: &EdgeWord) -> Result<ClarkeCertificate> {
    let collisions = e.collision_indices();
    match collisions.len() {
        0 => return Err(Error::NotOnCollisionStratum),
        1 => {}
        k => return Err(Error::MultipleCollisions(k)),
    }
    let full = e.full_edges();
    let n = full.len();
    let start = collisions[0];
    // Cyclic relabeling of the polygon puts the vanishing edge first; the
    // reindexed word keeps the first n-1 edges of the rotated cycle.
    let rotated: Vec<Complex64> = (0..n - 1).map(|j| full[(start + j) % n]).collect();
    let word = EdgeWord::new(rotated)?;
    let tail: Complex64 = word.entries()[1..].iter().sum();
    if tail.norm() < tol::COLLISION_REL * e.euclidean_norm() {
        return Err(Error::ZeroTail);
    }
    let perimeter0 = perimeter_homogeneous(&word);
    let area0 = area_homogeneous(&word);
    let margin = perimeter0 * perimeter0 * tail.norm_sqr();
    Ok(ClarkeCertificate { perimeter0, area0, tail, margin })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polygon::{self, complete_fold, oriented_area, star_area_closed_form, Polygon, StarSpec};
    use crate::projective::{chart_at, chart_with_pivot, edgeword_to_polygon, polygon_to_edgeword};
    use approx::assert_relative_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn square_word() -> EdgeWord {
        EdgeWord::new(vec![c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0)]).unwrap()
    }

    #[test]
    fn area_of_square_word() {
        assert_relative_eq!(area_homogeneous(&square_word()), 1.0);
    }

    #[test]
    fn collinear_word_has_zero_area() {
        let e = EdgeWord::new(vec![c(1.0, 2.0), c(-0.5, -1.0), c(2.0, 4.0)]).unwrap();
        assert_relative_eq!(area_homogeneous(&e), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn star_area_sign_and_value() {
        let s = StarSpec::star(5, 2).unwrap().build();
        let e = polygon_to_edgeword(&s).unwrap();
        let expected = star_area_closed_form(5, 2);
        assert!(expected > 0.0);
        assert_relative_eq!(area_homogeneous(&e), expected, epsilon = 1e-14);
    }

    #[test]
    fn perimeter_of_square_word_is_four() {
        assert_relative_eq!(perimeter_homogeneous(&square_word()), 4.0);
    }

    #[test]
    fn perimeter_is_absolutely_homogeneous() {
        let e = EdgeWord::new(vec![c(0.3, 0.4), c(-1.0, 0.2), c(0.1, 0.9)]).unwrap();
        let lambda = c(-1.2, 0.7);
        assert_relative_eq!(
            perimeter_homogeneous(&e.scaled(lambda)),
            lambda.norm() * perimeter_homogeneous(&e),
            epsilon = 1e-12
        );
    }

    #[test]
    fn unit_perimeter_star_words_have_unit_perimeter() {
        for (n, w) in [(5usize, 1i32), (7, 3), (9, 4)] {
            let e = polygon_to_edgeword(&StarSpec::star(n, w).unwrap().build()).unwrap();
            assert_relative_eq!(perimeter_homogeneous(&e), 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn normalized_area_of_square_and_fold() {
        let v = normalized_area(&square_word()).unwrap();
        assert_relative_eq!(v.normalized, 1.0 / 16.0, epsilon = 1e-14);
        let f = polygon_to_edgeword(&complete_fold(6).unwrap()).unwrap();
        assert_relative_eq!(normalized_area(&f).unwrap().normalized, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn normalized_area_of_regular_ngon_matches_isoperimetric_value() {
        for n in 3..=10usize {
            let e = polygon_to_edgeword(&StarSpec::star(n, 1).unwrap().build()).unwrap();
            let nf = n as f64;
            let expected = 1.0 / (4.0 * nf * (std::f64::consts::PI / nf).tan());
            assert_relative_eq!(normalized_area(&e).unwrap().normalized, expected, epsilon = 1e-13);
        }
        // Spot check the triangle closed form sqrt(3)/36.
        let e = polygon_to_edgeword(&StarSpec::star(3, 1).unwrap().build()).unwrap();
        assert_relative_eq!(
            normalized_area(&e).unwrap().normalized,
            3f64.sqrt() / 36.0,
            epsilon = 1e-14
        );
    }

    #[test]
    fn shoelace_equivalence_on_a_generic_polygon() {
        let p = Polygon::from_xy(&[(0.1, -0.3), (2.0, 0.4), (1.1, 2.2), (-0.7, 1.0), (-1.0, -0.5)])
            .unwrap();
        let e = polygon_to_edgeword(&p).unwrap();
        assert_relative_eq!(area_homogeneous(&e), oriented_area(&p), epsilon = 1e-12);
        // And A/P^2 equals the area of the unit-perimeter representative.
        let v = normalized_area(&e).unwrap();
        let unit = edgeword_to_polygon(&e).unwrap();
        assert_relative_eq!(v.normalized, oriented_area(&unit), epsilon = 1e-13);
    }

    #[test]
    fn gradient_vanishes_at_stars_and_folds() {
        for n in 4..=12usize {
            let mut words = vec![];
            for w in 1..=((n - 1) / 2) as i32 {
                words.push(polygon_to_edgeword(&StarSpec::star(n, w).unwrap().build()).unwrap());
                words.push(polygon_to_edgeword(&StarSpec::star(n, -w).unwrap().build()).unwrap());
            }
            if n % 2 == 0 {
                words.push(polygon_to_edgeword(&complete_fold(n).unwrap()).unwrap());
            }
            for e in words {
                let g = gradient_norm(&chart_at(&e)).unwrap();
                assert!(g < 1e-9, "n={n}: gradient norm {g}");
            }
        }
    }

    #[test]
    fn gradient_nonzero_at_a_skew_quadrilateral() {
        let p = Polygon::from_xy(&[(0.0, 0.0), (2.0, 0.0), (2.2, 1.0), (0.0, 1.5)]).unwrap();
        let g = gradient_norm(&chart_at(&polygon_to_edgeword(&p).unwrap())).unwrap();
        assert!(g > 1e-3, "gradient norm {g}");
    }

    #[test]
    fn gradient_refuses_collision_stratum() {
        let e = EdgeWord::new(vec![c(1e-14, 0.0), c(1.0, 0.0), c(0.0, 1.0)]).unwrap();
        let ch = chart_with_pivot(&e, 1).unwrap();
        assert_eq!(gradient(&ch), Err(Error::NonSmoothPoint));
    }

    #[test]
    fn hessian_is_nearly_symmetric_before_symmetrization() {
        let e = EdgeWord::new(vec![c(1.0, 0.1), c(-0.2, 0.9), c(-0.8, 0.05), c(0.1, -0.9)]).unwrap();
        let (_, residual) = hessian_with_residual(&chart_at(&e)).unwrap();
        assert!(residual < 1e-5, "asymmetry {residual}");
    }

    #[test]
    fn hessian_at_convex_ngon_is_negative_definite() {
        for n in [4usize, 5, 6] {
            let e = polygon_to_edgeword(&StarSpec::star(n, 1).unwrap().build()).unwrap();
            let h = hessian(&chart_at(&e)).unwrap();
            let ev = numeric::symmetric_eigenvalues(&h);
            assert!(ev.iter().all(|&l| l < 0.0), "n={n}: {ev:?}");
            assert_eq!(ev.len(), 2 * n - 4);
        }
    }

    #[test]
    fn hessian_signature_at_pentagram() {
        let e = polygon_to_edgeword(&StarSpec::star(5, 2).unwrap().build()).unwrap();
        let h = hessian(&chart_at(&e)).unwrap();
        let sig = numeric::Signature::of(&numeric::symmetric_eigenvalues(&h));
        assert_eq!(sig.morse_index(), Some(4));
        assert_eq!(sig.positive, 2);
    }

    #[test]
    fn chart_independence_of_signature() {
        let e = polygon_to_edgeword(&StarSpec::star(6, 2).unwrap().build()).unwrap();
        let mut seen = None;
        for pivot in 0..e.entries().len() {
            let ch = chart_with_pivot(&e, pivot).unwrap();
            let h = hessian(&ch).unwrap();
            let sig = numeric::Signature::of(&numeric::symmetric_eigenvalues(&h));
            let index = sig.morse_index().expect("star should be non-degenerate");
            match seen {
                None => seen = Some(index),
                Some(prev) => assert_eq!(prev, index, "pivot {pivot}"),
            }
        }
    }

    #[test]
    fn clarke_certificate_on_duplicated_square_vertex() {
        // Square with one vertex doubled: a 5-gon with one zero edge.
        let p = Polygon::from_xy(&[(0.0, 0.0), (0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)])
            .unwrap();
        let e = polygon_to_edgeword(&p).unwrap();
        let cert = clarke_certificate(&e).unwrap();
        assert!(cert.margin > 0.0);
        assert_relative_eq!(cert.perimeter0, 4.0, epsilon = 1e-12);
        assert_relative_eq!(cert.area0, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn clarke_certificate_on_star_with_doubled_vertex() {
        let s = StarSpec::star(6, 1).unwrap().build();
        let mut v = s.vertices().to_vec();
        v.insert(2, v[2]);
        let e = polygon_to_edgeword(&Polygon::new(v).unwrap()).unwrap();
        let cert = clarke_certificate(&e).unwrap();
        assert!(cert.margin > 0.0);
    }

    #[test]
    fn clarke_certificate_error_paths() {
        let smooth = square_word();
        assert_eq!(clarke_certificate(&smooth), Err(Error::NotOnCollisionStratum));
        let multi = EdgeWord::new(vec![c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0), c(0.0, 1.0)]).unwrap();
        assert_eq!(clarke_certificate(&multi), Err(Error::MultipleCollisions(2)));
        // Zero tail forces the closing edge to vanish too, so an out-and-back
        // segment is caught as a double collision.
        let degenerate = EdgeWord::new(vec![c(0.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0)]).unwrap();
        assert_eq!(clarke_certificate(&degenerate), Err(Error::MultipleCollisions(2)));
    }

    #[test]
    fn normalized_respects_isoperimetric_circle_bound() {
        let e = polygon_to_edgeword(&StarSpec::star(12, 1).unwrap().build()).unwrap();
        let v = normalized_area(&e).unwrap();
        assert!(v.normalized.abs() <= 1.0 / (4.0 * std::f64::consts::PI) + 1e-12);
    }

    #[test]
    fn scale_invariance_of_normalized_area() {
        let e = EdgeWord::new(vec![c(0.3, 0.4), c(-1.0, 0.2), c(0.1, 0.9), c(0.4, -0.6)]).unwrap();
        let base = normalized_area(&e).unwrap().normalized;
        for lambda in [c(2.0, 0.0), c(0.0, -3.0), c(1.4, 2.2), c(-0.01, 0.005)] {
            assert_relative_eq!(
                normalized_area(&e.scaled(lambda)).unwrap().normalized,
                base,
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn fold_word_is_smooth_and_critical() {
        let f = polygon_to_edgeword(&complete_fold(8).unwrap()).unwrap();
        assert!(f.is_smooth_point());
        assert!(gradient_norm(&chart_at(&f)).unwrap() < 1e-10);
        let _ = polygon::perimeter(&complete_fold(8).unwrap());
    }
}
