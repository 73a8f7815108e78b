//! Criticality of stars under generalized constraints: the p-power
//! side-length constraint `sum a_i^p = const` and the dual problem of
//! extremal perimeter with fixed area.
//!
//! Lagrange conditions are tested on labeled vertex coordinates; the quotient
//! by rotations and translations is handled by projecting the two translation
//! fields and the rotation field out of both gradients.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::functional;
use crate::numeric::{self, Signature};
use crate::polygon::{oriented_area, perimeter, Polygon, StarSpec};
use crate::projective::{chart_at, polygon_to_edgeword};
use crate::tol;

/// What is held fixed in a constrained extremal problem.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum ConstraintKind {
    Perimeter,
    /// `sum a_i^p` over the side lengths, `p > 0`.
    PowerSum { p: f64 },
    Area,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConstraintSpec {
    pub kind: ConstraintKind,
    pub level: f64,
}

impl ConstraintSpec {
    pub fn new(kind: ConstraintKind, level: f64) -> Result<Self> {
        if let ConstraintKind::PowerSum { p } = kind {
            if p <= 0.0 {
                return Err(Error::InvalidArgument(format!("power must be positive, got {p}")));
            }
        }
        if level <= 0.0 && !matches!(kind, ConstraintKind::Area) {
            return Err(Error::InvalidArgument(format!("level must be positive, got {level}")));
        }
        Ok(ConstraintSpec { kind, level })
    }

    /// Constraint of the given kind pinned at the polygon's own value.
    pub fn at(kind: ConstraintKind, poly: &Polygon) -> Result<Self> {
        let level = constraint_value(kind, poly);
        Self::new(kind, level)
    }
}

/// The objective of a constrained extremal problem.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Objective {
    Area,
    Perimeter,
}

fn constraint_value(kind: ConstraintKind, poly: &Polygon) -> f64 {
    match kind {
        ConstraintKind::Perimeter => perimeter(poly),
        ConstraintKind::Area => oriented_area(poly),
        ConstraintKind::PowerSum { p } => {
            (0..poly.len()).map(|i| poly.edge(i).norm().powf(p)).sum()
        }
    }
}

/// Gradient of the shoelace area on vertex coordinates, as one complex
/// number `dF/dx_i + i dF/dy_i` per vertex.
fn grad_area(poly: &Polygon) -> Vec<Complex64> {
    let n = poly.len();
    (0..n)
        .map(|i| {
            let prev = poly.vertex(i + n - 1);
            let next = poly.vertex(i + 1);
            Complex64::new((next.im - prev.im) / 2.0, (prev.re - next.re) / 2.0)
        })
        .collect()
}

fn grad_length_sum(poly: &Polygon, weight: impl Fn(f64) -> f64) -> Vec<Complex64> {
    let n = poly.len();
    (0..n)
        .map(|i| {
            let prev = poly.vertex(i + n - 1);
            let here = poly.vertex(i);
            let next = poly.vertex(i + 1);
            let back = here - prev;
            let fwd = here - next;
            weight(back.norm()) * back / back.norm() + weight(fwd.norm()) * fwd / fwd.norm()
        })
        .collect()
}

fn grad_constraint(kind: ConstraintKind, poly: &Polygon) -> Vec<Complex64> {
    match kind {
        ConstraintKind::Perimeter => grad_length_sum(poly, |_| 1.0),
        ConstraintKind::PowerSum { p } => grad_length_sum(poly, move |a| p * a.powf(p - 1.0)),
        ConstraintKind::Area => grad_area(poly),
    }
}

fn dot(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x.re * y.re + x.im * y.im).sum()
}

fn norm(a: &[Complex64]) -> f64 {
    dot(a, a).sqrt()
}

/// Removes the two translation fields and the rotation field (about the
/// centroid) from a vertex-space gradient.
fn project_out_isometries(poly: &Polygon, grad: &mut [Complex64]) {
    let n = poly.len();
    let c = poly.centroid();
    let mut basis: Vec<Vec<Complex64>> = vec![
        vec![Complex64::new(1.0, 0.0); n],
        vec![Complex64::new(0.0, 1.0); n],
        (0..n).map(|i| Complex64::i() * (poly.vertex(i) - c)).collect(),
    ];
    for field in basis.iter_mut() {
        let nf = norm(field);
        if nf > 0.0 {
            for v in field.iter_mut() {
                *v /= nf;
            }
        }
        let coeff = dot(grad, field);
        for (g, b) in grad.iter_mut().zip(field.iter()) {
            *g -= coeff * b;
        }
    }
}

fn check_smooth_edges(poly: &Polygon, kind: ConstraintKind) -> Result<()> {
    let per = perimeter(poly);
    let min_edge = (0..poly.len()).map(|i| poly.edge(i).norm()).fold(f64::INFINITY, f64::min);
    let floor = match kind {
        // Sub-linear powers lose their derivative faster near a zero edge.
        ConstraintKind::PowerSum { p } if p < 1.0 => 1e-8 * per,
        _ => tol::COLLISION_REL * per,
    };
    if min_edge <= floor {
        return Err(Error::NonSmoothPoint);
    }
    Ok(())
}

/// Norm of the component of the objective's gradient orthogonal to the
/// constraint's gradient, both taken modulo the isometry directions. Zero
/// iff the polygon is a constrained critical point.
pub fn lagrange_residual(
    poly: &Polygon,
    objective: Objective,
    constraint: &ConstraintSpec,
) -> Result<f64> {
    check_smooth_edges(poly, constraint.kind)?;
    let value = constraint_value(constraint.kind, poly);
    let drift = (value - constraint.level).abs();
    if drift > 1e-9 * constraint.level.abs().max(1.0) {
        return Err(Error::ConstraintViolated { expected: constraint.level, found: value });
    }
    let mut g_obj = match objective {
        Objective::Area => grad_area(poly),
        Objective::Perimeter => grad_length_sum(poly, |_| 1.0),
    };
    let mut g_con = grad_constraint(constraint.kind, poly);
    project_out_isometries(poly, &mut g_obj);
    project_out_isometries(poly, &mut g_con);
    let con_norm = norm(&g_con);
    if con_norm < 1e-12 {
        return Err(Error::ZeroConstraintGradient);
    }
    let coeff = dot(&g_obj, &g_con) / (con_norm * con_norm);
    let residual: f64 = g_obj
        .iter()
        .zip(&g_con)
        .map(|(o, c)| (o - coeff * c).norm_sqr())
        .sum::<f64>()
        .sqrt();
    Ok(residual)
}

/// Residuals of the primal problem (area extremal, perimeter fixed) and the
/// dual problem (perimeter extremal, area fixed) at the same polygon.
pub fn dual_critical_check(poly: &Polygon) -> Result<(f64, f64)> {
    check_smooth_edges(poly, ConstraintKind::Perimeter)?;
    let per = perimeter(poly);
    let area = oriented_area(poly);
    if area.abs() < 1e-12 * per * per {
        return Err(Error::ZeroArea);
    }
    let primal = lagrange_residual(
        poly,
        Objective::Area,
        &ConstraintSpec::at(ConstraintKind::Perimeter, poly)?,
    )?;
    let dual = lagrange_residual(
        poly,
        Objective::Perimeter,
        &ConstraintSpec::new(ConstraintKind::Area, area)?,
    )?;
    Ok((primal, dual))
}

/// Morse indices of the primal and dual problems at `S(n, w)`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DualIndexReport {
    pub n: usize,
    pub w: i32,
    pub index_primal: usize,
    /// Signature of the perimeter Hessian reduced to the fixed-area level
    /// set inside the projective chart. No closed form is asserted; the pair
    /// is recorded for empirical study.
    pub index_dual: Option<usize>,
    /// Dimension of the level-set chart: `2n - 5`.
    pub chart_dim: usize,
}

/// Computes the primal index (of `A / P^2`) and the dual index (of `P`
/// restricted to `{A = const}` in the chart, via the reduced Hessian of the
/// Lagrangian) at the star `S(n, w)`.
pub fn dual_index_relation(n: usize, w: i32) -> Result<DualIndexReport> {
    let spec = StarSpec::star(n, w)?;
    let chart = chart_at(&polygon_to_edgeword(&spec.build())?);

    let full = functional::hessian(&chart)?;
    let index_primal = Signature::of(&numeric::symmetric_eigenvalues(&full))
        .morse_index()
        .ok_or_else(|| Error::InvalidArgument(format!("S({n},{w}) flagged degenerate")))?;

    let g_area = DVector::from_vec(functional::area_gradient_in_chart(&chart));
    let g_per = DVector::from_vec(functional::perimeter_gradient_in_chart(&chart)?);
    let step = numeric::gradient_diff_step(&chart.coords);
    let area_grad_at = |coords: &[f64]| {
        let probe = crate::projective::ChartPoint {
            n: chart.n,
            pivot: chart.pivot,
            coords: coords.to_vec(),
        };
        functional::area_gradient_in_chart(&probe)
    };
    let per_grad_at = |coords: &[f64]| {
        let probe = crate::projective::ChartPoint {
            n: chart.n,
            pivot: chart.pivot,
            coords: coords.to_vec(),
        };
        functional::perimeter_gradient_in_chart(&probe)
            .expect("stencil crossed the collision stratum")
    };
    let (h_area, _) = numeric::hessian_from_gradient(area_grad_at, &chart.coords, step);
    let (h_per, _) = numeric::hessian_from_gradient(per_grad_at, &chart.coords, step);

    // Lagrange multiplier from the first-order condition, reduced Hessian on
    // the tangent of the level set {A = const}.
    let lambda = g_per.dot(&g_area) / g_area.dot(&g_area);
    let tangent = numeric::orthogonal_complement(&g_area);
    let reduced: DMatrix<f64> =
        tangent.transpose() * (&h_per - &h_area * lambda) * &tangent;
    let reduced = (&reduced + reduced.transpose()) * 0.5;
    let sig = Signature::of(&numeric::symmetric_eigenvalues(&reduced));
    Ok(DualIndexReport {
        n,
        w,
        index_primal,
        index_dual: sig.morse_index(),
        chart_dim: 2 * n - 5,
    })
}
