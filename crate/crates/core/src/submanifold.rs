//! Relative Morse data on the two distinguished submanifolds through a
//! regular star: the cyclic polygons (inscribed in a circle, dimension
//! `n-1`) and the equilateral polygons (all edges equal, dimension `n-3`),
//! together with the closed-form second-order jets on the cyclic space and
//! the Sylvester-style index consistency checks.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::functional;
use crate::numeric::{self, Signature};
use crate::polygon::{oriented_area, perimeter, Polygon, StarKind, StarSpec};
use crate::projective::{chart_with_pivot, chart_at, polygon_to_edgeword};

/// Chart on the cyclic polygons: vertex angles `phi_2, ..., phi_n` on the
/// unit circle, with `phi_1 = 0` fixed to kill rotation. Dimension `n-1`.
///
/// The unit radius is legitimate because `A / P^2` is scale-invariant.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CyclicChartPoint {
    pub n: usize,
    pub phases: Vec<f64>,
}

impl CyclicChartPoint {
    pub fn new(n: usize, phases: Vec<f64>) -> Result<Self> {
        if phases.len() != n - 1 {
            return Err(Error::InvalidArgument(format!(
                "cyclic chart for n = {n} needs {} phases, got {}",
                n - 1,
                phases.len()
            )));
        }
        Ok(CyclicChartPoint { n, phases })
    }

    /// Chart point of the star `S(n, w)`: `phi_k = 2 pi w (k-1) / n`.
    pub fn star(n: usize, w: i32) -> Result<Self> {
        StarSpec::star(n, w)?;
        let phases = (1..n).map(|k| TAU * w as f64 * k as f64 / n as f64).collect();
        Ok(CyclicChartPoint { n, phases })
    }
}

/// Polygon inscribed in the unit circle with the chart's vertex angles.
pub fn cyclic_embed(c: &CyclicChartPoint) -> Polygon {
    let mut vertices = Vec::with_capacity(c.n);
    vertices.push(Complex64::new(1.0, 0.0));
    for &phi in &c.phases {
        vertices.push(Complex64::from_polar(1.0, phi));
    }
    Polygon::new(vertices).expect("n >= 3 by construction")
}

fn cyclic_value(c: &CyclicChartPoint) -> f64 {
    let p = cyclic_embed(c);
    let per = perimeter(&p);
    oriented_area(&p) / (per * per)
}

/// Step for fourth-order value-based Hessians; balances stencil truncation
/// against f64 rounding.
const VALUE_HESSIAN_STEP: f64 = 2e-3;

/// Numerical Hessian of `A / P^2` restricted to the cyclic polygons, at the
/// star `S(n, w)`, in the `phi_2..phi_n` chart.
pub fn cyclic_hessian(n: usize, w: i32) -> Result<DMatrix<f64>> {
    let base = CyclicChartPoint::star(n, w)?;
    let f = |phases: &[f64]| {
        cyclic_value(&CyclicChartPoint { n, phases: phases.to_vec() })
    };
    Ok(numeric::hessian_from_value(&f, &base.phases, VALUE_HESSIAN_STEP))
}

/// Morse index of `A / P^2` restricted to the cyclic polygons at `S(n, w)`.
pub fn cyclic_index(n: usize, w: i32) -> Result<Signature> {
    let h = cyclic_hessian(n, w)?;
    Ok(Signature::of(&numeric::symmetric_eigenvalues(&h)))
}

/// A one-variable quadratic jet `constant + coefficient * sum t_i^2` on the
/// subspace `sum t_i = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JetForm {
    pub constant: f64,
    pub coefficient: f64,
}

/// The three closed-form 2-jets at `S(n, w)` on the cyclic space, in the
/// edge-increment coordinates `t_i` with `sum t_i = 0` and `alpha = 2 pi w / n`:
///
/// ```text
///   j2 P        = sqrt(2 - 2 cos a) * (n - 1/8 sum t_i^2)
///   j2 (2A)     = (sin a / 2) * (2n - sum t_i^2)
///   j2 (2A/P^2) = ((1 + cos a) / (8 n^2 sin a)) * (4n - sum t_i^2)
/// ```
///
/// The area jets describe the doubled area: their constants are the perimeter
/// and twice the area of the star inscribed in the unit circle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Jet2ClosedForms {
    pub alpha: f64,
    pub perimeter: JetForm,
    pub doubled_area: JetForm,
    pub normalized: JetForm,
}

pub fn jet2_closed_forms(n: usize, w: i32) -> Result<Jet2ClosedForms> {
    if w <= 0 {
        return Err(Error::InvalidArgument(
            "closed-form jets require a positive winding number".into(),
        ));
    }
    StarSpec::star(n, w)?;
    let nf = n as f64;
    let alpha = TAU * w as f64 / nf;
    let chord = (2.0 - 2.0 * alpha.cos()).sqrt();
    let norm_factor = (1.0 + alpha.cos()) / (8.0 * nf * nf * alpha.sin());
    Ok(Jet2ClosedForms {
        alpha,
        perimeter: JetForm { constant: chord * nf, coefficient: -chord / 8.0 },
        doubled_area: JetForm {
            constant: alpha.sin() * nf,
            coefficient: -alpha.sin() / 2.0,
        },
        normalized: JetForm {
            constant: norm_factor * 4.0 * nf,
            coefficient: -norm_factor,
        },
    })
}

/// Compares numerical second-order Taylor data of `P`, `2A`, and `2A/P^2` on
/// the cyclic space at `S(n, w)` against [`jet2_closed_forms`], in the
/// `t`-subspace `sum t_i = 0`. Returns the worst relative componentwise
/// discrepancy (constants and Hessian entries).
pub fn verify_jets(n: usize, w: i32) -> Result<f64> {
    let jets = jet2_closed_forms(n, w)?;
    // Orthonormal coordinates s on {sum t = 0}: t = B s, so the quadratic
    // form c * sum t_i^2 has Hessian 2c * I in s.
    let basis = numeric::zero_sum_basis(n);
    let polygon_of = |s: &[f64]| {
        let svec = nalgebra::DVector::from_row_slice(s);
        let t = &basis * svec;
        // Vertex shifts from edge increments, rotation gauge x_1 = 0.
        let mut x = vec![0.0; n];
        for k in 1..n {
            x[k] = x[k - 1] + t[k - 1];
        }
        let vertices = (0..n)
            .map(|k| Complex64::from_polar(1.0, TAU * w as f64 * k as f64 / n as f64 + x[k]))
            .collect();
        Polygon::new(vertices).unwrap()
    };
    let per = |s: &[f64]| perimeter(&polygon_of(s));
    let area2 = |s: &[f64]| 2.0 * oriented_area(&polygon_of(s));
    let norm2 = |s: &[f64]| {
        let p = polygon_of(s);
        let pe = perimeter(&p);
        2.0 * oriented_area(&p) / (pe * pe)
    };
    let origin = vec![0.0; n - 1];
    let mut worst = 0.0f64;
    let mut check = |f: &dyn Fn(&[f64]) -> f64, jet: &JetForm| {
        let c0 = f(&origin);
        worst = worst.max((c0 - jet.constant).abs() / jet.constant.abs());
        let hess = numeric::hessian_from_value(&|s: &[f64]| f(s), &origin, VALUE_HESSIAN_STEP);
        let expect = 2.0 * jet.coefficient;
        for i in 0..n - 1 {
            for j in 0..n - 1 {
                let target = if i == j { expect } else { 0.0 };
                worst = worst.max((hess[(i, j)] - target).abs() / expect.abs());
            }
        }
    };
    check(&per, &jets.perimeter);
    check(&area2, &jets.doubled_area);
    check(&norm2, &jets.normalized);
    Ok(worst)
}

/// Chart on the equilateral unit-perimeter polygons near a base star, by
/// edge-direction angles. One edge direction is frozen to kill rotation, two
/// consecutive directions are solved from the closure constraint, and the
/// remaining `n-3` are the coordinates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquilateralChartPoint {
    pub base: StarSpec,
    pub turning: Vec<f64>,
}

impl EquilateralChartPoint {
    pub fn new(base: StarSpec, turning: Vec<f64>) -> Result<Self> {
        if base.kind == StarKind::Fold {
            return Err(Error::InvalidStarSpec(
                "the fold is a singular point of the equilateral stratum".into(),
            ));
        }
        if turning.len() != base.n - 3 {
            return Err(Error::InvalidArgument(format!(
                "equilateral chart for n = {} needs {} coordinates, got {}",
                base.n,
                base.n - 3,
                turning.len()
            )));
        }
        Ok(EquilateralChartPoint { base, turning })
    }

    pub fn origin(base: StarSpec) -> Result<Self> {
        let dim = base.n - 3;
        Self::new(base, vec![0.0; dim])
    }
}

/// Equilateral polygon with all edges `1/n` for the given chart point.
///
/// Edges `3..n-1` carry the chart coordinates as direction deviations, edge
/// `n` keeps its base direction (rotation gauge), and edges `1, 2` are solved
/// from the closure constraint by a 2x2 Newton iteration. The solved pair is
/// consecutive, so its closure Jacobian has determinant `sin(2 pi w / n)`,
/// nonsingular at every star that is not a fold.
pub fn equilat_embed(c: &EquilateralChartPoint) -> Result<Polygon> {
    let n = c.base.n;
    let star = c.base.build();
    let base_dirs: Vec<f64> = (0..n).map(|k| star.edge(k).arg()).collect();

    let mut dirs = base_dirs.clone();
    for (j, delta) in c.turning.iter().enumerate() {
        dirs[2 + j] += delta;
    }
    // Target for the two solved unit directions: close the edge cycle.
    let fixed_sum: Complex64 = dirs[2..]
        .iter()
        .map(|&th| Complex64::from_polar(1.0, th))
        .sum();
    let target = -fixed_sum;

    let (mut a, mut b) = (dirs[0], dirs[1]);
    let mut converged = false;
    for _ in 0..50 {
        let ea = Complex64::from_polar(1.0, a);
        let eb = Complex64::from_polar(1.0, b);
        let f = ea + eb - target;
        if f.norm() < 1e-14 {
            converged = true;
            break;
        }
        let det = (b - a).sin();
        if det.abs() < 1e-8 {
            return Err(Error::ClosureSingular);
        }
        // Jacobian columns are i*e^{ia}, i*e^{ib}:
        // J = [[-sin a, -sin b], [cos a, cos b]], det = sin(b - a).
        let rhs = (-f.re, -f.im);
        let inv = 1.0 / det;
        let da = inv * (eb.re * rhs.0 + eb.im * rhs.1);
        let db = -inv * (ea.re * rhs.0 + ea.im * rhs.1);
        a += da;
        b += db;
    }
    if !converged {
        return Err(Error::ClosureSingular);
    }
    dirs[0] = a;
    dirs[1] = b;

    let len = 1.0 / n as f64;
    let mut vertices = Vec::with_capacity(n);
    let mut p = Complex64::new(0.0, 0.0);
    vertices.push(p);
    for &th in dirs.iter().take(n - 1) {
        p += Complex64::from_polar(len, th);
        vertices.push(p);
    }
    Polygon::new(vertices)
}

/// Signature of the Hessian of the oriented area restricted to the
/// equilateral polygons at `S(n, w)`. The perimeter is constant one on this
/// stratum, so `A` and `A / P^2` have the same relative index.
pub fn equilat_signature(n: usize, w: i32) -> Result<Signature> {
    let base = StarSpec::star(n, w)?;
    let f = |turning: &[f64]| {
        let c = EquilateralChartPoint { base, turning: turning.to_vec() };
        oriented_area(&equilat_embed(&c).expect("chart stays near the base star"))
    };
    let origin = vec![0.0; n - 3];
    let hess = numeric::hessian_from_value(&f, &origin, VALUE_HESSIAN_STEP);
    Ok(Signature::of(&numeric::symmetric_eigenvalues(&hess)))
}

/// Morse index of the area restricted to the equilateral stratum; the law is
/// `n - 1 - 2w` for `w > 0`.
pub fn equilat_index(n: usize, w: i32) -> Result<usize> {
    equilat_signature(n, w)?
        .morse_index()
        .ok_or_else(|| Error::InvalidArgument(format!("S({n},{w}) is degenerate on the equilateral stratum")))
}

/// Index sandwich, maximal-winding combination, and transversality data at a
/// star, tying the full index to the two relative ones.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StatementReport {
    pub n: usize,
    pub w: i32,
    pub full_index: usize,
    pub cyclic_index: usize,
    pub equilat_index: usize,
    /// `M_CYCL <= M_full <= M_CYCL + (n-3)`.
    pub sandwich_cyclic_ok: bool,
    /// `M_EQUILAT <= M_full <= M_EQUILAT + (n-1)`.
    pub sandwich_equilat_ok: bool,
    /// Maximal-winding combination applies: odd `n`, `w = (n-1)/2`.
    pub combination_applies: bool,
    /// Max on the cyclic space + min on the equilateral space forces full
    /// index `n-1`.
    pub combination_ok: bool,
    /// Rank of the stacked cyclic + equilateral tangent bases in the chart;
    /// `2n-4` means the two spaces are transversal.
    pub tangent_rank: usize,
    pub smallest_singular_value: f64,
}

impl StatementReport {
    pub fn all_ok(&self) -> bool {
        self.sandwich_cyclic_ok
            && self.sandwich_equilat_ok
            && (!self.combination_applies || self.combination_ok)
            && self.tangent_rank == 2 * self.n - 4
    }
}

/// Runs the index sandwich, the maximal-winding combination, and the
/// transversal-span rank check at `S(n, w)`.
pub fn statement_checks(n: usize, w: i32) -> Result<StatementReport> {
    let spec = StarSpec::star(n, w)?;
    let star_word = polygon_to_edgeword(&spec.build())?;
    let chart = chart_at(&star_word);
    let pivot = chart.pivot;

    let full_sig = Signature::of(&numeric::symmetric_eigenvalues(&functional::hessian(&chart)?));
    let full_index = full_sig
        .morse_index()
        .ok_or_else(|| Error::InvalidArgument(format!("S({n},{w}) flagged degenerate")))?;
    let cyc_index = cyclic_index(n, w)?
        .morse_index()
        .ok_or_else(|| Error::InvalidArgument(format!("S({n},{w}) degenerate on the cyclic stratum")))?;
    let eq_index = equilat_index(n, w)?;

    let dim = 2 * n - 4;
    let sandwich_cyclic_ok = cyc_index <= full_index && full_index <= cyc_index + (n - 3);
    let sandwich_equilat_ok = eq_index <= full_index && full_index <= eq_index + (n - 1);

    let combination_applies = w > 0 && n % 2 == 1 && w as usize == (n - 1) / 2;
    let combination_ok = if combination_applies {
        cyc_index == n - 1 && eq_index == 0 && full_index == n - 1
    } else {
        true
    };

    // Tangent columns of both submanifolds in the fixed-pivot chart.
    let chart_coords = |p: &Polygon| -> Result<Vec<f64>> {
        Ok(chart_with_pivot(&polygon_to_edgeword(p)?, pivot)?.coords)
    };
    let h = 1e-6;
    let mut columns: Vec<Vec<f64>> = Vec::with_capacity(dim);
    let cyc_base = CyclicChartPoint::star(n, w)?;
    for i in 0..n - 1 {
        let mut plus = cyc_base.clone();
        plus.phases[i] += h;
        let mut minus = cyc_base.clone();
        minus.phases[i] -= h;
        let cp = chart_coords(&cyclic_embed(&plus))?;
        let cm = chart_coords(&cyclic_embed(&minus))?;
        columns.push(cp.iter().zip(&cm).map(|(a, b)| (a - b) / (2.0 * h)).collect());
    }
    let eq_base = EquilateralChartPoint::origin(spec)?;
    for i in 0..n - 3 {
        let mut plus = eq_base.clone();
        plus.turning[i] += h;
        let mut minus = eq_base.clone();
        minus.turning[i] -= h;
        let cp = chart_coords(&equilat_embed(&plus)?)?;
        let cm = chart_coords(&equilat_embed(&minus)?)?;
        columns.push(cp.iter().zip(&cm).map(|(a, b)| (a - b) / (2.0 * h)).collect());
    }
    let stacked = DMatrix::from_fn(dim, columns.len(), |r, c| columns[c][r]);
    let svd = stacked.svd(false, false);
    let rank = svd.singular_values.iter().filter(|&&s| s > 1e-8).count();
    let smallest = svd.singular_values.iter().cloned().fold(f64::INFINITY, f64::min);

    Ok(StatementReport {
        n,
        w,
        full_index,
        cyclic_index: cyc_index,
        equilat_index: eq_index,
        sandwich_cyclic_ok,
        sandwich_equilat_ok,
        combination_applies,
        combination_ok,
        tangent_rank: rank,
        smallest_singular_value: smallest,
    })
}
