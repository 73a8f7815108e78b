//! Search for all critical points of `A / P^2` on `CP^{n-2}`: Newton
//! iteration on the analytic gradient with Tikhonov-regularized solves and
//! re-charting, classification against the star catalogue, Morse index
//! tables, and gradient-flow experiments.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::functional::{self, normalized_area};
use crate::numeric::{self, Signature};
use crate::polygon::{self, star_area_closed_form, StarKind, StarSpec};
use crate::projective::{
    chart_at, edgeword_to_polygon, fubini_study_distance, normalize, polygon_to_edgeword,
    ChartPoint, EdgeWord,
};
use crate::tol;

/// Knobs for the critical-point search. The RNG seed makes runs reproducible.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SolverConfig {
    pub seeds_per_n: usize,
    pub newton_tol: f64,
    pub max_iterations: usize,
    /// Fubini-Study radius below which two found points count as one class.
    pub dedup_distance: f64,
    pub rng_seed: u64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            seeds_per_n: 500,
            newton_tol: 1e-10,
            max_iterations: 120,
            dedup_distance: 0.02,
            rng_seed: 42,
        }
    }
}

/// One distinct critical class found by the solver.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CriticalReport {
    /// Normalized homogeneous representative.
    pub location: EdgeWord,
    pub grad_norm: f64,
    /// Eigenvalues of the chart Hessian, sorted ascending; `2(n-2)` of them.
    pub eigenvalues: Vec<f64>,
    /// Count of strictly negative eigenvalues; `None` when some eigenvalue is
    /// flagged zero (possibly degenerate).
    pub morse_index: Option<usize>,
    /// Matching catalogue entry, or `None` for an unidentified class.
    pub classification: Option<StarSpec>,
    /// Winding number about the vertex centroid, when defined.
    pub winding: Option<i32>,
    pub equilateral_residual: f64,
    pub cyclic_residual: f64,
    pub normalized_area: f64,
}

/// Full outcome of a [`solve_all`] run. Non-converged and rejected seeds are
/// counted, never silently dropped.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SolveOutcome {
    pub n: usize,
    pub reports: Vec<CriticalReport>,
    pub seeds_total: usize,
    pub seeds_converged: usize,
    pub seeds_no_convergence: usize,
    pub seeds_rejected_nonsmooth: usize,
}

/// All predicted critical classes for a given `n`: stars with
/// `1 <= |w| <= (n-1)/2` plus the complete fold when `n` is even. The total
/// is `n - 1`. Sorted by normalized area, descending.
pub fn catalogue(n: usize) -> Vec<StarSpec> {
    let wmax = ((n - 1) / 2) as i32;
    let mut specs = Vec::with_capacity(n - 1);
    for w in 1..=wmax {
        specs.push(StarSpec::star(n, w).unwrap());
        specs.push(StarSpec::star(n, -w).unwrap());
    }
    if n.is_multiple_of(2) {
        specs.push(StarSpec::fold(n).unwrap());
    }
    specs.sort_by(|a, b| {
        catalogue_area(b).partial_cmp(&catalogue_area(a)).unwrap()
    });
    specs
}

fn catalogue_area(spec: &StarSpec) -> f64 {
    match spec.kind {
        StarKind::Star { w } => star_area_closed_form(spec.n, w),
        StarKind::Fold => 0.0,
    }
}

/// Predicted Morse index: `2n - 2w - 2` for `w > 0`, `2|w| - 2` for `w < 0`
/// (the mirror-paired value), `n - 2` for the complete fold.
pub fn predicted_index(spec: &StarSpec) -> usize {
    match spec.kind {
        StarKind::Star { w } if w > 0 => 2 * spec.n - 2 * w as usize - 2,
        StarKind::Star { w } => 2 * (-w) as usize - 2,
        StarKind::Fold => spec.n - 2,
    }
}

/// Classify a converged location against the catalogue by geometric
/// residuals: equilateral spread, circumradius spread, the fold's
/// double-point identity, and the winding number about the centroid.
pub fn classify(e: &EdgeWord) -> (Option<StarSpec>, Option<i32>, f64, f64) {
    let poly = match edgeword_to_polygon(e) {
        Ok(p) => p,
        Err(_) => return (None, None, f64::INFINITY, f64::INFINITY),
    };
    let n = poly.len();
    let target = 1.0 / n as f64;
    let eq_res = (0..n)
        .map(|i| (poly.edge(i).norm() - target).abs())
        .fold(0.0f64, f64::max);
    let c = poly.centroid();
    let radii: Vec<f64> = (0..n).map(|i| (poly.vertex(i) - c).norm()).collect();
    let mean_r = radii.iter().sum::<f64>() / n as f64;
    let cyc_res = radii.iter().map(|r| (r - mean_r).abs()).fold(0.0f64, f64::max);

    let fold_res = (0..n)
        .map(|i| (poly.vertex(i) - poly.vertex(i + 2)).norm())
        .fold(0.0f64, f64::max);
    if n % 2 == 0 && fold_res < tol::CLASSIFY_RESIDUAL && eq_res < tol::CLASSIFY_RESIDUAL {
        return (Some(StarSpec::fold(n).unwrap()), None, eq_res, cyc_res);
    }

    let winding = polygon::winding_number(&poly, c).ok();
    if eq_res < tol::CLASSIFY_RESIDUAL && cyc_res < tol::CLASSIFY_RESIDUAL {
        if let Some(w) = winding {
            if let Ok(spec) = StarSpec::star(n, w) {
                return (Some(spec), winding, eq_res, cyc_res);
            }
        }
    }
    (None, winding, eq_res, cyc_res)
}

/// Full report (Hessian spectrum, index, classification) at a chart point
/// assumed to be critical.
pub fn report_at(chart: &ChartPoint) -> Result<CriticalReport> {
    let e = normalize(&embed_checked(chart)?);
    let grad_norm = functional::gradient_norm(chart)?;
    let hess = functional::hessian(chart)?;
    let eigenvalues = numeric::symmetric_eigenvalues(&hess);
    let sig = Signature::of(&eigenvalues);
    let (classification, winding, eq_res, cyc_res) = classify(&e);
    let value = normalized_area(&e)?.normalized;
    Ok(CriticalReport {
        location: e,
        grad_norm,
        eigenvalues,
        morse_index: sig.morse_index(),
        classification,
        winding,
        equilateral_residual: eq_res,
        cyclic_residual: cyc_res,
        normalized_area: value,
    })
}

fn embed_checked(chart: &ChartPoint) -> Result<EdgeWord> {
    let e = crate::projective::embed(chart);
    if e.is_smooth_point() {
        Ok(e)
    } else {
        Err(Error::NonSmoothPoint)
    }
}

/// Newton iteration on the gradient with Tikhonov-regularized solves and
/// re-charting. Returns the converged chart point.
pub fn newton_refine(start: ChartPoint, cfg: &SolverConfig) -> Result<ChartPoint> {
    let mut chart = start;
    for _ in 0..cfg.max_iterations {
        if chart.needs_rechart() {
            chart = chart_at(&normalize(&embed_checked(&chart)?));
        }
        let grad = functional::gradient(&chart)?;
        let gnorm = grad.iter().map(|g| g * g).sum::<f64>().sqrt();
        if gnorm < cfg.newton_tol {
            return Ok(chart);
        }
        let hess = functional::hessian(&chart)?;
        let dim = chart.dim();
        let rhs = -DVector::from_vec(grad);
        let step = regularized_solve(&hess, &rhs, dim)?;
        // Cap the step; far from a critical point the quadratic model is bad.
        let norm = step.norm();
        let scale = if norm > 0.5 { 0.5 / norm } else { 1.0 };
        for (c, s) in chart.coords.iter_mut().zip(step.iter()) {
            *c += scale * s;
        }
    }
    Err(Error::NoConvergence(cfg.max_iterations))
}

fn regularized_solve(hess: &DMatrix<f64>, rhs: &DVector<f64>, dim: usize) -> Result<DVector<f64>> {
    let hnorm = hess.norm();
    let mut lambda = 1e-10 * hnorm.max(1e-300);
    for _ in 0..8 {
        let reg = hess + DMatrix::identity(dim, dim) * lambda;
        if let Some(sol) = reg.lu().solve(rhs) {
            if sol.iter().all(|v| v.is_finite()) {
                return Ok(sol);
            }
        }
        lambda *= 100.0;
    }
    Err(Error::NoConvergence(0))
}

/// Cyclic relabeling acting on edge words: rotates the full edge cycle.
pub fn cyclic_relabel(e: &EdgeWord, shift: usize) -> EdgeWord {
    let full = e.full_edges();
    let n = full.len();
    let rotated: Vec<Complex64> = (0..n - 1).map(|j| full[(shift + j) % n]).collect();
    EdgeWord::new(rotated).expect("relabeling preserves nonzero words")
}

/// True when `a` and `b` represent the same critical class: some cyclic
/// relabeling of `a` is Fubini-Study close to `b`. Mirror images are *not*
/// identified; `S(n, w)` and `S(n, -w)` are distinct classes.
pub fn same_class(a: &EdgeWord, b: &EdgeWord, dedup_distance: f64) -> bool {
    let n = a.n();
    (0..n).any(|shift| fubini_study_distance(&cyclic_relabel(a, shift), b) < dedup_distance)
}

fn random_seed_word(n: usize, rng: &mut ChaCha8Rng) -> EdgeWord {
    loop {
        let u: Vec<Complex64> = (0..n - 1)
            .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect();
        if let Ok(e) = EdgeWord::new(u) {
            if e.is_smooth_point() {
                return e;
            }
        }
    }
}

/// Find all critical points of `A / P^2` for `n`-gons.
///
/// Seeds mix uniform random projective points with catalogue entries
/// perturbed by Gaussian noise, so the known classes are always probed while
/// random seeds search for extraneous ones. Converged locations are
/// deduplicated by Fubini-Study distance over cyclic relabelings and the
/// distinct classes returned sorted by normalized area, descending.
pub fn solve_all(n: usize, cfg: &SolverConfig) -> Result<SolveOutcome> {
    if n < 4 {
        return Err(Error::InvalidArgument(format!("solve_all needs n >= 4, got {n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed);
    let mut seeds: Vec<ChartPoint> = Vec::new();
    for spec in catalogue(n) {
        let word = polygon_to_edgeword(&spec.build())?;
        for _ in 0..3 {
            let mut chart = chart_at(&word);
            for c in chart.coords.iter_mut() {
                let noise: f64 = rng.sample(StandardNormal);
                *c += 1e-2 * noise;
            }
            seeds.push(chart);
        }
    }
    while seeds.len() < cfg.seeds_per_n {
        seeds.push(chart_at(&normalize(&random_seed_word(n, &mut rng))));
    }

    let mut outcome = SolveOutcome {
        n,
        reports: Vec::new(),
        seeds_total: seeds.len(),
        seeds_converged: 0,
        seeds_no_convergence: 0,
        seeds_rejected_nonsmooth: 0,
    };
    for seed in seeds {
        match newton_refine(seed, cfg) {
            Ok(chart) => {
                outcome.seeds_converged += 1;
                let report = report_at(&chart)?;
                let duplicate = outcome
                    .reports
                    .iter()
                    .any(|r| same_class(&report.location, &r.location, cfg.dedup_distance));
                if !duplicate {
                    outcome.reports.push(report);
                }
            }
            Err(Error::NonSmoothPoint) | Err(Error::HitNonSmoothStratum) => {
                outcome.seeds_rejected_nonsmooth += 1;
            }
            Err(Error::NoConvergence(_)) => {
                outcome.seeds_no_convergence += 1;
            }
            Err(other) => return Err(other),
        }
    }
    outcome
        .reports
        .sort_by(|a, b| b.normalized_area.partial_cmp(&a.normalized_area).unwrap());
    Ok(outcome)
}

/// One row of the Morse index verification table.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IndexRow {
    pub spec: StarSpec,
    pub predicted: usize,
    pub computed: Option<usize>,
    pub degenerate: bool,
    /// `min |lambda| / max |lambda|` of the spectrum: the margin to
    /// degeneracy that the non-degeneracy assumption rests on.
    pub smallest_relative_eigenvalue: f64,
    pub grad_norm: f64,
}

/// Computed vs predicted Morse index for every catalogue entry.
pub fn verify_index_table(n: usize) -> Result<Vec<IndexRow>> {
    let mut rows = Vec::new();
    for spec in catalogue(n) {
        let word = polygon_to_edgeword(&spec.build())?;
        let chart = chart_at(&word);
        let grad_norm = functional::gradient_norm(&chart)?;
        let hess = functional::hessian(&chart)?;
        let eigenvalues = numeric::symmetric_eigenvalues(&hess);
        let sig = Signature::of(&eigenvalues);
        rows.push(IndexRow {
            spec,
            predicted: predicted_index(&spec),
            computed: sig.morse_index(),
            degenerate: sig.is_degenerate(),
            smallest_relative_eigenvalue: sig.smallest_relative,
            grad_norm,
        });
    }
    Ok(rows)
}

/// True when the computed indices form the perfect Morse multiset
/// `{0, 2, ..., 2n-4}` (with the fold contributing `n-2` for even `n`).
pub fn index_multiset_is_perfect(rows: &[IndexRow], n: usize) -> bool {
    let mut computed: Vec<usize> = match rows.iter().map(|r| r.computed).collect() {
        Some(v) => v,
        None => return false,
    };
    computed.sort_unstable();
    let expected: Vec<usize> = (0..n - 1).map(|k| 2 * k).collect();
    computed == expected
}

/// Direction of a gradient flow.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FlowDirection {
    Ascend,
    Descend,
}

/// A finished flow: the (monotone) polyline of normalized-area values and the
/// Newton-polished terminal critical point.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FlowResult {
    pub values: Vec<f64>,
    pub iterations: usize,
    pub terminal: CriticalReport,
}

/// Adaptive-step gradient ascent/descent in charts with re-charting.
///
/// Steps are accepted only when they improve the objective, so the recorded
/// value polyline is monotone by construction. Steps whose trial point lands
/// on the collision stratum are halved; a persistent collision aborts the
/// flow. On termination the endpoint is polished by Newton iteration before
/// the terminal report is assembled.
pub fn gradient_flow(
    start: &EdgeWord,
    direction: FlowDirection,
    cfg: &SolverConfig,
) -> Result<FlowResult> {
    if !start.is_smooth_point() {
        return Err(Error::NonSmoothPoint);
    }
    let sign = match direction {
        FlowDirection::Ascend => 1.0,
        FlowDirection::Descend => -1.0,
    };
    let mut chart = chart_at(&normalize(start));
    let mut value = functional::value_in_chart(&chart);
    let mut values = vec![value];
    let mut step = 0.1;
    let mut iterations = 0;
    loop {
        if iterations >= cfg.max_iterations {
            return Err(Error::NoConvergence(cfg.max_iterations));
        }
        iterations += 1;
        if chart.needs_rechart() {
            chart = chart_at(&normalize(&embed_checked(&chart)?));
        }
        let grad = functional::gradient(&chart)?;
        let gnorm = grad.iter().map(|g| g * g).sum::<f64>().sqrt();
        if gnorm < cfg.newton_tol {
            break;
        }
        // Backtrack until the trial point is smooth and improving.
        let mut accepted = false;
        while step > 1e-16 {
            let trial = ChartPoint {
                n: chart.n,
                pivot: chart.pivot,
                coords: chart
                    .coords
                    .iter()
                    .zip(&grad)
                    .map(|(c, g)| c + sign * step * g)
                    .collect(),
            };
            if embed_checked(&trial).is_err() {
                step *= 0.5;
                continue;
            }
            let trial_value = functional::value_in_chart(&trial);
            // Strict improvement only: once value differences fall below the
            // f64 resolution the step underflows, the loop breaks on the
            // small-gradient branch, and Newton polishing takes over.
            if sign * (trial_value - value) > 0.0 {
                chart = trial;
                value = trial_value;
                values.push(value);
                step = (step * 1.5).min(100.0);
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if !accepted {
            // Step underflow: either we sit at a critical point already or
            // the stratum blocks every direction.
            if gnorm < 1e-6 {
                break;
            }
            return Err(Error::HitNonSmoothStratum);
        }
    }
    // Polish well below the flow tolerance so the terminal point carries
    // classification-grade residuals; Newton converges quadratically, so the
    // extra digits are nearly free.
    let polish_cfg = SolverConfig {
        max_iterations: 60,
        newton_tol: cfg.newton_tol.min(1e-12),
        ..cfg.clone()
    };
    let polished = newton_refine(chart, &polish_cfg)?;
    let terminal = report_at(&polished)?;
    Ok(FlowResult { values, iterations, terminal })
}
