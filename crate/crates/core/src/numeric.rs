//! Shared numerical machinery: finite-difference Hessians, eigenvalue
//! signatures, and small linear-algebra helpers.

use nalgebra::{DMatrix, DVector};

use crate::tol;

/// Central-difference Hessian of a vector-valued gradient, symmetrized as
/// `(H + H^T) / 2`. Also returns the asymmetry residual `|H - H^T| / |H|`
/// measured before symmetrization.
pub fn hessian_from_gradient<F>(grad: F, x: &[f64], h: f64) -> (DMatrix<f64>, f64)
where
    F: Fn(&[f64]) -> Vec<f64>,
{
    let dim = x.len();
    let mut raw = DMatrix::zeros(dim, dim);
    let mut xp = x.to_vec();
    for j in 0..dim {
        let x0 = xp[j];
        xp[j] = x0 + h;
        let gp = grad(&xp);
        xp[j] = x0 - h;
        let gm = grad(&xp);
        xp[j] = x0;
        for i in 0..dim {
            raw[(i, j)] = (gp[i] - gm[i]) / (2.0 * h);
        }
    }
    let sym = (&raw + raw.transpose()) * 0.5;
    let norm = raw.norm();
    let residual = if norm > 0.0 { (&raw - raw.transpose()).norm() / norm } else { 0.0 };
    (sym, residual)
}

/// Default step for differencing an analytic gradient:
/// `cbrt(machine epsilon) * max(1, |x|)`.
pub fn gradient_diff_step(x: &[f64]) -> f64 {
    let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    f64::EPSILON.cbrt() * norm.max(1.0)
}

/// Second directional derivative of a scalar function along `dir`, using the
/// fourth-order five-point stencil. `h` around `eps^(1/6)` balances stencil
/// truncation against rounding.
pub fn second_directional<F>(f: &F, x: &[f64], dir: &[f64], h: f64) -> f64
where
    F: Fn(&[f64]) -> f64,
{
    let eval = |t: f64| {
        let shifted: Vec<f64> = x.iter().zip(dir).map(|(xi, di)| xi + t * di).collect();
        f(&shifted)
    };
    (-eval(2.0 * h) + 16.0 * eval(h) - 30.0 * eval(0.0) + 16.0 * eval(-h) - eval(-2.0 * h))
        / (12.0 * h * h)
}

/// Hessian of a scalar function by polarization of second directional
/// derivatives: `H_ij = (D^2_{e_i + e_j} - D^2_{e_i} - D^2_{e_j}) / 2`.
pub fn hessian_from_value<F>(f: &F, x: &[f64], h: f64) -> DMatrix<f64>
where
    F: Fn(&[f64]) -> f64,
{
    let dim = x.len();
    let mut diag = vec![0.0; dim];
    let mut basis = vec![0.0; dim];
    for i in 0..dim {
        basis[i] = 1.0;
        diag[i] = second_directional(f, x, &basis, h);
        basis[i] = 0.0;
    }
    let mut hess = DMatrix::zeros(dim, dim);
    for i in 0..dim {
        hess[(i, i)] = diag[i];
        for j in i + 1..dim {
            let mut dir = vec![0.0; dim];
            dir[i] = 1.0;
            dir[j] = 1.0;
            let dij = second_directional(f, x, &dir, h);
            let mixed = (dij - diag[i] - diag[j]) / 2.0;
            hess[(i, j)] = mixed;
            hess[(j, i)] = mixed;
        }
    }
    hess
}

/// Eigenvalues of a symmetric matrix, sorted ascending.
pub fn symmetric_eigenvalues(m: &DMatrix<f64>) -> Vec<f64> {
    let mut ev: Vec<f64> = m.clone().symmetric_eigen().eigenvalues.iter().copied().collect();
    ev.sort_by(|a, b| a.partial_cmp(b).unwrap());
    ev
}

/// Signature of a spectrum under the relative zero threshold.
#[derive(Debug, Clone, PartialEq)]
pub struct Signature {
    pub negative: usize,
    pub zero: usize,
    pub positive: usize,
    /// `min |lambda| / max |lambda|`, the margin to degeneracy.
    pub smallest_relative: f64,
}

impl Signature {
    pub fn of(eigenvalues: &[f64]) -> Signature {
        let max_abs = eigenvalues.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let cut = tol::EIGEN_ZERO_REL * max_abs;
        let mut sig = Signature { negative: 0, zero: 0, positive: 0, smallest_relative: f64::INFINITY };
        for &ev in eigenvalues {
            if ev.abs() < cut {
                sig.zero += 1;
            } else if ev < 0.0 {
                sig.negative += 1;
            } else {
                sig.positive += 1;
            }
            if max_abs > 0.0 {
                sig.smallest_relative = sig.smallest_relative.min(ev.abs() / max_abs);
            }
        }
        sig
    }

    pub fn is_degenerate(&self) -> bool {
        self.zero > 0
    }

    /// Morse index: the count of strictly negative eigenvalues, defined only
    /// when no eigenvalue is flagged zero.
    pub fn morse_index(&self) -> Option<usize> {
        if self.is_degenerate() {
            None
        } else {
            Some(self.negative)
        }
    }
}

/// Orthonormal basis of the hyperplane `{t : sum t_i = 0}` in `R^dim`,
/// as columns of a `dim x (dim-1)` matrix.
pub fn zero_sum_basis(dim: usize) -> DMatrix<f64> {
    let mut basis = DMatrix::zeros(dim, dim - 1);
    // Helmert-style vectors: v_k = (1,...,1,-k,0,...,0)/sqrt(k(k+1)).
    for k in 1..dim {
        let scale = 1.0 / ((k * (k + 1)) as f64).sqrt();
        for i in 0..k {
            basis[(i, k - 1)] = scale;
        }
        basis[(k, k - 1)] = -(k as f64) * scale;
    }
    basis
}

/// Orthonormal basis of the orthogonal complement of `v` in `R^dim`.
pub fn orthogonal_complement(v: &DVector<f64>) -> DMatrix<f64> {
    let dim = v.len();
    let unit = v / v.norm();
    let mut cols: Vec<DVector<f64>> = Vec::with_capacity(dim - 1);
    for i in 0..dim {
        let mut e = DVector::zeros(dim);
        e[i] = 1.0;
        let mut c = &e - &unit * unit.dot(&e);
        for prev in &cols {
            c -= prev * prev.dot(&c);
        }
        let norm = c.norm();
        if norm > 1e-8 {
            cols.push(c / norm);
        }
        if cols.len() == dim - 1 {
            break;
        }
    }
    DMatrix::from_columns(&cols)
}
