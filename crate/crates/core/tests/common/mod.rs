//! Shared helpers for the integration suites: independent finite-difference
//! oracles and random configuration generators.
//!
//! The gradient oracle differentiates function *values* only, so it stays
//! independent of the analytic derivative path it is used to check.
//!
//! Each suite uses its own subset of these helpers.
#![allow(dead_code)]

use num_complex::Complex64;
use polyarea::projective::{normalize, EdgeWord};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

/// Central-difference gradient of a scalar function of chart coordinates.
pub fn fd_gradient<F>(f: F, coords: &[f64], h: f64) -> Vec<f64>
where
    F: Fn(&[f64]) -> f64,
{
    let mut grad = Vec::with_capacity(coords.len());
    let mut x = coords.to_vec();
    for i in 0..coords.len() {
        let x0 = x[i];
        x[i] = x0 + h;
        let fp = f(&x);
        x[i] = x0 - h;
        let fm = f(&x);
        x[i] = x0;
        grad.push((fp - fm) / (2.0 * h));
    }
    grad
}

pub fn random_complex(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Random normalized edge word for an `n`-gon, complex-Gaussian entries.
pub fn random_word(n: usize, rng: &mut ChaCha8Rng) -> EdgeWord {
    loop {
        let u: Vec<Complex64> = (0..n - 1).map(|_| random_complex(rng)).collect();
        if let Ok(e) = EdgeWord::new(u) {
            if e.is_smooth_point() {
                return normalize(&e);
            }
        }
    }
}

/// Random word staying clearly away from the collision stratum, so that
/// finite-difference stencils around it are trustworthy.
pub fn random_word_well_separated(n: usize, rng: &mut ChaCha8Rng) -> EdgeWord {
    loop {
        let e = random_word(n, rng);
        let scale = e.euclidean_norm();
        let min_edge = e
            .full_edges()
            .iter()
            .map(|z| z.norm())
            .fold(f64::INFINITY, f64::min);
        if min_edge > 1e-2 * scale {
            return e;
        }
    }
}

/// Random edge word with exactly one vanishing edge (never the closing one).
pub fn random_single_collision_word(n: usize, rng: &mut ChaCha8Rng) -> EdgeWord {
    loop {
        let mut u: Vec<Complex64> = (0..n - 1).map(|_| random_complex(rng)).collect();
        let k = rng.gen_range(0..n - 1);
        u[k] = Complex64::new(0.0, 0.0);
        if let Ok(e) = EdgeWord::new(u) {
            if e.collision_indices() == vec![k] {
                return e;
            }
        }
    }
}
