//! Independent reference computations built on nalgebra.
#![allow(dead_code)]

use nalgebra::DMatrix;
use snorm::spectra::Matrix;

pub fn to_na(m: &Matrix) -> DMatrix<f64> {
    DMatrix::from_row_slice(m.rows(), m.cols(), m.data())
}

/// Singular values, nonincreasing.
pub fn singular_values(m: &Matrix) -> Vec<f64> {
    let mut s: Vec<f64> = to_na(m).singular_values().iter().copied().collect();
    s.sort_by(|a, b| b.partial_cmp(a).unwrap());
    s
}

/// Eigenvalues of a symmetric matrix, nonincreasing.
pub fn sym_eigenvalues(m: &Matrix) -> Vec<f64> {
    let mut e: Vec<f64> = to_na(m).symmetric_eigenvalues().iter().copied().collect();
    e.sort_by(|a, b| b.partial_cmp(a).unwrap());
    e
}

/// `max_m (η₁ + … + η_m) / (w₁ + … + w_m)` over the given prefix weights, with
/// the last weight repeating.
pub fn prefix_ratio_sup(eta: &[f64], w: &[f64]) -> f64 {
    let (mut h, mut s, mut best) = (0.0, 0.0, f64::NEG_INFINITY);
    for (j, x) in eta.iter().enumerate() {
        h += x;
        s += w[j.min(w.len() - 1)];
        best = best.max(h / s);
    }
    best
}

pub fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}
