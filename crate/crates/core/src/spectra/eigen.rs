//! Cyclic Jacobi kernels: symmetric eigendecomposition, SVD and polar factors.

use serde::Serialize;

use super::matrix::{dot, norm2, Matrix};
use crate::error::{Error, Result};

/// Sweep cap shared by both Jacobi variants.
pub const MAX_SWEEPS: usize = 100;
/// Relative off-diagonal stopping threshold.
pub const OFF_DIAGONAL_TOL: f64 = 1e-14;
/// Relative symmetry tolerance accepted by [`sym_eig`].
pub const SYMMETRY_TOL: f64 = 1e-12;
/// Singular values below this fraction of the largest are treated as zero.
pub const RANK_TOL: f64 = 1e-12;

#[derive(Debug, Clone)]
pub struct SymEigen {
    /// Nonincreasing.
    pub eigenvalues: Vec<f64>,
    /// Column `j` is the eigenvector of `eigenvalues[j]`.
    pub eigenvectors: Matrix,
}

#[derive(Debug, Clone)]
pub struct Svd {
    /// `rows × r` with orthonormal columns, `r = min(rows, cols)`.
    pub u: Matrix,
    /// Nonincreasing, nonnegative, length `r`.
    pub sigma: Vec<f64>,
    /// `cols × r` with orthonormal columns.
    pub v: Matrix,
}

#[derive(Debug, Clone, Serialize)]
pub struct PolarFactors {
    /// Partial isometry with initial space the closure of range(|T|).
    pub u: Matrix,
    /// `|T| = (TᵀT)^{1/2}`.
    pub abs_t: Matrix,
}

/// Indices sorting `values` nonincreasingly; ties keep their original order.
fn descending_order(values: &[f64]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by(|&a, &b| values[b].partial_cmp(&values[a]).expect("finite values"));
    idx
}

fn off_diagonal_norm(a: &Matrix) -> f64 {
    let n = a.rows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)] * a[(i, j)];
            }
        }
    }
    s.sqrt()
}

/// Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.
pub fn sym_eig(a: &Matrix) -> Result<SymEigen> {
    if !a.is_square() {
        return Err(Error::ShapeMismatch(format!(
            "sym_eig needs a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    let scale = a.frobenius_norm();
    let asym = a.asymmetry();
    if asym > SYMMETRY_TOL * scale {
        return Err(Error::NotSymmetric { asymmetry: asym });
    }
    let n = a.rows();
    // symmetrize so rounding in the input does not leak into the rotations
    let mut d = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            d[(i, j)] = 0.5 * (a[(i, j)] + a[(j, i)]);
        }
    }
    let mut v = Matrix::identity(n);
    let threshold = OFF_DIAGONAL_TOL * scale;

    let mut converged = off_diagonal_norm(&d) <= threshold;
    let mut sweeps = 0;
    while !converged {
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence {
                routine: "sym_eig",
                iterations: sweeps,
            });
        }
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = d[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let app = d[(p, p)];
                let aqq = d[(q, q)];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let dkp = d[(k, p)];
                    let dkq = d[(k, q)];
                    d[(k, p)] = c * dkp - s * dkq;
                    d[(k, q)] = s * dkp + c * dkq;
                }
                for k in 0..n {
                    let dpk = d[(p, k)];
                    let dqk = d[(q, k)];
                    d[(p, k)] = c * dpk - s * dqk;
                    d[(q, k)] = s * dpk + c * dqk;
                }
                d[(p, q)] = 0.0;
                d[(q, p)] = 0.0;
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
        converged = off_diagonal_norm(&d) <= threshold;
    }

    let raw = d.diagonal();
    let order = descending_order(&raw);
    Ok(SymEigen {
        eigenvalues: order.iter().map(|&i| raw[i]).collect(),
        eigenvectors: v.select_columns(&order),
    })
}

/// Extends `basis` (orthonormal vectors in ℝ^dim) to `target` orthonormal vectors.
pub(crate) fn complete_orthonormal(mut basis: Vec<Vec<f64>>, dim: usize, target: usize) -> Vec<Vec<f64>> {
    for e in 0..dim {
        if basis.len() >= target {
            break;
        }
        let mut w = vec![0.0; dim];
        w[e] = 1.0;
        // two passes of Gram-Schmidt
        for _ in 0..2 {
            for b in &basis {
                let proj = dot(&w, b);
                for (wi, bi) in w.iter_mut().zip(b) {
                    *wi -= proj * bi;
                }
            }
        }
        let nrm = norm2(&w);
        if nrm > 1e-8 {
            basis.push(w.into_iter().map(|x| x / nrm).collect());
        }
    }
    basis
}

/// One-sided (Hestenes) Jacobi SVD of a tall matrix.
fn svd_tall(t: &Matrix) -> Result<Svd> {
    let (m, n) = (t.rows(), t.cols());
    let mut cols: Vec<Vec<f64>> = (0..n).map(|j| t.column(j)).collect();
    let mut v = Matrix::identity(n);
    let mut sweeps = 0;
    loop {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let alpha = dot(&cols[p], &cols[p]);
                let beta = dot(&cols[q], &cols[q]);
                let gamma = dot(&cols[p], &cols[q]);
                if gamma == 0.0 || gamma.abs() <= f64::EPSILON * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let t = if zeta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                let (head, tail) = cols.split_at_mut(q);
                for (xp, xq) in head[p].iter_mut().zip(tail[0].iter_mut()) {
                    let (a, b) = (*xp, *xq);
                    *xp = c * a - s * b;
                    *xq = s * a + c * b;
                }
                for i in 0..n {
                    let vp = v[(i, p)];
                    let vq = v[(i, q)];
                    v[(i, p)] = c * vp - s * vq;
                    v[(i, q)] = s * vp + c * vq;
                }
            }
        }
        if !rotated {
            break;
        }
        sweeps += 1;
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence {
                routine: "svd",
                iterations: sweeps,
            });
        }
    }

    let raw: Vec<f64> = cols.iter().map(|c| norm2(c)).collect();
    let order = descending_order(&raw);
    let sigma: Vec<f64> = order.iter().map(|&i| raw[i]).collect();
    let smax = sigma.first().copied().unwrap_or(0.0);
    let cutoff = RANK_TOL * smax;

    // zero singular values sort last, so completing the basis keeps the column order
    let u_cols: Vec<Vec<f64>> = order
        .iter()
        .filter(|&&i| raw[i] > cutoff && raw[i] > 0.0)
        .map(|&i| cols[i].iter().map(|x| x / raw[i]).collect())
        .collect();
    let u_cols = complete_orthonormal(u_cols, m, n);
    Ok(Svd {
        u: Matrix::from_columns(m, &u_cols),
        sigma,
        v: v.select_columns(&order),
    })
}

/// Thin SVD `T = U·diag(Σ)·Vᵀ`.
pub fn svd(t: &Matrix) -> Result<Svd> {
    if t.rows() >= t.cols() {
        svd_tall(t)
    } else {
        let Svd { u, sigma, v } = svd_tall(&t.transpose())?;
        Ok(Svd { u: v, sigma, v: u })
    }
}

impl Svd {
    pub fn reconstruct(&self) -> Matrix {
        let mut us = self.u.clone();
        for j in 0..us.cols() {
            for i in 0..us.rows() {
                us[(i, j)] *= self.sigma[j];
            }
        }
        &us * &self.v.transpose()
    }

    pub fn rank(&self) -> usize {
        let smax = self.sigma.first().copied().unwrap_or(0.0);
        self.sigma
            .iter()
            .filter(|&&s| s > RANK_TOL * smax && s > 0.0)
            .count()
    }
}

/// `V·diag(d)·Vᵀ` for `V` with orthonormal columns.
pub(crate) fn spectral_synthesis(v: &Matrix, d: &[f64]) -> Matrix {
    let mut vd = v.clone();
    for j in 0..vd.cols() {
        for i in 0..vd.rows() {
            vd[(i, j)] *= d[j];
        }
    }
    &vd * &v.transpose()
}

/// Polar decomposition `T = U·|T|` of a square matrix.
pub fn polar_decompose(t: &Matrix) -> Result<PolarFactors> {
    if !t.is_square() {
        return Err(Error::ShapeMismatch(format!(
            "polar decomposition needs a square matrix, got {}x{}",
            t.rows(),
            t.cols()
        )));
    }
    let s = svd(t)?;
    let n = t.rows();
    let rank = s.rank();
    let abs_t = spectral_synthesis(&s.v, &s.sigma);
    let mut u = Matrix::zeros(n, n);
    for r in 0..rank {
        for i in 0..n {
            for j in 0..n {
                u[(i, j)] += s.u[(i, r)] * s.v[(j, r)];
            }
        }
    }
    Ok(PolarFactors { u, abs_t })
}

/// Orthonormal basis (as columns) of the orthogonal complement of `span` in ℝ^dim.
pub fn orthogonal_complement(span: &Matrix) -> Matrix {
    let dim = span.rows();
    let basis: Vec<Vec<f64>> = (0..span.cols()).map(|j| span.column(j)).collect();
    let k = basis.len();
    let full = complete_orthonormal(basis, dim, dim);
    Matrix::from_columns(dim, &full[k..])
}

/// `max{⟨Ax,x⟩ : ‖x‖ = 1, x ⊥ top-k eigenvectors of A}` for positive semidefinite `A`.
pub fn courant_fischer_value(a: &Matrix, k: usize) -> Result<f64> {
    if !a.is_square() {
        return Err(Error::ShapeMismatch("Courant-Fischer needs a square matrix".into()));
    }
    let dim = a.rows();
    if k >= dim {
        return Err(Error::BadRank { k, dim });
    }
    let eig = sym_eig(a)?;
    let floor = -1e-12 * a.frobenius_norm();
    if eig.eigenvalues.iter().any(|&l| l < floor) {
        return Err(Error::Precondition("matrix is not positive semidefinite".into()));
    }
    let top: Vec<usize> = (0..k).collect();
    let q = orthogonal_complement(&eig.eigenvectors.select_columns(&top));
    let compressed = &(&q.transpose() * a) * &q;
    let inner = sym_eig(&compressed)?;
    Ok(inner.eigenvalues[0])
}

/// `T·V_M`: the restriction of `T` to the span of the orthonormal columns of `basis`.
pub fn compress_matrix(t: &Matrix, basis: &Matrix) -> Result<Matrix> {
    if basis.rows() != t.cols() {
        return Err(Error::ShapeMismatch(format!(
            "basis has {} rows, operator has {} columns",
            basis.rows(),
            t.cols()
        )));
    }
    if basis.orthonormality_defect() > 1e-10 {
        return Err(Error::Precondition("basis columns are not orthonormal".into()));
    }
    t.matmul(basis)
}

/// Columns of the identity at the given zero-based coordinates.
pub fn coordinate_basis(dim: usize, coords: &[usize]) -> Result<Matrix> {
    let mut seen = vec![false; dim];
    let mut cols = Vec::with_capacity(coords.len());
    for &c in coords {
        if c >= dim || seen[c] {
            return Err(Error::Precondition(format!("bad coordinate index {c}")));
        }
        seen[c] = true;
        let mut e = vec![0.0; dim];
        e[c] = 1.0;
        cols.push(e);
    }
    if cols.is_empty() {
        return Err(Error::Precondition("empty coordinate set".into()));
    }
    Ok(Matrix::from_columns(dim, &cols))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
    }

    #[test]
    fn diagonal_eigen_sorted() {
        let e = sym_eig(&Matrix::from_diag(&[1.0, 2.0, 3.0])).unwrap();
        assert_eq!(e.eigenvalues, vec![3.0, 2.0, 1.0]);
        assert_eq!(e.eigenvectors.column(0), vec![0.0, 0.0, 1.0]);
        assert_eq!(e.eigenvectors.column(2), vec![1.0, 0.0, 0.0]);
    }

    #[test]
    fn swap_matrix_eigen() {
        let a = Matrix::from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let e = sym_eig(&a).unwrap();
        assert!(close(&e.eigenvalues, &[1.0, -1.0], 1e-15));
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let v0 = e.eigenvectors.column(0);
        let v1 = e.eigenvectors.column(1);
        assert!((dot(&v0, &[r, r]).abs() - 1.0).abs() < 1e-14);
        assert!((dot(&v1, &[r, -r]).abs() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn ties_keep_index_order() {
        let e = sym_eig(&Matrix::from_diag(&[2.0, 5.0, 2.0])).unwrap();
        assert_eq!(e.eigenvalues, vec![5.0, 2.0, 2.0]);
        assert_eq!(e.eigenvectors.column(1), vec![1.0, 0.0, 0.0]);
        assert_eq!(e.eigenvectors.column(2), vec![0.0, 0.0, 1.0]);
    }

    #[test]
    fn rejects_asymmetric() {
        let a = Matrix::from_rows(&[vec![1.0, 2.0], vec![0.0, 1.0]]).unwrap();
        assert!(matches!(sym_eig(&a), Err(Error::NotSymmetric { .. })));
    }

    #[test]
    fn svd_small_cases() {
        let s = svd(&Matrix::from_diag(&[3.0, -2.0])).unwrap();
        assert_eq!(s.sigma, vec![3.0, 2.0]);
        let t = Matrix::from_rows(&[vec![0.0, -2.0], vec![3.0, 0.0]]).unwrap();
        let s = svd(&t).unwrap();
        assert!(close(&s.sigma, &[3.0, 2.0], 1e-15));
        let s = svd(&Matrix::zeros(2, 3)).unwrap();
        assert_eq!(s.sigma, vec![0.0, 0.0]);
        assert!(s.u.orthonormality_defect() < 1e-14);
    }

    #[test]
    fn svd_wide_matrix_reconstructs() {
        let t = Matrix::from_rows(&[vec![1.0, 2.0, 3.0], vec![-1.0, 0.5, 4.0]]).unwrap();
        let s = svd(&t).unwrap();
        assert_eq!((s.u.rows(), s.u.cols(), s.v.rows(), s.v.cols()), (2, 2, 3, 2));
        let err = (&s.reconstruct() - &t).frobenius_norm();
        assert!(err <= 1e-12 * t.frobenius_norm());
    }

    #[test]
    fn polar_examples() {
        let p = polar_decompose(&Matrix::from_diag(&[3.0, 2.0])).unwrap();
        assert!(close(p.u.data(), Matrix::identity(2).data(), 1e-15));
        assert!(close(p.abs_t.data(), &[3.0, 0.0, 0.0, 2.0], 1e-15));

        let t = Matrix::from_rows(&[vec![0.0, -2.0], vec![3.0, 0.0]]).unwrap();
        let p = polar_decompose(&t).unwrap();
        assert!(close(p.abs_t.data(), &[3.0, 0.0, 0.0, 2.0], 1e-14));
        assert!(close(p.u.data(), &[0.0, -1.0, 1.0, 0.0], 1e-14));

        let p = polar_decompose(&Matrix::from_diag(&[1.0, 0.0])).unwrap();
        assert!(close(p.u.data(), &[1.0, 0.0, 0.0, 0.0], 1e-15));
    }

    #[test]
    fn courant_fischer_diagonal() {
        let a = Matrix::from_diag(&[3.0, 2.0, 1.0]);
        assert!((courant_fischer_value(&a, 1).unwrap() - 2.0).abs() < 1e-14);
        assert!((courant_fischer_value(&a, 0).unwrap() - 3.0).abs() < 1e-14);
        assert!(matches!(courant_fischer_value(&a, 3), Err(Error::BadRank { .. })));
    }

    #[test]
    fn coordinate_compression() {
        let t = Matrix::from_diag(&[3.0, 2.0, 1.0]);
        let basis = coordinate_basis(3, &[0, 2]).unwrap();
        let r = compress_matrix(&t, &basis).unwrap();
        let square = &basis.transpose() * &r;
        assert_eq!(square, Matrix::from_diag(&[3.0, 1.0]));
        let full = compress_matrix(&t, &Matrix::identity(3)).unwrap();
        assert_eq!(full, t);
    }
}
