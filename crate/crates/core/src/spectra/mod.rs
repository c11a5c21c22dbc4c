//! Spectral kernels for finite matrices and diagonal operator models.

mod eigen;
mod matrix;
mod model;
mod snumbers;

pub use eigen::{
    compress_matrix, coordinate_basis, courant_fischer_value, orthogonal_complement,
    polar_decompose, svd, sym_eig, PolarFactors, Svd, SymEigen, MAX_SWEEPS, OFF_DIAGONAL_TOL,
    RANK_TOL, SYMMETRY_TOL,
};
pub(crate) use eigen::{complete_orthonormal, spectral_synthesis};
pub use matrix::Matrix;
pub(crate) use matrix::norm2;
pub use model::{DiagonalModel, Gap, Multiplicity, Selection, TailKind, TailRule};
pub use snumbers::{s_numbers_matrix, s_numbers_model, ModelSNumbers, SNumbers};

/// `|T| = (TᵀT)^{1/2}` for any (possibly rectangular) matrix.
pub fn abs_part(t: &crate::spectra::Matrix) -> crate::error::Result<Matrix> {
    let s = svd(t)?;
    Ok(spectral_synthesis(&s.v, &s.sigma))
}
