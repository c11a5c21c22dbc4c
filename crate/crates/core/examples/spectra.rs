//! Singular values, polar factors and Courant–Fischer on a small matrix.

use snorm::spectra::{courant_fischer_value, polar_decompose, s_numbers_matrix, sym_eig, Matrix};

fn main() -> snorm::Result<()> {
    let t = Matrix::from_rows(&[vec![3.0, 1.0, 0.0], vec![0.0, 2.0, 1.0], vec![0.0, 0.0, 1.0]])?;

    let s = s_numbers_matrix(&t)?;
    println!("s-numbers: {:?}", s.values());

    let p = polar_decompose(&t)?;
    let residual = (&t - &(&p.u * &p.abs_t)).frobenius_norm();
    println!("polar residual ||T - U|T|||_F = {residual:.2e}");

    let gram = &t.transpose() * &t;
    let eig = sym_eig(&gram)?;
    println!("eigenvalues of T^T T: {:?}", eig.eigenvalues);
    for k in 0..3 {
        println!("  min-max value for k = {k}: {:.6}", courant_fischer_value(&gram, k)?);
    }
    Ok(())
}
