//! Adjoint norms: closed forms next to the cutting-plane solver.

use snorm::duality::{adjoint, adjoint_eval_numeric};
use snorm::norms::{NormFamily, SpectrumVector};

fn main() -> snorm::Result<()> {
    let eta = SpectrumVector::new(&[3.0, 1.0, 1.0, 1.0]);
    let families = [
        NormFamily::ky_fan(2)?,
        NormFamily::weighted_ky_fan(&[1.0, 0.5], 2)?,
        NormFamily::Maximal,
        NormFamily::p_singular(2.0, 4)?,
    ];
    for phi in &families {
        let closed = adjoint(phi, &eta)?;
        let numeric = adjoint_eval_numeric(phi, &eta, eta.entries().len())?;
        println!(
            "{:<24} {:?}: {:.9}  numeric: {:.9}  maximizer {:?}",
            phi.to_string(),
            closed.method,
            closed.value,
            numeric.value,
            closed.xi_star
        );
    }
    Ok(())
}
