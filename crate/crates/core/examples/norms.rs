//! Evaluating symmetric norms on spectra and on operators.

use snorm::norms::{op_norm, sn_eval, NormFamily, SpectrumVector};
use snorm::rational::ratio;
use snorm::sn_ideal::PiWeight;
use snorm::spectra::Matrix;

fn main() -> snorm::Result<()> {
    let xi = SpectrumVector::new(&[1.0, 4.0, -2.0, 0.5]);
    println!("rearranged spectrum: {:?}", xi.entries());

    let families = [
        NormFamily::ky_fan(2)?,
        NormFamily::weighted_ky_fan(&[1.0, 0.5, 0.25], 3)?,
        NormFamily::p_singular(2.0, 4)?,
        NormFamily::weighted_l1(PiWeight::harmonic(ratio(1, 2), ratio(1, 1))?),
        NormFamily::Minimal,
        NormFamily::Maximal,
        NormFamily::from_json(r#"{"family":"dual","of":{"family":"kyfan","k":2}}"#)?,
    ];
    for phi in &families {
        println!("{:<28} {:.6}", phi.to_string(), sn_eval(phi, &xi));
    }

    let t = Matrix::from_diag(&[3.0, 2.0, 1.0]);
    println!("Ky Fan 2 of diag(3, 2, 1): {}", op_norm(&families[0], &t)?);
    Ok(())
}
