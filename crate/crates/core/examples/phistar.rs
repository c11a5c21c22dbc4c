//! The dual weighted norm on diagonal models, with an attainment verdict.

use snorm::rational::{int, ratio, to_string};
use snorm::sn_ideal::{phi_pi_star_norm_model, PiWeight};
use snorm::spectra::{DiagonalModel, Gap, TailRule};

fn main() -> snorm::Result<()> {
    let pi = PiWeight::half();
    let models = [
        ("identity", DiagonalModel::new(vec![], TailRule::constant(int(1))?)?),
        ("compact", DiagonalModel::new(vec![int(1)], TailRule::above(int(0), Gap::with_power(int(1), int(1), 2)?)?)?),
        ("spike", DiagonalModel::new(vec![int(3)], TailRule::below(ratio(1, 2), Gap::harmonic(2))?)?),
    ];
    for (name, a) in &models {
        let r = phi_pi_star_norm_model(a, &pi, 200)?;
        println!(
            "{name:<9} value {} ({:.6})  {:?}  argmax {:?}  scanned {}",
            to_string(&r.value),
            r.value_f64,
            r.attained,
            r.argmax,
            r.scanned
        );
    }
    Ok(())
}
