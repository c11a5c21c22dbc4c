//! Norm attainment for diagonal models: a double top eigenvalue and a tail
//! creeping up to it.

use snorm::attainment::{an_witness, is_k_norming, is_norming_positive, witness_value};
use snorm::rational::{int, to_string};
use snorm::spectra::{s_numbers_model, DiagonalModel, Gap, TailRule};

fn main() -> snorm::Result<()> {
    // diag(1, 1, 1 - 1/2, 1 - 1/3, ...)
    let a = DiagonalModel::new(vec![int(1), int(1)], TailRule::below(int(1), Gap::harmonic(1))?)?;
    let s = s_numbers_model(&a);
    let first: Vec<String> = s.first(6).iter().map(to_string).collect();
    println!("s-numbers: {}", first.join(", "));

    println!("norming: {}", is_norming_positive(&a)?.member);
    for k in 1..=4 {
        let v = is_k_norming(&a, k)?;
        println!("Ky Fan {k}: member = {}, reason = {:?}", v.member, v.reason);
    }
    if let Some(sel) = an_witness(&a, 2)? {
        println!("witness for k = 2: {sel:?}");
    }
    println!("value on coordinates {{1, 2}}: {}", to_string(&witness_value(&a, &[1, 2])));
    Ok(())
}
