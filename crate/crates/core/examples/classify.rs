//! Splitting a diagonal model as `αI + K + F`.

use snorm::classify::decompose_alpha_kf;
use snorm::rational::{int, ratio, to_string};
use snorm::spectra::{DiagonalModel, Gap, TailRule};

fn main() -> snorm::Result<()> {
    let above = DiagonalModel::new(vec![ratio(1, 2), int(4)], TailRule::above(int(2), Gap::harmonic(0))?)?;
    let below = DiagonalModel::new(vec![int(3)], TailRule::below(int(2), Gap::harmonic(1))?)?;

    for (name, a) in [("above", &above), ("below", &below)] {
        let r = decompose_alpha_kf(a);
        if !r.decomposable {
            println!("{name}: refused ({:?})", r.refusal);
            continue;
        }
        let rebuilt: Vec<String> = r.resynthesize(6).iter().map(to_string).collect();
        println!("{name}: alpha = {}, rebuilt = {}", to_string(&r.alpha), rebuilt.join(", "));
        for j in 1..=4 {
            println!("  j = {j}: k = {}, f = {}", to_string(&r.k_at(j)), to_string(&r.f_at(j)));
        }
    }
    Ok(())
}
