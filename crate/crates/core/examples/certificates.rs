//! Trace-duality certificates `K` with `tr(TK) = ‖T‖_Φ*` and `‖K‖_Φ = 1`.

use snorm::duality::build_certificate;
use snorm::norms::NormFamily;
use snorm::rng::{random_matrix, seeded};

fn main() -> snorm::Result<()> {
    let mut rng = seeded(7);
    let t = random_matrix(&mut rng, 4, 4);
    let families = [
        NormFamily::Maximal,
        NormFamily::dual(NormFamily::ky_fan(2)?),
        NormFamily::dual(NormFamily::weighted_ky_fan(&[1.0, 0.5], 2)?),
    ];
    for phi in &families {
        let c = build_certificate(&t, phi)?;
        println!(
            "{:<32} pairing {:.9}  dual norm {:.9}  ||K|| = {:.12}  ok: {}",
            phi.to_string(),
            c.pairing,
            c.dual_norm,
            c.phi_norm_of_k,
            c.check(1e-8).is_ok()
        );
    }
    Ok(())
}
