mod common;

use common::{close, prefix_ratio_sup, singular_values, sym_eigenvalues};
use snorm::duality::{adjoint, adjoint_eval_numeric, build_certificate, phi_star_norm};
use snorm::norms::{op_norm, sn_eval, NormFamily, SpectrumVector};
use snorm::rational::{int, ratio};
use snorm::rng::{self, seeded};
use snorm::sn_ideal::PiWeight;
use snorm::spectra::{s_numbers_matrix, sym_eig};

#[test]
fn singular_values_match_reference() {
    let mut r = seeded(11);
    for _ in 0..60 {
        let t = rng::random_shape_matrix(&mut r, 9);
        let ours = s_numbers_matrix(&t).unwrap();
        let reference = singular_values(&t);
        for (j, s) in reference.iter().enumerate() {
            assert!((ours.value_at(j + 1) - s).abs() <= 1e-10 * reference[0].max(1.0));
        }
    }
}

#[test]
fn eigenvalues_match_reference() {
    let mut r = seeded(12);
    for n in 1..=10 {
        let a = rng::random_symmetric(&mut r, n);
        let ours = sym_eig(&a).unwrap().eigenvalues;
        for (x, y) in ours.iter().zip(sym_eigenvalues(&a)) {
            assert!((x - y).abs() <= 1e-10 * a.frobenius_norm().max(1.0));
        }
    }
}

#[test]
fn norms_match_reference_singular_values() {
    let mut r = seeded(13);
    for _ in 0..40 {
        let t = rng::random_shape_matrix(&mut r, 6);
        let s = singular_values(&t);
        let top = |k: usize| s.iter().take(k).sum::<f64>();
        assert!(close(op_norm(&NormFamily::ky_fan(1).unwrap(), &t).unwrap(), s[0], 1e-10));
        assert!(close(op_norm(&NormFamily::ky_fan(3).unwrap(), &t).unwrap(), top(3), 1e-10));
        assert!(close(op_norm(&NormFamily::Maximal, &t).unwrap(), top(s.len()), 1e-10));
        let frob = s.iter().map(|x| x * x).sum::<f64>().sqrt();
        assert!(close(op_norm(&NormFamily::p_singular(2.0, 9).unwrap(), &t).unwrap(), frob, 1e-10));
        assert!(close(op_norm(&NormFamily::p_singular(1.0, 2).unwrap(), &t).unwrap(), top(2), 1e-12));
    }
}

#[test]
fn dual_ky_fan_norm_of_random_matrices() {
    let mut r = seeded(14);
    let kf2 = NormFamily::ky_fan(2).unwrap();
    for _ in 0..20 {
        let t = rng::random_matrix(&mut r, 5, 5);
        let s = singular_values(&t);
        let v = phi_star_norm(&t, &NormFamily::dual(kf2.clone())).unwrap();
        assert!((v - sn_eval(&kf2, &SpectrumVector::new(&s))).abs() <= 1e-9);
        let w = phi_star_norm(&t, &kf2).unwrap();
        assert!((w - s[0].max(s.iter().sum::<f64>() / 2.0)).abs() <= 1e-9);
    }
}

#[test]
fn weighted_certificate_pairing() {
    let mut r = seeded(15);
    let phi = NormFamily::dual(NormFamily::weighted_ky_fan(&[1.0, 0.5], 2).unwrap());
    for _ in 0..20 {
        let t = rng::random_matrix(&mut r, 4, 4);
        let s = singular_values(&t);
        let c = build_certificate(&t, &phi).unwrap();
        assert!((c.pairing - (s[0] + 0.5 * s[1])).abs() <= 1e-8);
        assert!((c.phi_norm_of_k - 1.0).abs() <= 1e-10);
    }
}

#[test]
fn weighted_l1_adjoint_against_grid_search() {
    let pi = PiWeight::explicit(vec![int(1), ratio(1, 2), ratio(1, 4)]).unwrap();
    let phi = NormFamily::weighted_l1(pi);
    let eta = SpectrumVector::new(&[1.0, 1.0, 1.0]);
    let closed = adjoint(&phi, &eta).unwrap().value;
    assert!((closed - 12.0 / 7.0).abs() < 1e-12);
    assert!((closed - prefix_ratio_sup(&[1.0, 1.0, 1.0], &[1.0, 0.5, 0.25])).abs() < 1e-12);

    // grid over nonincreasing ξ in [0, 1]³
    let steps = 20;
    let mut best: f64 = 0.0;
    for a in 0..=steps {
        for b in 0..=a {
            for c in 0..=b {
                let xi = [a, b, c].map(|x| x as f64 / steps as f64);
                let norm = sn_eval(&phi, &SpectrumVector::new(&xi));
                if norm > 0.0 {
                    best = best.max(xi.iter().sum::<f64>() / norm);
                }
            }
        }
    }
    assert!((best - closed).abs() <= 1e-7);
    let numeric = adjoint_eval_numeric(&phi, &eta, 3).unwrap().value;
    assert!((numeric - closed).abs() <= 1e-7);
}

#[test]
fn schatten_two_adjoint_is_euclidean() {
    let mut r = seeded(16);
    let phi = NormFamily::p_singular(2.0, 6).unwrap();
    for _ in 0..20 {
        let eta = rng::random_spectrum(&mut r, 5);
        let v = adjoint(&phi, &eta).unwrap().value;
        let euclid = eta.entries().iter().map(|x| x * x).sum::<f64>().sqrt();
        assert!((v - euclid).abs() <= 1e-7 * euclid);
    }
    let unit = adjoint_eval_numeric(&NormFamily::p_singular(2.0, 2).unwrap(), &SpectrumVector::new(&[1.0, 0.0]), 2)
        .unwrap()
        .value;
    assert!((unit - 1.0).abs() < 1e-7);
}
