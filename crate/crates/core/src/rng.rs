//! Seeded random corpora. The generator is xoshiro256++ seeded through
//! SplitMix64 (`seed_from_u64`), so corpora are reproducible across runs.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;

use crate::norms::SpectrumVector;
use crate::rational::{int, ratio, Rational};
use crate::spectra::{DiagonalModel, Gap, Matrix, TailRule};

pub type CorpusRng = Xoshiro256PlusPlus;

pub const DEFAULT_SEED: u64 = 42;

pub fn seeded(seed: u64) -> CorpusRng {
    Xoshiro256PlusPlus::seed_from_u64(seed)
}

/// Entries uniform in `[-1, 1]`.
pub fn random_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize) -> Matrix {
    let data = (0..rows * cols).map(|_| rng.gen_range(-1.0..=1.0)).collect();
    Matrix::new(rows, cols, data).expect("finite entries")
}

pub fn random_symmetric<R: Rng>(rng: &mut R, n: usize) -> Matrix {
    let b = random_matrix(rng, n, n);
    (&b + &b.transpose()).scale(0.5)
}

/// `BᵀB` for a random square `B`.
pub fn random_psd<R: Rng>(rng: &mut R, n: usize) -> Matrix {
    let b = random_matrix(rng, n, n);
    &b.transpose() * &b
}

/// A random matrix with both dimensions in `1..=max_dim`.
pub fn random_shape_matrix<R: Rng>(rng: &mut R, max_dim: usize) -> Matrix {
    let rows = rng.gen_range(1..=max_dim);
    let cols = rng.gen_range(1..=max_dim);
    random_matrix(rng, rows, cols)
}

/// Support in `1..=max_support`, entries in `(0, 10]`.
pub fn random_spectrum<R: Rng>(rng: &mut R, max_support: usize) -> SpectrumVector {
    let n = rng.gen_range(1..=max_support);
    let raw: Vec<f64> = (0..n).map(|_| 10.0 * (1.0 - rng.gen::<f64>())).collect();
    SpectrumVector::new(&raw)
}

/// A small nonnegative rational `p/q` with `q ≤ 4` and value at most `max`.
pub fn random_rational<R: Rng>(rng: &mut R, max: i64) -> Rational {
    let q = rng.gen_range(1..=4);
    ratio(rng.gen_range(0..=max * q), q)
}

fn random_gap<R: Rng>(rng: &mut R, max_c: i64) -> Gap {
    let c = ratio(rng.gen_range(1..=2 * max_c), 2);
    let d = int(rng.gen_range(0..=2));
    let power = if rng.gen_bool(0.25) { 2 } else { 1 };
    Gap::with_power(c, d, power).expect("valid gap")
}

/// A positive diagonal model with a prefix of length at most 4, rational
/// entries, and a tail of random kind.
pub fn random_model<R: Rng>(rng: &mut R) -> DiagonalModel {
    let alpha = [int(0), ratio(1, 2), int(1), int(2), int(3)]
        .choose(rng)
        .expect("nonempty")
        .clone();
    let len = rng.gen_range(0..=4);
    let mut prefix: Vec<Rational> = (0..len).map(|_| random_rational(rng, 5)).collect();
    // repeated values exercise the multiplicity logic
    if len >= 2 && rng.gen_bool(0.4) {
        prefix[1] = prefix[0].clone();
    }
    if len >= 1 && rng.gen_bool(0.2) {
        prefix[len - 1] = alpha.clone();
    }
    let tail = match rng.gen_range(0..3) {
        0 => TailRule::constant(alpha),
        1 => TailRule::above(alpha, random_gap(rng, 2)),
        _ if alpha > int(0) => {
            // keep every tail entry nonnegative: g(1) ≤ α
            let mut gap = random_gap(rng, 2);
            while gap.eval(1) > alpha {
                gap = Gap::with_power(&gap.c / int(2), gap.d.clone(), gap.power).expect("valid gap");
            }
            TailRule::below(alpha, gap)
        }
        _ => TailRule::constant(alpha),
    }
    .expect("valid tail");
    DiagonalModel::new(prefix, tail).expect("valid model")
}

/// A compact model: a finite-rank operator or a tail converging to zero.
pub fn random_compact_model<R: Rng>(rng: &mut R) -> DiagonalModel {
    let len = rng.gen_range(0..=4);
    let prefix: Vec<Rational> = (0..len).map(|_| random_rational(rng, 3)).collect();
    let tail = if len > 0 && rng.gen_bool(0.3) {
        TailRule::constant(int(0))
    } else {
        TailRule::above(int(0), random_gap(rng, 2))
    }
    .expect("valid tail");
    DiagonalModel::new(prefix, tail).expect("valid model")
}

/// Hand-picked models covering every tail kind and the mixed cases.
pub fn landmark_models() -> Vec<DiagonalModel> {
    let m = |prefix: Vec<Rational>, tail: TailRule| DiagonalModel::new(prefix, tail).expect("valid model");
    vec![
        m(vec![int(1), int(1)], TailRule::below(int(1), Gap::harmonic(1)).unwrap()),
        m(vec![], TailRule::below(int(1), Gap::harmonic(1)).unwrap()),
        m(vec![], TailRule::constant(int(1)).unwrap()),
        m(vec![int(5), int(3)], TailRule::constant(int(2)).unwrap()),
        m(vec![int(5), int(5)], TailRule::constant(int(2)).unwrap()),
        m(vec![int(5)], TailRule::below(int(3), Gap::harmonic(1)).unwrap()),
        m(vec![int(5)], TailRule::above(int(2), Gap::harmonic(0)).unwrap()),
        m(vec![ratio(1, 2), int(4)], TailRule::above(int(2), Gap::harmonic(0)).unwrap()),
        m(vec![], TailRule::above(int(0), Gap::harmonic(0)).unwrap()),
        m(
            vec![int(1)],
            TailRule::above(int(0), Gap::with_power(int(1), int(0), 2).unwrap()).unwrap(),
        ),
        m(vec![int(2), int(1)], TailRule::above(int(1), Gap::harmonic(1)).unwrap()),
    ]
}

/// The landmark models followed by random ones, `n` in total (at least the landmarks).
pub fn model_corpus<R: Rng>(rng: &mut R, n: usize) -> Vec<DiagonalModel> {
    let mut corpus = landmark_models();
    while corpus.len() < n {
        corpus.push(random_model(rng));
    }
    corpus
}

/// Random weight prefixes `1 = π₁ ≥ π₂ ≥ … > 0` of length `k`.
pub fn random_weights<R: Rng>(rng: &mut R, k: usize) -> Vec<f64> {
    let mut w = vec![1.0];
    while w.len() < k {
        let last = *w.last().expect("nonempty");
        w.push(last * rng.gen_range(0.2..=1.0));
    }
    w
}
