//! The `αI + K + F` form (`K` positive compact, `F` finite rank) that
//! characterizes absolutely norm-attaining positive diagonal models.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use rand::Rng;
use serde::{Serialize, Serializer};

use crate::attainment::{an_witness, class_rank, is_k_norming};
use crate::error::Result;
use crate::norms::{NormFamily, Operator};
use crate::rational::{self, Rational};
use crate::spectra::{DiagonalModel, Gap, Selection, TailKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Refusal {
    TailApproachesFromBelow,
    NegativeEntry,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecompositionReport {
    pub decomposable: bool,
    #[serde(with = "rational::serde_rational")]
    pub alpha: Rational,
    /// Prefix positions assigned to `K`, with `k(j) = entry(j) − α ≥ 0`.
    #[serde(serialize_with = "rational_map")]
    pub k_entries: BTreeMap<u64, Rational>,
    /// `k(prefix_len + j) = g(j)` on the tail; `None` for a constant tail.
    pub k_tail: Option<Gap>,
    pub tail_offset: u64,
    /// Finite-rank part: prefix positions with entry below `α`.
    #[serde(serialize_with = "rational_map")]
    pub f_entries: BTreeMap<u64, Rational>,
    pub refusal: Option<Refusal>,
}

fn rational_map<S: Serializer>(m: &BTreeMap<u64, Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_map(m.iter().map(|(k, v)| (k.to_string(), rational::to_string(v))))
}

impl DecompositionReport {
    /// `k(j)`, one-based.
    pub fn k_at(&self, j: u64) -> Rational {
        if j > self.tail_offset {
            return self
                .k_tail
                .as_ref()
                .map_or_else(Rational::zero, |g| g.eval(j - self.tail_offset));
        }
        self.k_entries.get(&j).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn f_at(&self, j: u64) -> Rational {
        self.f_entries.get(&j).cloned().unwrap_or_else(Rational::zero)
    }

    /// The first `n` entries of `αI + K + F`.
    pub fn resynthesize(&self, n: u64) -> Vec<Rational> {
        (1..=n).map(|j| &self.alpha + self.k_at(j) + self.f_at(j)).collect()
    }
}

/// Splits `A` as `αI + K + F` with `α` the tail limit: tail entries and prefix
/// entries `≥ α` go to `K`, prefix entries `< α` to `F`.
pub fn decompose_alpha_kf(a: &DiagonalModel) -> DecompositionReport {
    let alpha = a.alpha().clone();
    let tail_offset = a.prefix().len() as u64;
    let refusal = if a.prefix().iter().any(|x| x.is_negative()) {
        Some(Refusal::NegativeEntry)
    } else if a.tail().kind() == TailKind::ConvergesFromBelow {
        Some(Refusal::TailApproachesFromBelow)
    } else {
        None
    };
    if refusal.is_some() {
        return DecompositionReport {
            decomposable: false,
            alpha,
            k_entries: BTreeMap::new(),
            k_tail: None,
            tail_offset,
            f_entries: BTreeMap::new(),
            refusal,
        };
    }
    let mut k_entries = BTreeMap::new();
    let mut f_entries = BTreeMap::new();
    for (i, d) in a.prefix().iter().enumerate() {
        let diff = d - &alpha;
        if diff.is_negative() {
            f_entries.insert(i as u64 + 1, diff);
        } else if !diff.is_zero() {
            k_entries.insert(i as u64 + 1, diff);
        }
    }
    DecompositionReport {
        decomposable: true,
        alpha,
        k_entries,
        k_tail: a.tail().gap().cloned(),
        tail_offset,
        f_entries,
        refusal: None,
    }
}

/// `T ∈ AN_[k]` (equivalently `AN_[π,k]`, `AN_(p,k)`, for any parameters).
pub fn is_an_member<'a>(t: impl Into<Operator<'a>>, family: &NormFamily) -> Result<bool> {
    class_rank(family)?;
    Ok(match t.into() {
        Operator::Matrix(_) => true,
        Operator::Model(m) => decompose_alpha_kf(m).decomposable,
    })
}

/// A random coordinate compression that keeps infinitely many coordinates.
pub fn sample_selection<R: Rng>(rng: &mut R, a: &DiagonalModel) -> Selection {
    let horizon = a.prefix().len() as u64 + 6;
    if rng.gen_bool(0.3) {
        Selection::TailFrom(rng.gen_range(1..=horizon))
    } else {
        let count = rng.gen_range(0..=4);
        Selection::Drop((0..count).map(|_| rng.gen_range(1..=horizon)).collect())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteViolation {
    pub model: String,
    pub detail: String,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct SuiteReport {
    pub models: usize,
    pub decomposable: usize,
    pub checks: usize,
    pub violations: Vec<SuiteViolation>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Cross-checks the classifier against the norming deciders on a corpus:
/// AN membership is parameter independent, refused models have a failing
/// compression, and decomposable models stay `[k]`-norming under compression.
pub fn spectral_theorem_suite<R: Rng>(
    corpus: &[DiagonalModel],
    ks: &[usize],
    pis: &[Vec<f64>],
    ps: &[f64],
    compressions: usize,
    rng: &mut R,
) -> Result<SuiteReport> {
    let mut report = SuiteReport {
        models: corpus.len(),
        ..SuiteReport::default()
    };
    for a in corpus {
        let mut fail = |detail: String| {
            report.violations.push(SuiteViolation {
                model: a.to_string(),
                detail,
            })
        };
        let d = decompose_alpha_kf(a);

        let mut families = Vec::new();
        for &k in ks {
            families.push(NormFamily::ky_fan(k)?);
            for pi in pis.iter().filter(|pi| pi.len() >= k) {
                families.push(NormFamily::weighted_ky_fan(pi, k)?);
            }
            for &p in ps {
                families.push(NormFamily::p_singular(p, k)?);
            }
        }
        for fam in &families {
            report.checks += 1;
            if is_an_member(a, fam)? != d.decomposable {
                fail(format!("AN membership for {fam} differs from the decomposition"));
            }
        }

        if !d.decomposable {
            for &k in ks {
                report.checks += 1;
                match an_witness(a, k) {
                    Ok(Some(sel)) => {
                        if is_k_norming(&a.compress(&sel)?, k)?.member {
                            fail(format!("witness {sel:?} is still [{k}]-norming"));
                        }
                    }
                    Ok(None) => fail(format!("no witness for k = {k}")),
                    Err(e) => fail(format!("witness search failed: {e}")),
                }
            }
            continue;
        }

        report.decomposable += 1;
        let n = d.tail_offset + 20;
        report.checks += 1;
        if d.resynthesize(n) != a.entries(n) {
            fail("αI + K + F does not reproduce the entries".into());
        }
        let mut restricted = vec![(None, a.clone())];
        for _ in 0..compressions {
            let sel = sample_selection(rng, a);
            restricted.push((Some(sel.clone()), a.compress(&sel)?));
        }
        for (sel, b) in &restricted {
            for &k in ks {
                report.checks += 1;
                if !is_k_norming(b, k)?.member {
                    fail(format!("compression {sel:?} is not [{k}]-norming"));
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};
    use crate::spectra::{Matrix, TailRule};
    use rand::SeedableRng;
    use rand_xoshiro::Xoshiro256PlusPlus;

    #[test]
    fn split_with_negative_part() {
        let a = DiagonalModel::new(vec![ratio(1, 2), int(4)], TailRule::above(int(2), Gap::harmonic(0)).unwrap())
            .unwrap();
        let d = decompose_alpha_kf(&a);
        assert!(d.decomposable);
        assert_eq!(d.alpha, int(2));
        assert_eq!(d.f_entries, BTreeMap::from([(1, ratio(-3, 2))]));
        assert_eq!(d.k_entries, BTreeMap::from([(2, int(2))]));
        assert_eq!(d.k_at(3), int(1));
        assert_eq!(d.k_at(5), ratio(1, 3));
        assert_eq!(d.resynthesize(30), a.entries(30));
    }

    #[test]
    fn refusals_and_trivial_cases() {
        let e41 = DiagonalModel::new(vec![int(1), int(1)], TailRule::below(int(1), Gap::harmonic(1)).unwrap()).unwrap();
        let d = decompose_alpha_kf(&e41);
        assert_eq!(d.refusal, Some(Refusal::TailApproachesFromBelow));
        assert!(!is_an_member(&e41, &NormFamily::ky_fan(3).unwrap()).unwrap());

        let id3 = DiagonalModel::new(vec![], TailRule::constant(int(3)).unwrap()).unwrap();
        let d = decompose_alpha_kf(&id3);
        assert!(d.decomposable && d.k_entries.is_empty() && d.f_entries.is_empty());

        let m = DiagonalModel::new(vec![int(5), int(3)], TailRule::constant(int(2)).unwrap()).unwrap();
        assert!(is_an_member(&m, &NormFamily::ky_fan(2).unwrap()).unwrap());
        assert!(is_an_member(&Matrix::from_diag(&[1.0, 2.0]), &NormFamily::ky_fan(1).unwrap()).unwrap());
        assert!(is_an_member(&m, &NormFamily::Maximal).is_err());
    }

    #[test]
    fn suite_on_small_corpus() {
        let corpus = vec![
            DiagonalModel::new(vec![int(1), int(1)], TailRule::below(int(1), Gap::harmonic(1)).unwrap()).unwrap(),
            DiagonalModel::new(vec![int(5)], TailRule::above(int(2), Gap::harmonic(0)).unwrap()).unwrap(),
            DiagonalModel::new(vec![int(5), int(3)], TailRule::constant(int(2)).unwrap()).unwrap(),
        ];
        let mut rng = Xoshiro256PlusPlus::seed_from_u64(7);
        let r = spectral_theorem_suite(&corpus, &[1, 2, 3], &[vec![1.0, 0.5, 0.25]], &[2.0], 20, &mut rng).unwrap();
        assert!(r.passed(), "{:?}", r.violations);
        assert_eq!(r.decomposable, 2);
    }
}
