//! Membership in the norm-attaining classes N, N_[k], N_[π,k], N_(p,k) for
//! positive operators, decided through eigenvalue multiplicities.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use crate::classify::decompose_alpha_kf;
use crate::error::{Error, Result};
use crate::norms::{op_norm, NormFamily, Operator};
use crate::rational::{self, Rational};
use crate::spectra::{
    abs_part, complete_orthonormal, norm2, s_numbers_model, svd, sym_eig, DiagonalModel, Matrix, Multiplicity, Selection,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Reason {
    TopKAreEigenvalues,
    MultiplicityDeficit,
    SupNotEigenvalue,
    FiniteDimensional,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Witness {
    /// One-based eigen-coordinates of a diagonal model.
    Coordinates(Vec<u64>),
    /// Orthonormal eigenvectors of a matrix.
    Vectors(Vec<Vec<f64>>),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AttainmentVerdict {
    pub member: bool,
    pub reason: Reason,
    pub witness: Option<Witness>,
    /// The class actually decided, when the question was delegated.
    pub decided_as: Option<String>,
    /// For a failure: the first offending value and how often it is needed.
    pub deficit: Option<Deficit>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Deficit {
    #[serde(with = "rational::serde_rational")]
    pub value: Rational,
    pub needed: usize,
    pub available: Multiplicity,
}

/// `A ∈ N`: the norm of a positive operator is attained iff it is an eigenvalue.
pub fn is_norming_positive<'a>(a: impl Into<Operator<'a>>) -> Result<AttainmentVerdict> {
    is_k_norming(a, 1)
}

/// `A ∈ N_[k]` for a positive `A`: each distinct value among `s₁, …, s_k`
/// occurs there no more often than its eigenvalue multiplicity.
pub fn is_k_norming<'a>(a: impl Into<Operator<'a>>, k: usize) -> Result<AttainmentVerdict> {
    if k == 0 {
        return Err(Error::Precondition("k must be >= 1".into()));
    }
    match a.into() {
        Operator::Matrix(m) => positive_matrix_verdict(m, k),
        Operator::Model(model) => Ok(model_verdict(model, k)),
    }
}

fn positive_matrix_verdict(a: &Matrix, k: usize) -> Result<AttainmentVerdict> {
    let e = sym_eig(a)?;
    let scale = a.frobenius_norm().max(f64::MIN_POSITIVE);
    if let Some(&low) = e.eigenvalues.last() {
        if low < -1e-10 * scale {
            return Err(Error::Precondition(format!("matrix is not positive (eigenvalue {low})")));
        }
    }
    // fewer than k dimensions: all r eigenvectors form the witness
    let r = k.min(a.rows());
    let vectors = (0..r).map(|j| e.eigenvectors.column(j)).collect();
    Ok(AttainmentVerdict {
        member: true,
        reason: Reason::FiniteDimensional,
        witness: Some(Witness::Vectors(vectors)),
        decided_as: None,
        deficit: None,
    })
}

fn model_verdict(model: &DiagonalModel, k: usize) -> AttainmentVerdict {
    let top = s_numbers_model(model).first(k);
    let mut counts: BTreeMap<&Rational, usize> = BTreeMap::new();
    for v in &top {
        *counts.entry(v).or_default() += 1;
    }
    // largest values first, so the reported deficit is the earliest one
    let mut witness = Vec::new();
    for (v, &needed) in counts.iter().rev() {
        let available = model.multiplicity(v);
        if !available.covers(needed) {
            let reason = if available == Multiplicity::Finite(0) {
                Reason::SupNotEigenvalue
            } else {
                Reason::MultiplicityDeficit
            };
            return AttainmentVerdict {
                member: false,
                reason,
                witness: None,
                decided_as: None,
                deficit: Some(Deficit {
                    value: (*v).clone(),
                    needed,
                    available,
                }),
            };
        }
        witness.extend(model.eigen_coordinates(v, needed));
    }
    AttainmentVerdict {
        member: true,
        reason: Reason::TopKAreEigenvalues,
        witness: Some(Witness::Coordinates(witness)),
        decided_as: None,
        deficit: None,
    }
}

/// `A ∈ N_[π,k]`; for positive operators this coincides with `A ∈ N_[k]`.
pub fn is_weighted_norming<'a>(a: impl Into<Operator<'a>>, pi: &[f64], k: usize) -> Result<AttainmentVerdict> {
    NormFamily::weighted_ky_fan(pi, k)?;
    let mut v = is_k_norming(a, k)?;
    v.decided_as = Some(format!("N_[{k}] (same class as N_[π,{k}] for positive operators)"));
    Ok(v)
}

/// `A ∈ N_(p,k)`; for positive operators this coincides with `A ∈ N_[k]`.
pub fn is_pk_norming<'a>(a: impl Into<Operator<'a>>, p: f64, k: usize) -> Result<AttainmentVerdict> {
    NormFamily::p_singular(p, k)?;
    let mut v = is_k_norming(a, k)?;
    v.decided_as = Some(format!("N_[{k}] (same class as N_({p},{k}) for positive operators)"));
    Ok(v)
}

/// The `k` of a family that defines a norming class.
pub fn class_rank(phi: &NormFamily) -> Result<usize> {
    match phi {
        NormFamily::KyFan { k } | NormFamily::PSingular { k, .. } => Ok(*k),
        NormFamily::WeightedKyFan { weights } => Ok(weights.len()),
        other => Err(Error::InvalidFamily(format!(
            "{} does not define a norming class",
            other.name()
        ))),
    }
}

/// Membership of an arbitrary matrix, decided on `|T|`.
pub fn is_norming_general(t: &Matrix, phi: &NormFamily) -> Result<AttainmentVerdict> {
    let k = class_rank(phi)?;
    let abs = abs_part(t)?;
    let mut v = is_k_norming(&abs, k)?;
    v.decided_as = Some(format!("|T| ∈ N_[{k}]"));
    Ok(v)
}

#[derive(Debug, Clone, Serialize)]
pub struct AttainingSet {
    pub vectors: Vec<Vec<f64>>,
    /// `Σ π_j ‖T x_j‖`, or `(Σ ‖T x_j‖^p)^{1/p}`.
    pub value: f64,
    pub op_norm: f64,
}

/// Top eigenvectors of `|T|` realizing `‖T‖_Φ` for a Ky Fan type family.
pub fn attaining_set(t: &Matrix, phi: &NormFamily) -> Result<AttainingSet> {
    let k = class_rank(phi)?;
    let d = svd(t)?;
    // past the rank, kernel vectors of T complete the frame
    let r = k.min(t.cols());
    let mut vectors: Vec<Vec<f64>> = (0..r.min(d.v.cols())).map(|j| d.v.column(j)).collect();
    vectors = complete_orthonormal(vectors, t.cols(), r);
    let images: Vec<f64> = vectors.iter().map(|x| norm2(&t.mul_vec(x))).collect();
    let value = match phi {
        NormFamily::KyFan { .. } => images.iter().sum(),
        NormFamily::WeightedKyFan { weights } => weights.iter().zip(&images).map(|(w, x)| w * x).sum(),
        NormFamily::PSingular { p, .. } => images.iter().map(|x| x.powf(*p)).sum::<f64>().powf(1.0 / p),
        _ => unreachable!("class_rank rejects other families"),
    };
    let norm = op_norm(phi, t)?;
    if (value - norm).abs() > 1e-9 * norm.max(1.0) {
        return Err(Error::Verification(format!(
            "attaining set gives {value}, ‖T‖_Φ = {norm}"
        )));
    }
    Ok(AttainingSet {
        vectors,
        value,
        op_norm: norm,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct SecondLevelReport {
    #[serde(with = "rational::serde_rational")]
    pub mu: Rational,
    /// Multiplicity of `μ = s₁(A)`.
    pub m: usize,
    #[serde(with = "rational::serde_rational")]
    pub next_value: Rational,
    /// (1) `s_{m+1}` is an eigenvalue of `A`; (2) `‖A − μP‖` is an eigenvalue of
    /// `A − μP`; (3) `(A − μP)` restricted to `E_μ^⊥` is norming; (4) `A`
    /// restricted to `E_μ^⊥` is norming; (5) `A ∈ N_[m+1]`.
    pub statements: [bool; 5],
    pub agree: bool,
}

/// The five equivalent statements about the second eigenvalue level, for
/// `μ = s₁(A)` outside the essential spectrum.
pub fn second_level_equivalences(a: &DiagonalModel) -> Result<SecondLevelReport> {
    let s = s_numbers_model(a);
    let mu = s.value_at(1);
    if &mu == a.alpha() {
        return Err(Error::HypothesisViolated(format!(
            "s₁ = {} lies in the essential spectrum",
            rational::to_string(&mu)
        )));
    }
    let m = match a.multiplicity(&mu) {
        Multiplicity::Finite(m) => m,
        Multiplicity::Infinite => unreachable!("only α can have infinite multiplicity"),
    };
    let next_value = s.value_at(m + 1);

    let s1 = a.multiplicity(&next_value) != Multiplicity::Finite(0);
    let reduced = a.zero_eigenspace(&mu)?;
    let reduced_top = s_numbers_model(&reduced).value_at(1);
    let s2 = reduced.multiplicity(&reduced_top) != Multiplicity::Finite(0);
    let drop = a.drop_eigenspace(&mu)?;
    let s3 = is_norming_positive(&reduced.compress(&drop)?)?.member;
    let s4 = is_norming_positive(&a.compress(&drop)?)?.member;
    let s5 = is_k_norming(a, m + 1)?.member;
    let statements = [s1, s2, s3, s4, s5];
    Ok(SecondLevelReport {
        agree: statements.iter().all(|&b| b == s1),
        mu,
        m,
        next_value,
        statements,
    })
}

/// A coordinate compression whose restriction fails `N_[k]`, for models outside
/// the `αI + K + F` class; `None` when the model admits that form.
pub fn an_witness(a: &DiagonalModel, k: usize) -> Result<Option<Selection>> {
    let report = decompose_alpha_kf(a);
    if report.decomposable {
        return Ok(None);
    }
    // the surviving tail converges to α from below, so α = sup is never attained
    let selection = Selection::Drop((1..=a.prefix().len() as u64).collect());
    let restricted = a.compress(&selection)?;
    if is_k_norming(&restricted, k)?.member {
        return Err(Error::Verification(format!(
            "compression {selection:?} of {a} is still [{k}]-norming"
        )));
    }
    Ok(Some(selection))
}

/// The value `Σ ‖A x_j‖` realized by a model witness.
pub fn witness_value(a: &DiagonalModel, witness: &[u64]) -> Rational {
    witness.iter().fold(Rational::zero(), |acc, &j| acc + a.entry(j))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};
    use crate::spectra::{Gap, TailRule};

    fn double_top() -> DiagonalModel {
        DiagonalModel::new(vec![int(1), int(1)], TailRule::below(int(1), Gap::harmonic(1)).unwrap()).unwrap()
    }

    fn model(prefix: &[i64], tail: TailRule) -> DiagonalModel {
        DiagonalModel::new(prefix.iter().map(|&x| int(x)).collect(), tail).unwrap()
    }

    #[test]
    fn double_top_verdicts() {
        let a = double_top();
        assert!(is_norming_positive(&a).unwrap().member);
        let v2 = is_k_norming(&a, 2).unwrap();
        assert!(v2.member);
        assert_eq!(v2.witness, Some(Witness::Coordinates(vec![1, 2])));
        assert_eq!(witness_value(&a, &[1, 2]), int(2));
        let v3 = is_k_norming(&a, 3).unwrap();
        assert!(!v3.member);
        assert_eq!(v3.reason, Reason::MultiplicityDeficit);
        assert!(!is_weighted_norming(&a, &[1.0, 1.0, 1.0], 3).unwrap().member);
        assert!(!is_pk_norming(&a, 1.0, 3).unwrap().member);

        let sel = an_witness(&a, 1).unwrap().unwrap();
        assert_eq!(sel, Selection::Drop([1, 2].into()));
        let r = is_norming_positive(&a.compress(&sel).unwrap()).unwrap();
        assert!(!r.member);
        assert_eq!(r.reason, Reason::SupNotEigenvalue);
    }

    #[test]
    fn below_tail_alone_is_not_norming() {
        let a = model(&[], TailRule::below(int(1), Gap::harmonic(1)).unwrap());
        assert!(!is_norming_positive(&a).unwrap().member);
    }

    #[test]
    fn matrices_are_norming() {
        let d = Matrix::from_diag(&[3.0, 2.0, 1.0]);
        assert!(is_k_norming(&d, 2).unwrap().member);
        assert!(is_k_norming(&Matrix::from_diag(&[2.0, 1.0]), 1).unwrap().member);
        let t = Matrix::from_rows(&[vec![0.0, -2.0], vec![3.0, 0.0]]).unwrap();
        assert!(is_norming_general(&t, &NormFamily::ky_fan(2).unwrap()).unwrap().member);
        let z = Matrix::zeros(2, 2);
        let v = is_norming_general(&z, &NormFamily::ky_fan(1).unwrap()).unwrap();
        assert!(v.member);
        assert!(matches!(v.witness, Some(Witness::Vectors(ref w)) if w.len() == 1));
        assert!(is_k_norming(&Matrix::from_diag(&[1.0, -1.0]), 1).is_err());
    }

    #[test]
    fn attaining_sets() {
        let d = Matrix::from_diag(&[3.0, 2.0, 1.0]);
        let s = attaining_set(&d, &NormFamily::ky_fan(2).unwrap()).unwrap();
        assert!((s.value - 5.0).abs() < 1e-12);
        let t = Matrix::from_rows(&[vec![0.0, -2.0], vec![3.0, 0.0]]).unwrap();
        let s = attaining_set(&t, &NormFamily::ky_fan(2).unwrap()).unwrap();
        assert!((s.value - 5.0).abs() < 1e-12);
        let wkf = NormFamily::weighted_ky_fan(&[1.0, 0.5], 2).unwrap();
        let s = attaining_set(&Matrix::from_diag(&[2.0, 2.0]), &wkf).unwrap();
        assert!((s.value - 3.0).abs() < 1e-12);
        let ps = NormFamily::p_singular(2.0, 3).unwrap();
        assert!(attaining_set(&Matrix::from_diag(&[2.0, 1.0]), &ps).is_ok());
    }

    #[test]
    fn second_level_examples() {
        let a = model(&[5, 3], TailRule::constant(int(2)).unwrap());
        let r = second_level_equivalences(&a).unwrap();
        assert_eq!((r.m, r.statements), (1, [true; 5]));

        let b = model(&[5], TailRule::below(int(3), Gap::harmonic(1)).unwrap());
        let r = second_level_equivalences(&b).unwrap();
        assert_eq!(r.statements, [false; 5]);

        let c = model(&[5, 5], TailRule::constant(int(2)).unwrap());
        let r = second_level_equivalences(&c).unwrap();
        assert_eq!((r.m, r.next_value.clone(), r.statements), (2, int(2), [true; 5]));

        let id = model(&[], TailRule::constant(int(1)).unwrap());
        assert!(matches!(second_level_equivalences(&id), Err(Error::HypothesisViolated(_))));
    }

    #[test]
    fn decomposable_models_have_no_witness() {
        let a = model(&[5], TailRule::constant(int(2)).unwrap());
        assert_eq!(an_witness(&a, 2).unwrap(), None);
        let c = model(&[], TailRule::above(int(0), Gap::harmonic(0)).unwrap());
        assert_eq!(an_witness(&c, 3).unwrap(), None);
        assert!(is_k_norming(&c, 3).unwrap().member);
        let half = DiagonalModel::new(vec![ratio(1, 2)], TailRule::constant(int(0)).unwrap()).unwrap();
        assert!(is_k_norming(&half, 3).unwrap().member);
    }
}
