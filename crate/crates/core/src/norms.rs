//! Symmetric norming functions (s.n. functions) on finitely supported
//! nonincreasing sequences, and the operator norms they induce.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::duality;
use crate::error::{Error, Result};
use crate::rational;
use crate::sn_ideal::PiWeight;
use crate::spectra::{s_numbers_matrix, s_numbers_model, DiagonalModel, Matrix, TailKind};

/// A finitely supported sequence in canonical form: absolute values sorted
/// nonincreasingly.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(from = "Vec<f64>", into = "Vec<f64>")]
pub struct SpectrumVector(Vec<f64>);

impl SpectrumVector {
    pub fn new(raw: &[f64]) -> Self {
        let mut v: Vec<f64> = raw.iter().map(|x| x.abs()).collect();
        v.sort_by(|a, b| b.partial_cmp(a).expect("finite entries"));
        SpectrumVector(v)
    }

    pub fn entries(&self) -> &[f64] {
        &self.0
    }

    /// `ξ_j`, one-based, zero past the stored length.
    pub fn get(&self, j: usize) -> f64 {
        self.0.get(j - 1).copied().unwrap_or(0.0)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Index of the last nonzero entry.
    pub fn support(&self) -> usize {
        self.0.iter().rposition(|&x| x > 0.0).map_or(0, |i| i + 1)
    }

    /// `(1, …, 1, 0, …)` with `n` ones.
    pub fn ones(n: usize) -> Self {
        SpectrumVector(vec![1.0; n])
    }

    pub fn unit() -> Self {
        SpectrumVector(vec![1.0])
    }

    /// Pads with zeros (or truncates) to `n` entries.
    pub fn resized(&self, n: usize) -> Vec<f64> {
        (1..=n).map(|j| self.get(j)).collect()
    }
}

impl From<Vec<f64>> for SpectrumVector {
    fn from(v: Vec<f64>) -> Self {
        SpectrumVector::new(&v)
    }
}

impl From<SpectrumVector> for Vec<f64> {
    fn from(v: SpectrumVector) -> Self {
        v.0
    }
}

/// The built-in s.n. functions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "FamilySpec", into = "FamilySpec")]
pub enum NormFamily {
    /// Sum of the `k` largest entries.
    KyFan { k: usize },
    /// `Σ_{j≤k} π_j ξ_j`; only the first `k` weights are kept.
    WeightedKyFan { weights: Vec<f64> },
    /// ℓ^p norm of the `k` largest entries.
    PSingular { p: f64, k: usize },
    /// `Σ_j π_j ξ_j` over the whole support.
    WeightedL1 { pi: PiWeight },
    /// `ξ₁`.
    Minimal,
    /// `Σ_j ξ_j`.
    Maximal,
    /// The adjoint s.n. function of another family.
    Dual(Box<NormFamily>),
}

impl NormFamily {
    pub fn ky_fan(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidFamily("k must be >= 1".into()));
        }
        Ok(NormFamily::KyFan { k })
    }

    /// Weighted Ky Fan norm from a weight prefix of length at least `k`.
    pub fn weighted_ky_fan(pi: &[f64], k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidFamily("k must be >= 1".into()));
        }
        if pi.len() < k {
            return Err(Error::InvalidFamily(format!(
                "{} weights given for k = {k}",
                pi.len()
            )));
        }
        check_weight_prefix(pi)?;
        Ok(NormFamily::WeightedKyFan {
            weights: pi[..k].to_vec(),
        })
    }

    pub fn p_singular(p: f64, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidFamily("k must be >= 1".into()));
        }
        if !(p.is_finite() && p >= 1.0) {
            return Err(Error::InvalidFamily(format!("p must lie in [1, inf), got {p}")));
        }
        Ok(NormFamily::PSingular { p, k })
    }

    pub fn weighted_l1(pi: PiWeight) -> Self {
        NormFamily::WeightedL1 { pi }
    }

    pub fn dual(of: NormFamily) -> Self {
        NormFamily::Dual(Box::new(of))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    /// Weights `w` with `Φ(ξ) = Σ_j w_j ξ_j` on the nonincreasing cone, for
    /// the families that are linear there.
    pub fn linear_weights(&self, n: usize) -> Option<Vec<f64>> {
        let w = match self {
            NormFamily::KyFan { k } => (1..=n).map(|j| if j <= *k { 1.0 } else { 0.0 }).collect(),
            NormFamily::WeightedKyFan { weights } => {
                (0..n).map(|j| weights.get(j).copied().unwrap_or(0.0)).collect()
            }
            NormFamily::PSingular { p, k } if *p == 1.0 => {
                (1..=n).map(|j| if j <= *k { 1.0 } else { 0.0 }).collect()
            }
            NormFamily::WeightedL1 { pi } => (1..=n as u64).map(|j| pi.weight_f64(j)).collect(),
            NormFamily::Minimal => (1..=n).map(|j| if j == 1 { 1.0 } else { 0.0 }).collect(),
            NormFamily::Maximal => vec![1.0; n],
            _ => return None,
        };
        Some(w)
    }

    pub fn is_linear_on_cone(&self) -> bool {
        self.linear_weights(1).is_some()
    }

    /// Number of leading coordinates the value depends on, if finite.
    pub fn depth(&self) -> Option<usize> {
        match self {
            NormFamily::KyFan { k } | NormFamily::PSingular { k, .. } => Some(*k),
            NormFamily::WeightedKyFan { weights } => Some(weights.len()),
            NormFamily::Minimal => Some(1),
            _ => None,
        }
    }

    pub fn name(&self) -> String {
        self.to_string()
    }
}

fn check_weight_prefix(pi: &[f64]) -> Result<()> {
    if pi.first() != Some(&1.0) {
        return Err(Error::InvalidFamily("weights must start with 1".into()));
    }
    if pi.iter().any(|w| !(w.is_finite() && *w > 0.0)) {
        return Err(Error::InvalidFamily("weights must be positive".into()));
    }
    if pi.windows(2).any(|w| w[1] > w[0]) {
        return Err(Error::InvalidFamily("weights must be nonincreasing".into()));
    }
    Ok(())
}

impl fmt::Display for NormFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormFamily::KyFan { k } => write!(f, "KyFan({k})"),
            NormFamily::WeightedKyFan { weights } => write!(f, "WeightedKyFan({weights:?}, {})", weights.len()),
            NormFamily::PSingular { p, k } => write!(f, "PSingular({p}, {k})"),
            NormFamily::WeightedL1 { pi } => write!(f, "WeightedL1({pi})"),
            NormFamily::Minimal => write!(f, "Minimal"),
            NormFamily::Maximal => write!(f, "Maximal"),
            NormFamily::Dual(of) => write!(f, "Dual({of})"),
        }
    }
}

/// JSON form: `{"family":"kyfan"|"wkyfan"|"psingular"|"wl1"|"min"|"max"|"dual", "k", "p", "pi", "pi_rule", "of"}`.
#[derive(Serialize, Deserialize)]
struct FamilySpec {
    family: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    p: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pi: Option<Vec<serde_json::Value>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pi_rule: Option<PiWeight>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    of: Option<Box<NormFamily>>,
}

fn json_number(v: &serde_json::Value) -> Result<rational::Rational> {
    match v {
        serde_json::Value::Number(n) => {
            rational::from_f64(n.as_f64().ok_or_else(|| Error::Parse(format!("bad number {n}")))?)
        }
        serde_json::Value::String(s) => rational::parse(s),
        other => Err(Error::Parse(format!("expected a number, got {other}"))),
    }
}

impl TryFrom<FamilySpec> for NormFamily {
    type Error = Error;

    fn try_from(s: FamilySpec) -> Result<Self> {
        let need_k = || s.k.ok_or_else(|| Error::InvalidFamily(format!("{} needs k", s.family)));
        let pi_values = || -> Result<Vec<rational::Rational>> {
            s.pi.as_ref()
                .ok_or_else(|| Error::InvalidFamily(format!("{} needs pi", s.family)))?
                .iter()
                .map(json_number)
                .collect()
        };
        match s.family.as_str() {
            "kyfan" => NormFamily::ky_fan(need_k()?),
            "wkyfan" => {
                let pi: Vec<f64> = pi_values()?.iter().map(rational::to_f64).collect();
                let k = s.k.unwrap_or(pi.len());
                NormFamily::weighted_ky_fan(&pi, k)
            }
            "psingular" => NormFamily::p_singular(
                s.p.ok_or_else(|| Error::InvalidFamily("psingular needs p".into()))?,
                need_k()?,
            ),
            "wl1" => {
                let pi = match (&s.pi_rule, &s.pi) {
                    (Some(rule), _) => rule.clone(),
                    (None, Some(_)) => PiWeight::explicit(pi_values()?)?,
                    (None, None) => return Err(Error::InvalidFamily("wl1 needs pi or pi_rule".into())),
                };
                Ok(NormFamily::weighted_l1(pi))
            }
            "min" => Ok(NormFamily::Minimal),
            "max" => Ok(NormFamily::Maximal),
            "dual" => Ok(NormFamily::dual(
                *s.of.ok_or_else(|| Error::InvalidFamily("dual needs of".into()))?,
            )),
            other => Err(Error::InvalidFamily(format!("unknown family {other:?}"))),
        }
    }
}

impl From<NormFamily> for FamilySpec {
    fn from(f: NormFamily) -> Self {
        let mut spec = FamilySpec {
            family: String::new(),
            k: None,
            p: None,
            pi: None,
            pi_rule: None,
            of: None,
        };
        match f {
            NormFamily::KyFan { k } => {
                spec.family = "kyfan".into();
                spec.k = Some(k);
            }
            NormFamily::WeightedKyFan { weights } => {
                spec.family = "wkyfan".into();
                spec.k = Some(weights.len());
                spec.pi = Some(weights.into_iter().map(serde_json::Value::from).collect());
            }
            NormFamily::PSingular { p, k } => {
                spec.family = "psingular".into();
                spec.p = Some(p);
                spec.k = Some(k);
            }
            NormFamily::WeightedL1 { pi } => {
                spec.family = "wl1".into();
                match pi {
                    PiWeight::Explicit(w) => {
                        spec.pi = Some(
                            w.iter()
                                .map(|x| serde_json::Value::from(rational::to_string(x)))
                                .collect(),
                        )
                    }
                    rule => spec.pi_rule = Some(rule),
                }
            }
            NormFamily::Minimal => spec.family = "min".into(),
            NormFamily::Maximal => spec.family = "max".into(),
            NormFamily::Dual(of) => {
                spec.family = "dual".into();
                spec.of = Some(of);
            }
        }
        spec
    }
}

/// `Φ(ξ)` for a canonical `ξ`. Missing coordinates count as zero.
pub fn sn_eval(phi: &NormFamily, xi: &SpectrumVector) -> f64 {
    let x = xi.entries();
    match phi {
        NormFamily::KyFan { k } => x.iter().take(*k).sum(),
        NormFamily::WeightedKyFan { weights } => weights.iter().zip(x).map(|(w, v)| w * v).sum(),
        NormFamily::PSingular { p, k } => {
            if *p == 1.0 {
                x.iter().take(*k).sum()
            } else {
                let top = x.iter().take(*k).copied().fold(0.0, f64::max);
                if top == 0.0 {
                    return 0.0;
                }
                // scaled to avoid overflow for large p
                top * x.iter().take(*k).map(|v| (v / top).powf(*p)).sum::<f64>().powf(1.0 / p)
            }
        }
        NormFamily::WeightedL1 { pi } => x
            .iter()
            .enumerate()
            .map(|(j, v)| pi.weight_f64(j as u64 + 1) * v)
            .sum(),
        NormFamily::Minimal => x.first().copied().unwrap_or(0.0),
        NormFamily::Maximal => x.iter().sum(),
        NormFamily::Dual(of) => duality::adjoint(of, xi)
            .expect("adjoint evaluation of a built-in family")
            .value,
    }
}

/// Convenience: canonicalize raw input, then evaluate.
pub fn sn_eval_raw(phi: &NormFamily, raw: &[f64]) -> f64 {
    sn_eval(phi, &SpectrumVector::new(raw))
}

/// An operator to be measured: a finite matrix or a diagonal model.
#[derive(Debug, Clone, Copy)]
pub enum Operator<'a> {
    Matrix(&'a Matrix),
    Model(&'a DiagonalModel),
}

impl<'a> From<&'a Matrix> for Operator<'a> {
    fn from(m: &'a Matrix) -> Self {
        Operator::Matrix(m)
    }
}

impl<'a> From<&'a DiagonalModel> for Operator<'a> {
    fn from(m: &'a DiagonalModel) -> Self {
        Operator::Model(m)
    }
}

/// `‖T‖_Φ = Φ(s₁(T), s₂(T), …)`.
pub fn op_norm<'a>(phi: &NormFamily, t: impl Into<Operator<'a>>) -> Result<f64> {
    match t.into() {
        Operator::Matrix(m) => {
            let s = s_numbers_matrix(m)?;
            Ok(sn_eval(phi, &SpectrumVector::new(s.values())))
        }
        Operator::Model(model) => {
            let s = s_numbers_model(model);
            let n = match phi.depth() {
                Some(n) => n,
                None => {
                    // only finitely supported spectra are summable exactly
                    let finite_support = model.tail().kind() == TailKind::Constant && model.is_compact();
                    let linear_or_dual = !matches!(phi, NormFamily::PSingular { .. });
                    if finite_support && linear_or_dual {
                        model.prefix().len().max(1)
                    } else {
                        return Err(Error::UnsupportedForModel(phi.name()));
                    }
                }
            };
            let values: Vec<f64> = s.first(n).iter().map(rational::to_f64).collect();
            Ok(sn_eval(phi, &SpectrumVector::new(&values)))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    Positivity,
    Definiteness,
    Homogeneity,
    Triangle,
    Normalization,
    Symmetry,
}

#[derive(Debug, Clone, Serialize)]
pub struct AxiomViolation {
    pub axiom: Axiom,
    pub witness: Vec<Vec<f64>>,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct AxiomReport {
    pub family: String,
    pub samples: usize,
    pub violations: Vec<AxiomViolation>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the s.n. function axioms on sample pairs of raw (unsorted, signed) vectors.
pub fn check_sn_axioms(phi: &NormFamily, samples: &[(Vec<f64>, Vec<f64>)]) -> AxiomReport {
    let eval = |v: &[f64]| sn_eval_raw(phi, v);
    let mut violations = Vec::new();
    let mut flag = |axiom, witness: Vec<Vec<f64>>, detail: String| {
        violations.push(AxiomViolation { axiom, witness, detail });
    };

    let e1 = eval(&[1.0]);
    if (e1 - 1.0).abs() > 1e-12 {
        flag(Axiom::Normalization, vec![vec![1.0]], format!("Φ(e₁) = {e1}"));
    }
    let zero = eval(&[0.0, 0.0]);
    if zero != 0.0 {
        flag(Axiom::Definiteness, vec![vec![0.0, 0.0]], format!("Φ(0) = {zero}"));
    }

    for (x, y) in samples {
        let fx = eval(x);
        let fy = eval(y);
        let slack = 1e-12 * (1.0 + fx.abs() + fy.abs());
        if fx < 0.0 {
            flag(Axiom::Positivity, vec![x.clone()], format!("Φ(x) = {fx}"));
        }
        if x.iter().any(|v| *v != 0.0) && fx <= 0.0 {
            flag(Axiom::Definiteness, vec![x.clone()], format!("Φ(x) = {fx} for x ≠ 0"));
        }
        for lambda in [-2.5, 0.5, 3.0] {
            let scaled: Vec<f64> = x.iter().map(|v| lambda * v).collect();
            let fs = eval(&scaled);
            if (fs - lambda.abs() * fx).abs() > slack * lambda.abs().max(1.0) {
                flag(
                    Axiom::Homogeneity,
                    vec![x.clone()],
                    format!("Φ({lambda}x) = {fs}, |λ|Φ(x) = {}", lambda.abs() * fx),
                );
            }
        }
        let n = x.len().max(y.len());
        let sum: Vec<f64> = (0..n)
            .map(|i| x.get(i).copied().unwrap_or(0.0) + y.get(i).copied().unwrap_or(0.0))
            .collect();
        let fsum = eval(&sum);
        if fsum > fx + fy + slack {
            flag(
                Axiom::Triangle,
                vec![x.clone(), y.clone()],
                format!("Φ(x+y) = {fsum} > {} = Φ(x)+Φ(y)", fx + fy),
            );
        }
        let mut permuted: Vec<f64> = x.iter().rev().map(|v| -v).collect();
        permuted.rotate_left(x.len() / 2);
        let fp = eval(&permuted);
        if (fp - fx).abs() > slack {
            flag(Axiom::Symmetry, vec![x.clone()], format!("Φ(πx) = {fp}, Φ(x) = {fx}"));
        }
    }
    AxiomReport {
        family: phi.name(),
        samples: samples.len(),
        violations,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Trend {
    Constant,
    StrictlyIncreasing,
    NonDecreasing,
    NonIncreasing,
    Mixed,
}

fn classify_trend(r: &[f64]) -> Trend {
    let tol = 1e-12;
    let diffs: Vec<f64> = r.windows(2).map(|w| w[1] - w[0]).collect();
    if diffs.iter().all(|d| d.abs() <= tol * 10.0) {
        Trend::Constant
    } else if diffs.iter().all(|d| *d > 0.0) {
        Trend::StrictlyIncreasing
    } else if diffs.iter().all(|d| *d >= -tol) {
        Trend::NonDecreasing
    } else if diffs.iter().all(|d| *d <= tol) {
        Trend::NonIncreasing
    } else {
        Trend::Mixed
    }
}

/// `r_n = n / Φ(1ⁿ)`; bounded exactly when Φ is equivalent to the maximal function.
#[derive(Debug, Clone, Serialize)]
pub struct EquivalenceReport {
    pub family: String,
    pub ratios: Vec<f64>,
    pub trend: Trend,
    /// `sup_n r_n` when known in closed form; `None` when unbounded.
    pub analytic_sup: Option<f64>,
    pub equivalent_to_maximal: bool,
}

pub fn equivalence_ratio(phi: &NormFamily, n_max: usize) -> Result<EquivalenceReport> {
    if n_max == 0 {
        return Err(Error::Precondition("n_max must be >= 1".into()));
    }
    let ratios: Vec<f64> = (1..=n_max)
        .map(|n| n as f64 / sn_eval(phi, &SpectrumVector::ones(n)))
        .collect();
    let analytic_sup = match phi {
        NormFamily::Maximal => Some(1.0),
        NormFamily::WeightedL1 { pi } => Some(1.0 / rational::to_f64(&pi.limit())),
        NormFamily::Dual(of) => match of.as_ref() {
            NormFamily::KyFan { k } => Some(*k as f64),
            NormFamily::Minimal => Some(1.0),
            _ => None,
        },
        _ => None,
    };
    Ok(EquivalenceReport {
        family: phi.name(),
        trend: classify_trend(&ratios),
        equivalent_to_maximal: analytic_sup.is_some(),
        ratios,
        analytic_sup,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn brute_top_k_sum(raw: &[f64], k: usize) -> f64 {
        let mut v: Vec<f64> = raw.iter().map(|x| x.abs()).collect();
        v.sort_by(|a, b| b.partial_cmp(a).unwrap());
        v.iter().take(k).sum()
    }

    #[test]
    fn evaluation_examples() {
        let kf2 = NormFamily::ky_fan(2).unwrap();
        assert_eq!(sn_eval_raw(&kf2, &[3.0, 2.0, 1.0]), 5.0);
        assert_eq!(sn_eval_raw(&kf2, &[1.0, -3.0, 2.0]), brute_top_k_sum(&[1.0, -3.0, 2.0], 2));
        let w = NormFamily::weighted_ky_fan(&[1.0, 0.5], 2).unwrap();
        assert_eq!(sn_eval_raw(&w, &[4.0, 2.0]), 5.0);
        let p = NormFamily::p_singular(2.0, 2).unwrap();
        assert_eq!(sn_eval_raw(&p, &[4.0, 3.0]), 5.0);
        assert_eq!(sn_eval_raw(&NormFamily::Minimal, &[0.7, 0.2]), 0.7);
        assert_eq!(sn_eval_raw(&NormFamily::Maximal, &[1.0]), 1.0);
    }

    #[test]
    fn weights_must_lie_in_pi() {
        assert!(NormFamily::weighted_ky_fan(&[1.0, 2.0], 2).is_err());
        assert!(NormFamily::weighted_ky_fan(&[0.5, 0.25], 2).is_err());
        assert!(NormFamily::weighted_ky_fan(&[1.0], 2).is_err());
        assert!(NormFamily::p_singular(0.5, 2).is_err());
        assert!(NormFamily::ky_fan(0).is_err());
    }

    #[test]
    fn family_json() {
        let f = NormFamily::from_json(r#"{"family":"kyfan","k":2}"#).unwrap();
        assert_eq!(f, NormFamily::KyFan { k: 2 });
        let w = NormFamily::from_json(r#"{"family":"wkyfan","pi":[1,0.5,0.25],"k":2}"#).unwrap();
        assert_eq!(w, NormFamily::WeightedKyFan { weights: vec![1.0, 0.5] });
        let l = NormFamily::from_json(r#"{"family":"wl1","pi_rule":{"limit":"1/2","shift":1}}"#).unwrap();
        let back = NormFamily::from_json(&serde_json::to_string(&l).unwrap()).unwrap();
        assert_eq!(l, back);
        let e = NormFamily::from_json(r#"{"family":"wl1","pi":[1,"1/2","1/4"]}"#).unwrap();
        assert_eq!(e, NormFamily::weighted_l1(PiWeight::explicit(vec![int(1), ratio(1, 2), ratio(1, 4)]).unwrap()));
        let d = NormFamily::from_json(r#"{"family":"dual","of":{"family":"kyfan","k":2}}"#).unwrap();
        assert_eq!(d, NormFamily::dual(NormFamily::KyFan { k: 2 }));
        assert!(NormFamily::from_json(r#"{"family":"schatten"}"#).is_err());
        assert!(NormFamily::from_json(r#"{"family":"kyfan"}"#).is_err());
    }

    #[test]
    fn operator_norms_on_double_top() {
        let m = DiagonalModel::from_json(
            r#"{"prefix":[1,1],"tail":{"kind":"below","alpha":1,"gap":{"c":1,"d":1}}}"#,
        )
        .unwrap();
        assert_eq!(op_norm(&NormFamily::KyFan { k: 2 }, &m).unwrap(), 2.0);
        assert_eq!(op_norm(&NormFamily::KyFan { k: 3 }, &m).unwrap(), 3.0);
        assert!(matches!(
            op_norm(&NormFamily::Maximal, &m),
            Err(Error::UnsupportedForModel(_))
        ));
    }

    #[test]
    fn maximal_on_finite_rank_model() {
        let m = DiagonalModel::from_json(r#"{"prefix":[3,1],"tail":{"kind":"constant","alpha":0}}"#).unwrap();
        assert_eq!(op_norm(&NormFamily::Maximal, &m).unwrap(), 4.0);
    }

    #[test]
    fn axioms_and_normalization() {
        let samples = vec![(vec![1.0, -2.0, 0.5], vec![0.3, 0.3, 4.0])];
        for phi in [
            NormFamily::KyFan { k: 2 },
            NormFamily::Maximal,
            NormFamily::Minimal,
            NormFamily::p_singular(3.0, 2).unwrap(),
        ] {
            let r = check_sn_axioms(&phi, &samples);
            assert!(r.passed(), "{phi}: {:?}", r.violations);
        }
    }

    #[test]
    fn equivalence_ratios() {
        let pi = PiWeight::harmonic(ratio(1, 2), int(1)).unwrap();
        let r = equivalence_ratio(&NormFamily::weighted_l1(pi), 10).unwrap();
        assert_eq!(r.ratios[0], 1.0);
        assert!((r.ratios[1] - 8.0 / 7.0).abs() < 1e-15);
        assert_eq!(r.analytic_sup, Some(2.0));
        assert_eq!(r.trend, Trend::StrictlyIncreasing);

        let r = equivalence_ratio(&NormFamily::Maximal, 5).unwrap();
        assert!(r.ratios.iter().all(|&x| x == 1.0));
        assert_eq!(r.trend, Trend::Constant);

        let r = equivalence_ratio(&NormFamily::Minimal, 5).unwrap();
        assert_eq!(r.ratios, vec![1.0, 2.0, 3.0, 4.0, 5.0]);
        assert!(!r.equivalent_to_maximal);
    }
}
