//! Weighted-ℓ1 s.n. functions `Φ_π(ξ) = Σ_j π_j ξ_j` in exact arithmetic: the
//! identity's non-attainment of the `Φ_π*` norm, the improvement step behind
//! it, and the diagonal-reduced `Φ_π*` norm of diagonal models.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};
use crate::spectra::{s_numbers_model, DiagonalModel, Selection};

/// A weight sequence in Π: positive, nonincreasing, `π₁ = 1`, `inf π > 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PiWeight {
    /// `π_j = L + (1 − L)·c / (j − 1 + c)`: strictly decreasing from 1 to `L`.
    Harmonic { limit: Rational, shift: Rational },
    /// Listed weights; the last one repeats forever.
    Explicit(Vec<Rational>),
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum PiWeightRepr {
    Rule {
        #[serde(with = "rational::serde_rational")]
        limit: Rational,
        #[serde(with = "rational::serde_rational")]
        shift: Rational,
    },
    List(#[serde(with = "rational::serde_rational_vec")] Vec<Rational>),
}

impl Serialize for PiWeight {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let repr = match self.clone() {
            PiWeight::Harmonic { limit, shift } => PiWeightRepr::Rule { limit, shift },
            PiWeight::Explicit(w) => PiWeightRepr::List(w),
        };
        repr.serialize(s)
    }
}

impl<'de> Deserialize<'de> for PiWeight {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = PiWeightRepr::deserialize(d)?;
        match repr {
            PiWeightRepr::Rule { limit, shift } => PiWeight::harmonic(limit, shift),
            PiWeightRepr::List(w) => PiWeight::explicit(w),
        }
        .map_err(serde::de::Error::custom)
    }
}

impl PiWeight {
    pub fn harmonic(limit: Rational, shift: Rational) -> Result<Self> {
        if !(limit.is_positive() && limit < Rational::one()) {
            return Err(Error::InvalidWeight("limit must lie in (0, 1)".into()));
        }
        if !shift.is_positive() {
            return Err(Error::InvalidWeight("shift must be > 0".into()));
        }
        Ok(PiWeight::Harmonic { limit, shift })
    }

    /// `π_j = (1 + 1/j) / 2`.
    pub fn half() -> Self {
        PiWeight::harmonic(rational::ratio(1, 2), rational::int(1)).expect("valid weight")
    }

    pub fn explicit(weights: Vec<Rational>) -> Result<Self> {
        if weights.first() != Some(&Rational::one()) {
            return Err(Error::InvalidWeight("first weight must be 1".into()));
        }
        if weights.iter().any(|w| !w.is_positive()) {
            return Err(Error::InvalidWeight("weights must be positive".into()));
        }
        if weights.windows(2).any(|w| w[1] > w[0]) {
            return Err(Error::InvalidWeight("weights must be nonincreasing".into()));
        }
        Ok(PiWeight::Explicit(weights))
    }

    /// `π_j`, one-based.
    pub fn weight(&self, j: u64) -> Rational {
        assert!(j >= 1, "weights are one-based");
        match self {
            PiWeight::Harmonic { limit, shift } => {
                let jm1 = rational::int(j as i64 - 1);
                limit + (Rational::one() - limit) * shift / (jm1 + shift)
            }
            PiWeight::Explicit(w) => w
                .get(j as usize - 1)
                .unwrap_or_else(|| w.last().expect("nonempty"))
                .clone(),
        }
    }

    pub fn weight_f64(&self, j: u64) -> f64 {
        rational::to_f64(&self.weight(j))
    }

    /// `π₁ + … + π_n`.
    pub fn partial_sum(&self, n: u64) -> Rational {
        (1..=n).fold(Rational::zero(), |acc, j| acc + self.weight(j))
    }

    /// `inf_j π_j = lim_j π_j`.
    pub fn limit(&self) -> Rational {
        match self {
            PiWeight::Harmonic { limit, .. } => limit.clone(),
            PiWeight::Explicit(w) => w.last().expect("nonempty").clone(),
        }
    }

    pub fn is_strictly_decreasing(&self) -> bool {
        matches!(self, PiWeight::Harmonic { .. })
    }
}

impl fmt::Display for PiWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PiWeight::Harmonic { limit, shift } => write!(
                f,
                "π_j = {L} + (1-{L})·{c}/(j-1+{c})",
                L = rational::to_string(limit),
                c = rational::to_string(shift)
            ),
            PiWeight::Explicit(w) => {
                let items: Vec<String> = w.iter().map(rational::to_string).collect();
                write!(f, "[{}, …]", items.join(", "))
            }
        }
    }
}

/// `Φ_π(ξ)` for a nonincreasing nonnegative finitely supported `ξ`.
pub fn phi_pi_eval(pi: &PiWeight, xi: &[Rational]) -> Result<Rational> {
    check_canonical(xi)?;
    Ok(xi
        .iter()
        .enumerate()
        .map(|(j, x)| pi.weight(j as u64 + 1) * x)
        .fold(Rational::zero(), |a, b| a + b))
}

fn check_canonical(xi: &[Rational]) -> Result<()> {
    if xi.iter().any(|x| x.is_negative()) {
        return Err(Error::Precondition("entries must be >= 0".into()));
    }
    if xi.windows(2).any(|w| w[1] > w[0]) {
        return Err(Error::Precondition("entries must be nonincreasing".into()));
    }
    Ok(())
}

/// A positive diagonal trace-class operator `diag(s₁(K), s₂(K), …)` of finite support.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceClassDiag {
    #[serde(with = "rational::serde_rational_vec")]
    entries: Vec<Rational>,
}

impl TraceClassDiag {
    pub fn new(mut entries: Vec<Rational>) -> Result<Self> {
        check_canonical(&entries)?;
        while entries.last().is_some_and(|x| x.is_zero()) {
            entries.pop();
        }
        Ok(TraceClassDiag { entries })
    }

    /// `diag(1, 0, 0, …)`.
    pub fn unit() -> Self {
        TraceClassDiag {
            entries: vec![Rational::one()],
        }
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    /// `s_j(K)`, one-based.
    pub fn s(&self, j: usize) -> Rational {
        self.entries.get(j - 1).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn trace(&self) -> Rational {
        self.entries.iter().fold(Rational::zero(), |a, b| a + b)
    }

    pub fn phi_pi_norm(&self, pi: &PiWeight) -> Rational {
        phi_pi_eval(pi, &self.entries).expect("canonical by construction")
    }
}

/// `r_n = n / (π₁ + … + π_n)` for `n ≤ n_max`, with the limit `1/L`.
#[derive(Debug, Clone, Serialize)]
pub struct SupSequence {
    #[serde(with = "rational::serde_rational_vec")]
    pub ratios: Vec<Rational>,
    #[serde(with = "rational::serde_rational")]
    pub limit: Rational,
    pub strictly_increasing: bool,
    pub below_limit: bool,
}

pub fn identity_sup_sequence(pi: &PiWeight, n_max: u64) -> Result<SupSequence> {
    if n_max == 0 {
        return Err(Error::Precondition("n_max must be >= 1".into()));
    }
    let mut sum = Rational::zero();
    let mut ratios = Vec::with_capacity(n_max as usize);
    for n in 1..=n_max {
        sum += pi.weight(n);
        ratios.push(rational::int(n as i64) / &sum);
    }
    let limit = Rational::one() / pi.limit();
    Ok(SupSequence {
        strictly_increasing: ratios.windows(2).all(|w| w[0] < w[1]),
        below_limit: ratios.iter().all(|r| *r < limit),
        ratios,
        limit,
    })
}

/// Replaces `s_M, s_{M+1}` (M the first index with `s_M > s_{M+1}`) by their
/// π-weighted average. Keeps `Φ_π` fixed and strictly raises the trace.
pub fn improvement_step(pi: &PiWeight, k: &TraceClassDiag) -> Result<TraceClassDiag> {
    if k.entries.is_empty() {
        return Err(Error::NoImprovableIndex("K = 0".into()));
    }
    if k.phi_pi_norm(pi) != Rational::one() {
        return Err(Error::Precondition(format!(
            "Φ_π(K) = {}, expected 1",
            rational::to_string(&k.phi_pi_norm(pi))
        )));
    }
    // the last support index always qualifies, since s_{N+1} = 0
    let m = (1..=k.entries.len())
        .find(|&j| k.s(j) > k.s(j + 1))
        .expect("finite support ends with a strict drop");
    let (pm, pm1) = (pi.weight(m as u64), pi.weight(m as u64 + 1));
    let avg = (&pm * k.s(m) + &pm1 * k.s(m + 1)) / (&pm + &pm1);

    let mut t = k.entries.clone();
    if t.len() < m + 1 {
        t.resize(m + 1, Rational::zero());
    }
    t[m - 1] = avg.clone();
    t[m] = avg;
    let next = TraceClassDiag::new(t)?;

    if next.phi_pi_norm(pi) != Rational::one() {
        return Err(Error::Verification("improvement step changed Φ_π".into()));
    }
    if next.trace() <= k.trace() {
        return Err(Error::Verification(format!(
            "trace did not increase at M = {m} (weights not strictly decreasing there?)"
        )));
    }
    Ok(next)
}

#[derive(Debug, Clone, Serialize)]
pub struct CounterexampleReport {
    /// Traces of `K₀, K₁, …, K_iterations`.
    #[serde(with = "rational::serde_rational_vec")]
    pub traces: Vec<Rational>,
    /// `1/L`.
    #[serde(with = "rational::serde_rational")]
    pub bound: Rational,
    #[serde(with = "rational::serde_rational_vec")]
    pub gaps: Vec<Rational>,
    pub norm_preserved: bool,
    pub strictly_increasing: bool,
    pub all_below_bound: bool,
    pub final_operator: TraceClassDiag,
}

impl CounterexampleReport {
    pub fn holds(&self) -> bool {
        self.norm_preserved
            && self.strictly_increasing
            && self.all_below_bound
            && self.gaps.iter().all(|g| g.is_positive())
    }
}

/// Iterates the improvement step from `K₀ = diag(1, 0, …)`.
pub fn non_attainment_demo(pi: &PiWeight, iterations: usize) -> Result<CounterexampleReport> {
    if iterations == 0 {
        return Err(Error::Precondition("iterations must be >= 1".into()));
    }
    let bound = Rational::one() / pi.limit();
    let mut k = TraceClassDiag::unit();
    let mut traces = vec![k.trace()];
    let mut norm_preserved = k.phi_pi_norm(pi) == Rational::one();
    for _ in 0..iterations {
        k = improvement_step(pi, &k)?;
        norm_preserved &= k.phi_pi_norm(pi) == Rational::one();
        traces.push(k.trace());
    }
    let gaps: Vec<Rational> = traces.iter().map(|t| &bound - t).collect();
    Ok(CounterexampleReport {
        strictly_increasing: traces.windows(2).all(|w| w[0] < w[1]),
        all_below_bound: traces.iter().all(|t| *t < bound),
        traces,
        bound,
        gaps,
        norm_preserved,
        final_operator: k,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Attainment {
    Attained,
    NotAttained,
    Inconclusive,
}

/// The diagonal-reduced `Φ_π*` norm `sup_m (s₁ + … + s_m) / (π₁ + … + π_m)`.
#[derive(Debug, Clone, Serialize)]
pub struct PhiStarReport {
    pub label: &'static str,
    /// Exact value when decided; otherwise the certified lower bound.
    #[serde(with = "rational::serde_rational")]
    pub value: Rational,
    #[serde(with = "rational::serde_rational")]
    pub upper_bound: Rational,
    pub value_f64: f64,
    pub attained: Attainment,
    /// One-based prefix length achieving the supremum.
    pub argmax: Option<usize>,
    /// `lim_m R_m = lim s_j / L`.
    #[serde(with = "rational::serde_rational")]
    pub limit: Rational,
    pub horizon: usize,
    /// Prefix lengths examined before the verdict was certified.
    pub scanned: usize,
    pub mixed_essential_point: bool,
}

pub fn phi_pi_star_norm_model(model: &DiagonalModel, pi: &PiWeight, horizon: usize) -> Result<PhiStarReport> {
    if horizon == 0 {
        return Err(Error::HorizonTooSmall("horizon must be >= 1".into()));
    }
    let s = s_numbers_model(model);
    let big_l = pi.limit();
    let alpha = model.alpha().clone();
    let limit = &alpha / &big_l;

    let mut values = s.iter();
    let mut next = values.next().expect("infinite sequence");
    let mut h = Rational::zero();
    let mut p = Rational::zero();
    let mut best: Option<(Rational, usize)> = None;
    let mut all_below_limit = true;
    let mut scanned = 0;
    let mut tail_cap = Rational::zero();
    let mut certified = false;
    while scanned < horizon {
        scanned += 1;
        h += &next;
        p += pi.weight(scanned as u64);
        next = values.next().expect("infinite sequence");
        let r = &h / &p;
        if r >= limit {
            all_below_limit = false;
        }
        if best.as_ref().is_none_or(|(b, _)| r > *b) {
            best = Some((r, scanned));
        }
        // past m: H ≤ H_m + t·s_{m+1} and P ≥ P_m + t·L, so R ≤ max(R_m, s_{m+1}/L)
        tail_cap = &next / &big_l;
        if best.as_ref().is_some_and(|(b, _)| *b >= tail_cap) {
            certified = true;
            break;
        }
    }
    let (best_value, argmax) = best.expect("horizon >= 1");
    let last_ratio = &h / &p;
    let upper = [&best_value, &last_ratio, &tail_cap]
        .into_iter()
        .max()
        .expect("nonempty")
        .clone();

    let settled_at_alpha = s.finite_part_len().is_some_and(|n| n <= horizon);
    let (attained, value, upper_bound, argmax) = if certified {
        (Attainment::Attained, best_value.clone(), best_value, Some(argmax))
    } else if settled_at_alpha && all_below_limit {
        // past the horizon each increment s_j − (α/L)π_j = α(1 − π_j/L) ≤ 0,
        // so R_m < α/L for every m and the supremum is the unattained limit
        (Attainment::NotAttained, limit.clone(), limit.clone(), None)
    } else {
        (Attainment::Inconclusive, best_value, upper, None)
    };
    Ok(PhiStarReport {
        label: "diagonal-reduced dual norm",
        value_f64: rational::to_f64(&value),
        value,
        upper_bound,
        attained,
        argmax,
        limit,
        horizon,
        scanned,
        mixed_essential_point: s.mixed_case(),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct CompactCheckEntry {
    pub selection: Option<Selection>,
    pub model: String,
    pub report: PhiStarReport,
}

#[derive(Debug, Clone, Serialize)]
pub struct CompactCheckReport {
    pub entries: Vec<CompactCheckEntry>,
    pub all_attained: bool,
}

/// Checks that a compact model and each sampled compression attain their `Φ_π*` norm.
pub fn compact_phi_norming_check(
    model: &DiagonalModel,
    pi: &PiWeight,
    selections: &[Selection],
    horizon: usize,
) -> Result<CompactCheckReport> {
    if !model.is_compact() {
        return Err(Error::Precondition(format!(
            "model is not compact (limit {})",
            rational::to_string(model.alpha())
        )));
    }
    let mut entries = vec![CompactCheckEntry {
        selection: None,
        model: model.to_string(),
        report: phi_pi_star_norm_model(model, pi, horizon)?,
    }];
    for sel in selections {
        let restricted = model.compress(sel)?;
        entries.push(CompactCheckEntry {
            selection: Some(sel.clone()),
            model: restricted.to_string(),
            report: phi_pi_star_norm_model(&restricted, pi, horizon)?,
        });
    }
    let all_attained = entries
        .iter()
        .all(|e| e.report.attained == Attainment::Attained && e.report.argmax.is_some());
    Ok(CompactCheckReport { entries, all_attained })
}
