//! Symbolic positive diagonal operators on ℓ²: a finite prefix followed by a
//! structured tail converging to (or equal to) a limit `alpha`.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TailKind {
    Constant,
    #[serde(rename = "above")]
    ConvergesFromAbove,
    #[serde(rename = "below")]
    ConvergesFromBelow,
}

/// `g(j) = c / (j + d)^power`, strictly decreasing to zero on `j ≥ 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gap {
    #[serde(with = "rational::serde_rational")]
    pub c: Rational,
    #[serde(with = "rational::serde_rational")]
    pub d: Rational,
    #[serde(default = "default_power", skip_serializing_if = "is_unit_power")]
    pub power: u32,
}

fn default_power() -> u32 {
    1
}

fn is_unit_power(p: &u32) -> bool {
    *p == 1
}

impl Gap {
    pub fn new(c: Rational, d: Rational) -> Result<Self> {
        Gap::with_power(c, d, 1)
    }

    pub fn with_power(c: Rational, d: Rational, power: u32) -> Result<Self> {
        if !c.is_positive() {
            return Err(Error::InvalidModel("gap constant c must be > 0".into()));
        }
        if d.is_negative() {
            return Err(Error::InvalidModel("gap offset d must be >= 0".into()));
        }
        if power == 0 {
            return Err(Error::InvalidModel("gap power must be >= 1".into()));
        }
        Ok(Gap { c, d, power })
    }

    /// `1/(j+d)`: the simplest member.
    pub fn harmonic(d: i64) -> Self {
        Gap::new(rational::int(1), rational::int(d)).expect("valid gap")
    }

    pub fn eval(&self, j: u64) -> Rational {
        let base = Rational::from_integer(BigInt::from(j)) + &self.d;
        &self.c / num_traits::pow(base, self.power as usize)
    }

    /// The positive integer `j` with `g(j) = target`, if any.
    pub fn solve(&self, target: &Rational) -> Option<u64> {
        if !target.is_positive() {
            return None;
        }
        // (j + d)^power = c / target
        let rhs = &self.c / target;
        let approx = rational::to_f64(&rhs).powf(1.0 / self.power as f64) - rational::to_f64(&self.d);
        if !approx.is_finite() || !(0.0..=1e15).contains(&approx) {
            return None;
        }
        let guess = approx.round() as u64;
        (guess.saturating_sub(2)..=guess + 2)
            .filter(|&j| j >= 1)
            .find(|&j| self.eval(j) == *target)
    }

    fn shifted(&self, by: u64) -> Gap {
        Gap {
            c: self.c.clone(),
            d: &self.d + Rational::from_integer(BigInt::from(by)),
            power: self.power,
        }
    }
}

/// Rule generating the tail entries `t_1, t_2, …` after the prefix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "TailRuleRepr", into = "TailRuleRepr")]
pub struct TailRule {
    kind: TailKind,
    alpha: Rational,
    gap: Option<Gap>,
}

#[derive(Serialize, Deserialize)]
struct TailRuleRepr {
    kind: TailKind,
    #[serde(with = "rational::serde_rational")]
    alpha: Rational,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    gap: Option<Gap>,
}

impl TryFrom<TailRuleRepr> for TailRule {
    type Error = Error;

    fn try_from(r: TailRuleRepr) -> Result<Self> {
        match (r.kind, r.gap) {
            (TailKind::Constant, None) => TailRule::constant(r.alpha),
            (TailKind::Constant, Some(_)) => {
                Err(Error::InvalidModel("a constant tail takes no gap".into()))
            }
            (TailKind::ConvergesFromAbove, Some(g)) => TailRule::above(r.alpha, g),
            (TailKind::ConvergesFromBelow, Some(g)) => TailRule::below(r.alpha, g),
            (_, None) => Err(Error::InvalidModel("converging tails need a gap".into())),
        }
    }
}

impl From<TailRule> for TailRuleRepr {
    fn from(t: TailRule) -> Self {
        TailRuleRepr {
            kind: t.kind,
            alpha: t.alpha,
            gap: t.gap,
        }
    }
}

impl TailRule {
    pub fn constant(alpha: Rational) -> Result<Self> {
        if alpha.is_negative() {
            return Err(Error::InvalidModel("tail limit must be >= 0".into()));
        }
        Ok(TailRule {
            kind: TailKind::Constant,
            alpha,
            gap: None,
        })
    }

    pub fn above(alpha: Rational, gap: Gap) -> Result<Self> {
        if alpha.is_negative() {
            return Err(Error::InvalidModel("tail limit must be >= 0".into()));
        }
        Ok(TailRule {
            kind: TailKind::ConvergesFromAbove,
            alpha,
            gap: Some(gap),
        })
    }

    pub fn below(alpha: Rational, gap: Gap) -> Result<Self> {
        if &alpha - gap.eval(1) < Rational::zero() {
            return Err(Error::InvalidModel(format!(
                "tail from below starts negative: alpha - g(1) = {}",
                rational::to_string(&(&alpha - gap.eval(1)))
            )));
        }
        Ok(TailRule {
            kind: TailKind::ConvergesFromBelow,
            alpha,
            gap: Some(gap),
        })
    }

    pub fn kind(&self) -> TailKind {
        self.kind
    }

    pub fn alpha(&self) -> &Rational {
        &self.alpha
    }

    pub fn gap(&self) -> Option<&Gap> {
        self.gap.as_ref()
    }

    /// Tail entry `t_j`, `j ≥ 1`.
    pub fn value(&self, j: u64) -> Rational {
        match (&self.kind, &self.gap) {
            (TailKind::Constant, _) => self.alpha.clone(),
            (TailKind::ConvergesFromAbove, Some(g)) => &self.alpha + g.eval(j),
            (TailKind::ConvergesFromBelow, Some(g)) => &self.alpha - g.eval(j),
            _ => unreachable!("converging tails carry a gap"),
        }
    }

    /// Number of tail entries equal to `v`.
    pub fn count_equal(&self, v: &Rational) -> Multiplicity {
        match (&self.kind, &self.gap) {
            (TailKind::Constant, _) => {
                if *v == self.alpha {
                    Multiplicity::Infinite
                } else {
                    Multiplicity::Finite(0)
                }
            }
            (TailKind::ConvergesFromAbove, Some(g)) => {
                Multiplicity::Finite(g.solve(&(v - &self.alpha)).map_or(0, |_| 1))
            }
            (TailKind::ConvergesFromBelow, Some(g)) => {
                Multiplicity::Finite(g.solve(&(&self.alpha - v)).map_or(0, |_| 1))
            }
            _ => unreachable!("converging tails carry a gap"),
        }
    }

    /// The same rule started `by` indices later.
    pub fn shifted(&self, by: u64) -> TailRule {
        TailRule {
            kind: self.kind,
            alpha: self.alpha.clone(),
            gap: self.gap.as_ref().map(|g| g.shifted(by)),
        }
    }
}

impl fmt::Display for TailRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a = rational::to_string(&self.alpha);
        match (&self.kind, &self.gap) {
            (TailKind::Constant, _) => write!(f, "Constant({a})"),
            (kind, Some(g)) => {
                let name = if *kind == TailKind::ConvergesFromAbove { "Above" } else { "Below" };
                let pow = if g.power == 1 { String::new() } else { format!("^{}", g.power) };
                write!(
                    f,
                    "{name}({a}, {}/(j+{}){pow})",
                    rational::to_string(&g.c),
                    rational::to_string(&g.d)
                )
            }
            _ => unreachable!(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Multiplicity {
    Finite(usize),
    Infinite,
}

impl Multiplicity {
    pub fn covers(self, needed: usize) -> bool {
        match self {
            Multiplicity::Infinite => true,
            Multiplicity::Finite(m) => m >= needed,
        }
    }
}

impl std::ops::Add for Multiplicity {
    type Output = Multiplicity;

    fn add(self, rhs: Multiplicity) -> Multiplicity {
        match (self, rhs) {
            (Multiplicity::Finite(a), Multiplicity::Finite(b)) => Multiplicity::Finite(a + b),
            _ => Multiplicity::Infinite,
        }
    }
}

/// Positive diagonal operator: entries are `prefix` then `tail.value(1), tail.value(2), …`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ModelRepr", into = "ModelRepr")]
pub struct DiagonalModel {
    prefix: Vec<Rational>,
    tail: TailRule,
}

#[derive(Serialize, Deserialize)]
struct ModelRepr {
    #[serde(with = "rational::serde_rational_vec")]
    prefix: Vec<Rational>,
    tail: TailRule,
}

impl TryFrom<ModelRepr> for DiagonalModel {
    type Error = Error;

    fn try_from(r: ModelRepr) -> Result<Self> {
        DiagonalModel::new(r.prefix, r.tail)
    }
}

impl From<DiagonalModel> for ModelRepr {
    fn from(m: DiagonalModel) -> Self {
        ModelRepr {
            prefix: m.prefix,
            tail: m.tail,
        }
    }
}

/// A coordinate subspace selection (one-based indices).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Selection {
    /// Every coordinate except a finite set.
    Drop(BTreeSet<u64>),
    /// Coordinates `j0, j0 + 1, …`.
    TailFrom(u64),
    /// Only the listed coordinates (finite-dimensional; rejected for models).
    Keep(Vec<u64>),
}

impl DiagonalModel {
    pub fn new(prefix: Vec<Rational>, tail: TailRule) -> Result<Self> {
        if let Some(x) = prefix.iter().find(|x| x.is_negative()) {
            return Err(Error::InvalidModel(format!(
                "negative prefix entry {}",
                rational::to_string(x)
            )));
        }
        Ok(DiagonalModel { prefix, tail })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn prefix(&self) -> &[Rational] {
        &self.prefix
    }

    pub fn tail(&self) -> &TailRule {
        &self.tail
    }

    pub fn alpha(&self) -> &Rational {
        &self.tail.alpha
    }

    /// Entry at one-based coordinate `j`.
    pub fn entry(&self, j: u64) -> Rational {
        assert!(j >= 1, "coordinates are one-based");
        let p = self.prefix.len() as u64;
        if j <= p {
            self.prefix[(j - 1) as usize].clone()
        } else {
            self.tail.value(j - p)
        }
    }

    pub fn entries(&self, n: u64) -> Vec<Rational> {
        (1..=n).map(|j| self.entry(j)).collect()
    }

    /// σ_e: the tail limit, whether reached as an infinite-multiplicity
    /// eigenvalue or as an accumulation point.
    pub fn essential_spectrum(&self) -> BTreeSet<Rational> {
        BTreeSet::from([self.tail.alpha.clone()])
    }

    pub fn is_compact(&self) -> bool {
        self.tail.alpha.is_zero()
    }

    /// Dimension of the eigenspace of `v` (zero when `v` is not an eigenvalue).
    pub fn multiplicity(&self, v: &Rational) -> Multiplicity {
        let in_prefix = self.prefix.iter().filter(|x| *x == v).count();
        Multiplicity::Finite(in_prefix) + self.tail.count_equal(v)
    }

    /// One-based coordinates whose entry equals `v`, at most `limit` of them.
    pub fn eigen_coordinates(&self, v: &Rational, limit: usize) -> Vec<u64> {
        let mut out: Vec<u64> = self
            .prefix
            .iter()
            .enumerate()
            .filter(|(_, x)| *x == v)
            .map(|(i, _)| i as u64 + 1)
            .take(limit)
            .collect();
        let p = self.prefix.len() as u64;
        match self.tail.count_equal(v) {
            Multiplicity::Infinite => {
                let more = limit - out.len();
                out.extend((1..=more as u64).map(|j| p + j));
            }
            Multiplicity::Finite(1) if out.len() < limit => {
                let g = self.tail.gap.as_ref().expect("converging tail");
                let delta = (v - &self.tail.alpha).abs();
                if let Some(j) = g.solve(&delta) {
                    out.push(p + j);
                }
            }
            _ => {}
        }
        out
    }

    /// True when α is an accumulation point that is also a finite-multiplicity
    /// eigenvalue (the mixed case of the peel-off recursion).
    pub fn has_mixed_essential_point(&self) -> bool {
        self.tail.kind != TailKind::Constant && self.prefix.contains(&self.tail.alpha)
    }

    /// Restriction of the model to a coordinate subspace.
    pub fn compress(&self, selection: &Selection) -> Result<DiagonalModel> {
        let dropped: BTreeSet<u64> = match selection {
            Selection::Drop(set) => set.clone(),
            Selection::TailFrom(j0) => (1..(*j0).max(1)).collect(),
            Selection::Keep(_) => {
                return Err(Error::UnsupportedSelection(
                    "keeping finitely many coordinates leaves a finite-dimensional operator".into(),
                ))
            }
        };
        if dropped.contains(&0) {
            return Err(Error::UnsupportedSelection("coordinates are one-based".into()));
        }
        let p = self.prefix.len() as u64;
        let horizon = dropped.iter().next_back().copied().unwrap_or(0).max(p);
        let prefix = (1..=horizon)
            .filter(|j| !dropped.contains(j))
            .map(|j| self.entry(j))
            .collect();
        Ok(DiagonalModel {
            prefix,
            tail: self.tail.shifted(horizon - p),
        })
    }

    /// The model with every entry equal to `v` replaced by zero (`A − v·P_{E_v}`).
    /// Only finitely many entries may equal `v`.
    pub fn zero_eigenspace(&self, v: &Rational) -> Result<DiagonalModel> {
        let coords = match self.multiplicity(v) {
            Multiplicity::Infinite => {
                return Err(Error::UnsupportedSelection(
                    "eigenspace of a constant tail value is infinite-dimensional".into(),
                ))
            }
            Multiplicity::Finite(m) => self.eigen_coordinates(v, m),
        };
        let p = self.prefix.len() as u64;
        let horizon = coords.iter().copied().max().unwrap_or(0).max(p);
        let prefix = (1..=horizon)
            .map(|j| {
                if coords.contains(&j) {
                    Rational::zero()
                } else {
                    self.entry(j)
                }
            })
            .collect();
        Ok(DiagonalModel {
            prefix,
            tail: self.tail.shifted(horizon - p),
        })
    }

    /// The selection dropping every coordinate whose entry equals `v`.
    pub fn drop_eigenspace(&self, v: &Rational) -> Result<Selection> {
        match self.multiplicity(v) {
            Multiplicity::Infinite => Err(Error::UnsupportedSelection(
                "eigenspace of a constant tail value is infinite-dimensional".into(),
            )),
            Multiplicity::Finite(m) => Ok(Selection::Drop(
                self.eigen_coordinates(v, m).into_iter().collect(),
            )),
        }
    }

    pub fn entry_f64(&self, j: u64) -> f64 {
        self.entry(j).to_f64().unwrap_or_else(|| rational::to_f64(&self.entry(j)))
    }
}

impl fmt::Display for DiagonalModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p: Vec<String> = self.prefix.iter().map(rational::to_string).collect();
        write!(f, "[{}] ++ {}", p.join(", "), self.tail)
    }
}
