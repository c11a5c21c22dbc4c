use serde::Serialize;

use super::eigen::svd;
use super::matrix::Matrix;
use super::model::{DiagonalModel, Multiplicity, TailKind};
use crate::error::Result;
use crate::rational::Rational;

/// s-numbers of a finite matrix: the singular values followed by zeros.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SNumbers {
    values: Vec<f64>,
    segments: Vec<(f64, usize)>,
}

impl SNumbers {
    /// Wraps a nonincreasing list of singular values.
    pub fn from_sorted(values: Vec<f64>) -> Self {
        debug_assert!(values.windows(2).all(|w| w[0] >= w[1]));
        let smax = values.first().copied().unwrap_or(0.0);
        let tol = 1e-12 * smax;
        let mut segments: Vec<(f64, usize)> = Vec::new();
        for &v in values.iter().filter(|&&v| v > tol) {
            match segments.last_mut() {
                Some((w, count)) if (*w - v).abs() <= tol => *count += 1,
                _ => segments.push((v, 1)),
            }
        }
        SNumbers { values, segments }
    }

    /// `s_j`, one-based; zero past the dimension.
    pub fn value_at(&self, j: usize) -> f64 {
        assert!(j >= 1, "s-numbers are one-based");
        self.values.get(j - 1).copied().unwrap_or(0.0)
    }

    pub fn first(&self, n: usize) -> Vec<f64> {
        (1..=n).map(|j| self.value_at(j)).collect()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Distinct nonzero values with their multiplicities.
    pub fn segments(&self) -> &[(f64, usize)] {
        &self.segments
    }

    pub fn essential_sup(&self) -> f64 {
        0.0
    }
}

pub fn s_numbers_matrix(t: &Matrix) -> Result<SNumbers> {
    Ok(SNumbers::from_sorted(svd(t)?.sigma))
}

/// s-numbers of a diagonal model, produced by the peel-off recursion: the
/// supremum of what is left is either the essential limit (then it repeats
/// forever) or an eigenvalue of finite multiplicity (emitted that many times
/// and removed).
#[derive(Debug, Clone)]
pub struct ModelSNumbers {
    /// Prefix values strictly above α, nonincreasing.
    above: Vec<Rational>,
    model: DiagonalModel,
}

impl ModelSNumbers {
    pub fn new(model: &DiagonalModel) -> Self {
        let alpha = model.alpha();
        let mut above: Vec<Rational> = model.prefix().iter().filter(|x| *x > alpha).cloned().collect();
        above.sort_by(|a, b| b.cmp(a));
        ModelSNumbers {
            above,
            model: model.clone(),
        }
    }

    pub fn essential_sup(&self) -> &Rational {
        self.model.alpha()
    }

    /// True when the sequence reaches α after finitely many terms.
    pub fn reaches_essential_sup(&self) -> bool {
        self.model.tail().kind() != TailKind::ConvergesFromAbove
    }

    /// Number of leading terms strictly above α, when finite.
    pub fn finite_part_len(&self) -> Option<usize> {
        self.reaches_essential_sup().then_some(self.above.len())
    }

    pub fn mixed_case(&self) -> bool {
        self.model.has_mixed_essential_point()
    }

    pub fn iter(&self) -> impl Iterator<Item = Rational> + '_ {
        let alpha = self.model.alpha().clone();
        let converging_above = !self.reaches_essential_sup();
        let mut i = 0usize;
        let mut t = 1u64;
        std::iter::from_fn(move || {
            let next_prefix = self.above.get(i);
            if converging_above {
                let tail_value = self.model.tail().value(t);
                match next_prefix {
                    Some(p) if *p >= tail_value => {
                        i += 1;
                        Some(p.clone())
                    }
                    _ => {
                        t += 1;
                        Some(tail_value)
                    }
                }
            } else {
                match next_prefix {
                    Some(p) => {
                        i += 1;
                        Some(p.clone())
                    }
                    None => Some(alpha.clone()),
                }
            }
        })
    }

    /// `s_j`, one-based.
    pub fn value_at(&self, j: usize) -> Rational {
        assert!(j >= 1, "s-numbers are one-based");
        if self.reaches_essential_sup() {
            return self
                .above
                .get(j - 1)
                .cloned()
                .unwrap_or_else(|| self.model.alpha().clone());
        }
        self.iter().nth(j - 1).expect("infinite sequence")
    }

    pub fn first(&self, n: usize) -> Vec<Rational> {
        self.iter().take(n).collect()
    }

    /// Leading `(value, multiplicity)` segments; the final segment is
    /// `(α, ∞)` when the sequence reaches α.
    pub fn segments(&self, max_segments: usize) -> Vec<(Rational, Multiplicity)> {
        let mut out: Vec<(Rational, Multiplicity)> = Vec::new();
        let mut it = self.iter();
        let mut emitted = 0usize;
        let finite = self.finite_part_len();
        // one extra segment is opened to learn where the last requested one ends
        while out.len() <= max_segments {
            if finite == Some(emitted) {
                out.push((self.model.alpha().clone(), Multiplicity::Infinite));
                break;
            }
            let v = it.next().expect("infinite sequence");
            emitted += 1;
            match out.last_mut() {
                Some((w, Multiplicity::Finite(c))) if *w == v => *c += 1,
                _ => out.push((v, Multiplicity::Finite(1))),
            }
        }
        out.truncate(max_segments);
        out
    }
}

pub fn s_numbers_model(model: &DiagonalModel) -> ModelSNumbers {
    ModelSNumbers::new(model)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};
    use crate::spectra::model::{Gap, TailRule};

    #[test]
    fn matrix_s_numbers() {
        let s = s_numbers_matrix(&Matrix::from_diag(&[3.0, 2.0, 1.0])).unwrap();
        assert_eq!(s.first(5), vec![3.0, 2.0, 1.0, 0.0, 0.0]);
        let t = Matrix::from_rows(&[vec![0.0, -2.0], vec![3.0, 0.0]]).unwrap();
        let s = s_numbers_matrix(&t).unwrap();
        assert!((s.value_at(1) - 3.0).abs() < 1e-15 && (s.value_at(2) - 2.0).abs() < 1e-15);
        assert_eq!(s.value_at(3), 0.0);
        let z = s_numbers_matrix(&Matrix::zeros(2, 3)).unwrap();
        assert_eq!(z.first(3), vec![0.0; 3]);
        assert!(z.segments().is_empty());
    }

    #[test]
    fn double_top_s_numbers_are_all_one() {
        let m = DiagonalModel::new(
            vec![int(1), int(1)],
            TailRule::below(int(1), Gap::harmonic(1)).unwrap(),
        )
        .unwrap();
        let s = s_numbers_model(&m);
        assert!(s.first(100).iter().all(|v| *v == int(1)));
        assert_eq!(s.segments(4), vec![(int(1), Multiplicity::Infinite)]);
    }

    #[test]
    fn constant_tail_peel_off() {
        let m = DiagonalModel::new(vec![int(5), int(3)], TailRule::constant(int(2)).unwrap()).unwrap();
        let s = s_numbers_model(&m);
        assert_eq!(s.first(5), vec![int(5), int(3), int(2), int(2), int(2)]);
        assert_eq!(s.value_at(1000), int(2));
    }

    #[test]
    fn compact_tail_interleaves() {
        let m = DiagonalModel::new(vec![], TailRule::above(int(0), Gap::harmonic(0)).unwrap()).unwrap();
        let s = s_numbers_model(&m);
        assert_eq!(s.first(3), vec![int(1), ratio(1, 2), ratio(1, 3)]);

        let m = DiagonalModel::new(
            vec![ratio(1, 2), int(4)],
            TailRule::above(int(0), Gap::harmonic(0)).unwrap(),
        )
        .unwrap();
        let s = s_numbers_model(&m);
        assert_eq!(s.first(4), vec![int(4), int(1), ratio(1, 2), ratio(1, 2)]);
        assert_eq!(s.segments(3)[2], (ratio(1, 2), Multiplicity::Finite(2)));
    }

    #[test]
    fn prefix_below_limit_never_appears() {
        let m = DiagonalModel::new(vec![int(1), int(7)], TailRule::constant(int(3)).unwrap()).unwrap();
        assert_eq!(s_numbers_model(&m).first(3), vec![int(7), int(3), int(3)]);
    }
}
