//! Adjoint s.n. functions `Φ*(η) = sup{⟨η, ξ⟩ : Φ(ξ) ≤ 1}`, the dual norm
//! `‖T‖_Φ*`, and norming certificates `K` with `‖K‖_Φ = 1`, `|Tr(TK)| = ‖T‖_Φ*`.

use minilp::{ComparisonOp, LinearExpr, OptimizationDirection, Problem};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::norms::{sn_eval, NormFamily, SpectrumVector};
use crate::spectra::{s_numbers_matrix, svd, Matrix};

const MAX_CUTS: usize = 500;
const GAP_TOL: f64 = 1e-9;
/// Accepted gap once the LP stops moving (its own pivoting tolerance).
const STALL_TOL: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AdjointMethod {
    ClosedForm,
    Numeric,
}

#[derive(Debug, Clone, Serialize)]
pub struct AdjointValue {
    pub value: f64,
    /// Canonical maximizer with `Φ(ξ*) = 1`.
    pub xi_star: Vec<f64>,
    /// Prefix length `m*` when the maximizer is `1^{m*} / Φ(1^{m*})`.
    pub argmax_prefix: Option<usize>,
    pub method: AdjointMethod,
}

/// `Φ*(η)`, in closed form when one is known, numerically otherwise.
pub fn adjoint(phi: &NormFamily, eta: &SpectrumVector) -> Result<AdjointValue> {
    match adjoint_closed_form(phi, eta) {
        Err(Error::UnsupportedFamily(_)) => adjoint_eval_numeric(phi, eta, eta.support().max(1)),
        other => other,
    }
}

/// Closed forms: `max_m H_m / Φ(1^m)` for families linear on the cone, and
/// `Ψ(η)` for the adjoint of a linear `Ψ`.
pub fn adjoint_closed_form(phi: &NormFamily, eta: &SpectrumVector) -> Result<AdjointValue> {
    let n = eta.support().max(1);
    if let Some(w) = phi.linear_weights(n) {
        let mut h = 0.0;
        let mut wsum = 0.0;
        let mut best = (f64::NEG_INFINITY, 1, 1.0);
        for m in 1..=n {
            h += eta.get(m);
            wsum += w[m - 1];
            let r = h / wsum;
            if r > best.0 * (1.0 + 1e-15) {
                best = (r, m, wsum);
            }
        }
        let (value, m, wm) = best;
        let xi_star = (1..=n).map(|j| if j <= m { 1.0 / wm } else { 0.0 }).collect();
        return Ok(AdjointValue {
            value,
            xi_star,
            argmax_prefix: Some(m),
            method: AdjointMethod::ClosedForm,
        });
    }
    if let NormFamily::Dual(of) = phi {
        if let Some(w) = of.linear_weights(n) {
            let value = (1..=n).map(|j| w[j - 1] * eta.get(j)).sum();
            return Ok(AdjointValue {
                value,
                xi_star: w,
                argmax_prefix: None,
                method: AdjointMethod::ClosedForm,
            });
        }
    }
    Err(Error::UnsupportedFamily(phi.name()))
}

/// A subgradient of `Φ` at the canonical `ξ` (length `n`), restricted to the cone.
pub fn subgradient(phi: &NormFamily, xi: &[f64]) -> Result<Vec<f64>> {
    let n = xi.len();
    if let Some(w) = phi.linear_weights(n) {
        return Ok(w);
    }
    match phi {
        NormFamily::PSingular { p, k } => {
            let val = sn_eval(phi, &SpectrumVector::new(xi));
            let mut g = vec![0.0; n];
            if val == 0.0 {
                g[0] = 1.0;
            } else {
                for (j, gj) in g.iter_mut().enumerate().take(*k) {
                    *gj = (xi[j] / val).powf(p - 1.0);
                }
            }
            Ok(g)
        }
        NormFamily::Dual(of) => {
            let inner = adjoint(of, &SpectrumVector::new(xi))?;
            Ok((0..n).map(|j| inner.xi_star.get(j).copied().unwrap_or(0.0)).collect())
        }
        _ => unreachable!("linear families handled above"),
    }
}

/// Kelley cutting planes over nonincreasing `ξ ≥ 0` with at most `support_bound`
/// nonzero entries. Writing `ξ = Σ_m c_m 1^m` with `c ≥ 0`, the objective is
/// `Σ c_m H_m(η)`, each cut is `Σ c_m G_m ≤ 1` with `G` the prefix sums of a
/// subgradient, and `ξ₁ ≤ Φ(ξ)` supplies the bounding row `Σ c_m ≤ 1`.
pub fn adjoint_eval_numeric(phi: &NormFamily, eta: &SpectrumVector, support_bound: usize) -> Result<AdjointValue> {
    if support_bound < eta.support() {
        return Err(Error::Precondition(format!(
            "support bound {support_bound} is below the support {} of η",
            eta.support()
        )));
    }
    let n = support_bound.max(1);
    let h: Vec<f64> = prefix_sums(&eta.resized(n));
    if h[n - 1] == 0.0 {
        let mut xi = vec![0.0; n];
        xi[0] = 1.0;
        return Ok(AdjointValue {
            value: 0.0,
            xi_star: xi,
            argmax_prefix: None,
            method: AdjointMethod::Numeric,
        });
    }

    let mut problem = Problem::new(OptimizationDirection::Maximize);
    let vars: Vec<_> = h.iter().map(|&hm| problem.add_var(hm, (0.0, f64::INFINITY))).collect();
    let row = |coeffs: &[f64]| {
        let mut e = LinearExpr::empty();
        for (v, &c) in vars.iter().zip(coeffs) {
            e.add(*v, c);
        }
        e
    };
    problem.add_constraint(row(&vec![1.0; n]), ComparisonOp::Le, 1.0);
    let g0 = subgradient(phi, &vec![1.0; n])?;
    problem.add_constraint(row(&prefix_sums(&g0)), ComparisonOp::Le, 1.0);
    let mut sol = problem.solve().map_err(|e| lp_failure(&e))?;

    let mut best = (0.0, vec![0.0; n]);
    let mut last_upper = f64::INFINITY;
    let mut stalled = 0;
    for _ in 0..MAX_CUTS {
        let upper = sol.objective();
        let c: Vec<f64> = vars.iter().map(|v| sol.var_value(*v).max(0.0)).collect();
        let xi = suffix_sums(&c);
        let phi_xi = sn_eval(phi, &SpectrumVector::new(&xi));
        if phi_xi > 0.0 {
            let cand = xi.iter().zip(eta.resized(n)).map(|(a, b)| a * b).sum::<f64>() / phi_xi;
            if cand > best.0 {
                best = (cand, xi.iter().map(|x| x / phi_xi).collect());
            }
        }
        stalled = if last_upper - upper <= 1e-13 * upper.max(1.0) { stalled + 1 } else { 0 };
        last_upper = upper;
        let gap = upper - best.0;
        if gap <= GAP_TOL * upper.max(1.0) || (stalled >= 3 && gap <= STALL_TOL * upper.max(1.0)) {
            return Ok(AdjointValue {
                value: best.0,
                xi_star: best.1,
                argmax_prefix: None,
                method: AdjointMethod::Numeric,
            });
        }
        let g = subgradient(phi, &xi)?;
        sol = sol
            .add_constraint(row(&prefix_sums(&g)), ComparisonOp::Le, 1.0)
            .map_err(|e| lp_failure(&e))?;
    }
    Err(Error::NoConvergence {
        routine: "adjoint_eval_numeric",
        iterations: MAX_CUTS,
    })
}

fn lp_failure(e: &minilp::Error) -> Error {
    Error::NoConvergence {
        routine: match e {
            minilp::Error::Infeasible => "adjoint LP (infeasible)",
            minilp::Error::Unbounded => "adjoint LP (unbounded)",
        },
        iterations: 0,
    }
}

fn prefix_sums(x: &[f64]) -> Vec<f64> {
    x.iter()
        .scan(0.0, |acc, v| {
            *acc += v;
            Some(*acc)
        })
        .collect()
}

fn suffix_sums(c: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; c.len()];
    let mut acc = 0.0;
    for j in (0..c.len()).rev() {
        acc += c[j];
        out[j] = acc;
    }
    out
}

/// `Tr(TK)` for `T: m×n`, `K: n×m`.
pub fn trace_pairing(t: &Matrix, k: &Matrix) -> Result<f64> {
    if t.cols() != k.rows() || t.rows() != k.cols() {
        return Err(Error::ShapeMismatch(format!(
            "T is {}x{}, K is {}x{}",
            t.rows(),
            t.cols(),
            k.rows(),
            k.cols()
        )));
    }
    Ok((0..t.rows())
        .map(|i| (0..t.cols()).map(|j| t[(i, j)] * k[(j, i)]).sum::<f64>())
        .sum())
}

/// `‖T‖_Φ* = Φ*(s(T))`.
pub fn phi_star_norm(t: &Matrix, phi: &NormFamily) -> Result<f64> {
    let s = s_numbers_matrix(t)?;
    Ok(adjoint(phi, &SpectrumVector::new(s.values()))?.value)
}

/// A norming functional for `T`: `K = V diag(ξ*) Uᵀ` with `T = U diag(s) Vᵀ`.
#[derive(Debug, Clone, Serialize)]
pub struct Certificate {
    pub k: Matrix,
    pub xi_star: Vec<f64>,
    /// `‖K‖_Φ`, measured from the singular values of `K`.
    pub phi_norm_of_k: f64,
    /// `|Tr(TK)|`.
    pub pairing: f64,
    pub dual_norm: f64,
    pub method: AdjointMethod,
    /// Pairs `(x_j, y_j)` with `T x_j = s_j y_j`, on the support of `ξ*`.
    pub attaining_vectors: Vec<(Vec<f64>, Vec<f64>)>,
}

impl Certificate {
    pub fn check(&self, tol: f64) -> Result<()> {
        if (self.phi_norm_of_k - 1.0).abs() > tol {
            return Err(Error::Verification(format!("‖K‖_Φ = {}", self.phi_norm_of_k)));
        }
        if (self.pairing - self.dual_norm).abs() > tol * self.dual_norm.max(1.0) {
            return Err(Error::Verification(format!(
                "|Tr(TK)| = {} but ‖T‖_Φ* = {}",
                self.pairing, self.dual_norm
            )));
        }
        Ok(())
    }
}

pub fn build_certificate(t: &Matrix, phi: &NormFamily) -> Result<Certificate> {
    let d = svd(t)?;
    let r = d.sigma.len();
    if d.sigma.first().is_none_or(|&s| s == 0.0) {
        return Err(Error::ZeroOperator);
    }
    let eta = SpectrumVector::new(&d.sigma);
    let adj = match adjoint_closed_form(phi, &eta) {
        Err(Error::UnsupportedFamily(_)) => adjoint_eval_numeric(phi, &eta, r)?,
        other => other?,
    };
    let xi: Vec<f64> = (0..r).map(|j| adj.xi_star.get(j).copied().unwrap_or(0.0)).collect();

    // K = V diag(ξ) Uᵀ, built column by column
    let (m, n) = (t.rows(), t.cols());
    let mut data = vec![0.0; n * m];
    for (j, &x) in xi.iter().enumerate() {
        if x == 0.0 {
            continue;
        }
        for a in 0..n {
            for b in 0..m {
                data[a * m + b] += x * d.v[(a, j)] * d.u[(b, j)];
            }
        }
    }
    let k = Matrix::new(n, m, data)?;
    let sk = s_numbers_matrix(&k)?;
    let attaining_vectors = xi
        .iter()
        .enumerate()
        .filter(|(_, &x)| x > 0.0)
        .map(|(j, _)| (d.v.column(j), d.u.column(j)))
        .collect();
    Ok(Certificate {
        phi_norm_of_k: sn_eval(phi, &SpectrumVector::new(sk.values())),
        pairing: trace_pairing(t, &k)?.abs(),
        dual_norm: adj.value,
        xi_star: xi,
        method: adj.method,
        attaining_vectors,
        k,
    })
}
