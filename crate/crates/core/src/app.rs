//! The `snorm` command line: argument model, dispatch, JSON reports, and the
//! seeded verification suites.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::attainment::{
    attaining_set, is_k_norming, is_norming_general, is_norming_positive, is_pk_norming, is_weighted_norming, second_level_equivalences,
};
use crate::classify::{decompose_alpha_kf, sample_selection, spectral_theorem_suite};
use crate::duality::{adjoint, adjoint_closed_form, adjoint_eval_numeric, build_certificate, AdjointValue};
use crate::error::{Error, Result};
use crate::norms::{check_sn_axioms, op_norm, sn_eval, NormFamily, SpectrumVector};
use crate::rational::{self, Rational};
use crate::rng::{self, CorpusRng};
use crate::sn_ideal::{
    identity_sup_sequence, non_attainment_demo, phi_pi_star_norm_model, Attainment, PiWeight,
};
use crate::spectra::{
    abs_part, courant_fischer_value, polar_decompose, svd, sym_eig, DiagonalModel, Matrix, TailRule,
};

pub const SCHEMA_VERSION: u32 = 1;
pub const SEED_ENV: &str = "SNORM_SEED";

#[derive(Debug, Clone, Parser)]
#[command(name = "snorm", version, about = "Symmetric norms, norm attainment and trace duality for operators")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Seed for every random corpus (overridden by SNORM_SEED).
    #[arg(long, global = true, default_value_t = rng::DEFAULT_SEED)]
    pub seed: u64,

    /// Write the report here instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,

    /// Include wall-clock timing in the report (makes output nondeterministic).
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Evaluate ‖T‖_Φ or Φ(ξ).
    Eval(EvalArgs),
    /// Evaluate the adjoint Φ*(η).
    Dual(DualArgs),
    /// Decide membership in N_[k], N_[π,k] or N_(p,k).
    Attain(AttainArgs),
    /// Split a diagonal model as αI + K + F.
    Classify(ClassifyArgs),
    /// Run the trace-raising iteration for the identity in the Φ_π* norm.
    Counterexample(CounterexampleArgs),
    /// Diagonal-reduced Φ_π* norm of a diagonal model and its attainment.
    Phistar(PhistarArgs),
    /// Run the seeded verification suites.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Args)]
#[group(id = "operand", required = true, multiple = false)]
pub struct Operand {
    /// Matrix CSV file.
    #[arg(long)]
    pub matrix: Option<PathBuf>,
    /// Diagonal model JSON file.
    #[arg(long)]
    pub model: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct EvalArgs {
    /// Norm family as JSON, e.g. '{"family":"kyfan","k":2}'.
    #[arg(long)]
    pub norm: String,
    #[arg(long, conflicts_with_all = ["xi"])]
    pub matrix: Option<PathBuf>,
    #[arg(long, conflicts_with_all = ["xi", "matrix"])]
    pub model: Option<PathBuf>,
    /// A sequence ξ, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub xi: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Args)]
pub struct DualArgs {
    #[arg(long)]
    pub norm: String,
    #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
    pub eta: Vec<f64>,
    /// Force the cutting-plane solver even when a closed form exists.
    #[arg(long)]
    pub numeric: bool,
    /// Largest support of the maximizer (defaults to the support of η).
    #[arg(long)]
    pub support_bound: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct AttainArgs {
    #[command(flatten)]
    pub operand: Operand,
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    /// Weights π₁, …, π_k of the weighted class.
    #[arg(long, value_delimiter = ',', conflicts_with = "p")]
    pub pi: Option<Vec<f64>>,
    /// Exponent of the (p, k) class.
    #[arg(long)]
    pub p: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct ClassifyArgs {
    #[command(flatten)]
    pub operand: Operand,
}

#[derive(Debug, Clone, Args)]
pub struct WeightArgs {
    /// Limit L of the weights π_j = L + (1 − L)·c/(j − 1 + c).
    #[arg(long = "L", default_value = "1/2")]
    pub limit: String,
    /// Shift c of the weights.
    #[arg(long, default_value = "1")]
    pub shift: String,
}

impl WeightArgs {
    fn weight(&self) -> Result<PiWeight> {
        PiWeight::harmonic(rational::parse(&self.limit)?, rational::parse(&self.shift)?)
    }
}

#[derive(Debug, Clone, Args)]
pub struct CounterexampleArgs {
    #[command(flatten)]
    pub weights: WeightArgs,
    #[arg(long, default_value_t = 50)]
    pub iters: usize,
}

#[derive(Debug, Clone, Args)]
pub struct PhistarArgs {
    #[arg(long)]
    pub model: PathBuf,
    #[command(flatten)]
    pub weights: WeightArgs,
    #[arg(long, default_value_t = 500)]
    pub horizon: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    All,
    Spectra,
    Norms,
    Duality,
    Attainment,
    Classify,
    Counterexample,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Suite::All)]
    pub suite: Suite,
    /// Number of diagonal models and of random matrices; 0 gives an empty corpus.
    #[arg(long, default_value_t = 20)]
    pub corpus_size: usize,
    /// Agreement tolerance for the numeric adjoint.
    #[arg(long, default_value_t = 1e-7)]
    pub tol_numeric: f64,
    /// Relative tolerance for factorization residuals.
    #[arg(long, default_value_t = 1e-10)]
    pub tol_residual: f64,
}

/// A parsed invocation. `Cli` doubles as the run configuration.
pub type RunConfig = Cli;

#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub exit_code: i32,
    pub report: Value,
}

impl RunOutcome {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.report).expect("reports serialize") + "\n"
    }
}

/// Parses arguments, applies `SNORM_SEED`, runs, and writes the report.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let mut cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    if let Ok(s) = std::env::var(SEED_ENV) {
        match s.trim().parse() {
            Ok(seed) => cli.seed = seed,
            Err(_) => {
                eprintln!("error: {SEED_ENV}={s:?} is not a 64-bit integer");
                return 2;
            }
        }
    }
    let outcome = run(&cli);
    let text = outcome.to_json();
    match &cli.output {
        Some(path) => {
            if let Err(e) = fs::write(path, text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return 2;
            }
        }
        None => print!("{text}"),
    }
    outcome.exit_code
}

pub fn run(config: &RunConfig) -> RunOutcome {
    let start = Instant::now();
    let (name, result) = match &config.command {
        Command::Eval(a) => ("eval", run_eval(a)),
        Command::Dual(a) => ("dual", run_dual(a)),
        Command::Attain(a) => ("attain", run_attain(a)),
        Command::Classify(a) => ("classify", run_classify(a)),
        Command::Counterexample(a) => ("counterexample", run_counterexample(a)),
        Command::Phistar(a) => ("phistar", run_phistar(a)),
        Command::Verify(a) => ("verify", run_verify(a, config.seed)),
    };
    let mut report = Map::new();
    report.insert("schema_version".into(), json!(SCHEMA_VERSION));
    report.insert("command".into(), json!(name));
    report.insert("seed".into(), json!(config.seed));
    let exit_code = match result {
        Ok((body, ok)) => {
            report.extend(body);
            if ok {
                0
            } else {
                1
            }
        }
        Err(e) => {
            report.insert("error".into(), json!(e.to_string()));
            match e {
                Error::Verification(_) => 1,
                _ => 2,
            }
        }
    };
    if config.timing {
        report.insert("timing_ms".into(), json!(start.elapsed().as_secs_f64() * 1e3));
    }
    RunOutcome {
        exit_code,
        report: Value::Object(report),
    }
}

type Body = (Map<String, Value>, bool);

fn to_map(v: impl Serialize) -> Map<String, Value> {
    match serde_json::to_value(v).expect("reports serialize") {
        Value::Object(m) => m,
        other => Map::from_iter([("result".to_string(), other)]),
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn load_matrix(path: &Path) -> Result<Matrix> {
    Matrix::from_csv(&read(path)?)
}

fn load_model(path: &Path) -> Result<DiagonalModel> {
    DiagonalModel::from_json(&read(path)?)
}

fn run_eval(a: &EvalArgs) -> Result<Body> {
    let phi = NormFamily::from_json(&a.norm)?;
    let value = match (&a.matrix, &a.model, &a.xi) {
        (Some(p), _, _) => op_norm(&phi, &load_matrix(p)?)?,
        (_, Some(p), _) => op_norm(&phi, &load_model(p)?)?,
        (_, _, Some(xi)) => sn_eval(&phi, &SpectrumVector::new(xi)),
        _ => return Err(Error::Parse("one of --matrix, --model, --xi is required".into())),
    };
    let mut m = Map::new();
    m.insert("norm".into(), serde_json::to_value(&phi).expect("serializes"));
    m.insert("value".into(), json!(value));
    Ok((m, true))
}

fn run_dual(a: &DualArgs) -> Result<Body> {
    let phi = NormFamily::from_json(&a.norm)?;
    let eta = SpectrumVector::new(&a.eta);
    let bound = a.support_bound.unwrap_or(eta.support().max(1));
    let v = if a.numeric || a.support_bound.is_some() {
        match (a.numeric, adjoint_closed_form(&phi, &eta)) {
            (false, Ok(v)) => v,
            _ => adjoint_eval_numeric(&phi, &eta, bound)?,
        }
    } else {
        adjoint(&phi, &eta)?
    };
    let mut m = Map::new();
    m.insert("norm".into(), serde_json::to_value(&phi).expect("serializes"));
    m.insert("eta".into(), json!(eta.entries()));
    m.extend(to_map(v));
    Ok((m, true))
}

fn run_attain(a: &AttainArgs) -> Result<Body> {
    let mut m = Map::new();
    let verdict = match (&a.operand.model, &a.operand.matrix) {
        (Some(p), _) => {
            let model = load_model(p)?;
            m.insert("model".into(), json!(model.to_string()));
            match (&a.pi, a.p) {
                (Some(pi), _) => is_weighted_norming(&model, pi, a.k)?,
                (None, Some(p)) => is_pk_norming(&model, p, a.k)?,
                (None, None) => is_k_norming(&model, a.k)?,
            }
        }
        (None, Some(p)) => {
            let t = load_matrix(p)?;
            let family = match (&a.pi, a.p) {
                (Some(pi), _) => NormFamily::weighted_ky_fan(pi, a.k)?,
                (None, Some(p)) => NormFamily::p_singular(p, a.k)?,
                (None, None) => NormFamily::ky_fan(a.k)?,
            };
            is_norming_general(&t, &family)?
        }
        (None, None) => unreachable!("clap requires an operand"),
    };
    m.insert("k".into(), json!(a.k));
    m.extend(to_map(verdict));
    Ok((m, true))
}

fn run_classify(a: &ClassifyArgs) -> Result<Body> {
    match (&a.operand.model, &a.operand.matrix) {
        (Some(p), _) => {
            let model = load_model(p)?;
            let mut m = Map::new();
            m.insert("model".into(), json!(model.to_string()));
            m.extend(to_map(decompose_alpha_kf(&model)));
            Ok((m, true))
        }
        (None, Some(p)) => {
            let t = load_matrix(p)?;
            let abs = abs_part(&t)?;
            Ok((
                to_map(json!({
                    "decomposable": true,
                    "alpha": "0",
                    "k_matrix": abs,
                    "f_entries": {},
                    "refusal": null,
                })),
                true,
            ))
        }
        (None, None) => unreachable!("clap requires an operand"),
    }
}

fn run_counterexample(a: &CounterexampleArgs) -> Result<Body> {
    let pi = a.weights.weight()?;
    let report = non_attainment_demo(&pi, a.iters)?;
    let seq = identity_sup_sequence(&pi, a.iters as u64)?;
    let ok = report.holds() && seq.strictly_increasing && seq.below_limit;
    let mut m = Map::new();
    m.insert("weights".into(), json!(pi.to_string()));
    m.insert("pi_rule".into(), serde_json::to_value(&pi).expect("serializes"));
    m.insert("holds".into(), json!(report.holds()));
    m.extend(to_map(&report));
    m.insert("identity_ratios".into(), serde_json::to_value(&seq).expect("serializes"));
    Ok((m, ok))
}

fn run_phistar(a: &PhistarArgs) -> Result<Body> {
    let pi = a.weights.weight()?;
    let model = load_model(&a.model)?;
    let report = phi_pi_star_norm_model(&model, &pi, a.horizon)?;
    let mut m = Map::new();
    m.insert("model".into(), json!(model.to_string()));
    m.insert("pi_rule".into(), serde_json::to_value(&pi).expect("serializes"));
    m.extend(to_map(report));
    Ok((m, true))
}

fn run_verify(a: &VerifyArgs, seed: u64) -> Result<Body> {
    let options = VerifyOptions {
        suite: a.suite,
        corpus_size: a.corpus_size,
        tol_numeric: a.tol_numeric,
        tol_residual: a.tol_residual,
        closed_form: adjoint_closed_form,
    };
    let report = verify_all(seed, &options)?;
    let ok = report.passed();
    Ok((to_map(report), ok))
}

/// The closed-form adjoint under test; replaceable for fault injection.
pub type ClosedForm = fn(&NormFamily, &SpectrumVector) -> Result<AdjointValue>;

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub suite: Suite,
    pub corpus_size: usize,
    pub tol_numeric: f64,
    pub tol_residual: f64,
    pub closed_form: ClosedForm,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            suite: Suite::All,
            corpus_size: 20,
            tol_numeric: 1e-7,
            tol_residual: 1e-10,
            closed_form: adjoint_closed_form,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Failure {
    pub check: String,
    pub witness: Value,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteResult {
    pub suite: Suite,
    pub checks: usize,
    pub passed: usize,
    pub failures: Vec<Failure>,
}

impl SuiteResult {
    fn new(suite: Suite) -> Self {
        SuiteResult {
            suite,
            checks: 0,
            passed: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, check: impl Into<String>, witness: impl FnOnce() -> Value) {
        self.checks += 1;
        if ok {
            self.passed += 1;
        } else {
            self.failures.push(Failure {
                check: check.into(),
                witness: witness(),
            });
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub corpus_size: usize,
    pub suites: Vec<SuiteResult>,
    pub all_passed: bool,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.all_passed
    }
}

/// Runs the selected suites on corpora drawn from `seed`. Each suite uses its
/// own generator, so results do not depend on which suites are selected.
pub fn verify_all(seed: u64, options: &VerifyOptions) -> Result<VerifyReport> {
    let wanted = |s: Suite| options.suite == Suite::All || options.suite == s;
    let stream = |i: u64| rng::seeded(seed.wrapping_add(i.wrapping_mul(0x9E37_79B9_7F4A_7C15)));
    let mut suites = Vec::new();
    if wanted(Suite::Spectra) {
        suites.push(spectra_suite(&mut stream(1), options));
    }
    if wanted(Suite::Norms) {
        suites.push(norms_suite(&mut stream(2), options)?);
    }
    if wanted(Suite::Duality) {
        suites.push(duality_suite(&mut stream(3), options)?);
    }
    if wanted(Suite::Attainment) {
        suites.push(attainment_suite(&mut stream(4), options)?);
    }
    if wanted(Suite::Classify) {
        suites.push(classify_suite(&mut stream(5), options)?);
    }
    if wanted(Suite::Counterexample) {
        suites.push(counterexample_suite(&mut stream(6), options)?);
    }
    let all_passed = suites.iter().all(|s| s.failures.is_empty());
    Ok(VerifyReport {
        corpus_size: options.corpus_size,
        suites,
        all_passed,
    })
}

fn spectra_suite(rng: &mut CorpusRng, o: &VerifyOptions) -> SuiteResult {
    use rand::Rng;
    let mut r = SuiteResult::new(Suite::Spectra);
    let tol = o.tol_residual;
    for _ in 0..o.corpus_size {
        let n = rng.gen_range(1..=8);
        let a = rng::random_symmetric(rng, n);
        let scale = a.frobenius_norm().max(f64::MIN_POSITIVE);
        match sym_eig(&a) {
            Ok(e) => {
                let av = &a * &e.eigenvectors;
                let vl = &e.eigenvectors * &Matrix::from_diag(&e.eigenvalues);
                let res = (&av - &vl).frobenius_norm();
                r.check(res <= tol * scale, "eigen residual", || json!({"matrix": a, "residual": res}));
            }
            Err(e) => r.check(false, "eigen converges", || json!({"matrix": a, "error": e.to_string()})),
        }

        let t = rng::random_shape_matrix(rng, 8);
        let scale = t.frobenius_norm().max(f64::MIN_POSITIVE);
        if let Ok(d) = svd(&t) {
            let res = (&d.reconstruct() - &t).frobenius_norm();
            r.check(res <= tol * scale, "svd residual", || json!({"matrix": t, "residual": res}));
        } else {
            r.check(false, "svd converges", || json!({"matrix": t}));
        }

        let sq = rng::random_matrix(rng, n, n);
        let scale = sq.frobenius_norm().max(f64::MIN_POSITIVE);
        if let Ok(p) = polar_decompose(&sq) {
            let e1 = (&sq - &(&p.u * &p.abs_t)).frobenius_norm();
            let e2 = (&p.abs_t - &(&p.u.transpose() * &sq)).frobenius_norm();
            r.check(e1.max(e2) <= tol * scale, "polar identities", || {
                json!({"matrix": sq, "residuals": [e1, e2]})
            });
        }

        let psd = rng::random_psd(rng, n);
        if let Ok(e) = sym_eig(&psd) {
            for k in 0..n.saturating_sub(1) {
                let cf = courant_fischer_value(&psd, k);
                let ok = cf.as_ref().is_ok_and(|v| (v - e.eigenvalues[k]).abs() <= 1e-8 * e.eigenvalues[0].max(1.0));
                r.check(ok, format!("courant-fischer k = {k}"), || json!({"matrix": psd}));
            }
        }
    }
    r
}

fn norm_families<R: rand::Rng>(rng: &mut R) -> Result<Vec<NormFamily>> {
    Ok(vec![
        NormFamily::ky_fan(1)?,
        NormFamily::ky_fan(3)?,
        NormFamily::weighted_ky_fan(&rng::random_weights(rng, 3), 3)?,
        NormFamily::p_singular(2.0, 3)?,
        NormFamily::weighted_l1(PiWeight::half()),
        NormFamily::Minimal,
        NormFamily::Maximal,
        NormFamily::dual(NormFamily::ky_fan(2)?),
    ])
}

fn norms_suite(rng: &mut CorpusRng, o: &VerifyOptions) -> Result<SuiteResult> {
    use rand::Rng;
    let mut r = SuiteResult::new(Suite::Norms);
    let families = norm_families(rng)?;
    let samples: Vec<(Vec<f64>, Vec<f64>)> = (0..o.corpus_size * 5)
        .map(|_| {
            let n = rng.gen_range(1..=6);
            let x = (0..n).map(|_| rng.gen_range(-5.0..5.0)).collect();
            let y = (0..n).map(|_| rng.gen_range(-5.0..5.0)).collect();
            (x, y)
        })
        .collect();
    for phi in &families {
        let report = check_sn_axioms(phi, &samples);
        r.check(report.passed(), format!("axioms for {phi}"), || {
            serde_json::to_value(&report.violations).expect("serializes")
        });
    }
    let kf1 = NormFamily::ky_fan(1)?;
    for _ in 0..o.corpus_size {
        let t = rng::random_shape_matrix(rng, 6);
        let s1 = svd(&t)?.sigma[0];
        let v = op_norm(&kf1, &t)?;
        r.check((v - s1).abs() <= 1e-10 * s1.max(1.0), "Ky Fan 1 is the operator norm", || {
            json!({"matrix": t, "value": v, "s1": s1})
        });
    }
    Ok(r)
}

fn duality_suite(rng: &mut CorpusRng, o: &VerifyOptions) -> Result<SuiteResult> {
    let mut r = SuiteResult::new(Suite::Duality);
    let families = vec![
        NormFamily::ky_fan(1)?,
        NormFamily::ky_fan(2)?,
        NormFamily::ky_fan(3)?,
        NormFamily::weighted_ky_fan(&rng::random_weights(rng, 3), 3)?,
        NormFamily::weighted_l1(PiWeight::half()),
    ];
    for _ in 0..o.corpus_size * 5 {
        let eta = rng::random_spectrum(rng, 5);
        for phi in &families {
            let closed = (o.closed_form)(phi, &eta)?.value;
            let numeric = adjoint_eval_numeric(phi, &eta, eta.support())?.value;
            let ok = (closed - numeric).abs() <= o.tol_numeric * numeric.abs().max(1.0);
            r.check(ok, format!("closed form vs numeric for {phi}"), || {
                json!({"eta": eta.entries(), "closed_form": closed, "numeric": numeric})
            });
        }
    }
    let cert_families = [
        NormFamily::Maximal,
        NormFamily::dual(NormFamily::ky_fan(2)?),
        NormFamily::dual(NormFamily::weighted_ky_fan(&[1.0, 0.5], 2)?),
    ];
    for _ in 0..o.corpus_size {
        let t = rng::random_shape_matrix(rng, 6);
        for phi in &cert_families {
            let c = build_certificate(&t, phi)?;
            let ok = c.check(1e-8).is_ok();
            r.check(ok, format!("certificate for {phi}"), || {
                json!({"matrix": t, "phi_norm_of_k": c.phi_norm_of_k, "pairing": c.pairing, "dual_norm": c.dual_norm})
            });
        }
    }
    Ok(r)
}

fn attainment_suite(rng: &mut CorpusRng, o: &VerifyOptions) -> Result<SuiteResult> {
    use rand::Rng;
    let mut r = SuiteResult::new(Suite::Attainment);
    let corpus = corpus(rng, o.corpus_size);
    for a in &corpus {
        let mut previous = true;
        for k in 1..=3 {
            let base = is_k_norming(a, k)?.member;
            let pi = rng::random_weights(rng, k);
            let p = rng.gen_range(1.0..4.0);
            let w = is_weighted_norming(a, &pi, k)?.member;
            let q = is_pk_norming(a, p, k)?.member;
            r.check(base == w && base == q, format!("class equivalence k = {k}"), || {
                json!({"model": a.to_string(), "pi": pi, "p": p})
            });
            r.check(previous || !base, format!("downward closure k = {k}"), || json!({"model": a.to_string()}));
            previous = base;
        }
        if let Ok(report) = second_level_equivalences(a) {
            r.check(report.agree, "five statements agree", || {
                serde_json::to_value(&report).expect("serializes")
            });
        }
    }
    for _ in 0..o.corpus_size {
        let t = rng::random_shape_matrix(rng, 5);
        let k = rng.gen_range(1..=3);
        let tt = &t.transpose() * &t;
        let abs = abs_part(&t)?;
        let v1 = is_norming_general(&t, &NormFamily::ky_fan(k)?)?.member;
        let v2 = is_k_norming(&abs, k)?.member;
        let v3 = is_k_norming(&tt, k)?.member;
        r.check(v1 == v2 && v2 == v3, "T, |T| and TᵀT agree", || json!({"matrix": t, "k": k}));
        r.check(is_norming_positive(&abs)?.member, "matrices attain their norm", || json!({"matrix": t}));
        let set = attaining_set(&t, &NormFamily::ky_fan(k)?);
        r.check(set.is_ok(), "eigenvectors of |T| realize the Ky Fan norm", || json!({"matrix": t, "k": k}));
    }
    Ok(r)
}

fn corpus(rng: &mut CorpusRng, n: usize) -> Vec<DiagonalModel> {
    if n == 0 {
        return Vec::new();
    }
    rng::model_corpus(rng, n)
}

fn classify_suite(rng: &mut CorpusRng, o: &VerifyOptions) -> Result<SuiteResult> {
    let mut r = SuiteResult::new(Suite::Classify);
    let corpus = corpus(rng, o.corpus_size);
    let pis = vec![rng::random_weights(rng, 3), vec![1.0, 0.5, 0.25]];
    let report = spectral_theorem_suite(&corpus, &[1, 2, 3], &pis, &[1.0, 2.0, 3.5], 20, rng)?;
    r.checks += report.checks;
    r.passed += report.checks - report.violations.len();
    for v in report.violations {
        r.failures.push(Failure {
            check: v.detail,
            witness: json!({"model": v.model}),
        });
    }
    Ok(r)
}

fn counterexample_suite(rng: &mut CorpusRng, o: &VerifyOptions) -> Result<SuiteResult> {
    let mut r = SuiteResult::new(Suite::Counterexample);
    let pi = PiWeight::half();
    let demo = non_attainment_demo(&pi, 20)?;
    r.check(demo.holds(), "improvement steps raise the trace below 1/L", || {
        json!({"traces": demo.traces.iter().map(rational::to_string).collect::<Vec<_>>()})
    });
    let identity = DiagonalModel::new(vec![], TailRule::constant(rational::int(1))?)?;
    let report = phi_pi_star_norm_model(&identity, &pi, 50)?;
    r.check(report.attained == Attainment::NotAttained, "identity is not Φ_π*-norming", || {
        serde_json::to_value(&report).expect("serializes")
    });
    let two: Rational = rational::int(2);
    r.check(report.value == two, "identity has Φ_π* norm 1/L", || json!({"value": rational::to_string(&report.value)}));
    for _ in 0..o.corpus_size / 2 {
        let a = rng::random_compact_model(rng);
        let sel = sample_selection(rng, &a);
        for b in [a.clone(), a.compress(&sel)?] {
            let rep = phi_pi_star_norm_model(&b, &pi, 500)?;
            r.check(rep.attained == Attainment::Attained, "compact models attain the Φ_π* norm", || {
                json!({"model": b.to_string()})
            });
        }
    }
    Ok(r)
}
