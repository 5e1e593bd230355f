//! Batch experiments: a JSON config lists experiments, [`run`] executes them
//! and [`report`] renders the resulting records.
//!
//! ```
//! use gauss_qec::experiment::{run, ExperimentConfig};
//!
//! let cfg = ExperimentConfig::from_json_str(r#"{"experiments": [{"dims": [4], "sweep": "x-exhaustive"}]}"#).unwrap();
//! let records = run(&cfg).unwrap();
//! assert_eq!(records.len(), 8);
//! assert!(records.iter().all(|r| r.passed));
//! ```

pub mod acceptance;
pub mod checks;

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::str::FromStr;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::evolve::{check_clifford, lower_to_clifford, oaa_exp_pauli, success_block, trotter_circuit, LcuOracles};
use crate::gauss_code::{self, decode_sweep, CodeKind, ErrorClass, SweepRecord};
use crate::hamiltonian::{logical_hamiltonian, Couplings};
use crate::par::{self, Execution};
use crate::statevector::exact_evolve;
use crate::{dense, tolerances, Error, Lattice, PauliString, Result};

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default)]
    pub experiments: Vec<ExperimentSpec>,
    #[serde(default)]
    pub output: OutputSpec,
    #[serde(default)]
    pub tolerances: ToleranceOverrides,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    pub json: Option<PathBuf>,
    pub csv: Option<PathBuf>,
    pub text: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ToleranceOverrides {
    /// Spectrum and matrix comparisons.
    pub matrix: Option<f64>,
    /// Unitarity and probabilities.
    pub probability: Option<f64>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentSpec {
    #[serde(default)]
    pub id: Option<String>,
    #[serde(default)]
    pub dims: Vec<usize>,
    #[serde(default)]
    pub couplings: Couplings,
    /// Code for sweeps; defaults to the kind's natural choice.
    #[serde(default)]
    pub code: Option<CodeKind>,
    #[serde(default)]
    pub sweep: Option<SweepSpec>,
    #[serde(default)]
    pub check: Option<Check>,
    #[serde(default)]
    pub evolve: Option<EvolveSpec>,
    /// Overrides the matrix tolerance for this experiment.
    #[serde(default)]
    pub tolerance: Option<f64>,
}

/// Either a shorthand such as `"x-exhaustive"` or a full parameter set.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SweepSpec {
    Short(String),
    Full(SweepParams),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepMode {
    #[default]
    Exhaustive,
    Sampled,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepParams {
    pub class: ErrorClass,
    #[serde(default)]
    pub mode: SweepMode,
    #[serde(default)]
    pub samples: Option<usize>,
    #[serde(default)]
    pub seed: Option<u64>,
}

impl SweepSpec {
    pub fn resolve(&self) -> Result<SweepParams> {
        let p = match self {
            SweepSpec::Full(p) => p.clone(),
            SweepSpec::Short(s) => {
                let (class, mode) = s
                    .split_once('-')
                    .ok_or_else(|| Error::Config(format!("sweep {s:?} is not of the form <class>-<mode>")))?;
                let mode = match mode {
                    "exhaustive" => SweepMode::Exhaustive,
                    "sampled" => SweepMode::Sampled,
                    other => return Err(Error::Config(format!("unknown sweep mode {other:?}"))),
                };
                SweepParams {
                    class: ErrorClass::from_str(class).map_err(|e| Error::Config(e.to_string()))?,
                    mode,
                    samples: None,
                    seed: None,
                }
            }
        };
        if p.mode == SweepMode::Sampled && (p.seed.is_none() || p.samples.is_none()) {
            return Err(Error::Config("sampled sweeps need both `samples` and `seed`".into()));
        }
        Ok(p)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    Validate,
    SpectrumEquivalence,
    BosonEquivalence,
    NonlocalEquivalence,
    GaugeInvariance,
    BlockEncoding,
    /// Hand-entered 11-qubit Hamming fixture, report only.
    Hamming11Fixture,
    TransversalCnot,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, tag = "kind", rename_all = "lowercase")]
pub enum EvolveSpec {
    /// Product formula for the logical Hamiltonian, checked against exact
    /// evolution and lowered to Clifford-only system gates.
    Trotter { t: f64, steps: usize, order: u8 },
    /// Amplified `e^{itP}` gadget.
    Oaa { pauli: String, t: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    /// Informational; never fails a run.
    Report,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Metric {
    pub name: String,
    pub value: f64,
    pub expected: Option<f64>,
    pub tolerance: Option<f64>,
    pub verdict: Verdict,
}

impl Metric {
    /// Passes when `|value − expected| ≤ tolerance`.
    pub fn within(name: &str, value: f64, expected: f64, tolerance: f64) -> Self {
        let ok = (value - expected).abs() <= tolerance;
        Metric {
            name: name.into(),
            value,
            expected: Some(expected),
            tolerance: Some(tolerance),
            verdict: if ok { Verdict::Pass } else { Verdict::Fail },
        }
    }

    /// An error quantity that must not exceed `tolerance`.
    pub fn error(name: &str, value: f64, tolerance: f64) -> Self {
        Metric::within(name, value, 0.0, tolerance)
    }

    pub fn flag(name: &str, ok: bool) -> Self {
        Metric::within(name, f64::from(u8::from(ok)), 1.0, 0.0)
    }

    pub fn report(name: &str, value: f64) -> Self {
        Metric {
            name: name.into(),
            value,
            expected: None,
            tolerance: None,
            verdict: Verdict::Report,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub experiment: String,
    pub name: String,
    pub timestamp: String,
    pub input: serde_json::Value,
    pub metrics: Vec<Metric>,
    #[serde(default)]
    pub details: BTreeMap<String, String>,
    pub passed: bool,
}

impl ExperimentConfig {
    /// Parses and validates; errors carry the line and column.
    pub fn from_json_str(s: &str) -> Result<Self> {
        let cfg: ExperimentConfig = serde_json::from_str(s)
            .map_err(|e| Error::Config(format!("line {}, column {}: {e}", e.line(), e.column())))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |what: &str, v: Option<f64>| match v {
            Some(t) if !(t > 0.0 && t.is_finite()) => Err(Error::Config(format!("{what} tolerance must be positive, got {t}"))),
            _ => Ok(()),
        };
        positive("matrix", self.tolerances.matrix)?;
        positive("probability", self.tolerances.probability)?;
        for (i, e) in self.experiments.iter().enumerate() {
            let id = experiment_id(i, e);
            positive(&format!("experiment {id}"), e.tolerance)?;
            let actions = [e.sweep.is_some(), e.check.is_some(), e.evolve.is_some()];
            if actions.iter().filter(|&&a| a).count() != 1 {
                return Err(Error::Config(format!(
                    "experiment {id}: exactly one of `sweep`, `check`, `evolve` is required"
                )));
            }
            if let Some(s) = &e.sweep {
                s.resolve()?;
            }
            let lattice_free = matches!(e.check, Some(Check::Hamming11Fixture | Check::TransversalCnot))
                || matches!(e.evolve, Some(EvolveSpec::Oaa { .. }));
            if e.dims.is_empty() && !lattice_free {
                return Err(Error::Config(format!("experiment {id}: `dims` is required")));
            }
        }
        for path in [&self.output.json, &self.output.csv, &self.output.text].into_iter().flatten() {
            let dir = path.parent().filter(|p| !p.as_os_str().is_empty());
            if let Some(dir) = dir {
                if !dir.is_dir() {
                    return Err(Error::Config(format!("output directory {} does not exist", dir.display())));
                }
            }
        }
        Ok(())
    }
}

fn experiment_id(i: usize, e: &ExperimentSpec) -> String {
    e.id.clone().unwrap_or_else(|| format!("exp{i:03}"))
}

struct Ctx<'a> {
    id: String,
    spec: &'a ExperimentSpec,
    matrix_tol: f64,
    prob_tol: f64,
    timestamp: String,
}

impl Ctx<'_> {
    fn record(&self, name: &str, metrics: Vec<Metric>, details: BTreeMap<String, String>) -> ResultRecord {
        let passed = metrics.iter().all(|m| m.verdict != Verdict::Fail);
        ResultRecord {
            experiment: self.id.clone(),
            name: name.into(),
            timestamp: self.timestamp.clone(),
            input: serde_json::to_value(self.spec).unwrap_or(serde_json::Value::Null),
            metrics,
            details,
            passed,
        }
    }
}

/// Runs every experiment (concurrently) and returns the records ordered by
/// experiment id.
pub fn run(config: &ExperimentConfig) -> Result<Vec<ResultRecord>> {
    config.validate()?;
    let timestamp = chrono::Utc::now().to_rfc3339();
    let jobs: Vec<(String, &ExperimentSpec)> = config
        .experiments
        .iter()
        .enumerate()
        .map(|(i, e)| (experiment_id(i, e), e))
        .collect();
    let results = par::map(Execution::default(), &jobs, |(id, spec)| {
        let ctx = Ctx {
            id: id.clone(),
            spec,
            matrix_tol: spec
                .tolerance
                .or(config.tolerances.matrix)
                .unwrap_or(tolerances::SPECTRUM),
            prob_tol: config.tolerances.probability.unwrap_or(tolerances::PROBABILITY),
            timestamp: timestamp.clone(),
        };
        run_one(&ctx)
    });
    let mut out = Vec::new();
    let mut order: Vec<usize> = (0..jobs.len()).collect();
    order.sort_by(|&a, &b| jobs[a].0.cmp(&jobs[b].0));
    let mut results: Vec<Option<Result<Vec<ResultRecord>>>> = results.into_iter().map(Some).collect();
    for i in order {
        out.extend(results[i].take().expect("each job taken once")?);
    }
    Ok(out)
}

fn run_one(ctx: &Ctx) -> Result<Vec<ResultRecord>> {
    let spec = ctx.spec;
    if let Some(sweep) = &spec.sweep {
        return run_sweep(ctx, &sweep.resolve()?);
    }
    if let Some(check) = spec.check {
        return run_check(ctx, check).map(|r| vec![r]);
    }
    match spec.evolve.as_ref().expect("validated") {
        EvolveSpec::Trotter { t, steps, order } => run_trotter(ctx, *t, *steps, *order).map(|r| vec![r]),
        EvolveSpec::Oaa { pauli, t } => run_oaa(ctx, pauli, *t).map(|r| vec![r]),
    }
}

fn lattice(spec: &ExperimentSpec) -> Result<Lattice> {
    Lattice::new(&spec.dims)
}

fn sweep_code(spec: &ExperimentSpec) -> Result<gauss_code::StabilizerCode> {
    gauss_code::build(spec.code.unwrap_or(CodeKind::Classical), &lattice(spec)?)
}

fn run_sweep(ctx: &Ctx, p: &SweepParams) -> Result<Vec<ResultRecord>> {
    let code = sweep_code(ctx.spec)?;
    let mut rows = decode_sweep(&code, p.class, Execution::default())?;
    if p.mode == SweepMode::Sampled {
        let mut rng = ChaCha8Rng::seed_from_u64(p.seed.expect("validated"));
        let amount = p.samples.expect("validated").min(rows.len());
        let mut picked: Vec<usize> = sample(&mut rng, rows.len(), amount).into_vec();
        picked.sort_unstable();
        rows = picked.into_iter().map(|i| rows[i].clone()).collect();
    }
    Ok(rows
        .iter()
        .map(|r| {
            let details = sweep_details(r);
            ctx.record(
                &format!("decode {}{}", r.error_pauli, r.error_qubit),
                vec![Metric::flag("corrected", r.success)],
                details,
            )
        })
        .collect())
}

fn sweep_details(r: &SweepRecord) -> BTreeMap<String, String> {
    BTreeMap::from([
        ("error_qubit".into(), r.error_qubit.to_string()),
        ("error_pauli".into(), r.error_pauli.clone()),
        ("syndrome".into(), r.syndrome.clone()),
        ("status".into(), r.status.to_string()),
        ("correction".into(), r.correction.clone()),
    ])
}

fn run_check(ctx: &Ctx, check: Check) -> Result<ResultRecord> {
    let spec = ctx.spec;
    let tol = ctx.matrix_tol;
    let mut details = BTreeMap::new();
    let metrics = match check {
        Check::Validate => {
            let code = sweep_code(spec)?;
            let v = gauss_code::validate(&code, ErrorClass::for_kind(code.kind))?;
            details.insert("params".into(), format!("[{}, {}, {}]", v.declared.n, v.declared.k, v.declared.distance));
            vec![
                Metric::flag("k_matches", v.k_matches),
                Metric::flag("syndrome_injective", v.syndrome_injective),
                Metric::within("errors_corrected", v.errors_corrected as f64, v.errors_tested as f64, 0.0),
                Metric::report("max_z_weight", v.max_z_weight as f64),
                Metric::report("max_x_weight", v.max_x_weight as f64),
            ]
        }
        Check::SpectrumEquivalence => {
            let d = checks::duality(&lattice(spec)?, &spec.couplings)?;
            vec![
                Metric::error("spectrum_gap", d.spectrum_gap, tol),
                Metric::error("matrix_error", d.matrix_error, tol),
            ]
        }
        Check::BosonEquivalence => vec![Metric::error(
            "matrix_error",
            checks::boson_error(&lattice(spec)?, &spec.couplings)?,
            tol.min(tolerances::EXACT_MATRIX),
        )],
        Check::NonlocalEquivalence => vec![Metric::error(
            "matrix_error",
            checks::nonlocal_error(&lattice(spec)?, &spec.couplings)?,
            tol,
        )],
        Check::GaugeInvariance => vec![Metric::within(
            "anticommuting_pairs",
            checks::gauge_violations(&lattice(spec)?, &spec.couplings)? as f64,
            0.0,
            0.0,
        )],
        Check::BlockEncoding => {
            let rep = LcuOracles::from_lattice(&lattice(spec)?, &spec.couplings)?.report()?;
            let mut m = vec![
                Metric::error("dense_error", rep.dense_error, tol),
                Metric::within("prep_norm", rep.prep_norm, 1.0, tolerances::PREP_NORM),
                Metric::report("eta", rep.eta),
                Metric::report("identity_shift", rep.identity_shift),
                Metric::report("toffoli_count", rep.toffoli_count as f64),
            ];
            if let Some(g) = rep.gate_error {
                m.push(Metric::error("gate_error", g, tol));
            }
            m
        }
        Check::Hamming11Fixture => {
            let rep = gauss_code::hamming11_fixture();
            details.insert("noncommuting".into(), format!("{:?}", rep.noncommuting));
            details.insert("logical_issues".into(), rep.logical_issues.join("; "));
            vec![
                Metric::report("rank", rep.rank as f64),
                Metric::report("k_from_rank", rep.k_from_rank as f64),
                Metric::report("noncommuting_pairs", rep.noncommuting.len() as f64),
                Metric::report("x_collisions", rep.x_collisions.len() as f64),
                Metric::report("z_collisions", rep.z_collisions.len() as f64),
            ]
        }
        Check::TransversalCnot => {
            let rep = gauss_code::transversal_cnot_check()?;
            rep.rows
                .iter()
                .map(|r| {
                    Metric::within(
                        &format!("fidelity_{}{}", r.input.0, r.input.1),
                        r.fidelity,
                        1.0,
                        ctx.prob_tol,
                    )
                })
                .collect()
        }
    };
    let name = serde_json::to_value(check)
        .ok()
        .and_then(|v| v.as_str().map(str::to_owned))
        .unwrap_or_default();
    Ok(ctx.record(&name, metrics, details))
}

fn run_trotter(ctx: &Ctx, t: f64, steps: usize, order: u8) -> Result<ResultRecord> {
    let h = logical_hamiltonian(&lattice(ctx.spec)?, &ctx.spec.couplings)?;
    let c = trotter_circuit(&h, t, steps, order)?;
    let u = c.unitary()?;
    let error = dense::spectral_norm(&(&u - exact_evolve(&h, t)?));
    let lowered = lower_to_clifford(&c)?;
    let mut metrics = vec![
        Metric::report("trotter_error", error),
        Metric::report("gates", c.gates.len() as f64),
        Metric::flag("lowered_clifford", check_clifford(&lowered).passed),
    ];
    if lowered.n_qubits <= crate::max_qubits() {
        let diff = dense::max_abs_diff(&success_block(&lowered)?, &u)?;
        metrics.push(Metric::error("lowered_error", diff, ctx.matrix_tol));
    }
    Ok(ctx.record("trotter", metrics, BTreeMap::new()))
}

fn run_oaa(ctx: &Ctx, pauli: &str, t: f64) -> Result<ResultRecord> {
    let p: PauliString = pauli.parse()?;
    let c = oaa_exp_pauli(t, &p)?;
    let pm = dense::pauli_matrix(&p)?;
    let target = dense::identity(pm.nrows()) * dense::ONE.scale(t.cos()) + pm * dense::I.scale(t.sin());
    let rep = crate::evolve::gadget_report(&c, &target, 0)?;
    Ok(ctx.record(
        "oaa",
        vec![
            Metric::within("success_min", rep.success_min, 1.0, ctx.prob_tol),
            Metric::within("success_max", rep.success_max, 1.0, ctx.prob_tol),
            Metric::within("overlap", rep.overlap, 1.0, ctx.prob_tol),
            Metric::flag("clifford", check_clifford(&c).passed),
        ],
        BTreeMap::new(),
    ))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportFormat {
    Json,
    Csv,
    Text,
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            "text" => Ok(ReportFormat::Text),
            other => Err(Error::Parse(format!("unknown report format {other:?}"))),
        }
    }
}

fn opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// Renders records. CSV has one row per metric.
pub fn report(records: &[ResultRecord], format: ReportFormat) -> Result<String> {
    match format {
        ReportFormat::Json => serde_json::to_string_pretty(records).map_err(|e| Error::Invalid(e.to_string())),
        ReportFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let io = |e: csv::Error| Error::Invalid(e.to_string());
            w.write_record(["experiment", "name", "metric", "value", "expected", "tolerance", "verdict"])
                .map_err(io)?;
            for r in records {
                for m in &r.metrics {
                    let verdict = serde_json::to_value(m.verdict).map_err(|e| Error::Invalid(e.to_string()))?;
                    w.write_record([
                        r.experiment.as_str(),
                        r.name.as_str(),
                        m.name.as_str(),
                        &m.value.to_string(),
                        &opt(m.expected),
                        &opt(m.tolerance),
                        verdict.as_str().unwrap_or_default(),
                    ])
                    .map_err(io)?;
                }
            }
            let bytes = w.into_inner().map_err(|e| Error::Invalid(e.to_string()))?;
            String::from_utf8(bytes).map_err(|e| Error::Invalid(e.to_string()))
        }
        ReportFormat::Text => {
            let mut s = String::new();
            for r in records {
                let _ = writeln!(s, "{} {} {}", if r.passed { "PASS" } else { "FAIL" }, r.experiment, r.name);
                for m in r.metrics.iter().filter(|m| m.verdict == Verdict::Fail) {
                    let _ = writeln!(s, "    {} = {} (expected {} ± {})", m.name, m.value, opt(m.expected), opt(m.tolerance));
                }
            }
            let passed = records.iter().filter(|r| r.passed).count();
            let _ = writeln!(s, "{} records: {} passed, {} failed", records.len(), passed, records.len() - passed);
            Ok(s)
        }
    }
}

/// Decode-sweep rows as CSV with a single header line.
pub fn sweep_csv(rows: &[SweepRecord]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::Invalid(e.to_string());
    w.write_record(["error_qubit", "error_pauli", "syndrome", "status", "correction"])
        .map_err(io)?;
    for r in rows {
        w.write_record([
            r.error_qubit.to_string().as_str(),
            &r.error_pauli,
            &r.syndrome,
            &r.status.to_string(),
            &r.correction,
        ])
        .map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Invalid(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Invalid(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(s: &str) -> ExperimentConfig {
        ExperimentConfig::from_json_str(s).unwrap()
    }

    #[test]
    fn empty_config_runs() {
        assert!(run(&cfg("{}")).unwrap().is_empty());
    }

    #[test]
    fn spectrum_check_record() {
        let r = run(&cfg(r#"{"experiments":[{"dims":[3],"check":"spectrum-equivalence"}]}"#)).unwrap();
        assert_eq!(r.len(), 1);
        assert!(r[0].passed, "{r:?}");
        assert!(r[0].metrics[0].value <= 1e-9);
    }

    #[test]
    fn malformed_configs() {
        let e = ExperimentConfig::from_json_str("{\n \"experiments\": [{\"dims\": [3], \"chek\": 1}]}").unwrap_err();
        assert!(e.to_string().contains("line 2"), "{e}");
        assert!(e.to_string().contains("chek"), "{e}");
        assert!(ExperimentConfig::from_json_str(r#"{"experiments":[{"dims":[3]}]}"#).is_err());
        assert!(ExperimentConfig::from_json_str(r#"{"experiments":[{"dims":[3],"sweep":"x-sampled"}]}"#).is_err());
        assert!(ExperimentConfig::from_json_str(r#"{"tolerances":{"matrix":-1}}"#).is_err());
    }

    #[test]
    fn sampled_sweep_is_seeded() {
        let s = r#"{"experiments":[{"id":"s","dims":[3],"code":"phase-first","sweep":{"class":"all","mode":"sampled","samples":10,"seed":4}}]}"#;
        let a = run(&cfg(s)).unwrap();
        let b = run(&cfg(s)).unwrap();
        assert_eq!(a.len(), 10);
        let strip = |r: &[ResultRecord]| r.iter().map(|x| (x.name.clone(), x.details.clone())).collect::<Vec<_>>();
        assert_eq!(strip(&a), strip(&b));
    }

    #[test]
    fn records_sorted_and_reported() {
        let s = r#"{"experiments":[
            {"id":"b","dims":[3],"evolve":{"kind":"trotter","t":0.5,"steps":4,"order":2}},
            {"id":"a","dims":[3],"check":"gauge-invariance"},
            {"id":"c","check":"hamming11-fixture"}]}"#;
        let r = run(&cfg(s)).unwrap();
        let ids: Vec<&str> = r.iter().map(|x| x.experiment.as_str()).collect();
        assert_eq!(ids, ["a", "b", "c"]);
        assert!(r.iter().all(|x| x.passed), "{r:?}");
        let json = report(&r, ReportFormat::Json).unwrap();
        let back: Vec<ResultRecord> = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
        let csv = report(&r, ReportFormat::Csv).unwrap();
        assert_eq!(csv.lines().filter(|l| l.starts_with("experiment,")).count(), 1);
        assert!(report(&r, ReportFormat::Text).unwrap().contains("3 records: 3 passed"));
    }

    #[test]
    fn sweep_csv_columns() {
        let code = gauss_code::classical_code(&Lattice::new(&[4]).unwrap()).unwrap();
        let rows = decode_sweep(&code, ErrorClass::X, Execution::Sequential).unwrap();
        let csv = sweep_csv(&rows).unwrap();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("error_qubit,error_pauli,syndrome,status,correction"));
        assert_eq!(lines.count(), 8);
    }
}
