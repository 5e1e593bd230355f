//! Command-line front-end for gauss-qec.
//!
//! Exit status: 0 when every check passes, 1 when a check fails, 2 for
//! usage, config and capacity errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gauss_qec::evolve::{
    check_clifford, gadget_report, lower_to_clifford, oaa_exp_pauli, success_block, trotter_circuit, LcuOracles,
};
use gauss_qec::experiment::acceptance::acceptance_suite;
use gauss_qec::experiment::{self, checks, report, sweep_csv, ExperimentConfig, ReportFormat};
use gauss_qec::gauss_code::{self, decode_sweep, CodeKind, ErrorClass, StabilizerCode};
use gauss_qec::hamiltonian::{self, Couplings, Form};
use gauss_qec::par::Execution;
use gauss_qec::{dense, tolerances, Error, Lattice, PauliString, Result};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "gauss-qec", version, about = "Gauss'-law codes for Z2 lattice gauge theories")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build, validate and decode Gauss'-law codes.
    #[command(subcommand)]
    Code(CodeCmd),
    /// Build and cross-check Hamiltonian forms.
    #[command(subcommand)]
    Ham(HamCmd),
    /// Trotter, block-encoding and gadget checks.
    #[command(subcommand)]
    Evolve(EvolveCmd),
    /// Built-in suites.
    #[command(subcommand)]
    Suite(SuiteCmd),
    /// Run the experiments listed in a JSON config.
    Run {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct LatticeArgs {
    /// Lattice extents, e.g. `3` or `3,3`.
    #[arg(long, value_delimiter = ',', required = true)]
    dims: Vec<usize>,
}

#[derive(Args)]
struct CouplingArgs {
    #[arg(long, default_value_t = Couplings::default().m)]
    m: f64,
    #[arg(long, default_value_t = Couplings::default().epsilon)]
    eps: f64,
    #[arg(long = "lambda-e", alias = "lambdaE", default_value_t = Couplings::default().lambda_e)]
    lambda_e: f64,
    #[arg(long = "lambda-p", alias = "lambdaP", default_value_t = Couplings::default().lambda_p)]
    lambda_p: f64,
}

impl CouplingArgs {
    fn couplings(&self) -> Result<Couplings> {
        let c = Couplings::new(self.m, self.eps, self.lambda_e, self.lambda_p);
        c.validate()?;
        Ok(c)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Classical,
    PhaseFirst,
    GaussFirst,
    Hamming,
}

impl From<Kind> for CodeKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Classical => CodeKind::Classical,
            Kind::PhaseFirst => CodeKind::PhaseFirst,
            Kind::GaussFirst => CodeKind::GaussFirst,
            Kind::Hamming => CodeKind::Hamming,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Errors {
    X,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

impl From<Format> for ReportFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Json => ReportFormat::Json,
            Format::Csv => ReportFormat::Csv,
            Format::Text => ReportFormat::Text,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum HamForm {
    Fermionic,
    Pauli,
    Logical,
    Boson,
}

#[derive(Subcommand)]
enum CodeCmd {
    /// Print generators and logical operators as JSON.
    Build {
        #[arg(long, value_enum, default_value = "classical")]
        kind: Kind,
        #[command(flatten)]
        lattice: LatticeArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rank, commutation, logical and single-error checks.
    Validate {
        #[arg(long, value_enum, default_value = "classical")]
        kind: Kind,
        #[command(flatten)]
        lattice: LatticeArgs,
        /// Defaults to X for the classical code and all Paulis otherwise.
        #[arg(long, value_enum)]
        errors: Option<Errors>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decode every single-qubit error; CSV unless `--format json`.
    DecodeSweep {
        #[arg(long, value_enum, default_value = "classical")]
        kind: Kind,
        #[command(flatten)]
        lattice: LatticeArgs,
        #[arg(long, value_enum)]
        errors: Option<Errors>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum HamCmd {
    /// Serialize one form of the Hamiltonian.
    Build {
        #[arg(long, value_enum, default_value = "logical")]
        form: HamForm,
        #[command(flatten)]
        lattice: LatticeArgs,
        #[command(flatten)]
        couplings: CouplingArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Gauge invariance, duality and boson equivalence.
    Verify {
        #[command(flatten)]
        lattice: LatticeArgs,
        #[command(flatten)]
        couplings: CouplingArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum EvolveCmd {
    /// Product-formula error against exact evolution.
    Trotter {
        #[command(flatten)]
        lattice: LatticeArgs,
        #[command(flatten)]
        couplings: CouplingArgs,
        #[arg(long)]
        t: f64,
        #[arg(long)]
        steps: usize,
        #[arg(long, default_value_t = 1)]
        order: u8,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// PREP/SELECT block encoding and its Toffoli count.
    LcuCheck {
        #[command(flatten)]
        lattice: LatticeArgs,
        #[command(flatten)]
        couplings: CouplingArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Amplified `e^{itP}` gadget.
    OaaCheck {
        #[arg(long)]
        pauli: String,
        #[arg(long)]
        t: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum SuiteCmd {
    /// Run every acceptance criterion.
    Acceptance {
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Error::Config(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            if !text.ends_with('\n') {
                println!();
            }
            Ok(())
        }
    }
}

fn emit_json(out: Option<&Path>, v: &Value) -> Result<()> {
    let text = serde_json::to_string_pretty(v).map_err(|e| Error::Invalid(e.to_string()))?;
    emit(out, &text)
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).unwrap_or(Value::Null)
}

fn strings(ops: &[PauliString]) -> Vec<String> {
    ops.iter().map(ToString::to_string).collect()
}

fn build_code(kind: Kind, lattice: &LatticeArgs) -> Result<StabilizerCode> {
    gauss_code::build(kind.into(), &Lattice::new(&lattice.dims)?)
}

fn error_class(errors: Option<Errors>, code: &StabilizerCode) -> ErrorClass {
    match errors {
        Some(Errors::X) => ErrorClass::X,
        Some(Errors::All) => ErrorClass::All,
        None => ErrorClass::for_kind(code.kind),
    }
}

fn code_cmd(cmd: CodeCmd) -> Result<bool> {
    match cmd {
        CodeCmd::Build { kind, lattice, out } => {
            let code = build_code(kind, &lattice)?;
            let (z, x) = code.max_weights();
            emit_json(
                out.as_deref(),
                &json!({
                    "kind": code.kind,
                    "params": code.params,
                    "n_gauss": code.n_gauss,
                    "max_z_weight": z,
                    "max_x_weight": x,
                    "generators": strings(&code.generators),
                    "logical_x": strings(&code.logical_x),
                    "logical_z": strings(&code.logical_z),
                }),
            )?;
            Ok(true)
        }
        CodeCmd::Validate {
            kind,
            lattice,
            errors,
            out,
        } => {
            let code = build_code(kind, &lattice)?;
            let v = gauss_code::validate(&code, error_class(errors, &code))?;
            emit_json(out.as_deref(), &to_value(&v))?;
            Ok(v.passed)
        }
        CodeCmd::DecodeSweep {
            kind,
            lattice,
            errors,
            format,
            out,
        } => {
            let code = build_code(kind, &lattice)?;
            let rows = decode_sweep(&code, error_class(errors, &code), Execution::default())?;
            let text = match format {
                Format::Csv => sweep_csv(&rows)?,
                Format::Json => serde_json::to_string_pretty(&rows).map_err(|e| Error::Invalid(e.to_string()))?,
                Format::Text => {
                    let ok = rows.iter().filter(|r| r.success).count();
                    format!("{} errors: {ok} corrected, {} failed\n", rows.len(), rows.len() - ok)
                }
            };
            emit(out.as_deref(), &text)?;
            Ok(rows.iter().all(|r| r.success))
        }
    }
}

fn ham_cmd(cmd: HamCmd) -> Result<bool> {
    match cmd {
        HamCmd::Build {
            form,
            lattice,
            couplings,
            out,
        } => {
            let l = Lattice::new(&lattice.dims)?;
            let c = couplings.couplings()?;
            let form_name = match form {
                HamForm::Fermionic => Form::Fermionic,
                HamForm::Pauli => Form::Pauli,
                HamForm::Logical => Form::Logical,
                HamForm::Boson => Form::Boson,
            };
            let terms = match form {
                HamForm::Fermionic => to_value(&hamiltonian::build_fermionic(&l, &c)),
                HamForm::Pauli => to_value(&hamiltonian::physical_hamiltonian(&l, &c)?.to_records()),
                HamForm::Logical => to_value(&hamiltonian::logical_hamiltonian(&l, &c)?.to_records()),
                HamForm::Boson => to_value(&hamiltonian::to_bosonic(&hamiltonian::logical_hamiltonian(&l, &c)?, true)?),
            };
            emit_json(
                out.as_deref(),
                &json!({"form": form_name, "dims": lattice.dims, "couplings": c, "terms": terms}),
            )?;
            Ok(true)
        }
        HamCmd::Verify {
            lattice,
            couplings,
            out,
        } => {
            let l = Lattice::new(&lattice.dims)?;
            let c = couplings.couplings()?;
            let violations = checks::gauge_violations(&l, &c)?;
            let duality = checks::duality(&l, &c)?;
            let boson = checks::boson_error(&l, &c)?;
            let passed = violations == 0
                && duality.spectrum_gap <= tolerances::SPECTRUM
                && duality.matrix_error <= tolerances::SPECTRUM
                && boson <= tolerances::EXACT_MATRIX;
            emit_json(
                out.as_deref(),
                &json!({
                    "dims": lattice.dims,
                    "couplings": c,
                    "gauge_violations": violations,
                    "duality": duality,
                    "boson_error": boson,
                    "passed": passed,
                }),
            )?;
            Ok(passed)
        }
    }
}

fn evolve_cmd(cmd: EvolveCmd) -> Result<bool> {
    let start = Instant::now();
    match cmd {
        EvolveCmd::Trotter {
            lattice,
            couplings,
            t,
            steps,
            order,
            out,
        } => {
            let h = hamiltonian::logical_hamiltonian(&Lattice::new(&lattice.dims)?, &couplings.couplings()?)?;
            let circuit = trotter_circuit(&h, t, steps, order)?;
            let u = circuit.unitary()?;
            let error = dense::spectral_norm(&(&u - gauss_qec::statevector::exact_evolve(&h, t)?));
            let lowered = lower_to_clifford(&circuit)?;
            let clifford = check_clifford(&lowered).passed;
            emit_json(
                out.as_deref(),
                &json!({
                    "t": t,
                    "steps": steps,
                    "order": order,
                    "gates": circuit.gates.len(),
                    "error_norm": error,
                    "lowered_qubits": lowered.n_qubits,
                    "lowered_clifford": clifford,
                    "wall_clock_seconds": start.elapsed().as_secs_f64(),
                }),
            )?;
            Ok(clifford)
        }
        EvolveCmd::LcuCheck {
            lattice,
            couplings,
            out,
        } => {
            let oracles = LcuOracles::from_lattice(&Lattice::new(&lattice.dims)?, &couplings.couplings()?)?;
            let rep = oracles.report()?;
            let clifford = check_clifford(&oracles.select_circuit()).passed;
            let passed = rep.dense_error <= tolerances::SPECTRUM
                && rep.gate_error.is_none_or(|g| g <= tolerances::SPECTRUM)
                && (rep.prep_norm - 1.0).abs() <= tolerances::PREP_NORM
                && clifford;
            let mut v = to_value(&rep);
            v["select_clifford"] = json!(clifford);
            v["passed"] = json!(passed);
            v["wall_clock_seconds"] = json!(start.elapsed().as_secs_f64());
            emit_json(out.as_deref(), &v)?;
            Ok(passed)
        }
        EvolveCmd::OaaCheck { pauli, t, out } => {
            let p: PauliString = pauli.parse()?;
            let circuit = oaa_exp_pauli(t, &p)?;
            let pm = dense::pauli_matrix(&p)?;
            let target = dense::identity(pm.nrows()) * dense::ONE.scale(t.cos()) + pm * dense::I.scale(t.sin());
            let rep = gadget_report(&circuit, &target, 0)?;
            let block_error = dense::phase_aligned_distance(&success_block(&circuit)?, &target)?;
            let clifford = check_clifford(&circuit).passed;
            let tol = tolerances::PROBABILITY;
            let passed = (rep.success_min - 1.0).abs() <= tol
                && (rep.success_max - 1.0).abs() <= tol
                && rep.overlap >= 1.0 - tol
                && clifford;
            let mut v = to_value(&rep);
            v["pauli"] = json!(p.to_string());
            v["t"] = json!(t);
            v["block_error_norm"] = json!(block_error);
            v["clifford"] = json!(clifford);
            v["passed"] = json!(passed);
            v["wall_clock_seconds"] = json!(start.elapsed().as_secs_f64());
            emit_json(out.as_deref(), &v)?;
            Ok(passed)
        }
    }
}

fn suite_cmd(cmd: SuiteCmd) -> Result<bool> {
    let SuiteCmd::Acceptance { format, out } = cmd;
    let results = acceptance_suite();
    let passed = results.iter().all(|r| r.passed);
    let text = match format {
        Format::Json => serde_json::to_string_pretty(&results).map_err(|e| Error::Invalid(e.to_string()))?,
        Format::Csv => {
            let mut s = String::from("id,name,passed,seconds,budget_seconds\n");
            for r in &results {
                s.push_str(&format!("{},{},{},{},{}\n", r.id, r.name, r.passed, r.seconds, r.budget_seconds));
            }
            s
        }
        Format::Text => {
            let mut s: String = results.iter().map(|r| format!("{r}\n")).collect();
            let ok = results.iter().filter(|r| r.passed).count();
            s.push_str(&format!("acceptance: {ok} passed, {} failed\n", results.len() - ok));
            s
        }
    };
    emit(out.as_deref(), &text)?;
    Ok(passed)
}

fn run_cmd(config: &Path, format: Format, out: Option<&Path>) -> Result<bool> {
    let text = fs::read_to_string(config).map_err(|e| Error::Config(format!("cannot read {}: {e}", config.display())))?;
    let cfg = ExperimentConfig::from_json_str(&text)?;
    let records = experiment::run(&cfg)?;
    for (path, f) in [
        (&cfg.output.json, ReportFormat::Json),
        (&cfg.output.csv, ReportFormat::Csv),
        (&cfg.output.text, ReportFormat::Text),
    ] {
        if let Some(path) = path {
            emit(Some(path), &report(&records, f)?)?;
        }
    }
    emit(out, &report(&records, format.into())?)?;
    Ok(records.iter().all(|r| r.passed))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Code(c) => code_cmd(c),
        Command::Ham(c) => ham_cmd(c),
        Command::Evolve(c) => evolve_cmd(c),
        Command::Suite(c) => suite_cmd(c),
        Command::Run { config, format, out } => run_cmd(&config, format, out.as_deref()),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
