//! `kinetic-spectra`: eigenvalue tables, verification reports, relaxation
//! traces and coercive norms.
//!
//! Exit status: 0 success, 1 failed verification, 2 configuration or parse
//! error, 3 quadrature failure, 4 I/O error.

mod config;
mod output;
mod presets;

use clap::{Parser, Subcommand};
use config::{parse_times, CommonArgs, OperatorKind, RunConfig, DEFAULT_TIMES};
use kinetic_spectra::analysis::{coercive_norms, run_verification, VerificationConfig};
use kinetic_spectra::eigenbasis::{modes_in_grid, project_collisional_invariants};
use kinetic_spectra::io::{read_coefficients, write_coefficients, write_eigen_table, write_trace};
use kinetic_spectra::semigroup::DiagonalOperator;
use kinetic_spectra::spectra::eigenvalue_table_with;
use kinetic_spectra::{Execution, SpectralCoefficients};
use serde_json::json;
use std::io::Write;
use std::process::ExitCode;

const THREADS_ENV: &str = "KINETIC_SPECTRA_THREADS";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] kinetic_spectra::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("verification failed")]
    Failed,
}

impl CliError {
    fn exit_code(&self) -> u8 {
        use kinetic_spectra::Error as E;
        match self {
            CliError::Failed => 1,
            CliError::Config(_) => 2,
            CliError::Core(E::Quadrature { .. } | E::LimitNotConverged { .. } | E::FinitePartMismatch { .. }) => 3,
            CliError::Core(E::Io(_)) | CliError::Io(_) => 4,
            CliError::Core(_) => 2,
        }
    }

    fn to_json(&self) -> serde_json::Value {
        let kind = match self {
            CliError::Failed => "verification",
            CliError::Config(_) => "config",
            CliError::Core(kinetic_spectra::Error::Quadrature { .. }) => "quadrature",
            CliError::Core(_) => "numerical",
            CliError::Io(_) => "io",
        };
        let mut v = json!({ "error": kind, "message": self.to_string(), "exit_code": self.exit_code() });
        if let CliError::Core(kinetic_spectra::Error::Quadrature {
            context,
            achieved,
            target,
        }) = self
        {
            v["context"] = json!(context);
            v["achieved_error"] = json!(achieved);
            v["target_error"] = json!(target);
        }
        v
    }
}

#[derive(Parser, Debug)]
#[command(name = "kinetic-spectra", version, about = "Spectra of linearized Landau and non-cutoff Boltzmann operators")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Eigenvalue table for every mode in the grid.
    Eigs {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Run the verification battery; exits 1 if any check fails.
    Verify {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Relaxation trace of e^{-tL} applied to initial coefficients.
    Evolve {
        #[command(flatten)]
        common: CommonArgs,
        /// Comma-separated sample times.
        #[arg(long)]
        times: Option<String>,
        /// Coefficient CSV file or `preset:NAME`.
        #[arg(long)]
        initial: Option<String>,
        #[arg(long, value_enum)]
        operator: Option<OperatorKind>,
    },
    /// Dirichlet form and the comparison norms of initial coefficients.
    Norms {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long)]
        initial: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if !matches!(e, CliError::Failed) {
                eprintln!("error: {e}");
                eprintln!("{}", e.to_json());
            }
            ExitCode::from(e.exit_code())
        }
    }
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(value) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let threads: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Config(format!("{THREADS_ENV} must be a positive integer, got {value:?}")))?;
    #[cfg(feature = "parallel")]
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::Config(format!("thread pool: {e}")))?;
    #[cfg(not(feature = "parallel"))]
    let _ = threads;
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    configure_threads()?;
    match cli.command {
        Command::Eigs { common } => cmd_eigs(&RunConfig::resolve(&common)?),
        Command::Verify { common } => cmd_verify(&RunConfig::resolve(&common)?),
        Command::Evolve {
            common,
            times,
            initial,
            operator,
        } => {
            let cfg = RunConfig::resolve(&common)?;
            let times = match times {
                Some(t) => parse_times(&t)?,
                None => cfg.file.times.clone().unwrap_or_else(|| DEFAULT_TIMES.to_vec()),
            };
            let operator = operator.or(cfg.file.operator).unwrap_or(OperatorKind::Boltzmann);
            let initial = load_initial(&cfg, initial)?;
            cmd_evolve(&cfg, &initial, operator, &times)
        }
        Command::Norms { common, initial } => {
            let cfg = RunConfig::resolve(&common)?;
            let initial = load_initial(&cfg, initial)?;
            cmd_norms(&cfg, &initial)
        }
    }
}

fn load_initial(cfg: &RunConfig, flag: Option<String>) -> Result<SpectralCoefficients, CliError> {
    let source = flag
        .or_else(|| cfg.file.initial.clone())
        .unwrap_or_else(|| "preset:bimodal".to_string());
    if let Some(name) = source.strip_prefix("preset:") {
        let level = cfg.level_max.unwrap_or(2 * cfg.nmax + cfg.lmax);
        return presets::preset(name, level, cfg.radial_nodes);
    }
    let file = std::fs::File::open(&source)
        .map_err(|e| CliError::Config(format!("cannot open initial data {source:?}: {e}")))?;
    read_coefficients(std::io::BufReader::new(file), None).map_err(|e| match e {
        kinetic_spectra::Error::Io(io) => CliError::Config(format!("cannot read {source:?}: {io}")),
        other => CliError::Config(format!("{source}: {other}")),
    })
}

fn emit(cfg: &RunConfig, name: &str, bytes: &[u8]) -> Result<(), CliError> {
    match &cfg.out {
        Some(dir) => output::write_atomic(dir, name, bytes),
        None => {
            std::io::stdout().write_all(bytes)?;
            Ok(())
        }
    }
}

fn cmd_eigs(cfg: &RunConfig) -> Result<(), CliError> {
    let modes = modes_in_grid(cfg.nmax, cfg.lmax, cfg.level_max);
    let records = match eigenvalue_table_with(Execution::default(), &modes, &cfg.kernel, cfg.tol) {
        Ok(r) => r,
        Err(e) => {
            let err = CliError::Core(e);
            if let Some(dir) = &cfg.out {
                let body = serde_json::to_vec_pretty(&err.to_json()).expect("json value");
                output::write_atomic(dir, "eigenvalues.error.json", &body)?;
            }
            return Err(err);
        }
    };
    let mut csv = Vec::new();
    write_eigen_table(&mut csv, &records)?;
    if cfg.out.is_some() {
        let sidecar = json!({
            "s": cfg.s,
            "kernel": cfg.kernel.describe(),
            "kernel_spec": cfg.kernel_spec,
            "nmax": cfg.nmax,
            "lmax": cfg.lmax,
            "level_max": cfg.level_max,
            "rows": records.len(),
            "quadrature_tolerance": cfg.tol,
            "ordering": "(2n+l, l, m) ascending",
        });
        emit(cfg, "eigenvalues.csv", &csv)?;
        emit(cfg, "eigenvalues.json", &pretty(&sidecar))?;
    } else {
        emit(cfg, "eigenvalues.csv", &csv)?;
    }
    Ok(())
}

fn pretty(v: &serde_json::Value) -> Vec<u8> {
    let mut out = serde_json::to_vec_pretty(v).expect("json value");
    out.push(b'\n');
    out
}

fn cmd_verify(cfg: &RunConfig) -> Result<(), CliError> {
    let mut vc = VerificationConfig::new(cfg.s);
    vc.n_max = cfg.nmax.max(1);
    vc.l_max = cfg.lmax.max(2);
    vc.level_max = cfg.level_max;
    let report = run_verification(&vc)?;
    println!("{report}");
    if let Some(dir) = &cfg.out {
        let value = serde_json::to_value(&report).expect("report serializes");
        output::write_atomic(dir, "verification.json", &pretty(&value))?;
    }
    if report.passed {
        Ok(())
    } else {
        Err(CliError::Failed)
    }
}

fn cmd_evolve(
    cfg: &RunConfig,
    initial: &SpectralCoefficients,
    kind: OperatorKind,
    times: &[f64],
) -> Result<(), CliError> {
    let op = DiagonalOperator::new(cfg.operator(kind), initial.modes())?;
    let rows = op.trace(initial, times)?;
    let mut csv = Vec::new();
    write_trace(&mut csv, &rows)?;
    emit(cfg, "trace.csv", &csv)?;
    if cfg.out.is_some() {
        let last = times.iter().copied().fold(0.0, f64::max);
        let final_state = op.evolve(initial, last)?;
        let mut buf = Vec::new();
        write_coefficients(&mut buf, &final_state)?;
        emit(cfg, "final_coefficients.csv", &buf)?;
        let invariants = project_collisional_invariants(initial);
        let sidecar = json!({
            "operator": op.spec().name(),
            "s": cfg.s,
            "kernel": cfg.kernel.describe(),
            "times": times,
            "conserved": invariants.iter().map(|(m, x)| json!({"n": m.n(), "l": m.l(), "m": m.m(), "coefficient": x})).collect::<Vec<_>>(),
        });
        emit(cfg, "trace.json", &pretty(&sidecar))?;
    }
    Ok(())
}

fn cmd_norms(cfg: &RunConfig, initial: &SpectralCoefficients) -> Result<(), CliError> {
    let norms = coercive_norms(initial, cfg.s, &cfg.kernel)?;
    let value = json!({
        "s": cfg.s,
        "kernel": cfg.kernel.describe(),
        "dirichlet": norms.dirichlet,
        "hs_norm": norms.hs_norm,
        "sphere_norm": norms.sphere_norm,
        "l2_norm_sq": norms.l2_norm_sq,
        "projected_ratio": norms.projected_ratio(),
        "shifted_ratio": norms.shifted_ratio(),
    });
    println!(
        "dirichlet {:.16e}\nhs_norm   {:.16e}\nsphere    {:.16e}\nratio     {:.6}",
        norms.dirichlet,
        norms.hs_norm,
        norms.sphere_norm,
        norms.projected_ratio()
    );
    if let Some(dir) = &cfg.out {
        output::write_atomic(dir, "norms.json", &pretty(&value))?;
    }
    Ok(())
}
