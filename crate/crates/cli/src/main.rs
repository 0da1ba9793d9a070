//! Command-line front end: run identity suites, group certifications,
//! single evaluations and typo resolution, emitting machine-readable JSON
//! reports.
//!
//! Exit codes: 0 all checks passed, 1 any verification failure or runtime
//! error, 2 usage/configuration error.

mod evalcmd;
mod report;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use rayon::prelude::*;

use hypersym_core::catalog::{
    aggregate, resolve_typos, suite_tasks, SampleBounds, SuiteConfig, TaskOutcome,
};
use hypersym_core::coxeter::certify_all_groups;

use report::Report;

#[derive(Parser)]
#[command(
    name = "hypersym",
    about = "Evaluate and machine-certify hypergeometric series transformations and their symmetry groups",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct RunConfig {
    /// RNG seed; identical seed and configuration give a byte-identical
    /// report body.
    #[arg(long, default_value_t = 42)]
    seed: u64,

    /// Samples per identity (and per invariant-form generator).
    #[arg(long, default_value_t = 100)]
    samples: usize,

    /// Maximum dimension of multivariate sums.
    #[arg(long = "n-max", default_value_t = 3)]
    n_max: u32,

    /// Maximum per-variable termination bound m_i.
    #[arg(long = "m-max", default_value_t = 3)]
    m_max: u32,

    /// Maximum total degree N (ordinary families).
    #[arg(long = "N-max", default_value_t = 6)]
    n_cap_rat: u32,

    /// Maximum total degree N (elliptic families).
    #[arg(long = "N-max-elliptic", default_value_t = 4)]
    n_cap_ell: u32,

    /// Theta nome, |nome| < 1 (e.g. "0.2" or "0.2+0.1i").
    #[arg(long, default_value = "0.2+0i")]
    nome: String,

    /// Shift constant delta (e.g. "0.31+0.07i").
    #[arg(long, default_value = "0.31+0.07i")]
    delta: String,

    /// Relative tolerance for elliptic residuals, in (0, 1e-2].
    #[arg(long = "tol", default_value_t = 1e-8)]
    tolerance: f64,

    /// Glob over identity names (e.g. "ias*" or "T(?,0)").
    #[arg(long)]
    filter: Option<String>,

    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    out: Option<std::path::PathBuf>,

    /// Worker threads for the verification suite; the HYPERSYM_JOBS
    /// environment variable overrides this flag.
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full transformation-identity suite (or a filtered subset).
    Verify(RunConfig),
    /// Certify group orders, relations, double cosets and correspondences.
    Groups(RunConfig),
    /// Evaluate a single series.
    Eval {
        /// Series family: 4f3 | an4f3 | 10e9 | enm | hardy.
        family: String,
        /// Inline JSON parameters (see the README for per-family schemas).
        #[arg(long)]
        params: Option<String>,
        /// Read JSON parameters from a file.
        #[arg(long)]
        params_file: Option<std::path::PathBuf>,
        #[command(flatten)]
        cfg: RunConfig,
    },
    /// Resolve the ambiguous source tokens empirically.
    Typos(RunConfig),
}

fn parse_complex(text: &str) -> Result<Complex64, String> {
    let t = text.trim().replace(' ', "");
    if let Ok(z) = t.parse::<Complex64>() {
        return Ok(z);
    }
    if let Ok(re) = t.parse::<f64>() {
        return Ok(Complex64::new(re, 0.0));
    }
    Err(format!("cannot parse complex number from {text:?}"))
}

/// Validated runtime configuration.
struct Validated {
    suite: SuiteConfig,
    out: Option<std::path::PathBuf>,
    jobs: Option<usize>,
}

fn validate(cfg: &RunConfig, needs_samples: bool) -> Result<Validated, String> {
    if needs_samples && cfg.samples == 0 {
        return Err("--samples must be positive".into());
    }
    if cfg.n_max == 0 || cfg.m_max == 0 || cfg.n_cap_rat == 0 || cfg.n_cap_ell == 0 {
        return Err("dimension and degree bounds must be positive".into());
    }
    if !(cfg.tolerance > 0.0 && cfg.tolerance <= 1e-2) {
        return Err("--tol must lie in (0, 1e-2]".into());
    }
    let nome = parse_complex(&cfg.nome)?;
    if nome.norm() >= 1.0 {
        return Err("|nome| must be < 1".into());
    }
    let delta = parse_complex(&cfg.delta)?;
    let jobs = match std::env::var("HYPERSYM_JOBS") {
        Ok(v) => Some(
            v.parse::<usize>()
                .map_err(|_| format!("HYPERSYM_JOBS must be an integer, got {v:?}"))?,
        ),
        Err(_) => cfg.jobs,
    };
    if jobs == Some(0) {
        return Err("--jobs must be positive".into());
    }
    Ok(Validated {
        suite: SuiteConfig {
            seed: cfg.seed,
            samples: cfg.samples,
            bounds: SampleBounds {
                n_max: cfg.n_max,
                m_max: cfg.m_max,
                n_cap_rat: cfg.n_cap_rat,
                n_cap_ell: cfg.n_cap_ell,
                retries: 1000,
            },
            nome,
            delta,
            tolerance: cfg.tolerance,
            filter: cfg.filter.clone(),
        },
        out: cfg.out.clone(),
        jobs,
    })
}

fn emit(report: &Report, out: &Option<std::path::PathBuf>) -> Result<(), String> {
    let body = serde_json::to_string_pretty(report).map_err(|e| e.to_string())?;
    match out {
        Some(path) => std::fs::write(path, body.as_bytes())
            .map_err(|e| format!("cannot write {}: {e}", path.display()))?,
        None => println!("{body}"),
    }
    Ok(())
}

fn cmd_verify(v: &Validated) -> Result<bool, String> {
    // Validate the bracket configuration up front (a non-generic delta is
    // a configuration error, not a verification failure).
    for k in 0..3 {
        hypersym_core::catalog::class_for_sample(&v.suite, k).map_err(|e| e.to_string())?;
    }
    let tasks = suite_tasks(&v.suite);
    let outcomes: Vec<TaskOutcome> = match v.jobs {
        Some(jobs) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(jobs)
                .build()
                .map_err(|e| e.to_string())?;
            pool.install(|| tasks.par_iter().map(|t| t.run(&v.suite)).collect())
        }
        None => tasks.par_iter().map(|t| t.run(&v.suite)).collect(),
    };
    let rows = aggregate(&tasks, outcomes);
    let pass = !rows.is_empty() && rows.iter().all(|r| r.pass);
    let report = Report::verify(&v.suite, rows, pass);
    emit(&report, &v.out)?;
    Ok(pass)
}

fn cmd_groups(v: &Validated) -> Result<bool, String> {
    let table = certify_all_groups().map_err(|e| e.to_string())?;
    let pass = table.pass;
    let report = Report::groups(&v.suite, table, pass);
    emit(&report, &v.out)?;
    Ok(pass)
}

fn cmd_typos(v: &Validated) -> Result<bool, String> {
    let ep = hypersym_core::catalog::class_for_sample(&v.suite, 0).map_err(|e| e.to_string())?;
    let rows = resolve_typos(v.suite.samples, v.suite.seed, ep, v.suite.bounds)
        .map_err(|e| e.to_string())?;
    if rows.iter().any(|r| r.low_confidence) {
        eprintln!(
            "warning: low confidence: only {} sample(s) per candidate",
            v.suite.samples
        );
    }
    let pass = rows.iter().all(|r| r.status == "UNIQUE");
    let report = Report::typos(&v.suite, rows, pass);
    emit(&report, &v.out)?;
    Ok(pass)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Verify(cfg) => validate(cfg, true).map(|v| cmd_verify(&v)),
        Command::Groups(cfg) => validate(cfg, false).map(|v| cmd_groups(&v)),
        Command::Typos(cfg) => validate(cfg, true).map(|v| cmd_typos(&v)),
        Command::Eval {
            family,
            params,
            params_file,
            cfg,
        } => {
            return match validate(cfg, false) {
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(2)
                }
                Ok(v) => {
                    let src = match (params, params_file) {
                        (Some(p), None) => Ok(p.clone()),
                        (None, Some(path)) => std::fs::read_to_string(path)
                            .map_err(|e| format!("cannot read {}: {e}", path.display())),
                        _ => Err("provide exactly one of --params or --params-file".to_string()),
                    };
                    let src = match src {
                        Ok(s) => s,
                        Err(e) => {
                            eprintln!("error: {e}");
                            return ExitCode::from(2);
                        }
                    };
                    match evalcmd::run(family, &src, &v.suite) {
                        Ok(()) => ExitCode::SUCCESS,
                        Err(evalcmd::EvalError::Usage(e)) => {
                            eprintln!("error: {e}");
                            ExitCode::from(2)
                        }
                        Err(evalcmd::EvalError::Runtime(e)) => {
                            eprintln!("error: {e}");
                            ExitCode::from(1)
                        }
                    }
                }
            };
        }
    };
    match result {
        Err(usage) => {
            eprintln!("error: {usage}");
            ExitCode::from(2)
        }
        Ok(Ok(true)) => ExitCode::SUCCESS,
        Ok(Ok(false)) => ExitCode::from(1),
        Ok(Err(runtime)) => {
            eprintln!("error: {runtime}");
            ExitCode::from(1)
        }
    }
}
