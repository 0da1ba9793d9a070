//! The verification suite: samples admissible points per identity (and per
//! invariant form x generator), verifies, and aggregates per-row reports.
//!
//! Work is organized as independent (row, sample) tasks with RNG streams
//! derived from (seed, row label, sample id), so results are deterministic
//! regardless of execution order and the tasks can run on any worker pool.

use num_complex::Complex64;
use serde::Serialize;

use super::entries::catalog;
use super::eval::verify_at;
use super::invariant::{invariant_forms, verify_invariant};
use super::model::TransformIdentity;
use super::sampler::{sample_admissible, sample_family, task_rng, SampleBounds};
use crate::bracket::{BracketClass, EllipticParams};
use crate::error::{Error, Result};

/// Suite-wide configuration.
#[derive(Debug, Clone)]
pub struct SuiteConfig {
    /// RNG seed; identical seeds give identical reports.
    pub seed: u64,
    /// Samples per identity (and per invariant generator).
    pub samples: usize,
    /// Dimension/degree bounds for the sampler.
    pub bounds: SampleBounds,
    /// Theta-class nome; samples cycle through the three bracket classes.
    pub nome: Complex64,
    /// The shift constant.
    pub delta: Complex64,
    /// Relative tolerance for elliptic residuals.
    pub tolerance: f64,
    /// Optional glob over identity names.
    pub filter: Option<String>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 42,
            samples: 100,
            bounds: SampleBounds::default(),
            nome: Complex64::new(0.2, 0.0),
            delta: Complex64::new(0.31, 0.07),
            tolerance: 1e-8,
            filter: None,
        }
    }
}

/// Simple glob matcher supporting `*` and `?`.
pub fn glob_match(pattern: &str, name: &str) -> bool {
    fn rec(p: &[u8], n: &[u8]) -> bool {
        match (p.first(), n.first()) {
            (None, None) => true,
            (Some(b'*'), _) => {
                rec(&p[1..], n) || (!n.is_empty() && rec(p, &n[1..]))
            }
            (Some(b'?'), Some(_)) => rec(&p[1..], &n[1..]),
            (Some(a), Some(b)) if a == b => rec(&p[1..], &n[1..]),
            _ => false,
        }
    }
    rec(pattern.as_bytes(), name.as_bytes())
}

/// The bracket class used for a given sample index (classes cycle so every
/// identity is exercised across all three).
pub fn class_for_sample(cfg: &SuiteConfig, sample_id: usize) -> Result<EllipticParams> {
    let class = match sample_id % 3 {
        0 => BracketClass::theta(cfg.nome)?,
        1 => BracketClass::Trigonometric,
        _ => BracketClass::Rational,
    };
    EllipticParams::new(cfg.delta, class)
}

/// Outcome of a single (row, sample) task.
#[derive(Debug, Clone, Serialize)]
pub struct TaskOutcome {
    /// Row label (identity name, or `form[generator]`).
    pub row: String,
    /// Sample index.
    pub sample_id: usize,
    /// Residual (0 for exact passes).
    pub residual: f64,
    /// Pass flag.
    pub pass: bool,
    /// Present when the sample errored rather than verified.
    pub error: Option<String>,
}

/// A schedulable unit: one identity (or invariant generator) at one sample.
#[derive(Debug, Clone)]
pub enum SuiteTask {
    /// Verify one identity at one sampled point.
    Identity {
        /// The catalog entry.
        identity: TransformIdentity,
        /// Sample index.
        sample_id: usize,
    },
    /// Verify one invariant form under one generator at one sampled point.
    Invariant {
        /// Form name.
        form: &'static str,
        /// Generator name.
        generator: &'static str,
        /// Sample index.
        sample_id: usize,
    },
}

impl SuiteTask {
    /// Row label the task aggregates under.
    pub fn row(&self) -> String {
        match self {
            SuiteTask::Identity { identity, .. } => identity.name.to_string(),
            SuiteTask::Invariant {
                form, generator, ..
            } => format!("{form}[{generator}]"),
        }
    }

    /// Sample index.
    pub fn sample_id(&self) -> usize {
        match self {
            SuiteTask::Identity { sample_id, .. } | SuiteTask::Invariant { sample_id, .. } => {
                *sample_id
            }
        }
    }

    /// Runs the task; errors that reflect sampling trouble are folded into
    /// the outcome rather than propagated.
    pub fn run(&self, cfg: &SuiteConfig) -> TaskOutcome {
        let run_inner = || -> Result<(f64, bool)> {
            let sample_id = self.sample_id();
            let ep = class_for_sample(cfg, sample_id)?;
            match self {
                SuiteTask::Identity {
                    identity,
                    sample_id,
                } => {
                    let mut rng =
                        task_rng(cfg.seed, identity.name, *sample_id as u64);
                    let res = sample_admissible(
                        &mut rng,
                        cfg.bounds,
                        sample_family(identity),
                        ep,
                        |pt| verify_at(identity, pt, cfg.tolerance),
                    )?;
                    Ok((res.residual.as_f64(), res.pass))
                }
                SuiteTask::Invariant {
                    form,
                    generator,
                    sample_id,
                } => {
                    let forms = invariant_forms();
                    let f = forms
                        .iter()
                        .find(|f| f.name == *form)
                        .ok_or_else(|| Error::UnknownGenerator(form.to_string()))?;
                    let mut rng = task_rng(
                        cfg.seed,
                        &format!("{form}[{generator}]"),
                        *sample_id as u64,
                    );
                    let res = sample_admissible(&mut rng, cfg.bounds, f.family, ep, |pt| {
                        verify_invariant(f, pt, generator, cfg.tolerance)
                    })?;
                    Ok((res.residual.as_f64(), res.pass))
                }
            }
        };
        match run_inner() {
            Ok((residual, pass)) => TaskOutcome {
                row: self.row(),
                sample_id: self.sample_id(),
                residual,
                pass,
                error: None,
            },
            Err(e) => TaskOutcome {
                row: self.row(),
                sample_id: self.sample_id(),
                residual: f64::INFINITY,
                pass: false,
                error: Some(e.to_string()),
            },
        }
    }
}

/// Builds the task list for the configured suite (identities matching the
/// filter, plus every invariant-form generator when unfiltered or matched).
pub fn suite_tasks(cfg: &SuiteConfig) -> Vec<SuiteTask> {
    let mut tasks = Vec::new();
    let matches = |name: &str| match &cfg.filter {
        Some(pat) => glob_match(pat, name),
        None => true,
    };
    for identity in catalog() {
        if matches(identity.name) {
            for sample_id in 0..cfg.samples {
                tasks.push(SuiteTask::Identity {
                    identity: identity.clone(),
                    sample_id,
                });
            }
        }
    }
    for form in invariant_forms() {
        for (gen, _, _) in &form.generators {
            let row = format!("{}[{}]", form.name, gen);
            if matches(&row) || matches(form.name) {
                for sample_id in 0..cfg.samples {
                    tasks.push(SuiteTask::Invariant {
                        form: form.name,
                        generator: gen,
                        sample_id,
                    });
                }
            }
        }
    }
    tasks
}

/// Aggregated per-row report.
#[derive(Debug, Clone, Serialize)]
pub struct RowReport {
    /// Row label.
    pub row: String,
    /// Samples attempted.
    pub samples: usize,
    /// Samples that verified.
    pub passes: usize,
    /// Samples that failed or errored.
    pub failures: usize,
    /// Worst residual over passing and failing samples.
    pub worst_residual: f64,
    /// First error message, when any sample errored.
    pub first_error: Option<String>,
    /// All samples passed.
    pub pass: bool,
}

/// Aggregates task outcomes, ordered by (row-first-seen, sample id).
pub fn aggregate(tasks: &[SuiteTask], mut outcomes: Vec<TaskOutcome>) -> Vec<RowReport> {
    outcomes.sort_by(|a, b| a.row.cmp(&b.row).then(a.sample_id.cmp(&b.sample_id)));
    let mut order: Vec<String> = Vec::new();
    for t in tasks {
        let r = t.row();
        if !order.contains(&r) {
            order.push(r);
        }
    }
    order
        .into_iter()
        .map(|row| {
            let rows: Vec<&TaskOutcome> =
                outcomes.iter().filter(|o| o.row == row).collect();
            let passes = rows.iter().filter(|o| o.pass).count();
            let failures = rows.len() - passes;
            let worst = rows
                .iter()
                .map(|o| if o.residual.is_finite() { o.residual } else { 1.0 })
                .fold(0.0f64, f64::max);
            let first_error = rows.iter().find_map(|o| o.error.clone());
            RowReport {
                row,
                samples: rows.len(),
                passes,
                failures,
                worst_residual: worst,
                first_error,
                pass: failures == 0 && !rows.is_empty(),
            }
        })
        .collect()
}

/// Sequential convenience runner.
pub fn run_verify_suite(cfg: &SuiteConfig) -> Vec<RowReport> {
    let tasks = suite_tasks(cfg);
    let outcomes: Vec<TaskOutcome> = tasks.iter().map(|t| t.run(cfg)).collect();
    aggregate(&tasks, outcomes)
}

/// Verifies a deliberately tampered identity to prove the harness detects
/// broken prefactors (negative control used by tests).
pub fn negative_control(cfg: &SuiteConfig) -> Result<bool> {
    let mut broken = super::entries::lookup("d1st1").expect("catalog entry");
    // Corrupt one prefactor numerator atom: [d2 - a1] -> [d2 + a1].
    let mut pf = broken.prefactor.clone();
    pf.global_num[0] = super::model::parse_expr(broken.family, "d2 + a1");
    broken.prefactor = pf;
    let ep = class_for_sample(cfg, 0)?;
    let mut rng = task_rng(cfg.seed, "negative-control", 0);
    let res = sample_admissible(&mut rng, cfg.bounds, broken.family, ep, |pt| {
        verify_at(&broken, pt, cfg.tolerance)
    })?;
    Ok(!res.pass)
}
