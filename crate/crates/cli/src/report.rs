//! The versioned JSON report emitted by every subcommand.

use serde::Serialize;

use hypersym_core::catalog::{RowReport, SuiteConfig, TypoResolution};
use hypersym_core::coxeter::GroupTable;

/// Schema version of the report body.
pub const REPORT_SCHEMA_VERSION: u32 = 1;

/// Echo of the effective configuration (no timestamps, so identical
/// configurations produce byte-identical bodies).
#[derive(Debug, Clone, Serialize)]
pub struct ConfigEcho {
    seed: u64,
    samples: usize,
    n_max: u32,
    m_max: u32,
    n_cap_rat: u32,
    n_cap_ell: u32,
    nome: String,
    delta: String,
    tolerance: f64,
    filter: Option<String>,
}

impl ConfigEcho {
    fn from(cfg: &SuiteConfig) -> Self {
        ConfigEcho {
            seed: cfg.seed,
            samples: cfg.samples,
            n_max: cfg.bounds.n_max,
            m_max: cfg.bounds.m_max,
            n_cap_rat: cfg.bounds.n_cap_rat,
            n_cap_ell: cfg.bounds.n_cap_ell,
            nome: format!("{}", cfg.nome),
            delta: format!("{}", cfg.delta),
            tolerance: cfg.tolerance,
            filter: cfg.filter.clone(),
        }
    }
}

/// The report body.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    /// Schema version.
    pub schema_version: u32,
    /// Subcommand that produced the report.
    pub command: String,
    /// Effective configuration.
    pub config: ConfigEcho,
    /// Per-identity/per-invariant rows (verify).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub results: Option<Vec<RowReport>>,
    /// Group certification table (groups).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub groups: Option<GroupTable>,
    /// Typo-resolution rows (typos).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub typos: Option<Vec<TypoResolution>>,
    /// "pass" when every check succeeded, "fail" otherwise.
    pub overall: String,
}

impl Report {
    fn base(command: &str, cfg: &SuiteConfig, pass: bool) -> Report {
        Report {
            schema_version: REPORT_SCHEMA_VERSION,
            command: command.to_string(),
            config: ConfigEcho::from(cfg),
            results: None,
            groups: None,
            typos: None,
            overall: if pass { "pass" } else { "fail" }.to_string(),
        }
    }

    /// Verify-suite report.
    pub fn verify(cfg: &SuiteConfig, rows: Vec<RowReport>, pass: bool) -> Report {
        Report {
            results: Some(rows),
            ..Report::base("verify", cfg, pass)
        }
    }

    /// Group-certification report.
    pub fn groups(cfg: &SuiteConfig, table: GroupTable, pass: bool) -> Report {
        Report {
            groups: Some(table),
            ..Report::base("groups", cfg, pass)
        }
    }

    /// Typo-resolution report.
    pub fn typos(cfg: &SuiteConfig, rows: Vec<TypoResolution>, pass: bool) -> Report {
        Report {
            typos: Some(rows),
            ..Report::base("typos", cfg, pass)
        }
    }
}
