//! Empirical resolution of the ambiguous prefactor tokens in the
//! rectangular/triangular sources.
//!
//! Four formulas carry tokens that are ambiguous in print: a bare `e`
//! (where the parameter list has `e1` and `e2`) in three rectangular
//! prefactors and one triangular one, and a fused `d x_i` in one
//! per-variable denominator. Every candidate reading is tested at exact
//! random points; a row resolves UNIQUE when exactly one reading passes
//! everywhere, and stays OPEN otherwise (a reading is never guessed).

use serde::Serialize;

use super::entries::lookup;
use super::eval::{verify_at, SamplePoint};
use super::model::{parse_expr, parse_pervar, Prefactor, TransformIdentity};
use super::point::{eval_rat_point, RatPoint};
use super::sampler::{sample_admissible, task_rng, SampleBounds};
use crate::bracket::EllipticParams;
use crate::error::{Error, Result};

/// Outcome for a single candidate reading.
#[derive(Debug, Clone, Serialize)]
pub struct CandidateOutcome {
    /// Human-readable form of the reading.
    pub reading: String,
    /// Samples at which the identity held exactly.
    pub passes: usize,
    /// Samples tested.
    pub samples: usize,
}

/// One row of the typo-resolution report.
#[derive(Debug, Clone, Serialize)]
pub struct TypoResolution {
    /// Formula the ambiguity lives in.
    pub formula: String,
    /// Description of the ambiguous token(s).
    pub token: String,
    /// Every candidate with its score.
    pub candidates: Vec<CandidateOutcome>,
    /// The winning reading, when exactly one passes everywhere.
    pub resolved: Option<String>,
    /// "UNIQUE" or "OPEN".
    pub status: String,
    /// Set when the sample count is too small to be conclusive.
    pub low_confidence: bool,
}

struct Site {
    formula: &'static str,
    token: &'static str,
    /// Candidate label plus a prefactor-rewriting closure.
    variants: Vec<(String, Prefactor)>,
}

fn with_global_den0(base: &TransformIdentity, expr: &str) -> Prefactor {
    let mut pf = base.prefactor.clone();
    pf.global_den[0] = parse_expr(base.family, expr);
    pf
}

fn sites() -> Vec<Site> {
    let ias2 = lookup("ias2").expect("catalog entry");
    let iars2 = lookup("iars2").expect("catalog entry");
    let iars3 = lookup("iars3").expect("catalog entry");
    let las1 = lookup("las1").expect("catalog entry");
    vec![
        Site {
            formula: "ias2",
            token: "bare e in [d+e-a1-a2-c]",
            variants: vec![
                (
                    "e = e1".into(),
                    with_global_den0(&ias2, "d + e1 - a1 - a2 - c"),
                ),
                (
                    "e = e2".into(),
                    with_global_den0(&ias2, "d + e2 - a1 - a2 - c"),
                ),
                (
                    "e = e1+e2".into(),
                    with_global_den0(&ias2, "d + e1 + e2 - a1 - a2 - c"),
                ),
                (
                    "e = e1+e2-a2-c".into(),
                    with_global_den0(&ias2, "d + e1 + e2 - a1 - 2a2 - 2c"),
                ),
            ],
        },
        Site {
            formula: "iars2",
            token: "bare e in [d+e-a1-a2-c]",
            variants: vec![
                (
                    "e = e1".into(),
                    with_global_den0(&iars2, "d + e1 - a1 - a2 - c"),
                ),
                (
                    "e = e2".into(),
                    with_global_den0(&iars2, "d + e2 - a1 - a2 - c"),
                ),
                (
                    "e = e1+e2".into(),
                    with_global_den0(&iars2, "d + e1 + e2 - a1 - a2 - c"),
                ),
            ],
        },
        Site {
            formula: "iars3",
            token: "bare e in [d+e-a1-a2-c] and fused [d x_i]",
            variants: {
                let mut out = Vec::new();
                for (elabel, eexpr) in [
                    ("e = e1", "d + e1 - a1 - a2 - c"),
                    ("e = e2", "d + e2 - a1 - a2 - c"),
                    ("e = e1+e2", "d + e1 + e2 - a1 - a2 - c"),
                ] {
                    for (dlabel, dexpr) in [("[d x] = d+x", "d + x"), ("[d x] = d-x", "d - x")]
                    {
                        let mut pf = with_global_den0(&iars3, eexpr);
                        pf.pervar_den[0] = parse_pervar(iars3.family, dexpr);
                        out.push((format!("{elabel}, {dlabel}"), pf));
                    }
                }
                out
            },
        },
        Site {
            formula: "las1",
            token: "bare e in [e, ...]",
            variants: vec![
                ("e = e1".into(), with_global_den0(&las1, "e1")),
                ("e = e2".into(), with_global_den0(&las1, "e2")),
                ("e = e1+e2".into(), with_global_den0(&las1, "e1 + e2")),
            ],
        },
    ]
}

/// Tests every candidate reading of every flagged site at `samples` exact
/// points each and reports which (if any) uniquely validates.
pub fn resolve_typos(
    samples: usize,
    seed: u64,
    ep: EllipticParams,
    bounds: SampleBounds,
) -> Result<Vec<TypoResolution>> {
    let mut rows = Vec::new();
    for site in sites() {
        let base = lookup(site.formula).expect("catalog entry");
        let mut passes = vec![0usize; site.variants.len()];
        let mut rng = task_rng(seed, &format!("typos:{}", site.formula), 0);
        for _ in 0..samples {
            // A point is admissible when both series evaluate cleanly; the
            // ambiguity is confined to the prefactor, so all candidates
            // are judged at the same points.
            let pt: RatPoint = sample_admissible(&mut rng, bounds, base.family, ep, |pt| {
                let SamplePoint::Rat(p) = pt else {
                    return Err(Error::Constraint("rational point expected".into()));
                };
                eval_rat_point(p)?;
                let (img, _) = super::eval::apply_rat(&base, p)?;
                eval_rat_point(&img)?;
                Ok(p.clone())
            })?;
            for (i, (_, pf)) in site.variants.iter().enumerate() {
                let mut candidate = base.clone();
                candidate.prefactor = pf.clone();
                match verify_at(&candidate, &SamplePoint::Rat(pt.clone()), 0.0) {
                    Ok(res) if res.pass => passes[i] += 1,
                    _ => {}
                }
            }
        }
        let candidates: Vec<CandidateOutcome> = site
            .variants
            .iter()
            .zip(&passes)
            .map(|((label, _), &p)| CandidateOutcome {
                reading: label.clone(),
                passes: p,
                samples,
            })
            .collect();
        let winners: Vec<&CandidateOutcome> =
            candidates.iter().filter(|c| c.passes == samples).collect();
        let (resolved, status) = if winners.len() == 1 {
            (Some(winners[0].reading.clone()), "UNIQUE".to_string())
        } else {
            (None, "OPEN".to_string())
        };
        rows.push(TypoResolution {
            formula: site.formula.to_string(),
            token: site.token.to_string(),
            candidates,
            resolved,
            status,
            low_confidence: samples < 10,
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bracket::BracketClass;
    use num_complex::Complex64;

    fn default_ep() -> EllipticParams {
        EllipticParams::new(
            Complex64::new(0.31, 0.07),
            BracketClass::theta(Complex64::new(0.2, 0.0)).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn all_four_sites_resolve_uniquely_to_e1_readings() {
        let rows = resolve_typos(12, 4242, default_ep(), SampleBounds::default()).unwrap();
        assert_eq!(rows.len(), 4);
        for row in &rows {
            assert_eq!(row.status, "UNIQUE", "{row:?}");
            let win = row.resolved.as_ref().unwrap();
            assert!(win.starts_with("e = e1"), "{}: {win}", row.formula);
            // Losing readings essentially never validate on exact points.
            for c in &row.candidates {
                if Some(&c.reading) != row.resolved.as_ref() {
                    assert_eq!(c.passes, 0, "{}: {c:?}", row.formula);
                }
            }
        }
        // The fused token resolves to d + x_i.
        let iars3 = rows.iter().find(|r| r.formula == "iars3").unwrap();
        assert_eq!(iars3.resolved.as_deref(), Some("e = e1, [d x] = d+x"));
    }

    #[test]
    fn low_sample_counts_are_flagged() {
        let rows = resolve_typos(1, 7, default_ep(), SampleBounds::default()).unwrap();
        assert!(rows.iter().all(|r| r.low_confidence));
    }
}
