//! The symmetric truncated 3F2 form at unit argument
//!
//! ```text
//! 1 / (Gamma(s) Gamma(2 x4) Gamma(2 x5))
//!     * 3F2[2 x1 - s, 2 x2 - s, 2 x3 - s; 2 x4, 2 x5; 1],
//! s = x1 + x2 + x3 - x4 - x5,
//! ```
//!
//! which is a symmetric function of all five variables. The series
//! converges for s > 0; term decay is polynomial of degree s + 1, so the
//! tail estimate is checked and reported as an error.

use crate::error::{Error, Result};
use crate::gamma::gamma_real;

/// Five real variables of the symmetric form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HardyVector {
    /// The variables x1..x5.
    pub x: [f64; 5],
}

impl HardyVector {
    /// Convergence parameter `s = x1 + x2 + x3 - x4 - x5`.
    pub fn s(&self) -> f64 {
        self.x[0] + self.x[1] + self.x[2] - self.x[3] - self.x[4]
    }

    /// The same vector with coordinates permuted by `perm` (x_new[i] =
    /// x_old[perm[i]]).
    pub fn permuted(&self, perm: &[usize; 5]) -> HardyVector {
        HardyVector {
            x: [
                self.x[perm[0]],
                self.x[perm[1]],
                self.x[perm[2]],
                self.x[perm[3]],
                self.x[perm[4]],
            ],
        }
    }

    /// Worst convergence margin over every permutation of the variables:
    /// the minimum of `sum_P - sum_{P^c}` over 3-element subsets P.
    pub fn min_margin(&self) -> f64 {
        let total: f64 = self.x.iter().sum();
        let mut sorted = self.x;
        sorted.sort_by(f64::total_cmp);
        total - 2.0 * (sorted[3] + sorted[4])
    }
}

/// Evaluates the symmetric truncated 3F2 form with `terms` series terms.
///
/// Fails when the convergence margin is too small (`s <= 0.1`), when a
/// lower parameter hits a nonpositive integer within the truncation range,
/// or when the geometric tail estimate exceeds 1e-10 relative to the sum.
pub fn eval_hardy_3f2(v: &HardyVector, terms: u32) -> Result<f64> {
    if terms == 0 {
        return Err(Error::Constraint("need at least one term".into()));
    }
    let s = v.s();
    if s <= 0.1 {
        return Err(Error::Constraint(format!(
            "convergence margin s = {s} <= 0.1"
        )));
    }
    let a = [
        2.0 * v.x[0] - s,
        2.0 * v.x[1] - s,
        2.0 * v.x[2] - s,
    ];
    let d = [2.0 * v.x[3], 2.0 * v.x[4]];
    for (j, dj) in d.iter().enumerate() {
        // [d]_k vanishes when d is a nonpositive integer above -terms.
        if *dj <= 0.0 && (dj - dj.round()).abs() < 1e-9 && -dj < terms as f64 {
            return Err(Error::Pole {
                factor: format!("[2 x{}]_k with value {dj}", j + 4),
                index: format!("k = {}", 1.0 - dj),
            });
        }
    }
    let mut sum = 1.0f64;
    let mut term = 1.0f64;
    let mut prev_abs = 1.0f64;
    let mut last_ratio = 0.0f64;
    for k in 0..terms - 1 {
        let kf = k as f64;
        let num = (a[0] + kf) * (a[1] + kf) * (a[2] + kf);
        let den = (1.0 + kf) * (d[0] + kf) * (d[1] + kf);
        if den == 0.0 {
            return Err(Error::Pole {
                factor: "lower parameter".into(),
                index: format!("k = {k}"),
            });
        }
        term *= num / den;
        sum += term;
        if term != 0.0 {
            last_ratio = term.abs() / prev_abs;
            prev_abs = term.abs();
        }
    }
    // Geometric tail estimate from the final ratio.
    if term != 0.0 {
        if last_ratio >= 1.0 {
            return Err(Error::Constraint(format!(
                "series not yet decaying after {terms} terms (ratio {last_ratio})"
            )));
        }
        let tail = term.abs() * last_ratio / (1.0 - last_ratio);
        if tail > 1e-10 * sum.abs().max(1.0) {
            return Err(Error::Constraint(format!(
                "tail estimate {tail:.3e} exceeds 1e-10 relative at {terms} terms"
            )));
        }
    }
    let prefactor = gamma_real(s)? * gamma_real(d[0])? * gamma_real(d[1])?;
    Ok(sum / prefactor)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn admissible_point() -> HardyVector {
        // Near-equal variables keep every permutation's convergence margin
        // close to the common value, so 400 terms certify the tail bound
        // for the whole orbit.
        HardyVector {
            x: [10.02, 10.11, 9.97, 10.05, 9.93],
        }
    }

    #[test]
    fn symmetric_in_upper_triple() {
        let v = admissible_point();
        let base = eval_hardy_3f2(&v, 400).unwrap();
        for perm in [[1, 0, 2, 3, 4], [2, 1, 0, 3, 4], [0, 2, 1, 3, 4]] {
            let p = eval_hardy_3f2(&v.permuted(&perm), 400).unwrap();
            assert!(
                (p - base).abs() / base.abs() < 1e-9,
                "perm {perm:?}: {p} vs {base}"
            );
        }
    }

    #[test]
    fn symmetric_under_upper_lower_swap() {
        let v = admissible_point();
        let base = eval_hardy_3f2(&v, 400).unwrap();
        let swapped = eval_hardy_3f2(&v.permuted(&[3, 1, 2, 0, 4]), 400).unwrap();
        assert!((swapped - base).abs() / base.abs() < 1e-8);
    }

    #[test]
    fn degenerate_upper_parameter_collapses_to_prefactor() {
        // 2 x1 - s = 0 makes the series identically 1.
        let x2 = 1.55;
        let x3 = 1.55;
        let x4 = 1.0;
        let x5 = 1.0;
        let x1 = x2 + x3 - x4 - x5;
        let v = HardyVector {
            x: [x1, x2, x3, x4, x5],
        };
        let s = v.s();
        assert!((2.0 * x1 - s).abs() < 1e-12);
        let want = 1.0
            / (gamma_real(s).unwrap()
                * gamma_real(2.0 * x4).unwrap()
                * gamma_real(2.0 * x5).unwrap());
        let got = eval_hardy_3f2(&v, 400).unwrap();
        assert!((got - want).abs() / want.abs() < 1e-12);
    }

    #[test]
    fn marginal_input_rejected() {
        let v = HardyVector {
            x: [1.0, 1.0, 1.0, 1.5, 1.45],
        };
        assert!(v.s() <= 0.1);
        assert!(matches!(
            eval_hardy_3f2(&v, 400),
            Err(Error::Constraint(_))
        ));
    }

    #[test]
    fn slow_decay_is_reported() {
        // s just above the margin: 400 terms cannot certify 1e-10.
        let v = HardyVector {
            x: [1.0, 1.1, 1.0, 1.4, 1.0],
        };
        assert!(v.s() > 0.1);
        assert!(matches!(
            eval_hardy_3f2(&v, 400),
            Err(Error::Constraint(_))
        ));
    }
}
