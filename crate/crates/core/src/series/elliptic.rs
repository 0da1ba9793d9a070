//! Terminating balanced elliptic hypergeometric series, in one dimension
//! and in the multivariate rectangular/triangular forms.
//!
//! All values are complex doubles. Per-term relative error is budgeted at
//! 1e-12; the summed budget is reported alongside the value so identity
//! residual thresholds are defensible.

// Indexed loops mirror the parallel-array structure of the summands.
#![allow(clippy::needless_range_loop)]

use num_complex::Complex64;

use crate::bracket::EllipticParams;
use crate::error::{Error, Result};

/// Magnitude floor under which a denominator bracket counts as a pole.
pub const MAG_FLOOR: f64 = 1e-9;

/// Per-term relative error budget of the evaluators.
pub const TERM_REL_ERR: f64 = 1e-12;

/// A value together with its accumulated error budget.
#[derive(Debug, Clone, Copy)]
pub struct ValueWithBudget {
    /// The evaluated sum.
    pub value: Complex64,
    /// Absolute error budget: (sum of |term|) * per-term relative budget.
    pub error_budget: f64,
    /// Number of terms accumulated.
    pub terms: usize,
}

fn check_floor(ep: &EllipticParams, base: Complex64, len: usize, what: &str) -> Result<()> {
    for j in 0..len {
        let v = ep.bracket(base + ep.delta * j as f64)?;
        if v.norm() < MAG_FLOOR {
            return Err(Error::Pole {
                factor: format!("[[{what}]] with base {base}"),
                index: format!("shift {j}"),
            });
        }
    }
    Ok(())
}

/// General one-dimensional terminating series
///
/// ```text
/// sum_{k=0}^{n_terms} [[s + 2k delta]]/[[s]] * [[s]]_k/[[delta]]_k
///     * prod_p [[p]]_k / [[delta + s - p]]_k
/// ```
///
/// The caller includes any terminating entry (such as `-N delta`) in
/// `params` and passes the matching `n_terms`.
pub fn eval_e1d(
    s: Complex64,
    params: &[Complex64],
    n_terms: u32,
    ep: &EllipticParams,
) -> Result<ValueWithBudget> {
    let k_max = n_terms as usize;
    if ep.bracket(s)?.norm() < MAG_FLOOR {
        return Err(Error::Pole {
            factor: "[[s]]".into(),
            index: "0".into(),
        });
    }
    check_floor(ep, ep.delta, k_max, "delta + j delta")?;
    for (idx, p) in params.iter().enumerate() {
        check_floor(ep, ep.delta + s - p, k_max, &format!("delta + s - p{idx}"))?;
    }
    let bs = ep.bracket(s)?;
    let mut sum = Complex64::ZERO;
    let mut abs_sum = 0.0;
    for k in 0..=k_max {
        let mut term = ep.bracket(s + ep.delta * (2 * k) as f64)? / bs;
        term *= ep.bracket_factorial(s, k)? / ep.bracket_factorial(ep.delta, k)?;
        for p in params {
            term *= ep.bracket_factorial(*p, k)? / ep.bracket_factorial(ep.delta + s - p, k)?;
        }
        sum += term;
        abs_sum += term.norm();
    }
    Ok(ValueWithBudget {
        value: sum,
        error_budget: abs_sum * TERM_REL_ERR,
        terms: k_max + 1,
    })
}

/// Terminating balanced 10E9: parameters `(c_0..c_5, -N delta)` under the
/// balancing condition `c_0 + ... + c_5 = (2 + N) delta + 3 s`.
pub fn eval_10e9(
    s: Complex64,
    c: &[Complex64; 6],
    n_cap: u32,
    ep: &EllipticParams,
) -> Result<Complex64> {
    let sum_c: Complex64 = c.iter().sum();
    let want = ep.delta * (2.0 + n_cap as f64) + s * 3.0;
    let scale = sum_c.norm().max(want.norm()).max(1.0);
    if (sum_c - want).norm() > 1e-12 * scale {
        return Err(Error::Balancing(format!(
            "sum of c = {sum_c} but (2+N) delta + 3 s = {want}"
        )));
    }
    let mut params: Vec<Complex64> = c.to_vec();
    params.push(-ep.delta * n_cap as f64);
    Ok(eval_e1d(s, &params, n_cap, ep)?.value)
}

/// Termination pattern of the multivariate elliptic series.
#[derive(Debug, Clone, PartialEq)]
pub enum EnmTermination {
    /// `a_i = -m_i delta`: the sum runs over the box `gamma_i <= m_i`.
    Rectangular(Vec<u32>),
    /// Some `v_k = -N delta`: the sum runs over `|gamma| <= N`.
    Triangular(u32),
}

/// A fully specified multivariate elliptic series
///
/// ```text
/// sum_gamma D[x+gamma delta]/D[x]
///   * prod_i [[s + x_i + (|gamma|+gamma_i) delta]] / [[s + x_i]]
///   * prod_j [[s+x_j]]_{|gamma|} / [[delta+s-a_j+x_j]]_{|gamma|}
///       * prod_i [[a_j + x_i - x_j]]_{gamma_i} / [[delta + x_i - x_j]]_{gamma_i}
///   * prod_k [[v_k]]_{|gamma|} / [[delta+s-u_k]]_{|gamma|}
///       * prod_i [[u_k + x_i]]_{gamma_i} / [[delta + s - v_k + x_i]]_{gamma_i}
/// ```
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesEnm {
    /// Per-dimension parameters `a_1..a_n`.
    pub a: Vec<Complex64>,
    /// Variables `x_1..x_n`.
    pub x: Vec<Complex64>,
    /// The distinguished parameter `s`.
    pub s: Complex64,
    /// Length-graded upper parameters `u_1..u_m`.
    pub u: Vec<Complex64>,
    /// Length-graded lower parameters `v_1..v_m`.
    pub v: Vec<Complex64>,
    /// Bracket configuration.
    pub ep: EllipticParams,
    /// Termination pattern.
    pub termination: EnmTermination,
}

impl SeriesEnm {
    /// Dimension of the sum.
    pub fn n(&self) -> usize {
        self.x.len()
    }

    /// Checks the structural invariants tied to the termination pattern.
    fn check_termination(&self) -> Result<()> {
        if self.a.len() != self.x.len() || self.u.len() != self.v.len() {
            return Err(Error::Constraint(
                "parameter list lengths are inconsistent".into(),
            ));
        }
        match &self.termination {
            EnmTermination::Rectangular(m) => {
                if m.len() != self.n() {
                    return Err(Error::Constraint("m and x length mismatch".into()));
                }
                for (i, (&mi, ai)) in m.iter().zip(&self.a).enumerate() {
                    let want = -self.ep.delta * mi as f64;
                    if (ai - want).norm() > 1e-9 {
                        return Err(Error::Constraint(format!(
                            "rectangular termination needs a{} = -m{} delta = {want}, got {ai}",
                            i + 1,
                            i + 1
                        )));
                    }
                }
            }
            EnmTermination::Triangular(n_cap) => {
                let want = -self.ep.delta * *n_cap as f64;
                if !self.v.iter().any(|vk| (vk - want).norm() < 1e-9) {
                    return Err(Error::Constraint(format!(
                        "triangular termination needs some v_k = -N delta = {want}"
                    )));
                }
            }
        }
        Ok(())
    }

    fn axis_bound(&self, i: usize) -> u32 {
        match &self.termination {
            EnmTermination::Rectangular(m) => m[i],
            EnmTermination::Triangular(n_cap) => *n_cap,
        }
    }

    fn total_bound(&self) -> u32 {
        match &self.termination {
            EnmTermination::Rectangular(m) => m.iter().sum(),
            EnmTermination::Triangular(n_cap) => *n_cap,
        }
    }

    /// Magnitude-floor scan of every denominator bracket over the range.
    fn preflight(&self) -> Result<()> {
        let n = self.n();
        let ep = &self.ep;
        let total = self.total_bound() as usize;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    let d = self.x[i] - self.x[j];
                    if ep.bracket(d)?.norm() < MAG_FLOOR {
                        return Err(Error::Pole {
                            factor: format!("[[x{} - x{}]]", i + 1, j + 1),
                            index: "Vandermonde".into(),
                        });
                    }
                    check_floor(
                        ep,
                        ep.delta + d,
                        self.axis_bound(i) as usize,
                        &format!("delta + x{} - x{}", i + 1, j + 1),
                    )?;
                    // Vandermonde factors wander by gamma_i - gamma_j; keep
                    // them above the floor so running values stay stable.
                    for g in -(self.axis_bound(j) as i64)..=(self.axis_bound(i) as i64) {
                        let v = ep.bracket(d + ep.delta * g as f64)?;
                        if v.norm() < MAG_FLOOR {
                            return Err(Error::Pole {
                                factor: format!("[[x{} - x{} + k delta]]", i + 1, j + 1),
                                index: format!("k = {g}"),
                            });
                        }
                    }
                }
            }
            if ep.bracket(self.s + self.x[i])?.norm() < MAG_FLOOR {
                return Err(Error::Pole {
                    factor: format!("[[s + x{}]]", i + 1),
                    index: "well-poised factor".into(),
                });
            }
            check_floor(
                ep,
                ep.delta + self.s - self.a[i] + self.x[i],
                total,
                &format!("delta + s - a{} + x{}", i + 1, i + 1),
            )?;
        }
        for (k, (u, v)) in self.u.iter().zip(&self.v).enumerate() {
            check_floor(ep, ep.delta + self.s - u, total, &format!("delta + s - u{}", k + 1))?;
            for i in 0..n {
                check_floor(
                    ep,
                    ep.delta + self.s - v + self.x[i],
                    self.axis_bound(i) as usize,
                    &format!("delta + s - v{} + x{}", k + 1, i + 1),
                )?;
            }
        }
        Ok(())
    }

    /// Multi-indices of the summation range in colexicographic order.
    fn multi_indices(&self) -> Vec<Vec<u32>> {
        let n = self.n();
        let mut out = Vec::new();
        let mut gamma = vec![0u32; n];
        loop {
            out.push(gamma.clone());
            let mut axis = 0;
            loop {
                if axis == n {
                    return out;
                }
                gamma[axis] += 1;
                let ok = match &self.termination {
                    EnmTermination::Rectangular(m) => gamma[axis] <= m[axis],
                    EnmTermination::Triangular(n_cap) => gamma.iter().sum::<u32>() <= *n_cap,
                };
                if ok {
                    break;
                }
                gamma[axis] = 0;
                axis += 1;
            }
        }
    }

    /// Single term of the sum at `gamma`.
    pub fn term(&self, gamma: &[u32]) -> Result<Complex64> {
        let n = self.n();
        let ep = &self.ep;
        let total: u32 = gamma.iter().sum();
        let mut val = Complex64::new(1.0, 0.0);
        for i in 0..n {
            for j in i + 1..n {
                let d = self.x[i] - self.x[j];
                let shifted = d + ep.delta * (gamma[i] as f64 - gamma[j] as f64);
                val *= ep.bracket(shifted)? / ep.bracket(d)?;
            }
        }
        for i in 0..n {
            let arg = self.s + self.x[i] + ep.delta * (total + gamma[i]) as f64;
            val *= ep.bracket(arg)? / ep.bracket(self.s + self.x[i])?;
        }
        for j in 0..n {
            val *= ep.bracket_factorial(self.s + self.x[j], total as usize)?;
            val /= ep.bracket_factorial(
                ep.delta + self.s - self.a[j] + self.x[j],
                total as usize,
            )?;
            for i in 0..n {
                let d = self.x[i] - self.x[j];
                val *= ep.bracket_factorial(self.a[j] + d, gamma[i] as usize)?;
                val /= ep.bracket_factorial(ep.delta + d, gamma[i] as usize)?;
            }
        }
        for (u, v) in self.u.iter().zip(&self.v) {
            val *= ep.bracket_factorial(*v, total as usize)?;
            val /= ep.bracket_factorial(ep.delta + self.s - u, total as usize)?;
            for i in 0..n {
                val *= ep.bracket_factorial(u + self.x[i], gamma[i] as usize)?;
                val /= ep.bracket_factorial(ep.delta + self.s - v + self.x[i], gamma[i] as usize)?;
            }
        }
        Ok(val)
    }
}

/// Evaluates the multivariate elliptic series with its error budget.
pub fn eval_enm_with_budget(series: &SeriesEnm) -> Result<ValueWithBudget> {
    series.check_termination()?;
    series.preflight()?;
    let mut sum = Complex64::ZERO;
    let mut abs_sum = 0.0;
    let indices = series.multi_indices();
    let count = indices.len();
    for gamma in indices {
        let t = series.term(&gamma)?;
        sum += t;
        abs_sum += t.norm();
    }
    Ok(ValueWithBudget {
        value: sum,
        error_budget: abs_sum * TERM_REL_ERR,
        terms: count,
    })
}

/// Evaluates the multivariate elliptic series.
pub fn eval_enm(series: &SeriesEnm) -> Result<Complex64> {
    Ok(eval_enm_with_budget(series)?.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bracket::BracketClass;
    use num_complex::Complex64 as C;

    fn ep_theta() -> EllipticParams {
        EllipticParams::new(
            C::new(0.31, 0.07),
            BracketClass::theta(C::new(0.2, 0.0)).unwrap(),
        )
        .unwrap()
    }

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    #[test]
    fn e1d_no_params_n0() {
        let ep = ep_theta();
        let got = eval_e1d(c(0.4, 0.2), &[], 0, &ep).unwrap();
        assert!((got.value - c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn e10e9_trivial_cases() {
        let ep = ep_theta();
        let s = c(0.4, 0.2);
        // N = 0: balancing fixes sum of c; single term = 1.
        let mut cs = [
            c(0.3, 0.1),
            c(0.2, -0.1),
            c(0.1, 0.05),
            c(0.25, 0.0),
            c(0.15, 0.1),
            C::ZERO,
        ];
        let want: C = ep.delta * 2.0 + s * 3.0;
        cs[5] = want - cs[..5].iter().sum::<C>();
        assert!((eval_10e9(s, &cs, 0, &ep).unwrap() - c(1.0, 0.0)).norm() < 1e-12);

        // Any c_k = 0 kills every term with k >= 1.
        let mut cs = [
            C::ZERO,
            c(0.2, -0.1),
            c(0.1, 0.05),
            c(0.25, 0.0),
            c(0.15, 0.1),
            C::ZERO,
        ];
        let want: C = ep.delta * (2.0 + 2.0) + s * 3.0;
        cs[5] = want - cs[..5].iter().sum::<C>();
        assert!((eval_10e9(s, &cs, 2, &ep).unwrap() - c(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn e10e9_three_term_oracle() {
        let ep = ep_theta();
        let s = c(0.4, 0.2);
        let n_cap = 2u32;
        let mut cs = [
            c(0.3, 0.1),
            c(0.2, -0.1),
            c(0.1, 0.05),
            c(0.25, 0.0),
            c(0.15, 0.1),
            C::ZERO,
        ];
        let want: C = ep.delta * (2.0 + n_cap as f64) + s * 3.0;
        cs[5] = want - cs[..5].iter().sum::<C>();
        // Independent term-by-term oracle.
        let mut oracle = C::ZERO;
        for k in 0..=n_cap as usize {
            let bf = |x: C, k: usize| -> C {
                let mut acc = c(1.0, 0.0);
                for j in 0..k {
                    acc *= ep.bracket(x + ep.delta * j as f64).unwrap();
                }
                acc
            };
            let mut t = ep.bracket(s + ep.delta * (2 * k) as f64).unwrap()
                / ep.bracket(s).unwrap();
            t *= bf(s, k) / bf(ep.delta, k);
            for p in cs.iter().copied().chain([-ep.delta * n_cap as f64]) {
                t *= bf(p, k) / bf(ep.delta + s - p, k);
            }
            oracle += t;
        }
        let got = eval_10e9(s, &cs, n_cap, &ep).unwrap();
        assert!((got - oracle).norm() < 1e-12 * oracle.norm().max(1.0));
    }

    #[test]
    fn balancing_is_checked_not_imposed() {
        let ep = ep_theta();
        let cs = [c(0.3, 0.1); 6];
        assert!(matches!(
            eval_10e9(c(0.4, 0.2), &cs, 2, &ep),
            Err(Error::Balancing(_))
        ));
    }

    fn sample_enm_rect(ep: &EllipticParams) -> SeriesEnm {
        let m = vec![1u32, 1];
        SeriesEnm {
            a: m.iter().map(|&mi| -ep.delta * mi as f64).collect(),
            x: vec![c(0.12, 0.04), c(0.55, -0.1)],
            s: c(0.4, 0.2),
            u: vec![c(0.3, 0.1)],
            v: vec![c(0.2, -0.15)],
            ep: *ep,
            termination: EnmTermination::Rectangular(m),
        }
    }

    #[test]
    fn enm_zero_bounds_give_one() {
        let ep = ep_theta();
        let mut s = sample_enm_rect(&ep);
        s.termination = EnmTermination::Rectangular(vec![0, 0]);
        s.a = vec![C::ZERO, C::ZERO];
        let got = eval_enm(&s).unwrap();
        assert!((got - c(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn enm_four_term_oracle() {
        let ep = ep_theta();
        let s = sample_enm_rect(&ep);
        let mut oracle = C::ZERO;
        for g1 in 0..=1u32 {
            for g2 in 0..=1u32 {
                oracle += s.term(&[g1, g2]).unwrap();
            }
        }
        let got = eval_enm(&s).unwrap();
        assert!((got - oracle).norm() < 1e-13 * oracle.norm().max(1.0));
    }

    #[test]
    fn enm_beyond_bound_vanishes() {
        let ep = ep_theta();
        let s = sample_enm_rect(&ep);
        // One layer past the box: a numerator factor [[a_j]] hits [[0]].
        for gamma in [[2u32, 0], [0, 2], [2, 1], [1, 2], [2, 2]] {
            let t = s.term(&gamma).unwrap();
            assert!(t.norm() < 1e-14, "gamma {gamma:?} gave {t}");
        }
    }

    #[test]
    fn enm_reduces_to_e1d_at_n1() {
        // n = 1, x = 0: the multivariate series collapses to the
        // one-dimensional series with parameter list (u, v, a1).
        let ep = ep_theta();
        let n_cap = 3u32;
        let s = c(0.4, 0.2);
        let series = SeriesEnm {
            a: vec![-ep.delta * n_cap as f64],
            x: vec![C::ZERO],
            s,
            u: vec![c(0.3, 0.1), c(0.45, -0.2)],
            v: vec![c(0.2, -0.15), c(0.6, 0.1)],
            ep,
            termination: EnmTermination::Rectangular(vec![n_cap]),
        };
        let got = eval_enm(&series).unwrap();
        let params: Vec<C> = series
            .u
            .iter()
            .chain(&series.v)
            .copied()
            .chain([-ep.delta * n_cap as f64])
            .collect();
        let want = eval_e1d(s, &params, n_cap, &ep).unwrap().value;
        assert!(
            (got - want).norm() < 1e-10 * want.norm().max(1.0),
            "{got} vs {want}"
        );
    }

    #[test]
    fn enm_symmetric_in_uv_sets_and_pairs() {
        let ep = ep_theta();
        let base = SeriesEnm {
            a: vec![-ep.delta, -ep.delta * 2.0],
            x: vec![c(0.12, 0.04), c(0.55, -0.1)],
            s: c(0.4, 0.2),
            u: vec![c(0.3, 0.1), c(0.5, -0.05)],
            v: vec![c(0.2, -0.15), c(0.35, 0.2)],
            ep,
            termination: EnmTermination::Rectangular(vec![1, 2]),
        };
        let v0 = eval_enm(&base).unwrap();
        let mut swapped_u = base.clone();
        swapped_u.u.swap(0, 1);
        let mut swapped_v = base.clone();
        swapped_v.v.swap(0, 1);
        let mut swapped_pairs = base.clone();
        swapped_pairs.a.swap(0, 1);
        swapped_pairs.x.swap(0, 1);
        swapped_pairs.termination = EnmTermination::Rectangular(vec![2, 1]);
        for other in [swapped_u, swapped_v, swapped_pairs] {
            let v1 = eval_enm(&other).unwrap();
            assert!((v0 - v1).norm() < 1e-10 * v0.norm().max(1.0));
        }
    }

    #[test]
    fn enm_triangular_termination() {
        let ep = ep_theta();
        let n_cap = 2u32;
        let series = SeriesEnm {
            a: vec![c(0.22, 0.1), c(0.4, -0.06)],
            x: vec![c(0.12, 0.04), c(0.55, -0.1)],
            s: c(0.4, 0.2),
            u: vec![c(0.3, 0.1)],
            v: vec![-ep.delta * n_cap as f64],
            ep,
            termination: EnmTermination::Triangular(n_cap),
        };
        let got = eval_enm(&series).unwrap();
        let mut oracle = C::ZERO;
        for g1 in 0..=n_cap {
            for g2 in 0..=n_cap {
                if g1 + g2 <= n_cap {
                    oracle += series.term(&[g1, g2]).unwrap();
                }
            }
        }
        assert!((got - oracle).norm() < 1e-13 * oracle.norm().max(1.0));
        // Total degree N+1 vanishes: [[v_k]]_{|gamma|} passes through [[0]].
        let t = series.term(&[2, 1]).unwrap();
        assert!(t.norm() < 1e-14);
    }
}
