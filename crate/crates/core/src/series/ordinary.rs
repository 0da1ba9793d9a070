//! Exact evaluation of terminating balanced 4F3 sums and the multivariate
//! sums that extend them.
//!
//! The multivariate sum runs over multi-indices gamma weighted by the
//! Vandermonde ratio
//!
//! ```text
//! sum_gamma  D(x+gamma)/D(x)
//!     * prod_{i,j} [b_j + x_i - x_j]_{gamma_i} / [1 + x_i - x_j]_{gamma_i}
//!     * prod_i     [c + x_i]_{gamma_i} / [d + x_i]_{gamma_i}
//!     * [a_1, a_2]_{|gamma|} / [e_1, e_2]_{|gamma|}
//! ```
//!
//! Rectangular termination means `b_i = -m_i` (so `gamma_i <= m_i`);
//! triangular termination replaces the upper pair by `(-N, a)` (so
//! `|gamma| <= N`) while the `b_i` stay free.

// Indexed loops mirror the parallel-array structure of the summands.
#![allow(clippy::needless_range_loop)]

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{pochhammer, pochhammer_vanishes, rat_i, Rational};

/// Terminating balanced 4F3 at unit argument:
/// `sum_k [-N, a1, a2, a3]_k / (k! [d1, d2, d3]_k)`.
///
/// The balancing condition `a1 + a2 + a3 + 1 - N = d1 + d2 + d3` must hold
/// exactly and no denominator factor may vanish for k <= N.
pub fn eval_4f3_terminating(n_cap: u32, a: &[Rational; 3], d: &[Rational; 3]) -> Result<Rational> {
    let lhs: Rational = a.iter().sum::<Rational>() + Rational::one() - rat_i(n_cap as i64);
    let rhs: Rational = d.iter().sum();
    if lhs != rhs {
        return Err(Error::Balancing(format!(
            "a1+a2+a3+1-N = {lhs} but d1+d2+d3 = {rhs}"
        )));
    }
    for (j, dj) in d.iter().enumerate() {
        if pochhammer_vanishes(dj, n_cap as usize) {
            let k = -dj.to_integer();
            return Err(Error::Pole {
                factor: format!("[d{}]_k with d{} = {dj}", j + 1, j + 1),
                index: format!("k = {}", k + 1),
            });
        }
    }
    let mut sum = Rational::one();
    let mut term = Rational::one();
    for k in 0..n_cap as i64 {
        let kq = rat_i(k);
        let mut num = rat_i(k - n_cap as i64);
        for ai in a {
            num *= ai + &kq;
        }
        let mut den = rat_i(k + 1);
        for dj in d {
            den *= dj + &kq;
        }
        term *= num / den;
        sum += &term;
    }
    Ok(sum)
}

/// Termination pattern of the multivariate sum.
#[derive(Debug, Clone, PartialEq)]
pub enum F4Kind {
    /// `b_i = -m_i`: the sum runs over the box `gamma_i <= m_i`.
    Rectangular {
        /// Per-variable bounds.
        m: Vec<u32>,
    },
    /// Upper pair `(-N, a)`: the sum runs over `|gamma| <= N` with free
    /// parameters `b_i`.
    Triangular {
        /// Total-degree bound.
        n_cap: u32,
        /// The free `b_i` parameters.
        b: Vec<Rational>,
    },
}

/// A fully specified multivariate 4F3-type sum.
#[derive(Debug, Clone, PartialEq)]
pub struct Series4F3An {
    /// Termination pattern and the parameters bound up with it.
    pub kind: F4Kind,
    /// Variables `x_1..x_n`; pairwise differences must not be integers.
    pub x: Vec<Rational>,
    /// Length-graded upper parameters: `[a1, a2]` (rectangular) or `[a]`
    /// (triangular; the `-N` factor is implied by the kind).
    pub a: Vec<Rational>,
    /// Length-graded lower parameters `e1, e2`.
    pub e: [Rational; 2],
    /// Per-variable upper parameter.
    pub c: Rational,
    /// Per-variable lower parameter.
    pub d: Rational,
}

impl Series4F3An {
    /// Number of summation variables.
    pub fn n(&self) -> usize {
        self.x.len()
    }

    /// `b_i` values: `-m_i` for rectangular, the stored list otherwise.
    pub fn b_values(&self) -> Vec<Rational> {
        match &self.kind {
            F4Kind::Rectangular { m } => m.iter().map(|&mi| rat_i(-(mi as i64))).collect(),
            F4Kind::Triangular { b, .. } => b.clone(),
        }
    }

    /// Total termination bound: `|M|` or `N`.
    pub fn total_bound(&self) -> u32 {
        match &self.kind {
            F4Kind::Rectangular { m } => m.iter().sum(),
            F4Kind::Triangular { n_cap, .. } => *n_cap,
        }
    }

    /// Per-axis bound on `gamma_i`.
    fn axis_bound(&self, i: usize) -> u32 {
        match &self.kind {
            F4Kind::Rectangular { m } => m[i],
            F4Kind::Triangular { n_cap, .. } => *n_cap,
        }
    }

    /// Exact balancing-condition check.
    pub fn check_balancing(&self) -> Result<()> {
        let lhs: Rational = match &self.kind {
            F4Kind::Rectangular { m } => {
                let total: u32 = m.iter().sum();
                self.a.iter().sum::<Rational>() + &self.c + Rational::one()
                    - rat_i(total as i64)
            }
            F4Kind::Triangular { n_cap, b } => {
                self.a.iter().sum::<Rational>()
                    + b.iter().sum::<Rational>()
                    + &self.c
                    + Rational::one()
                    - rat_i(*n_cap as i64)
            }
        };
        let rhs = &self.d + &self.e[0] + &self.e[1];
        if lhs != rhs {
            return Err(Error::Balancing(format!(
                "upper sum {lhs} != lower sum {rhs}"
            )));
        }
        Ok(())
    }

    /// Rejects configurations with a vanishing denominator factor anywhere
    /// over the summation range, or with integral `x_i - x_j`.
    fn preflight(&self) -> Result<()> {
        let n = self.n();
        match &self.kind {
            F4Kind::Rectangular { m } => {
                if m.len() != n {
                    return Err(Error::Constraint("m and x length mismatch".into()));
                }
            }
            F4Kind::Triangular { b, .. } => {
                if b.len() != n {
                    return Err(Error::Constraint("b and x length mismatch".into()));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let diff = &self.x[i] - &self.x[j];
                if diff.is_zero() {
                    return Err(Error::Constraint(format!(
                        "x{} == x{}: Vandermonde vanishes",
                        i + 1,
                        j + 1
                    )));
                }
                if diff.is_integer() {
                    return Err(Error::Pole {
                        factor: format!("[1 + x{} - x{}]", i + 1, j + 1),
                        index: "integer variable difference".into(),
                    });
                }
            }
        }
        for i in 0..n {
            let base = &self.d + &self.x[i];
            if pochhammer_vanishes(&base, self.axis_bound(i) as usize) {
                return Err(Error::Pole {
                    factor: format!("[d + x{}] with value {base}", i + 1),
                    index: format!("within gamma{} <= {}", i + 1, self.axis_bound(i)),
                });
            }
        }
        let total = self.total_bound() as usize;
        for (name, e) in [("e1", &self.e[0]), ("e2", &self.e[1])] {
            if pochhammer_vanishes(e, total) {
                return Err(Error::Pole {
                    factor: format!("[{name}] with value {e}"),
                    index: format!("within |gamma| <= {total}"),
                });
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
            // colex increment: bump the first axis that still has room
            let mut axis = 0;
            loop {
                if axis == n {
                    return out;
                }
                gamma[axis] += 1;
                let ok = match &self.kind {
                    F4Kind::Rectangular { m } => gamma[axis] <= m[axis],
                    F4Kind::Triangular { n_cap, .. } => {
                        gamma.iter().sum::<u32>() <= *n_cap
                    }
                };
                if ok {
                    break;
                }
                gamma[axis] = 0;
                axis += 1;
            }
        }
    }

    /// Ratio `term(gamma + e_i) / term(gamma)`; exact, denominators
    /// guaranteed nonzero by the preflight.
    fn step_ratio(&self, gamma: &[u32], i: usize) -> Rational {
        let n = self.n();
        let b = self.b_values();
        let gi = rat_i(gamma[i] as i64);
        let total = rat_i(gamma.iter().sum::<u32>() as i64);
        let mut num = Rational::one();
        let mut den = Rational::one();
        for j in 0..n {
            let dx = &self.x[i] - &self.x[j];
            if j != i {
                // Vandermonde ratio over pairs involving axis i
                let dg = rat_i(gamma[i] as i64 - gamma[j] as i64);
                num *= &dx + &dg + Rational::one();
                den *= &dx + &dg;
            }
            // [b_j + x_i - x_j] and [1 + x_i - x_j] extend by one factor
            num *= &b[j] + &dx + &gi;
            den *= Rational::one() + &dx + &gi;
        }
        num *= &self.c + &self.x[i] + &gi;
        den *= &self.d + &self.x[i] + &gi;
        if let F4Kind::Triangular { n_cap, .. } = &self.kind {
            num *= rat_i(-(*n_cap as i64)) + &total;
        }
        for a in &self.a {
            num *= a + &total;
        }
        den *= (&self.e[0] + &total) * (&self.e[1] + &total);
        num / den
    }

    /// Direct evaluation of a single term (fallback used when the running
    /// product passes through an exact zero).
    fn term_direct(&self, gamma: &[u32]) -> Rational {
        let n = self.n();
        let b = self.b_values();
        let total: u32 = gamma.iter().sum();
        let mut val = Rational::one();
        // Vandermonde ratio
        for i in 0..n {
            for j in i + 1..n {
                let shifted =
                    &self.x[i] - &self.x[j] + rat_i(gamma[i] as i64 - gamma[j] as i64);
                val *= shifted / (&self.x[i] - &self.x[j]);
            }
        }
        for i in 0..n {
            let gi = gamma[i] as usize;
            for j in 0..n {
                let dx = &self.x[i] - &self.x[j];
                val *= pochhammer(&(&b[j] + &dx), gi);
                val /= pochhammer(&(Rational::one() + &dx), gi);
            }
            val *= pochhammer(&(&self.c + &self.x[i]), gi);
            val /= pochhammer(&(&self.d + &self.x[i]), gi);
        }
        if let F4Kind::Triangular { n_cap, .. } = &self.kind {
            val *= pochhammer(&rat_i(-(*n_cap as i64)), total as usize);
        }
        for a in &self.a {
            val *= pochhammer(a, total as usize);
        }
        val /= pochhammer(&self.e[0], total as usize);
        val /= pochhammer(&self.e[1], total as usize);
        val
    }

    /// Term at `gamma`, exposed so that order-reversal consistency checks
    /// can compare sums term by term.
    pub fn term(&self, gamma: &[u32]) -> Rational {
        self.term_direct(gamma)
    }
}

/// Exact value of the multivariate sum over its full termination range.
///
/// Terms are accumulated in colexicographic order with running per-axis
/// ratio updates; a term that passes through an exact zero falls back to
/// direct evaluation so later terms stay correct.
pub fn eval_an_4f3(series: &Series4F3An) -> Result<Rational> {
    series.check_balancing()?;
    series.preflight()?;
    let indices = series.multi_indices();
    let mut terms: std::collections::HashMap<Vec<u32>, Rational> = std::collections::HashMap::new();
    let mut sum = Rational::zero();
    for gamma in indices {
        let value = if gamma.iter().all(|&g| g == 0) {
            Rational::one()
        } else {
            let i = gamma.iter().position(|&g| g > 0).unwrap();
            let mut prev = gamma.clone();
            prev[i] -= 1;
            let base = terms.get(&prev).expect("colex order visits parents first");
            if base.is_zero() {
                series.term_direct(&gamma)
            } else {
                base * series.step_ratio(&prev, i)
            }
        };
        sum += &value;
        terms.insert(gamma, value);
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn balanced_4f3_point() -> (u32, [Rational; 3], [Rational; 3]) {
        // a3, d3 chosen so the balancing condition holds at N = 2.
        let a = [rat_i(1), rat(-1, 2), rat_i(1)];
        let d = [rat_i(2), rat_i(3), rat(-9, 2)];
        (2, a, d)
    }

    #[test]
    fn f43_trivial_cases() {
        let a = [rat(1, 3), rat(1, 4), rat(1, 2) + rat(11, 12)];
        // N = 0: single term regardless of balancing-satisfying params.
        let d = [rat(1, 3), rat(1, 4), rat(1, 2) + rat(11, 12) + rat_i(1)];
        assert_eq!(eval_4f3_terminating(0, &a, &d).unwrap(), rat_i(1));

        // a1 = 0 kills every k >= 1 term.
        let a = [rat_i(0), rat(1, 2), rat(1, 3)];
        // balancing: 0 + 1/2 + 1/3 + 1 - 1 = 5/6 = sum d
        let d = [rat(1, 4), rat(1, 4), rat(1, 3)];
        assert_eq!(eval_4f3_terminating(1, &a, &d).unwrap(), rat_i(1));
    }

    #[test]
    fn f43_three_term_oracle() {
        let (n, a, d) = balanced_4f3_point();
        // Independent oracle: brute-force 3-term sum with plain arithmetic.
        let mut oracle = Rational::zero();
        for k in 0..=n as i64 {
            let poch = |c: &Rational, k: i64| -> Rational {
                let mut acc = Rational::one();
                for j in 0..k {
                    acc *= c + rat_i(j);
                }
                acc
            };
            let mut t = poch(&rat_i(-(n as i64)), k);
            for ai in &a {
                t *= poch(ai, k);
            }
            t /= poch(&rat_i(1), k);
            for dj in &d {
                t /= poch(dj, k);
            }
            oracle += t;
        }
        assert_eq!(oracle, rat(1091, 1134));
        assert_eq!(eval_4f3_terminating(n, &a, &d).unwrap(), rat(1091, 1134));
    }

    #[test]
    fn f43_error_paths() {
        let a = [rat_i(1), rat_i(1), rat_i(1)];
        let d = [rat_i(1), rat_i(1), rat_i(1)];
        assert!(matches!(
            eval_4f3_terminating(3, &a, &d),
            Err(Error::Balancing(_))
        ));
        // Balanced but with a vanishing denominator [d3]_k: d3 = -1 hits
        // zero at k = 2.
        let a = [rat_i(1), rat_i(1), rat(1, 2)];
        let d = [rat_i(2), rat(-1, 2), rat_i(-1)];
        let err = eval_4f3_terminating(3, &a, &d).unwrap_err();
        assert!(matches!(err, Error::Pole { .. }), "{err:?}");
    }

    fn sample_rect() -> Series4F3An {
        // d solves the balancing condition for the rest.
        Series4F3An {
            kind: F4Kind::Rectangular { m: vec![1, 1] },
            x: vec![rat_i(0), rat(1, 3)],
            a: vec![rat(1, 2), rat(1, 3)],
            e: [rat(3, 2), rat(5, 4)],
            c: rat(1, 4),
            d: rat(-8, 3),
        }
    }

    #[test]
    fn rect_zero_bounds_give_one() {
        let mut s = sample_rect();
        s.kind = F4Kind::Rectangular { m: vec![0, 0] };
        // Rebalance for |M| = 0.
        s.d = s.a.iter().sum::<Rational>() + &s.c + rat_i(1) - &s.e[0] - &s.e[1];
        assert_eq!(eval_an_4f3(&s).unwrap(), rat_i(1));
    }

    #[test]
    fn rect_four_term_oracle() {
        let s = sample_rect();
        // Independent oracle: enumerate gamma in {0,1}^2 by hand.
        let poch = |c: &Rational, k: u32| -> Rational {
            let mut acc = Rational::one();
            for j in 0..k as i64 {
                acc *= c + rat_i(j);
            }
            acc
        };
        let b = [rat_i(-1), rat_i(-1)];
        let mut oracle = Rational::zero();
        for g1 in 0..=1u32 {
            for g2 in 0..=1u32 {
                let gamma = [g1, g2];
                let total = g1 + g2;
                let mut t = (&s.x[0] - &s.x[1] + rat_i(g1 as i64 - g2 as i64))
                    / (&s.x[0] - &s.x[1]);
                for i in 0..2 {
                    for j in 0..2 {
                        let dx = &s.x[i] - &s.x[j];
                        t *= poch(&(&b[j] + &dx), gamma[i]);
                        t /= poch(&(rat_i(1) + &dx), gamma[i]);
                    }
                    t *= poch(&(&s.c + &s.x[i]), gamma[i]);
                    t /= poch(&(&s.d + &s.x[i]), gamma[i]);
                }
                for a in &s.a {
                    t *= poch(a, total);
                }
                t /= poch(&s.e[0], total) * poch(&s.e[1], total);
                oracle += t;
            }
        }
        assert_eq!(eval_an_4f3(&s).unwrap(), oracle);
        assert_eq!(oracle, rat(668, 675));
    }

    #[test]
    fn rect_reduces_to_4f3_at_n1() {
        // n = 1, x = 0, m1 = N: the sum is the terminating balanced 4F3
        // with upper (-N, a1, a2, c) and lower (d, e1, e2).
        let n_cap = 3u32;
        let (a1, a2, c) = (rat(1, 2), rat(2, 3), rat(1, 5));
        let (e1, e2) = (rat(7, 3), rat(9, 4));
        let d = &a1 + &a2 + &c + rat_i(1) - rat_i(n_cap as i64) - &e1 - &e2;
        let s = Series4F3An {
            kind: F4Kind::Rectangular {
                m: vec![n_cap],
            },
            x: vec![rat_i(0)],
            a: vec![a1.clone(), a2.clone()],
            e: [e1.clone(), e2.clone()],
            c: c.clone(),
            d: d.clone(),
        };
        let direct = eval_4f3_terminating(n_cap, &[a1, a2, c], &[d, e1, e2]).unwrap();
        assert_eq!(eval_an_4f3(&s).unwrap(), direct);
    }

    #[test]
    fn rect_symmetric_under_pair_and_parameter_swaps() {
        let s = sample_rect();
        let v = eval_an_4f3(&s).unwrap();
        // (x_i, m_i) pairs permute freely.
        let swapped = Series4F3An {
            kind: F4Kind::Rectangular { m: vec![1, 1] },
            x: vec![s.x[1].clone(), s.x[0].clone()],
            ..s.clone()
        };
        assert_eq!(eval_an_4f3(&swapped).unwrap(), v);
        // a1 <-> a2 and e1 <-> e2.
        let flipped = Series4F3An {
            a: vec![s.a[1].clone(), s.a[0].clone()],
            e: [s.e[1].clone(), s.e[0].clone()],
            ..s.clone()
        };
        assert_eq!(eval_an_4f3(&flipped).unwrap(), v);
    }

    #[test]
    fn rect_extra_layer_contributes_zero() {
        // Adding a layer beyond the bound changes nothing: the terms there
        // carry a vanished [b_j + x_i - x_j] factor.
        let s = sample_rect();
        let mut total = Rational::zero();
        for g1 in 0..=2u32 {
            for g2 in 0..=2u32 {
                total += s.term(&[g1, g2]);
            }
        }
        assert_eq!(total, eval_an_4f3(&s).unwrap());
    }

    fn sample_tri() -> Series4F3An {
        let b = vec![rat(1, 5), rat(2, 7)];
        let a = rat(1, 2);
        let c = rat(1, 3);
        let (e1, e2) = (rat(5, 2), rat(7, 4));
        let n_cap = 2u32;
        let d = &a + &b[0] + &b[1] + &c + rat_i(1) - rat_i(n_cap as i64) - &e1 - &e2;
        Series4F3An {
            kind: F4Kind::Triangular { n_cap, b },
            x: vec![rat_i(0), rat(2, 5)],
            a: vec![a],
            e: [e1, e2],
            c,
            d,
        }
    }

    #[test]
    fn tri_matches_direct_enumeration() {
        let s = sample_tri();
        let mut oracle = Rational::zero();
        for g1 in 0..=2u32 {
            for g2 in 0..=2u32 {
                if g1 + g2 <= 2 {
                    oracle += s.term(&[g1, g2]);
                }
            }
        }
        assert_eq!(eval_an_4f3(&s).unwrap(), oracle);
        // One extra total degree contributes exactly zero.
        let mut beyond = Rational::zero();
        for g1 in 0..=3u32 {
            for g2 in 0..=3u32 {
                if g1 + g2 == 3 {
                    beyond += s.term(&[g1, g2]);
                }
            }
        }
        assert_eq!(beyond, Rational::zero());
    }

    #[test]
    fn preflight_rejects_bad_variables() {
        let mut s = sample_rect();
        s.x = vec![rat_i(0), rat_i(1)];
        assert!(matches!(eval_an_4f3(&s), Err(Error::Pole { .. })));
        let mut s2 = sample_rect();
        s2.x = vec![rat(1, 3), rat(1, 3)];
        assert!(matches!(eval_an_4f3(&s2), Err(Error::Constraint(_))));
    }
}
