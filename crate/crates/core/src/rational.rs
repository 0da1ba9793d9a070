//! Exact rational arithmetic and rising factorials.
//!
//! Every ordinary (non-elliptic) series and prefactor in this crate is
//! evaluated over arbitrary-precision rationals so that identity checks can
//! assert equality exactly, with no tolerance.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

/// Arbitrary-precision signed fraction, always reduced, denominator > 0.
///
/// `num_rational::BigRational` maintains both invariants on construction.
pub type Rational = BigRational;

/// Shorthand for a rational from an integer.
pub fn rat_i(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for the rational `n/d`.
///
/// Panics when `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Rising factorial `[c]_k = c (c+1) ... (c+k-1)`, exactly.
///
/// The empty product `[c]_0` is 1.
pub fn pochhammer(c: &Rational, k: usize) -> Rational {
    let mut acc = Rational::one();
    let mut factor = c.clone();
    let one = Rational::one();
    for _ in 0..k {
        acc *= &factor;
        factor += &one;
    }
    acc
}

/// Product of rising factorials `[c_1]_k [c_2]_k ... [c_r]_k`.
pub fn pochhammer_list(cs: &[Rational], k: usize) -> Rational {
    cs.iter().map(|c| pochhammer(c, k)).product()
}

/// Reflection of a rising factorial: `[z]_m = (-1)^m [1 - z - m]_m`.
///
/// Returns `(sign, arg)` with `sign ∈ {+1, -1}` such that
/// `[z]_m == sign * [arg]_m`. Used to canonicalize prefactor factors.
pub fn pochhammer_reflect(z: &Rational, m: usize) -> (i8, Rational) {
    let sign = if m.is_multiple_of(2) { 1 } else { -1 };
    let arg = Rational::one() - z - rat_i(m as i64);
    (sign, arg)
}

/// True when `r` is an integer in `[lo, hi]`; used by pole preflights to
/// detect rising factorials `[r]_k` that vanish over a summation range.
pub fn is_integer_in(r: &Rational, lo: i64, hi: i64) -> bool {
    if !r.is_integer() {
        return false;
    }
    let n = r.to_integer();
    n >= BigInt::from(lo) && n <= BigInt::from(hi)
}

/// True when `[base]_len` contains a zero factor, i.e. `base + j == 0` for
/// some `0 <= j < len`.
pub fn pochhammer_vanishes(base: &Rational, len: usize) -> bool {
    if len == 0 {
        return false;
    }
    // base + j == 0 for integral base in [-(len-1), 0]
    is_integer_in(base, -(len as i64 - 1), 0)
}

/// Formats a rational as `p/q` even when the denominator is 1.
pub fn format_ratio(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Nearest `f64` to the exact rational; used only for diagnostics.
pub fn rat_to_f64(r: &Rational) -> f64 {
    let n = r.numer();
    let d = r.denom();
    // Good enough for reporting: go through strings only when the parts are
    // too large for i128.
    match (i128::try_from(n), i128::try_from(d)) {
        (Ok(n), Ok(d)) => n as f64 / d as f64,
        _ => {
            let digits = 30usize;
            let scaled = (r * Rational::from_integer(BigInt::from(10u8).pow(digits as u32)))
                .to_integer();
            let s = scaled.to_string();
            let sign = if r.is_negative() { -1.0 } else { 1.0 };
            let mag: f64 = s.trim_start_matches('-').parse().unwrap_or(f64::NAN);
            sign * mag.abs() / 10f64.powi(digits as i32)
        }
    }
}
