//! The odd bracket functions `[[x]]` and their shifted factorials.
//!
//! A bracket is an odd entire function satisfying the Riemann relation
//!
//! ```text
//! [[x+y]][[x-y]][[u+v]][[u-v]]
//!     = [[x+u]][[x-u]][[y+v]][[y-v]] - [[x+v]][[x-v]][[y+u]][[y-u]].
//! ```
//!
//! Three classes are provided: rational `x`, trigonometric `sin(pi x)`, and
//! an elliptic class realized as the odd theta product
//!
//! ```text
//! sin(pi x) * prod_{k>=1} (1 - 2 p^{2k} cos(2 pi x) + p^{4k}),   |p| < 1.
//! ```
//!
//! Any rescaling `e^{a x^2 + b} [[c x]]` of a solution is again a solution,
//! so the theta product represents the elliptic class without Weierstrass
//! sigma quasi-period bookkeeping.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Stop extending the theta product once a factor differs from 1 by less
/// than this; the tail is geometric in |p|^2.
const THETA_FACTOR_TOL: f64 = 1e-16;

/// Hard cap on theta product length (reached only for |p| extremely close
/// to 1, which [`BracketClass::theta`] rejects anyway).
const THETA_MAX_FACTORS: usize = 4096;

/// Magnitude floor below which `[[k delta]]` is treated as a genericity
/// violation.
const DELTA_GENERICITY_FLOOR: f64 = 1e-9;

/// Horizon (in multiples of delta) over which genericity is enforced.
const DELTA_GENERICITY_HORIZON: i64 = 64;

/// One of the three function classes solving the Riemann relation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BracketClass {
    /// `[[x]] = x`
    Rational,
    /// `[[x]] = sin(pi x)`
    Trigonometric,
    /// Odd theta product with nome `p`, `|p| < 1`.
    Theta(Complex64),
}

impl BracketClass {
    /// Theta class with a validated nome.
    pub fn theta(nome: Complex64) -> Result<Self> {
        if !nome.is_finite() || nome.norm() >= 1.0 {
            return Err(Error::Domain(format!(
                "theta nome must satisfy |p| < 1, got {nome}"
            )));
        }
        Ok(BracketClass::Theta(nome))
    }
}

/// Evaluates `[[x]]` for the given class.
pub fn bracket(x: Complex64, cls: BracketClass) -> Result<Complex64> {
    if !x.is_finite() {
        return Err(Error::Domain(format!("bracket of non-finite argument {x}")));
    }
    match cls {
        BracketClass::Rational => Ok(x),
        BracketClass::Trigonometric => Ok((std::f64::consts::PI * x).sin()),
        BracketClass::Theta(p) => {
            let mut val = (std::f64::consts::PI * x).sin();
            let cos2 = (2.0 * std::f64::consts::PI * x).cos();
            let p2 = p * p;
            let mut q = p2;
            for _ in 0..THETA_MAX_FACTORS {
                let delta = -2.0 * q * cos2 + q * q;
                if delta.norm() < THETA_FACTOR_TOL {
                    break;
                }
                val *= Complex64::new(1.0, 0.0) + delta;
                q *= p2;
            }
            Ok(val)
        }
    }
}

/// Shift constant `delta` plus the bracket class; the pair pins down every
/// elliptic shifted factorial `[[x]]_k = [[x]] [[x+delta]] ... `.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipticParams {
    /// The generic shift.
    pub delta: Complex64,
    /// Bracket class used for every `[[.]]`.
    pub class: BracketClass,
}

impl EllipticParams {
    /// Validates genericity of `delta`: `[[k delta]]` must stay above a
    /// magnitude floor for all `1 <= k <= 64` (oddness covers negative k).
    pub fn new(delta: Complex64, class: BracketClass) -> Result<Self> {
        if !delta.is_finite() {
            return Err(Error::Domain("delta must be finite".into()));
        }
        for k in 1..=DELTA_GENERICITY_HORIZON {
            let v = bracket(delta * k as f64, class)?;
            if v.norm() < DELTA_GENERICITY_FLOOR {
                return Err(Error::Domain(format!(
                    "delta not generic: |[[{k} delta]]| = {} < {DELTA_GENERICITY_FLOOR}",
                    v.norm()
                )));
            }
        }
        Ok(EllipticParams { delta, class })
    }

    /// `[[x]]` in this configuration.
    pub fn bracket(&self, x: Complex64) -> Result<Complex64> {
        bracket(x, self.class)
    }

    /// Shifted factorial `[[x]]_k = prod_{j=0}^{k-1} [[x + j delta]]`.
    pub fn bracket_factorial(&self, x: Complex64, k: usize) -> Result<Complex64> {
        let mut acc = Complex64::new(1.0, 0.0);
        for j in 0..k {
            acc *= self.bracket(x + self.delta * j as f64)?;
        }
        Ok(acc)
    }

    /// Product `[[x_1]]_k [[x_2]]_k ...` over a parameter list.
    pub fn bracket_factorial_list(&self, xs: &[Complex64], k: usize) -> Result<Complex64> {
        let mut acc = Complex64::new(1.0, 0.0);
        for x in xs {
            acc *= self.bracket_factorial(*x, k)?;
        }
        Ok(acc)
    }
}

/// Residual of the Riemann relation at `(x, y, u, v)`, relative to
/// `max(1, |lhs|)`; zero (to rounding) for any valid bracket.
pub fn riemann_residual(
    x: Complex64,
    y: Complex64,
    u: Complex64,
    v: Complex64,
    cls: BracketClass,
) -> Result<f64> {
    let b = |z: Complex64| bracket(z, cls);
    let lhs = b(x + y)? * b(x - y)? * b(u + v)? * b(u - v)?;
    let rhs = b(x + u)? * b(x - u)? * b(y + v)? * b(y - v)?
        - (b(x + v)? * b(x - v)? * b(y + u)? * b(y - u)?);
    Ok((lhs - rhs).norm() / lhs.norm().max(1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn classes() -> Vec<BracketClass> {
        vec![
            BracketClass::Rational,
            BracketClass::Trigonometric,
            BracketClass::theta(Complex64::new(0.3, 0.0)).unwrap(),
        ]
    }

    fn rand_c(rng: &mut impl Rng) -> Complex64 {
        Complex64::new(rng.random_range(-1.5..1.5), rng.random_range(-0.5..0.5))
    }

    #[test]
    fn zero_and_oddness() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for cls in classes() {
            assert_eq!(bracket(Complex64::ZERO, cls).unwrap(), Complex64::ZERO);
            for _ in 0..200 {
                let x = rand_c(&mut rng);
                let lhs = bracket(-x, cls).unwrap();
                let rhs = -bracket(x, cls).unwrap();
                assert!((lhs - rhs).norm() < 1e-12, "{cls:?} at {x}");
            }
        }
    }

    #[test]
    fn riemann_relation_all_classes() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for cls in classes() {
            let mut worst: f64 = 0.0;
            for _ in 0..1000 {
                let (x, y, u, v) = (
                    rand_c(&mut rng),
                    rand_c(&mut rng),
                    rand_c(&mut rng),
                    rand_c(&mut rng),
                );
                worst = worst.max(riemann_residual(x, y, u, v, cls).unwrap());
            }
            assert!(worst < 1e-10, "{cls:?}: worst residual {worst}");
        }
    }

    #[test]
    fn factorial_direct_product() {
        // [[x]]_3 with the rational class is x (x+d) (x+2d).
        let ep = EllipticParams::new(Complex64::new(0.31, 0.0), BracketClass::Rational).unwrap();
        let x = Complex64::new(0.7, 0.1);
        let d = ep.delta;
        let want = x * (x + d) * (x + 2.0 * d);
        let got = ep.bracket_factorial(x, 3).unwrap();
        assert!((got - want).norm() < 1e-14);
        assert_eq!(
            ep.bracket_factorial(x, 0).unwrap(),
            Complex64::new(1.0, 0.0)
        );
        assert_eq!(
            ep.bracket_factorial(Complex64::ZERO, 2).unwrap(),
            Complex64::ZERO
        );
    }

    #[test]
    fn factorial_splitting() {
        let ep = EllipticParams::new(
            Complex64::new(0.31, 0.07),
            BracketClass::theta(Complex64::new(0.2, 0.0)).unwrap(),
        )
        .unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let x = rand_c(&mut rng);
            let j = rng.random_range(0..6usize);
            let k = rng.random_range(0..6usize);
            let lhs = ep.bracket_factorial(x, j + k).unwrap();
            let rhs = ep.bracket_factorial(x, j).unwrap()
                * ep.bracket_factorial(x + ep.delta * j as f64, k).unwrap();
            let scale = lhs.norm().max(rhs.norm()).max(1e-30);
            assert!((lhs - rhs).norm() / scale < 1e-10);
        }
    }

    #[test]
    fn genericity_rejects_bad_delta() {
        // delta = 1/2 makes [[2 delta]] = sin(pi) = 0 in the trig class.
        let bad = EllipticParams::new(Complex64::new(0.5, 0.0), BracketClass::Trigonometric);
        assert!(bad.is_err());
        let ok = EllipticParams::new(Complex64::new(0.31, 0.07), BracketClass::Trigonometric);
        assert!(ok.is_ok());
    }

    #[test]
    fn nome_validation() {
        assert!(BracketClass::theta(Complex64::new(1.0, 0.0)).is_err());
        assert!(BracketClass::theta(Complex64::new(0.35, 0.1)).is_ok());
    }
}
