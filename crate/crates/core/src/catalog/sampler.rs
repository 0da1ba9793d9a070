//! Seeded sampling of admissible parameter points for every identity
//! family.
//!
//! Free parameters are drawn as random small rationals (numerator and
//! denominator bounded by 40) or as complex numbers with bounded parts;
//! the balancing condition is then solved exactly for one designated slot,
//! and configurations that trip a pole preflight are rejected and redrawn.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::eval::SamplePoint;
use super::model::Family;
use super::point::{DualityPoint, EllPoint, Point, RatPoint, Termination};
use crate::bracket::EllipticParams;
use crate::error::{Error, Result};
use crate::rational::{rat, Rational};
use crate::series::HardyVector;

/// Bounds and elliptic configuration for sampling.
#[derive(Debug, Clone, Copy)]
pub struct SampleBounds {
    /// Maximum dimension n of multivariate sums.
    pub n_max: u32,
    /// Maximum per-variable bound m_i.
    pub m_max: u32,
    /// Maximum total degree N for the ordinary families.
    pub n_cap_rat: u32,
    /// Maximum total degree N for the elliptic families.
    pub n_cap_ell: u32,
    /// Retry cap for rejected configurations.
    pub retries: usize,
}

impl Default for SampleBounds {
    fn default() -> Self {
        SampleBounds {
            n_max: 3,
            m_max: 3,
            n_cap_rat: 6,
            n_cap_ell: 4,
            retries: 1000,
        }
    }
}

/// Deterministic per-task RNG: a fixed function of (seed, label, index),
/// independent of scheduling order.
pub fn task_rng(seed: u64, label: &str, index: u64) -> ChaCha8Rng {
    let mut h: u64 = 0x9e37_79b9_7f4a_7c15 ^ seed;
    for b in label.bytes() {
        h = h.wrapping_mul(0x100_0000_01b3).wrapping_add(b as u64);
        h ^= h >> 29;
    }
    h = h.wrapping_add(index.wrapping_mul(0x2545_f491_4f6c_dd1d));
    ChaCha8Rng::seed_from_u64(h)
}

/// The family shape an identity's sample points must have. This is the
/// identity's own family except for the one-dimensional duality collapse,
/// whose left-hand side is a triangular multivariate elliptic series.
pub fn sample_family(id: &super::model::TransformIdentity) -> Family {
    match id.map {
        super::model::MapKind::DualityCollapse => Family::EnmTri,
        _ => id.family,
    }
}

/// A point sampler bound to one RNG stream.
pub struct Sampler<'a> {
    rng: &'a mut ChaCha8Rng,
    bounds: SampleBounds,
}

impl<'a> Sampler<'a> {
    /// Creates a sampler over the given stream and bounds.
    pub fn new(rng: &'a mut ChaCha8Rng, bounds: SampleBounds) -> Self {
        Sampler { rng, bounds }
    }

    /// Random integer in `lo..=hi`.
    pub fn small_u32(&mut self, lo: u32, hi: u32) -> u32 {
        self.rng.random_range(lo..=hi)
    }

    /// Random rational with numerator and denominator bounded by 40.
    pub fn rational(&mut self) -> Rational {
        let n = self.rng.random_range(-40i64..=40);
        let d = self.rng.random_range(1i64..=40);
        rat(n, d)
    }

    /// Random complex with real part in [-2, 2] and a modest imaginary
    /// part (large imaginary parts make theta brackets enormous).
    pub fn complex(&mut self) -> Complex64 {
        Complex64::new(
            self.rng.random_range(-2.0..2.0),
            self.rng.random_range(-0.4..0.4),
        )
    }

    fn dimension(&mut self, min_n: u32) -> usize {
        self.rng.random_range(min_n..=self.bounds.n_max) as usize
    }

    fn rect_bounds(&mut self, n: usize) -> Vec<u32> {
        loop {
            let m: Vec<u32> = (0..n)
                .map(|_| self.rng.random_range(0..=self.bounds.m_max))
                .collect();
            if m.iter().sum::<u32>() > 0 {
                return m;
            }
        }
    }

    fn distinct_x(&mut self, n: usize) -> Vec<Rational> {
        loop {
            let x: Vec<Rational> = (0..n).map(|_| self.rational()).collect();
            let ok = (0..n).all(|i| {
                (0..n).all(|j| i == j || !(&x[i] - &x[j]).is_integer())
            });
            if ok {
                return x;
            }
        }
    }

    /// Samples an admissible point for the given family. `min_n` forces a
    /// minimum dimension (the degeneration checks use n = 1 exactly).
    pub fn point_for(&mut self, family: Family, ep: EllipticParams) -> SamplePoint {
        match family {
            Family::F4A1 => {
                let n_cap = self.rng.random_range(1..=self.bounds.n_cap_rat);
                let a1 = self.rational();
                let a2 = self.rational();
                let d1 = self.rational();
                let d2 = self.rational();
                let d3 = self.rational();
                // Solve the balancing condition for a3.
                let a3 = &d1 + &d2 + &d3 - &a1 - &a2 - Rational::from_integer(1.into())
                    + Rational::from_integer((n_cap as i64).into());
                SamplePoint::Rat(Point {
                    family,
                    slots: vec![a1, a2, a3, d1, d2, d3],
                    x: vec![],
                    comp: vec![],
                    term: Termination::Triangular(n_cap),
                })
            }
            Family::F4Rect => {
                let n = self.dimension(1);
                let m = self.rect_bounds(n);
                let total: u32 = m.iter().sum();
                let x = self.distinct_x(n);
                let a1 = self.rational();
                let a2 = self.rational();
                let c = self.rational();
                let e1 = self.rational();
                let e2 = self.rational();
                // Solve the balancing condition for d.
                let d = &a1 + &a2 + &c + Rational::from_integer(1.into())
                    - Rational::from_integer((total as i64).into())
                    - &e1
                    - &e2;
                SamplePoint::Rat(rect_rat_point(vec![a1, a2, c, d, e1, e2], x, m))
            }
            Family::F4Tri => {
                let n = self.dimension(1);
                let n_cap = self.rng.random_range(1..=self.bounds.n_cap_rat);
                let b: Vec<Rational> = (0..n).map(|_| self.rational()).collect();
                let x = self.distinct_x(n);
                let a = self.rational();
                let c = self.rational();
                let e1 = self.rational();
                let e2 = self.rational();
                // Solve the balancing condition for d.
                let d = &a + b.iter().sum::<Rational>() + &c
                    + Rational::from_integer(1.into())
                    - Rational::from_integer((n_cap as i64).into())
                    - &e1
                    - &e2;
                SamplePoint::Rat(Point {
                    family,
                    slots: vec![a, c, d, e1, e2],
                    x,
                    comp: b,
                    term: Termination::Triangular(n_cap),
                })
            }
            Family::E10 => {
                let n_cap = self.rng.random_range(1..=self.bounds.n_cap_ell);
                let s = self.complex();
                let mut c: Vec<Complex64> = (0..5).map(|_| self.complex()).collect();
                // Solve the balancing condition for c5.
                let c5 = ep.delta * (2.0 + n_cap as f64) + s * 3.0
                    - c.iter().sum::<Complex64>();
                c.push(c5);
                let mut slots = vec![s];
                slots.extend(c);
                SamplePoint::Ell(EllPoint {
                    p: Point {
                        family,
                        slots,
                        x: vec![],
                        comp: vec![],
                        term: Termination::Triangular(n_cap),
                    },
                    ep,
                })
            }
            Family::EnmRect => {
                let n = self.dimension(1);
                let m = self.rect_bounds(n);
                let total: u32 = m.iter().sum();
                let x: Vec<Complex64> = (0..n).map(|_| self.complex()).collect();
                let s = self.complex();
                let c0 = self.complex();
                let c1 = self.complex();
                let c2 = self.complex();
                let d0 = self.complex();
                let d1 = self.complex();
                // Solve the balancing condition for d2.
                let d2 = ep.delta * (2.0 + total as f64) + s * 3.0
                    - (c0 + c1 + c2 + d0 + d1);
                let comp = m.iter().map(|&mi| -ep.delta * mi as f64).collect();
                SamplePoint::Ell(EllPoint {
                    p: Point {
                        family,
                        slots: vec![s, c0, c1, c2, d0, d1, d2],
                        x,
                        comp,
                        term: Termination::Rectangular(m),
                    },
                    ep,
                })
            }
            Family::EnmTri => {
                let n = self.dimension(1);
                let n_cap = self.rng.random_range(1..=self.bounds.n_cap_ell);
                let a: Vec<Complex64> = (0..n).map(|_| self.complex()).collect();
                let x: Vec<Complex64> = (0..n).map(|_| self.complex()).collect();
                let s = self.complex();
                let c0 = self.complex();
                let c1 = self.complex();
                let c2 = self.complex();
                let d1 = self.complex();
                // Solve the balancing condition for d2.
                let d2 = ep.delta * (2.0 + n_cap as f64) + s * 3.0
                    - a.iter().sum::<Complex64>()
                    - (c0 + c1 + c2 + d1);
                SamplePoint::Ell(EllPoint {
                    p: Point {
                        family,
                        slots: vec![s, c0, c1, c2, d1, d2],
                        x,
                        comp: a,
                        term: Termination::Triangular(n_cap),
                    },
                    ep,
                })
            }
            Family::Duality => {
                let n = self.rng.random_range(1..=self.bounds.n_max.min(2)) as usize;
                let m = self.rng.random_range(1..=self.bounds.n_max.min(2)) as usize;
                let n_cap = self.rng.random_range(1..=self.bounds.n_cap_ell);
                let a: Vec<Complex64> = (0..n).map(|_| self.complex()).collect();
                let x: Vec<Complex64> = (0..n).map(|_| self.complex()).collect();
                let u: Vec<Complex64> = (0..m).map(|_| self.complex()).collect();
                let v: Vec<Complex64> = (0..m).map(|_| self.complex()).collect();
                let s = self.complex();
                let c1 = self.complex();
                let c2 = self.complex();
                // Solve the balancing condition for d1.
                let d1 = ep.delta * (m as f64 + n_cap as f64 + 1.0)
                    + s * (m as f64 + 2.0)
                    - c1
                    - c2
                    - a.iter().sum::<Complex64>()
                    - u.iter().sum::<Complex64>()
                    - v.iter().sum::<Complex64>();
                SamplePoint::Dual(DualityPoint {
                    a,
                    x,
                    s,
                    c: [c1, c2],
                    d1,
                    u,
                    v,
                    n_cap,
                    ep,
                })
            }
        }
    }

    /// Samples an admissible vector for the symmetric truncated 3F2 form:
    /// near-equal variables so all permutations converge fast enough for
    /// the 400-term truncation.
    pub fn hardy_point(&mut self) -> HardyVector {
        let base = self.rng.random_range(9.8..10.4);
        let mut x = [0.0; 5];
        for xi in &mut x {
            *xi = base + self.rng.random_range(-0.12..0.12);
        }
        HardyVector { x }
    }
}

fn rect_rat_point(slots: Vec<Rational>, x: Vec<Rational>, m: Vec<u32>) -> RatPoint {
    super::point::rat_rect_point(slots, x, m)
}

/// Samples points until `accept` succeeds, up to the retry cap. `accept`
/// should return `Err` for pole/degeneracy rejections (which trigger a
/// redraw) and `Ok` with the result otherwise.
pub fn sample_admissible<T>(
    rng: &mut ChaCha8Rng,
    bounds: SampleBounds,
    family: Family,
    ep: EllipticParams,
    mut accept: impl FnMut(&SamplePoint) -> Result<T>,
) -> Result<T> {
    let mut last = String::new();
    for _ in 0..bounds.retries {
        let pt = Sampler::new(rng, bounds).point_for(family, ep);
        match accept(&pt) {
            Ok(v) => return Ok(v),
            Err(Error::Pole { factor, index }) => {
                last = format!("pole in {factor} at {index}");
            }
            Err(Error::Constraint(msg)) => {
                last = msg;
            }
            Err(e) => return Err(e),
        }
    }
    Err(Error::SamplerExhausted {
        retries: bounds.retries,
        reason: last,
    })
}
