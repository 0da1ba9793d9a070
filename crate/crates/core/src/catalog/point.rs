//! Concrete parameter points the catalog evaluates identities at.

use num_complex::Complex64;

use super::model::{Family, VarMap};
use super::scalar::Scalar;
use crate::bracket::EllipticParams;
use crate::error::{Error, Result};
use crate::rational::{rat_i, Rational};
use crate::series::{
    eval_4f3_terminating, eval_an_4f3, eval_e1d, eval_enm_with_budget, elliptic::ValueWithBudget,
    EnmTermination, F4Kind, Series4F3An, SeriesEnm,
};

/// Termination data shared by all multivariate families.
#[derive(Debug, Clone, PartialEq)]
pub enum Termination {
    /// Componentwise bounds `gamma_i <= m_i`.
    Rectangular(Vec<u32>),
    /// Length bound `|gamma| <= N`.
    Triangular(u32),
}

impl Termination {
    /// The total bound: `|M|` or `N`.
    pub fn total(&self) -> u32 {
        match self {
            Termination::Rectangular(m) => m.iter().sum(),
            Termination::Triangular(n) => *n,
        }
    }
}

/// A family-tagged parameter point over scalar type `K`.
#[derive(Debug, Clone, PartialEq)]
pub struct Point<K> {
    /// The family whose slot layout `slots` follows.
    pub family: Family,
    /// Slot values in [`Family::slot_names`] order.
    pub slots: Vec<K>,
    /// Variables `x_1..x_n` (empty for the one-dimensional families).
    pub x: Vec<K>,
    /// Per-variable companions: `b_i = -m_i` (F4Rect), free `b_i` (F4Tri),
    /// `a_i = -m_i delta` (EnmRect), free `a_i` (EnmTri).
    pub comp: Vec<K>,
    /// Termination bounds.
    pub term: Termination,
}

impl<K: Scalar> Point<K> {
    /// Applies a variable rule, returning the transformed `x` list.
    pub fn mapped_x(&self, rule: VarMap) -> Vec<K> {
        match rule {
            VarMap::Identity => self.x.clone(),
            VarMap::Reflect => {
                let mut comp_sum = K::zero();
                for c in &self.comp {
                    comp_sum = comp_sum.add(c);
                }
                self.x
                    .iter()
                    .zip(&self.comp)
                    .map(|(x, c)| c.sub(&comp_sum).sub(x))
                    .collect()
            }
        }
    }
}

/// Exact-rational point.
pub type RatPoint = Point<Rational>;

/// Complex point with its bracket configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct EllPoint {
    /// Slot data.
    pub p: Point<Complex64>,
    /// Bracket class and shift.
    pub ep: EllipticParams,
}

/// A point of the dimension-swapping duality family.
#[derive(Debug, Clone, PartialEq)]
pub struct DualityPoint {
    /// Per-dimension parameters `a_1..a_n`.
    pub a: Vec<Complex64>,
    /// Variables `x_1..x_n`.
    pub x: Vec<Complex64>,
    /// The distinguished parameter.
    pub s: Complex64,
    /// The two special upper entries `c1, c2`.
    pub c: [Complex64; 2],
    /// The special lower entry `d1` (the other lower special entry is
    /// `-N delta`).
    pub d1: Complex64,
    /// Extra upper entries `u_1..u_m`.
    pub u: Vec<Complex64>,
    /// Extra lower entries `v_1..v_m`.
    pub v: Vec<Complex64>,
    /// Length bound `N`.
    pub n_cap: u32,
    /// Bracket configuration.
    pub ep: EllipticParams,
}

impl DualityPoint {
    /// Residual of the duality balancing condition
    /// `c1+c2+d1+sum a+sum(u+v) = (m+N+1) delta + (m+2) s`.
    pub fn balancing_residual(&self) -> Complex64 {
        let m = self.u.len() as f64;
        let lhs: Complex64 = self.c[0]
            + self.c[1]
            + self.d1
            + self.a.iter().sum::<Complex64>()
            + self.u.iter().sum::<Complex64>()
            + self.v.iter().sum::<Complex64>();
        let rhs = self.ep.delta * (m + self.n_cap as f64 + 1.0) + self.s * (m + 2.0);
        lhs - rhs
    }

    /// The left-hand series of the duality as a concrete series spec.
    pub fn lhs_series(&self) -> SeriesEnm {
        let mut u = vec![self.c[0], self.c[1]];
        u.extend_from_slice(&self.u);
        let mut v = vec![self.d1, -self.ep.delta * self.n_cap as f64];
        v.extend_from_slice(&self.v);
        SeriesEnm {
            a: self.a.clone(),
            x: self.x.clone(),
            s: self.s,
            u,
            v,
            ep: self.ep,
            termination: EnmTermination::Triangular(self.n_cap),
        }
    }
}

/// Evaluates the series value at a rational point.
pub fn eval_rat_point(pt: &RatPoint) -> Result<Rational> {
    match pt.family {
        Family::F4A1 => {
            let n_cap = match &pt.term {
                Termination::Triangular(n) => *n,
                _ => return Err(Error::Constraint("F4A1 points are triangular".into())),
            };
            let a = [pt.slots[0].clone(), pt.slots[1].clone(), pt.slots[2].clone()];
            let d = [pt.slots[3].clone(), pt.slots[4].clone(), pt.slots[5].clone()];
            eval_4f3_terminating(n_cap, &a, &d)
        }
        Family::F4Rect => {
            let m = match &pt.term {
                Termination::Rectangular(m) => m.clone(),
                _ => return Err(Error::Constraint("F4Rect points are rectangular".into())),
            };
            eval_an_4f3(&Series4F3An {
                kind: F4Kind::Rectangular { m },
                x: pt.x.clone(),
                a: vec![pt.slots[0].clone(), pt.slots[1].clone()],
                e: [pt.slots[4].clone(), pt.slots[5].clone()],
                c: pt.slots[2].clone(),
                d: pt.slots[3].clone(),
            })
        }
        Family::F4Tri => {
            let n_cap = match &pt.term {
                Termination::Triangular(n) => *n,
                _ => return Err(Error::Constraint("F4Tri points are triangular".into())),
            };
            eval_an_4f3(&Series4F3An {
                kind: F4Kind::Triangular {
                    n_cap,
                    b: pt.comp.clone(),
                },
                x: pt.x.clone(),
                a: vec![pt.slots[0].clone()],
                e: [pt.slots[3].clone(), pt.slots[4].clone()],
                c: pt.slots[1].clone(),
                d: pt.slots[2].clone(),
            })
        }
        other => Err(Error::Constraint(format!(
            "family {other:?} is not rational"
        ))),
    }
}

/// Evaluates the series value at an elliptic point, with its error budget.
pub fn eval_ell_point_budget(pt: &EllPoint) -> Result<ValueWithBudget> {
    let p = &pt.p;
    match p.family {
        Family::E10 => {
            let n_cap = match &p.term {
                Termination::Triangular(n) => *n,
                _ => return Err(Error::Constraint("E10 points are triangular".into())),
            };
            // Balancing of a raw point is the caller's concern; the
            // catalog checks it before evaluating.
            let mut params = p.slots[1..7].to_vec();
            params.push(-pt.ep.delta * n_cap as f64);
            eval_e1d(p.slots[0], &params, n_cap, &pt.ep)
        }
        Family::EnmRect => {
            let m = match &p.term {
                Termination::Rectangular(m) => m.clone(),
                _ => return Err(Error::Constraint("EnmRect points are rectangular".into())),
            };
            eval_enm_with_budget(&SeriesEnm {
                a: p.comp.clone(),
                x: p.x.clone(),
                s: p.slots[0],
                u: p.slots[1..4].to_vec(),
                v: p.slots[4..7].to_vec(),
                ep: pt.ep,
                termination: EnmTermination::Rectangular(m),
            })
        }
        Family::EnmTri => {
            let n_cap = match &p.term {
                Termination::Triangular(n) => *n,
                _ => return Err(Error::Constraint("EnmTri points are triangular".into())),
            };
            let mut v = vec![-pt.ep.delta * n_cap as f64];
            v.push(p.slots[4]);
            v.push(p.slots[5]);
            eval_enm_with_budget(&SeriesEnm {
                a: p.comp.clone(),
                x: p.x.clone(),
                s: p.slots[0],
                u: p.slots[1..4].to_vec(),
                v,
                ep: pt.ep,
                termination: EnmTermination::Triangular(n_cap),
            })
        }
        other => Err(Error::Constraint(format!(
            "family {other:?} is not a slot-based elliptic family"
        ))),
    }
}

/// Evaluates the series value at an elliptic point.
pub fn eval_ell_point(pt: &EllPoint) -> Result<Complex64> {
    Ok(eval_ell_point_budget(pt)?.value)
}

/// Builds a rectangular rational point with `b_i = -m_i` companions.
pub fn rat_rect_point(slots: Vec<Rational>, x: Vec<Rational>, m: Vec<u32>) -> RatPoint {
    let comp = m.iter().map(|&mi| rat_i(-(mi as i64))).collect();
    Point {
        family: Family::F4Rect,
        slots,
        x,
        comp,
        term: Termination::Rectangular(m),
    }
}

/// Builds a rectangular elliptic point with `a_i = -m_i delta` companions.
pub fn ell_rect_point(
    slots: Vec<Complex64>,
    x: Vec<Complex64>,
    m: Vec<u32>,
    ep: EllipticParams,
) -> EllPoint {
    let comp = m.iter().map(|&mi| -ep.delta * mi as f64).collect();
    EllPoint {
        p: Point {
            family: Family::EnmRect,
            slots,
            x,
            comp,
            term: Termination::Rectangular(m),
        },
        ep,
    }
}
