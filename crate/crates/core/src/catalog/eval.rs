//! Applying catalog identities to parameter points and certifying them.

use num_complex::Complex64;
use num_traits::Zero;
use serde::Serialize;

use super::model::{Family, MapKind, Prefactor, TransformIdentity};
use super::point::{
    eval_ell_point_budget, eval_rat_point, DualityPoint, EllPoint, Point, RatPoint, Termination,
};
use crate::error::{Error, Result};
use crate::rational::{format_ratio, pochhammer, pochhammer_vanishes, rat_i, Rational};
use crate::series::{eval_e1d, eval_enm_with_budget, EnmTermination, SeriesEnm};

/// Default relative tolerance for elliptic identity residuals.
pub const ELLIPTIC_TOL: f64 = 1e-8;

/// Absolute scale-relative tolerance for elliptic balancing checks.
const BALANCE_TOL: f64 = 1e-12;

/// Magnitude floor for prefactor denominators in the elliptic families.
const PF_FLOOR: f64 = 1e-9;

/// A parameter point of whichever shape the identity's family expects.
#[derive(Debug, Clone)]
pub enum SamplePoint {
    /// Exact-rational slot point.
    Rat(RatPoint),
    /// Complex slot point.
    Ell(EllPoint),
    /// Dimension-swapping duality point.
    Dual(DualityPoint),
}

/// Residual of a verification: exact equality or a relative float.
#[derive(Debug, Clone, Copy, Serialize)]
pub enum Residual {
    /// Exact comparison over rationals.
    Exact {
        /// Whether both sides were identical.
        equal: bool,
    },
    /// Scale-free relative residual.
    Relative(f64),
}

impl Residual {
    /// Residual as a float for reports (0 for exact passes).
    pub fn as_f64(&self) -> f64 {
        match self {
            Residual::Exact { equal } => {
                if *equal {
                    0.0
                } else {
                    1.0
                }
            }
            Residual::Relative(r) => *r,
        }
    }
}

/// Outcome of verifying one identity at one point.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationResult {
    /// Identity name.
    pub identity: String,
    /// Sample index (assigned by the caller; 0 for single checks).
    pub sample_id: usize,
    /// Display form of the left-hand side.
    pub lhs: String,
    /// Display form of prefactor times the right-hand side.
    pub rhs_scaled: String,
    /// The residual.
    pub residual: Residual,
    /// Pass flag: exact equality or residual below tolerance.
    pub pass: bool,
}

fn check_balancing_rat(id: &TransformIdentity, pt: &RatPoint) -> Result<()> {
    let t = pt.term.total() as i64;
    let res = id
        .balancing
        .eval(&pt.slots, &pt.comp, &Rational::from_integer(1.into()), t);
    if !res.is_zero() {
        return Err(Error::Balancing(format!(
            "{}: balancing residual {res}",
            id.name
        )));
    }
    Ok(())
}

fn check_balancing_ell(id: &TransformIdentity, pt: &EllPoint) -> Result<()> {
    let t = pt.p.term.total() as i64;
    let res = id
        .balancing
        .eval(&pt.p.slots, &pt.p.comp, &pt.ep.delta, t);
    let scale = pt
        .p
        .slots
        .iter()
        .map(|z| z.norm())
        .fold(1.0f64, f64::max)
        .max(pt.ep.delta.norm() * (2.0 + t as f64));
    if res.norm() > BALANCE_TOL * scale * 10.0 {
        return Err(Error::Balancing(format!(
            "{}: balancing residual {}",
            id.name,
            res.norm()
        )));
    }
    Ok(())
}

/// Per-variable factor lengths for a prefactor at a point.
fn pervar_lens<K>(family: Family, pt: &Point<K>) -> Vec<usize> {
    let n = pt.x.len();
    if family.pervar_len_is_mi() {
        match &pt.term {
            Termination::Rectangular(m) => m.iter().map(|&mi| mi as usize).collect(),
            Termination::Triangular(_) => vec![0; n],
        }
    } else {
        vec![pt.term.total() as usize; n]
    }
}

/// Evaluates a prefactor over exact rationals.
fn prefactor_rat(pf: &Prefactor, pt: &RatPoint) -> Result<Rational> {
    let t = pt.term.total() as usize;
    let one = rat_i(1);
    let mut val = if pf.sign_total && t % 2 == 1 {
        -rat_i(1)
    } else {
        rat_i(1)
    };
    for e in &pf.global_num {
        let base = e.eval(&pt.slots, &pt.comp, &one, t as i64);
        val *= pochhammer(&base, t);
    }
    for e in &pf.global_den {
        let base = e.eval(&pt.slots, &pt.comp, &one, t as i64);
        if pochhammer_vanishes(&base, t) {
            return Err(Error::Pole {
                factor: format!("prefactor denominator {base}"),
                index: format!("length {t}"),
            });
        }
        val /= pochhammer(&base, t);
    }
    let lens = pervar_lens(pt.family, pt);
    if pf.sign_pervar && lens.iter().sum::<usize>() % 2 == 1 {
        val = -val;
    }
    for (i, len) in lens.iter().enumerate() {
        for e in &pf.pervar_num {
            let base = e.eval(&pt.slots, &pt.comp, &pt.x, &one, t as i64, i);
            val *= pochhammer(&base, *len);
        }
        for e in &pf.pervar_den {
            let base = e.eval(&pt.slots, &pt.comp, &pt.x, &one, t as i64, i);
            if pochhammer_vanishes(&base, *len) {
                return Err(Error::Pole {
                    factor: format!("per-variable prefactor denominator {base}"),
                    index: format!("variable {} length {len}", i + 1),
                });
            }
            val /= pochhammer(&base, *len);
        }
    }
    Ok(val)
}

/// Evaluates a prefactor over complex doubles.
fn prefactor_ell(pf: &Prefactor, pt: &EllPoint) -> Result<Complex64> {
    let p = &pt.p;
    let ep = &pt.ep;
    let t = p.term.total() as usize;
    let mut val = if pf.sign_total && t % 2 == 1 {
        -Complex64::ONE
    } else {
        Complex64::ONE
    };
    let floor_check = |base: Complex64, len: usize, what: &str| -> Result<()> {
        for j in 0..len {
            if ep.bracket(base + ep.delta * j as f64)?.norm() < PF_FLOOR {
                return Err(Error::Pole {
                    factor: format!("prefactor denominator {what} = {base}"),
                    index: format!("shift {j}"),
                });
            }
        }
        Ok(())
    };
    for e in &pf.global_num {
        let base = e.eval(&p.slots, &p.comp, &ep.delta, t as i64);
        val *= ep.bracket_factorial(base, t)?;
    }
    for e in &pf.global_den {
        let base = e.eval(&p.slots, &p.comp, &ep.delta, t as i64);
        floor_check(base, t, "global")?;
        val /= ep.bracket_factorial(base, t)?;
    }
    let lens = pervar_lens(p.family, p);
    if pf.sign_pervar && lens.iter().sum::<usize>() % 2 == 1 {
        val = -val;
    }
    for (i, len) in lens.iter().enumerate() {
        for e in &pf.pervar_num {
            let base = e.eval(&p.slots, &p.comp, &p.x, &ep.delta, t as i64, i);
            val *= ep.bracket_factorial(base, *len)?;
        }
        for e in &pf.pervar_den {
            let base = e.eval(&p.slots, &p.comp, &p.x, &ep.delta, t as i64, i);
            floor_check(base, *len, "per-variable")?;
            val /= ep.bracket_factorial(base, *len)?;
        }
    }
    Ok(val)
}

/// Applies an affine identity to a rational point: image point and exact
/// prefactor.
pub fn apply_rat(id: &TransformIdentity, pt: &RatPoint) -> Result<(RatPoint, Rational)> {
    let MapKind::Affine { param_map, var_map } = &id.map else {
        return Err(Error::Constraint(format!(
            "{} is not an affine identity",
            id.name
        )));
    };
    check_balancing_rat(id, pt)?;
    let one = rat_i(1);
    let t = pt.term.total() as i64;
    let slots: Vec<Rational> = param_map
        .iter()
        .map(|e| e.eval(&pt.slots, &pt.comp, &one, t))
        .collect();
    let image = RatPoint {
        family: pt.family,
        slots,
        x: pt.mapped_x(*var_map),
        comp: pt.comp.clone(),
        term: pt.term.clone(),
    };
    let pf = prefactor_rat(&id.prefactor, pt)?;
    Ok((image, pf))
}

/// Applies an affine identity to an elliptic point.
pub fn apply_ell(id: &TransformIdentity, pt: &EllPoint) -> Result<(EllPoint, Complex64)> {
    let MapKind::Affine { param_map, var_map } = &id.map else {
        return Err(Error::Constraint(format!(
            "{} is not an affine identity",
            id.name
        )));
    };
    check_balancing_ell(id, pt)?;
    let t = pt.p.term.total() as i64;
    let slots: Vec<Complex64> = param_map
        .iter()
        .map(|e| e.eval(&pt.p.slots, &pt.p.comp, &pt.ep.delta, t))
        .collect();
    let image = EllPoint {
        p: Point {
            family: pt.p.family,
            slots,
            x: pt.p.mapped_x(*var_map),
            comp: pt.p.comp.clone(),
            term: pt.p.term.clone(),
        },
        ep: pt.ep,
    };
    let pf = prefactor_ell(&id.prefactor, pt)?;
    Ok((image, pf))
}

/// The right-hand side of the full duality move: a series spec of swapped
/// dimension plus the prefactor.
pub fn apply_duality_swap(pt: &DualityPoint) -> Result<(SeriesEnm, Complex64)> {
    let scale = pt
        .a
        .iter()
        .chain(&pt.u)
        .chain(&pt.v)
        .map(|z| z.norm())
        .fold(1.0f64, f64::max);
    let res = pt.balancing_residual();
    if res.norm() > BALANCE_TOL * scale * 100.0 {
        return Err(Error::Balancing(format!(
            "duality balancing residual {}",
            res.norm()
        )));
    }
    let ep = &pt.ep;
    let d = ep.delta;
    let nd = d * pt.n_cap as f64;
    let s = pt.s;
    // d2 plays the terminating role -N delta.
    let t = pt.d1 - nd - s - d;
    let b: Vec<Complex64> = pt
        .u
        .iter()
        .zip(&pt.v)
        .map(|(u, v)| d + s - u - v)
        .collect();
    let y: Vec<Complex64> = pt.v.iter().map(|v| d + s - v).collect();
    let z: Vec<Complex64> = pt.x.iter().zip(&pt.a).map(|(x, a)| x - a).collect();
    let w: Vec<Complex64> = pt.x.iter().map(|x| pt.d1 - nd - s - x).collect();
    let mut u_img = vec![-pt.c[0], -pt.c[1]];
    u_img.extend(z);
    let mut v_img = vec![pt.d1, -nd];
    v_img.extend(w);
    let rhs = SeriesEnm {
        a: b,
        x: y,
        s: t,
        u: u_img,
        v: v_img,
        ep: *ep,
        termination: EnmTermination::Triangular(pt.n_cap),
    };
    // Prefactor.
    let n_cap = pt.n_cap as usize;
    let bf = |x: Complex64| ep.bracket_factorial(x, n_cap);
    let mut pf = bf(d + s - pt.c[0] - pt.d1)? * bf(d + s - pt.c[1] - pt.d1)?
        / (bf(d + s - pt.c[0])? * bf(d + s - pt.c[1])?);
    for (u, v) in pt.u.iter().zip(&pt.v) {
        pf *= bf(*v)? * bf(d + s - u - pt.d1)?;
        pf /= bf(d + s - u)? * bf(v - pt.d1)?;
    }
    for (x, a) in pt.x.iter().zip(&pt.a) {
        pf *= bf(d + s + x)? * bf(d + s + x - a - pt.d1)?;
        pf /= bf(d + s + x - a)? * bf(d + s + x - pt.d1)?;
    }
    Ok((rhs, pf))
}

/// The duality point on the other side of the swap (for the involution
/// check: applying the swap twice returns the original parameters).
pub fn duality_swap_point(pt: &DualityPoint) -> DualityPoint {
    let ep = &pt.ep;
    let d = ep.delta;
    let nd = d * pt.n_cap as f64;
    let s = pt.s;
    DualityPoint {
        a: pt
            .u
            .iter()
            .zip(&pt.v)
            .map(|(u, v)| d + s - u - v)
            .collect(),
        x: pt.v.iter().map(|v| d + s - v).collect(),
        s: pt.d1 - nd - s - d,
        c: [-pt.c[0], -pt.c[1]],
        d1: pt.d1,
        u: pt.x.iter().zip(&pt.a).map(|(x, a)| x - a).collect(),
        v: pt.x.iter().map(|x| pt.d1 - nd - s - x).collect(),
        n_cap: pt.n_cap,
        ep: pt.ep,
    }
}

/// The one-dimensional collapse of the duality: right-hand series
/// parameters and prefactor. The point is an `EnmTri`-shaped slot point
/// whose (d1, d2) slots play the roles (d0, d1) of the collapse.
pub fn apply_duality_collapse(pt: &EllPoint) -> Result<(Complex64, Vec<Complex64>, Complex64)> {
    if pt.p.family != Family::EnmTri {
        return Err(Error::Constraint(
            "the one-dimensional duality collapse expects a triangular elliptic point".into(),
        ));
    }
    let ep = &pt.ep;
    let d = ep.delta;
    let p = &pt.p;
    let n_cap = p.term.total();
    let nd = d * n_cap as f64;
    let s = p.slots[0];
    let c = [p.slots[1], p.slots[2], p.slots[3]];
    let (d0, d1) = (p.slots[4], p.slots[5]);
    // Balancing: sum a + c0+c1+c2 + d0+d1 = (2+N) delta + 3 s.
    let lhs: Complex64 =
        p.comp.iter().sum::<Complex64>() + c[0] + c[1] + c[2] + d0 + d1;
    let want = d * (2.0 + n_cap as f64) + s * 3.0;
    if (lhs - want).norm() > BALANCE_TOL * want.norm().max(1.0) * 100.0 {
        return Err(Error::Balancing(format!(
            "collapse balancing residual {}",
            (lhs - want).norm()
        )));
    }
    let t = d1 - nd - d0;
    let mut params: Vec<Complex64> = c.iter().map(|ck| d + s - d0 - ck).collect();
    for (x, a) in p.x.iter().zip(&p.comp) {
        params.push(d + s - d0 + x - a);
    }
    for x in &p.x {
        params.push(d1 - nd - s - x);
    }
    params.push(d1);
    params.push(-nd);
    // Prefactor.
    let n_us = n_cap as usize;
    let bf = |x: Complex64| ep.bracket_factorial(x, n_us);
    let mut pf = bf(d0)? / bf(d0 - d1)?;
    for ck in c {
        pf *= bf(d + s - ck - d1)? / bf(d + s - ck)?;
    }
    for (x, a) in p.x.iter().zip(&p.comp) {
        pf *= bf(d + s + x)? * bf(d + s + x - a - d1)?;
        pf /= bf(d + s + x - a)? * bf(d + s + x - d1)?;
    }
    Ok((t, params, pf))
}

fn relative_residual(lhs: Complex64, rhs_scaled: Complex64) -> f64 {
    (lhs - rhs_scaled).norm() / lhs.norm().max(rhs_scaled.norm()).max(1e-30)
}

/// Rejects points whose accumulated error budget cannot certify the
/// requested tolerance: at such a point neither a pass nor a fail would be
/// defensible, so the sampler must redraw.
fn check_conditioning(budget_abs: f64, scale: f64, tol: f64) -> Result<()> {
    if budget_abs > tol * scale.max(1e-30) {
        return Err(Error::Constraint(format!(
            "error budget {budget_abs:.3e} cannot certify tolerance {tol:.1e} at scale {scale:.3e}"
        )));
    }
    Ok(())
}

fn fmt_c(z: Complex64) -> String {
    if z.im >= 0.0 {
        format!("{}+{}i", z.re, z.im)
    } else {
        format!("{}{}i", z.re, z.im)
    }
}

/// Verifies an identity at a point: exact equality for the rational
/// families, relative residual below `tol` for the elliptic ones.
pub fn verify_at(
    id: &TransformIdentity,
    pt: &SamplePoint,
    tol: f64,
) -> Result<VerificationResult> {
    match (&id.map, pt) {
        (MapKind::Affine { .. }, SamplePoint::Rat(p)) => {
            let lhs = eval_rat_point(p)?;
            let (image, pf) = apply_rat(id, p)?;
            let rhs = eval_rat_point(&image)?;
            let scaled = pf * rhs;
            let equal = lhs == scaled;
            Ok(VerificationResult {
                identity: id.name.to_string(),
                sample_id: 0,
                lhs: format_ratio(&lhs),
                rhs_scaled: format_ratio(&scaled),
                residual: Residual::Exact { equal },
                pass: equal,
            })
        }
        (MapKind::Affine { .. }, SamplePoint::Ell(p)) => {
            let lhs_b = eval_ell_point_budget(p)?;
            let (image, pf) = apply_ell(id, p)?;
            let rhs_b = eval_ell_point_budget(&image)?;
            let (lhs, rhs) = (lhs_b.value, rhs_b.value);
            let scaled = pf * rhs;
            let scale = lhs.norm().max(scaled.norm());
            check_conditioning(
                lhs_b.error_budget + pf.norm() * rhs_b.error_budget,
                scale,
                tol,
            )?;
            let r = relative_residual(lhs, scaled);
            Ok(VerificationResult {
                identity: id.name.to_string(),
                sample_id: 0,
                lhs: fmt_c(lhs),
                rhs_scaled: fmt_c(scaled),
                residual: Residual::Relative(r),
                pass: r < tol,
            })
        }
        (MapKind::DualitySwap, SamplePoint::Dual(p)) => {
            let lhs_b = eval_enm_with_budget(&p.lhs_series())?;
            let (rhs_series, pf) = apply_duality_swap(p)?;
            let rhs_b = eval_enm_with_budget(&rhs_series)?;
            let (lhs, rhs) = (lhs_b.value, rhs_b.value);
            let scaled = pf * rhs;
            check_conditioning(
                lhs_b.error_budget + pf.norm() * rhs_b.error_budget,
                lhs.norm().max(scaled.norm()),
                tol,
            )?;
            let r = relative_residual(lhs, scaled);
            Ok(VerificationResult {
                identity: id.name.to_string(),
                sample_id: 0,
                lhs: fmt_c(lhs),
                rhs_scaled: fmt_c(scaled),
                residual: Residual::Relative(r),
                pass: r < tol,
            })
        }
        (MapKind::DualityCollapse, SamplePoint::Ell(p)) => {
            let lhs_b = eval_ell_point_budget(p)?;
            let (t, params, pf) = apply_duality_collapse(p)?;
            let rhs_b = eval_e1d(t, &params, p.p.term.total(), &p.ep)?;
            let (lhs, rhs) = (lhs_b.value, rhs_b.value);
            let scaled = pf * rhs;
            check_conditioning(
                lhs_b.error_budget + pf.norm() * rhs_b.error_budget,
                lhs.norm().max(scaled.norm()),
                tol,
            )?;
            let r = relative_residual(lhs, scaled);
            Ok(VerificationResult {
                identity: id.name.to_string(),
                sample_id: 0,
                lhs: fmt_c(lhs),
                rhs_scaled: fmt_c(scaled),
                residual: Residual::Relative(r),
                pass: r < tol,
            })
        }
        _ => Err(Error::Constraint(format!(
            "point shape does not match identity {}",
            id.name
        ))),
    }
}
