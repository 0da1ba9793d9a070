//! The degeneration matrix: every multivariate identity, specialized to
//! one dimension with the variable at zero, is certified to be an instance
//! of its stated one-dimensional identity.
//!
//! At such a point both sides collapse to one-dimensional series whose
//! parameter multisets are computable, so the certification searches for a
//! slot arrangement of the one-dimensional identity under which the two
//! instances have equal prefactors and equal image parameter multisets
//! (exactly for the ordinary families, to tolerance for the elliptic
//! ones).

use num_complex::Complex64;
use serde::Serialize;

use super::entries::lookup;
use super::eval::{apply_ell, apply_rat};
use super::model::Family;
use super::point::{EllPoint, Point, RatPoint, Termination};
use super::sampler::{task_rng, SampleBounds, Sampler};
use crate::bracket::EllipticParams;
use crate::error::{Error, Result};
use crate::rational::Rational;

/// One certified reduction.
#[derive(Debug, Clone, Serialize)]
pub struct DegenerationCheck {
    /// "source -> target".
    pub reduction: String,
    /// Points certified.
    pub points: usize,
    /// Worst prefactor residual at the matched arrangement (0 = exact).
    pub worst_residual: f64,
    /// All points matched.
    pub pass: bool,
}

/// The full degeneration report.
#[derive(Debug, Clone, Serialize)]
pub struct DegenerationReport {
    /// Individual reductions.
    pub checks: Vec<DegenerationCheck>,
    /// All reductions certified.
    pub pass: bool,
}

/// The reduction table: source identity, target identity.
pub fn reduction_pairs() -> Vec<(&'static str, &'static str)> {
    vec![
        ("ias1", "d1st1"),
        ("ias2", "d1st1"),
        ("ias3", "d1st1"),
        ("las1", "d1st1"),
        ("las2", "d1st1"),
        ("iars1", "d1rst1"),
        ("iars2", "d1rst1"),
        ("iars3", "d1rst1"),
        ("iar", "ad1r1"),
        ("MN", "EBaileyT1"),
        ("KN", "EBaileyT1"),
        ("LMN", "EBaileyT1"),
        ("LKN", "EBaileyT1"),
        ("T(2,0)", "mn1EBDT1"),
        ("T(1,1)", "mn1EBDT1"),
        ("LMNKN", "mn1EBDT1"),
        ("T(3,0)", "BaileyT3"),
        ("T(2,1)", "BaileyT3"),
        ("T(3,1)", "BaileyT4"),
    ]
}

/// Samples an n = 1, x = 0 point of the given multivariate family.
fn point_n1_x0(
    sampler: &mut Sampler<'_>,
    family: Family,
    ep: EllipticParams,
    bounds: SampleBounds,
) -> Result<N1Point> {
    match family {
        Family::F4Rect => {
            let m1 = sampler.small_u32(1, bounds.m_max.max(1));
            let a1 = sampler.rational();
            let a2 = sampler.rational();
            let c = sampler.rational();
            let e1 = sampler.rational();
            let e2 = sampler.rational();
            let d = &a1 + &a2 + &c + Rational::from_integer(1.into())
                - Rational::from_integer((m1 as i64).into())
                - &e1
                - &e2;
            Ok(N1Point::Rat(super::point::rat_rect_point(
                vec![a1, a2, c, d, e1, e2],
                vec![Rational::from_integer(0.into())],
                vec![m1],
            )))
        }
        Family::F4Tri => {
            let n_cap = sampler.small_u32(1, bounds.n_cap_rat.max(1));
            let b = sampler.rational();
            let a = sampler.rational();
            let c = sampler.rational();
            let e1 = sampler.rational();
            let e2 = sampler.rational();
            let d = &a + &b + &c + Rational::from_integer(1.into())
                - Rational::from_integer((n_cap as i64).into())
                - &e1
                - &e2;
            Ok(N1Point::Rat(Point {
                family,
                slots: vec![a, c, d, e1, e2],
                x: vec![Rational::from_integer(0.into())],
                comp: vec![b],
                term: Termination::Triangular(n_cap),
            }))
        }
        Family::EnmRect => {
            let m1 = sampler.small_u32(1, bounds.n_cap_ell.max(1));
            let s = sampler.complex();
            let c0 = sampler.complex();
            let c1 = sampler.complex();
            let c2 = sampler.complex();
            let d0 = sampler.complex();
            let d1 = sampler.complex();
            let d2 = ep.delta * (2.0 + m1 as f64) + s * 3.0 - (c0 + c1 + c2 + d0 + d1);
            Ok(N1Point::Ell(super::point::ell_rect_point(
                vec![s, c0, c1, c2, d0, d1, d2],
                vec![Complex64::ZERO],
                vec![m1],
                ep,
            )))
        }
        Family::EnmTri => {
            let n_cap = sampler.small_u32(1, bounds.n_cap_ell.max(1));
            let a1 = sampler.complex();
            let s = sampler.complex();
            let c0 = sampler.complex();
            let c1 = sampler.complex();
            let c2 = sampler.complex();
            let d1 = sampler.complex();
            let d2 = ep.delta * (2.0 + n_cap as f64) + s * 3.0 - a1 - (c0 + c1 + c2 + d1);
            Ok(N1Point::Ell(EllPoint {
                p: Point {
                    family,
                    slots: vec![s, c0, c1, c2, d1, d2],
                    x: vec![Complex64::ZERO],
                    comp: vec![a1],
                    term: Termination::Triangular(n_cap),
                },
                ep,
            }))
        }
        other => Err(Error::Constraint(format!(
            "family {other:?} has no n = 1 degeneration"
        ))),
    }
}

enum N1Point {
    Rat(RatPoint),
    Ell(EllPoint),
}

/// One-dimensional instance data of a collapsed point: upper/lower
/// parameter multisets for the ordinary case.
fn rat_f43_data(pt: &RatPoint) -> (u32, Vec<Rational>, Vec<Rational>) {
    match pt.family {
        Family::F4Rect => {
            let n_cap = pt.term.total();
            (
                n_cap,
                vec![pt.slots[0].clone(), pt.slots[1].clone(), pt.slots[2].clone()],
                vec![pt.slots[3].clone(), pt.slots[4].clone(), pt.slots[5].clone()],
            )
        }
        Family::F4Tri => {
            let n_cap = pt.term.total();
            (
                n_cap,
                vec![pt.slots[0].clone(), pt.comp[0].clone(), pt.slots[1].clone()],
                vec![pt.slots[2].clone(), pt.slots[3].clone(), pt.slots[4].clone()],
            )
        }
        _ => unreachable!(),
    }
}

/// Free parameters of the collapsed elliptic point as a 10E9 instance:
/// (s, the six non-terminating parameters).
fn ell_e10_data(pt: &EllPoint) -> (u32, Complex64, Vec<Complex64>) {
    let p = &pt.p;
    match p.family {
        Family::EnmRect => (p.term.total(), p.slots[0], p.slots[1..7].to_vec()),
        Family::EnmTri => {
            let mut params = p.slots[1..6].to_vec();
            params.push(p.comp[0]);
            (p.term.total(), p.slots[0], params)
        }
        _ => unreachable!(),
    }
}

fn multiset_eq_rat(a: &[Rational], b: &[Rational]) -> bool {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort();
    b.sort();
    a == b
}

fn multiset_match_c(a: &[Complex64], b: &[Complex64], tol: f64) -> bool {
    let mut used = vec![false; b.len()];
    if a.len() != b.len() {
        return false;
    }
    for va in a {
        let scale = va.norm().max(1.0);
        let Some(i) = b
            .iter()
            .enumerate()
            .position(|(i, vb)| !used[i] && (va - vb).norm() < tol * scale)
        else {
            return false;
        };
        used[i] = true;
    }
    true
}

fn perms3() -> Vec<[usize; 3]> {
    vec![
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ]
}

fn perms6() -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    fn rec(cur: &mut Vec<usize>, rest: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest.is_empty() {
            out.push(cur.clone());
            return;
        }
        for i in 0..rest.len() {
            let v = rest.remove(i);
            cur.push(v);
            rec(cur, rest, out);
            cur.pop();
            rest.insert(i, v);
        }
    }
    rec(&mut Vec::new(), &mut (0..6).collect(), &mut out);
    out
}

/// Certifies one ordinary reduction at one point; exact.
fn certify_rat_point(source: &str, target: &str, pt: &RatPoint) -> Result<bool> {
    let src = lookup(source).expect("catalog entry");
    let tgt = lookup(target).expect("catalog entry");
    let (img, pf) = apply_rat(&src, pt)?;
    let (n_cap, upper, lower) = rat_f43_data(pt);
    let (_, img_upper, img_lower) = rat_f43_data(&img);
    for pa in perms3() {
        for pd in perms3() {
            let slots = vec![
                upper[pa[0]].clone(),
                upper[pa[1]].clone(),
                upper[pa[2]].clone(),
                lower[pd[0]].clone(),
                lower[pd[1]].clone(),
                lower[pd[2]].clone(),
            ];
            let a1pt = Point {
                family: Family::F4A1,
                slots,
                x: vec![],
                comp: vec![],
                term: Termination::Triangular(n_cap),
            };
            let Ok((timg, tpf)) = apply_rat(&tgt, &a1pt) else {
                continue;
            };
            if tpf == pf
                && multiset_eq_rat(&timg.slots[0..3], &img_upper)
                && multiset_eq_rat(&timg.slots[3..6], &img_lower)
            {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Certifies one elliptic reduction at one point; returns the prefactor
/// residual at the matched arrangement.
fn certify_ell_point(
    source: &str,
    target: &str,
    pt: &EllPoint,
    tol: f64,
) -> Result<Option<f64>> {
    let src = lookup(source).expect("catalog entry");
    let tgt = lookup(target).expect("catalog entry");
    let (img, pf) = apply_ell(&src, pt)?;
    let (n_cap, s, params) = ell_e10_data(pt);
    let (_, img_s, img_params) = ell_e10_data(&img);
    for perm in perms6() {
        let mut slots = vec![s];
        slots.extend(perm.iter().map(|&i| params[i]));
        let e10pt = EllPoint {
            p: Point {
                family: Family::E10,
                slots,
                x: vec![],
                comp: vec![],
                term: Termination::Triangular(n_cap),
            },
            ep: pt.ep,
        };
        let Ok((timg, tpf)) = apply_ell(&tgt, &e10pt) else {
            continue;
        };
        let pf_res = (tpf - pf).norm() / tpf.norm().max(pf.norm()).max(1e-30);
        if pf_res < tol
            && (timg.p.slots[0] - img_s).norm() < tol * img_s.norm().max(1.0)
            && multiset_match_c(&timg.p.slots[1..7], &img_params, tol)
        {
            return Ok(Some(pf_res));
        }
    }
    Ok(None)
}

/// Runs the full degeneration matrix.
pub fn verify_degenerations(
    points: usize,
    seed: u64,
    ep: EllipticParams,
    tol: f64,
) -> Result<DegenerationReport> {
    let bounds = SampleBounds::default();
    let mut checks = Vec::new();
    for (source, target) in reduction_pairs() {
        let family = lookup(source).expect("catalog entry").family;
        let mut rng = task_rng(seed, &format!("degenerate:{source}"), 0);
        let mut pass = true;
        let mut worst = 0.0f64;
        let mut done = 0usize;
        let mut attempts = 0usize;
        while done < points && attempts < bounds.retries {
            attempts += 1;
            let mut sampler = Sampler::new(&mut rng, bounds);
            let pt = point_n1_x0(&mut sampler, family, ep, bounds)?;
            let outcome = match &pt {
                N1Point::Rat(p) => match certify_rat_point(source, target, p) {
                    Ok(true) => Some(0.0),
                    Ok(false) => {
                        pass = false;
                        Some(1.0)
                    }
                    Err(Error::Pole { .. }) | Err(Error::Constraint(_)) => None,
                    Err(e) => return Err(e),
                },
                N1Point::Ell(p) => match certify_ell_point(source, target, p, tol) {
                    Ok(Some(r)) => Some(r),
                    Ok(None) => {
                        pass = false;
                        Some(1.0)
                    }
                    Err(Error::Pole { .. }) | Err(Error::Constraint(_)) => None,
                    Err(e) => return Err(e),
                },
            };
            if let Some(r) = outcome {
                worst = worst.max(r);
                done += 1;
            }
        }
        if done < points {
            pass = false;
        }
        checks.push(DegenerationCheck {
            reduction: format!("{source} -> {target}"),
            points: done,
            worst_residual: worst,
            pass,
        });
    }
    let pass = checks.iter().all(|c| c.pass);
    Ok(DegenerationReport { checks, pass })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bracket::BracketClass;

    fn default_ep() -> EllipticParams {
        EllipticParams::new(
            Complex64::new(0.31, 0.07),
            BracketClass::theta(Complex64::new(0.2, 0.0)).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn degeneration_matrix_certifies() {
        let rep = verify_degenerations(3, 1234, default_ep(), 1e-8).unwrap();
        for c in &rep.checks {
            assert!(c.pass, "{}: worst {}", c.reduction, c.worst_residual);
        }
        assert!(rep.pass);
        assert_eq!(rep.checks.len(), reduction_pairs().len());
    }
}
