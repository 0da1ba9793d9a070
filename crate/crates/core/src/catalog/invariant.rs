//! The four normalized ("Hardy type") invariant forms: a series times an
//! explicit prefactor that is fixed by the full symmetry group of its
//! family.

use num_complex::Complex64;

use super::eval::{Residual, VerificationResult};
use super::model::{Family, VarMap};
use super::point::{eval_ell_point_budget, eval_rat_point, EllPoint, Point, RatPoint};
use crate::coxeter::{matrices, GroupElement};
use crate::error::{Error, Result};
use crate::rational::{format_ratio, pochhammer, pochhammer_vanishes, Rational};

/// One invariant form: its family, normalizer, and the generators it must
/// be fixed under (name, slot-action matrix, variable rule).
pub struct InvariantForm {
    /// Form name.
    pub name: &'static str,
    /// Family of the underlying series.
    pub family: Family,
    /// Generators of the invariance group.
    pub generators: Vec<(&'static str, GroupElement, VarMap)>,
}

/// The four invariant forms.
pub fn invariant_forms() -> Vec<InvariantForm> {
    let a1 = matrices::whipple_a1();
    let rect = matrices::rect_an();
    let e6 = matrices::bailey_e6();
    let enm = matrices::rect_enm();
    vec![
        InvariantForm {
            name: "Hardy4F3",
            family: Family::F4A1,
            generators: a1
                .gens
                .iter()
                .map(|(n, m)| (*n, m.clone(), VarMap::Identity))
                .collect(),
        },
        InvariantForm {
            name: "Norm4F3An",
            family: Family::F4Rect,
            generators: rect
                .gens
                .iter()
                .map(|(n, m)| {
                    let rule = if *n == "s1" {
                        VarMap::Reflect
                    } else {
                        VarMap::Identity
                    };
                    (*n, m.clone(), rule)
                })
                .collect(),
        },
        InvariantForm {
            name: "Hardy10E9",
            family: Family::E10,
            generators: e6
                .gens
                .iter()
                .map(|(n, m)| (*n, m.clone(), VarMap::Identity))
                .collect(),
        },
        InvariantForm {
            name: "NormEn3",
            family: Family::EnmRect,
            generators: enm
                .gens
                .iter()
                .map(|(n, m)| {
                    let rule = if *n == "b2" {
                        VarMap::Reflect
                    } else {
                        VarMap::Identity
                    };
                    (*n, m.clone(), rule)
                })
                .collect(),
        },
    ]
}

/// Applies a generator matrix to a rational point's slots (6x6, linear).
pub fn act_rat(g: &GroupElement, pt: &RatPoint, rule: VarMap) -> RatPoint {
    assert_eq!(g.dim(), pt.slots.len());
    let slots: Vec<Rational> = (0..g.dim())
        .map(|i| {
            let mut acc = Rational::from_integer(0.into());
            for (j, s) in pt.slots.iter().enumerate() {
                let c = g.entry(i, j);
                if c != 0 {
                    acc += Rational::from_integer(c.into()) * s;
                }
            }
            acc
        })
        .collect();
    Point {
        family: pt.family,
        slots,
        x: pt.mapped_x(rule),
        comp: pt.comp.clone(),
        term: pt.term.clone(),
    }
}

/// Applies a generator matrix to an elliptic point; the matrix acts on the
/// extended vector (slots..., delta) and must fix delta.
pub fn act_ell(g: &GroupElement, pt: &EllPoint, rule: VarMap) -> EllPoint {
    let n = pt.p.slots.len();
    assert_eq!(g.dim(), n + 1);
    let mut ext: Vec<Complex64> = pt.p.slots.clone();
    ext.push(pt.ep.delta);
    let image: Vec<Complex64> = (0..g.dim())
        .map(|i| {
            let mut acc = Complex64::ZERO;
            for (j, s) in ext.iter().enumerate() {
                let c = g.entry(i, j);
                if c != 0 {
                    acc += Complex64::new(c as f64, 0.0) * s;
                }
            }
            acc
        })
        .collect();
    assert!(
        (image[n] - pt.ep.delta).norm() < 1e-12,
        "generator must fix delta"
    );
    EllPoint {
        p: Point {
            family: pt.p.family,
            slots: image[..n].to_vec(),
            x: pt.p.mapped_x(rule),
            comp: pt.p.comp.clone(),
            term: pt.p.term.clone(),
        },
        ep: pt.ep,
    }
}

/// Value of an invariant form at a rational point.
pub fn form_value_rat(form: &InvariantForm, pt: &RatPoint) -> Result<Rational> {
    let series = eval_rat_point(pt)?;
    let t = pt.term.total() as usize;
    match form.name {
        "Hardy4F3" => {
            // [d1, d2, d3]_N times the sum.
            let mut norm = Rational::from_integer(1.into());
            for d in &pt.slots[3..6] {
                norm *= pochhammer(d, t);
            }
            Ok(norm * series)
        }
        "Norm4F3An" => {
            // [e1, e2]_{|M|} prod_i [d + x_i]_{m_i} times the sum.
            let mut norm = pochhammer(&pt.slots[4], t) * pochhammer(&pt.slots[5], t);
            let m = match &pt.term {
                super::point::Termination::Rectangular(m) => m,
                _ => return Err(Error::Constraint("rectangular point expected".into())),
            };
            for (x, mi) in pt.x.iter().zip(m) {
                norm *= pochhammer(&(&pt.slots[3] + x), *mi as usize);
            }
            Ok(norm * series)
        }
        other => Err(Error::Constraint(format!("{other} is not rational"))),
    }
}

/// Value of an invariant form at an elliptic point; returns the value and
/// its absolute error budget.
pub fn form_value_ell(form: &InvariantForm, pt: &EllPoint) -> Result<(Complex64, f64)> {
    let vb = eval_ell_point_budget(pt)?;
    let series = vb.value;
    let ep = &pt.ep;
    let p = &pt.p;
    let t = p.term.total() as usize;
    match form.name {
        "Hardy10E9" => {
            // prod_k [[delta + s - c_k]]_N / [[delta + s]]_N times the sum
            // (the same shifted base as the numerator factors; certified by
            // invariance under the Bailey move).
            let s = p.slots[0];
            let den = ep.bracket_factorial(ep.delta + s, t)?;
            if den.norm() < 1e-12 {
                return Err(Error::Pole {
                    factor: "[[delta+s]]_N".into(),
                    index: "normalizer".into(),
                });
            }
            let mut norm = Complex64::ONE / den;
            for c in &p.slots[1..7] {
                norm *= ep.bracket_factorial(ep.delta + s - c, t)?;
            }
            Ok((norm * series, norm.norm() * vb.error_budget))
        }
        "NormEn3" => {
            // prod_k [[delta+s-c_k]]_{|M|} (prod_i [[delta+s-d_k+x_i]]_{m_i})
            //   / prod_i [[delta+s+x_i]]_{m_i} times the sum.
            let s = p.slots[0];
            let m = match &p.term {
                super::point::Termination::Rectangular(m) => m.clone(),
                _ => return Err(Error::Constraint("rectangular point expected".into())),
            };
            let mut norm = Complex64::ONE;
            for c in &p.slots[1..4] {
                norm *= ep.bracket_factorial(ep.delta + s - c, t)?;
            }
            for d in &p.slots[4..7] {
                for (x, mi) in p.x.iter().zip(&m) {
                    norm *= ep.bracket_factorial(ep.delta + s - d + x, *mi as usize)?;
                }
            }
            for (x, mi) in p.x.iter().zip(&m) {
                let den = ep.bracket_factorial(ep.delta + s + x, *mi as usize)?;
                if den.norm() < 1e-12 {
                    return Err(Error::Pole {
                        factor: "[[delta+s+x_i]]_{m_i}".into(),
                        index: "normalizer".into(),
                    });
                }
                norm /= den;
            }
            Ok((norm * series, norm.norm() * vb.error_budget))
        }
        other => Err(Error::Constraint(format!("{other} is not elliptic"))),
    }
}

/// Verifies invariance of a form at a point under one named generator.
pub fn verify_invariant(
    form: &InvariantForm,
    pt: &super::eval::SamplePoint,
    generator: &str,
    tol: f64,
) -> Result<VerificationResult> {
    let (g, rule) = form
        .generators
        .iter()
        .find(|(n, _, _)| *n == generator)
        .map(|(_, g, r)| (g, *r))
        .ok_or_else(|| Error::UnknownGenerator(generator.to_string()))?;
    match pt {
        super::eval::SamplePoint::Rat(p) => {
            // Guard: the normalizer of the base point must not vanish
            // (pochhammer_vanishes covers the series side).
            let base = form_value_rat(form, p)?;
            let moved = act_rat(g, p, rule);
            check_rat_normalizer(form, &moved)?;
            let image = form_value_rat(form, &moved)?;
            let equal = base == image;
            Ok(VerificationResult {
                identity: format!("{}[{}]", form.name, generator),
                sample_id: 0,
                lhs: format_ratio(&base),
                rhs_scaled: format_ratio(&image),
                residual: Residual::Exact { equal },
                pass: equal,
            })
        }
        super::eval::SamplePoint::Ell(p) => {
            let (base, base_budget) = form_value_ell(form, p)?;
            let moved = act_ell(g, p, rule);
            let (image, image_budget) = form_value_ell(form, &moved)?;
            let scale = base.norm().max(image.norm()).max(1e-30);
            if base_budget + image_budget > tol * scale {
                return Err(Error::Constraint(format!(
                    "error budget {:.3e} cannot certify tolerance {tol:.1e}",
                    base_budget + image_budget
                )));
            }
            let r = (base - image).norm() / scale;
            Ok(VerificationResult {
                identity: format!("{}[{}]", form.name, generator),
                sample_id: 0,
                lhs: format!("{base}"),
                rhs_scaled: format!("{image}"),
                residual: Residual::Relative(r),
                pass: r < tol,
            })
        }
        _ => Err(Error::Constraint(
            "invariant forms take slot points".into(),
        )),
    }
}

fn check_rat_normalizer(form: &InvariantForm, pt: &RatPoint) -> Result<()> {
    // A vanishing normalizer would trivialize the invariance check.
    let t = pt.term.total() as usize;
    let bases: Vec<Rational> = match form.name {
        "Hardy4F3" => pt.slots[3..6].to_vec(),
        "Norm4F3An" => pt.slots[4..6].to_vec(),
        _ => vec![],
    };
    for b in bases {
        if pochhammer_vanishes(&b, t) {
            return Err(Error::Pole {
                factor: format!("normalizer factor {b}"),
                index: "invariant form".into(),
            });
        }
    }
    Ok(())
}
