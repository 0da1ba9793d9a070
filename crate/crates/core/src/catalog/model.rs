//! The identity catalog's data model: families, linear parameter
//! expressions, prefactor trees and transformation records.
//!
//! Identities are data, not code: a parameter map is a list of integer
//! linear expressions, the variable rule is one of two involutions, and a
//! prefactor is a product of shifted-factorial atoms. Composition,
//! inversion and coset-word replay then work generically.

use serde::Serialize;

use super::scalar::Scalar;

/// The series family an identity transforms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Family {
    /// Terminating balanced 4F3 at unit argument; slots (a1,a2,a3,d1,d2,d3).
    F4A1,
    /// Rectangular multivariate 4F3; slots (a1,a2,c,d,e1,e2), companions
    /// b_i = -m_i.
    F4Rect,
    /// Triangular multivariate 4F3; slots (a,c,d,e1,e2), companions b_i.
    F4Tri,
    /// Terminating balanced 10E9; slots (s,c0..c5).
    E10,
    /// Rectangular multivariate elliptic series; slots
    /// (s,c0,c1,c2,d0,d1,d2), companions a_i = -m_i delta.
    EnmRect,
    /// Triangular multivariate elliptic series; slots (s,c0,c1,c2,d1,d2),
    /// companions a_i.
    EnmTri,
    /// Dimension-swapping duality between multivariate elliptic series.
    Duality,
}

impl Family {
    /// Slot names, in storage order.
    pub fn slot_names(self) -> &'static [&'static str] {
        match self {
            Family::F4A1 => &["a1", "a2", "a3", "d1", "d2", "d3"],
            Family::F4Rect => &["a1", "a2", "c", "d", "e1", "e2"],
            Family::F4Tri => &["a", "c", "d", "e1", "e2"],
            Family::E10 => &["s", "c0", "c1", "c2", "c3", "c4", "c5"],
            Family::EnmRect => &["s", "c0", "c1", "c2", "d0", "d1", "d2"],
            Family::EnmTri => &["s", "c0", "c1", "c2", "d1", "d2"],
            Family::Duality => &[],
        }
    }

    /// True for the complex-evaluated families.
    pub fn is_elliptic(self) -> bool {
        matches!(
            self,
            Family::E10 | Family::EnmRect | Family::EnmTri | Family::Duality
        )
    }

    /// True when per-variable prefactor factors have length m_i (otherwise
    /// they have length equal to the total termination bound).
    pub fn pervar_len_is_mi(self) -> bool {
        matches!(self, Family::F4Rect | Family::EnmRect)
    }

    /// The balancing condition as an expression that must vanish.
    pub fn balancing(self) -> LinExpr {
        match self {
            // a1+a2+a3+1-N - (d1+d2+d3) = 0
            Family::F4A1 => parse_expr(self, "a1 + a2 + a3 + 1 - T - d1 - d2 - d3"),
            // a1+a2+c+1-|M| - (d+e1+e2) = 0
            Family::F4Rect => parse_expr(self, "a1 + a2 + c + 1 - T - d - e1 - e2"),
            // a+B+c+1-N - (d+e1+e2) = 0
            Family::F4Tri => parse_expr(self, "a + CMP + c + 1 - T - d - e1 - e2"),
            // c0+..+c5 - (2+N) delta - 3 s = 0
            Family::E10 => parse_expr(self, "c0 + c1 + c2 + c3 + c4 + c5 - 2 - T - 3s"),
            Family::EnmRect => {
                parse_expr(self, "c0 + c1 + c2 + d0 + d1 + d2 - 2 - T - 3s")
            }
            Family::EnmTri => {
                parse_expr(self, "CMP + c0 + c1 + c2 + d1 + d2 - 2 - T - 3s")
            }
            Family::Duality => panic!("duality balancing is handled structurally"),
        }
    }
}

/// Integer linear expression over a family's slots plus the shift unit
/// (1 for ordinary families, delta for elliptic), the termination total T
/// (N or |M|), and the companion sum (B or |a|).
///
/// Value = sum_i coeffs[i] * slot[i]
///       + (unit_const + unit_total * T) * unit
///       + comp_sum * (sum of companions).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LinExpr {
    /// Coefficients over the family slots.
    pub coeffs: Vec<i64>,
    /// Constant multiple of the unit.
    pub unit_const: i64,
    /// Multiple of T times the unit.
    pub unit_total: i64,
    /// Multiple of the companion sum.
    pub comp_sum: i64,
}

impl LinExpr {
    /// Zero expression over `n` slots.
    pub fn zeros(n: usize) -> Self {
        LinExpr {
            coeffs: vec![0; n],
            unit_const: 0,
            unit_total: 0,
            comp_sum: 0,
        }
    }

    /// Evaluates against concrete slot values.
    pub fn eval<K: Scalar>(&self, slots: &[K], comp: &[K], unit: &K, t: i64) -> K {
        let mut acc = K::zero();
        for (c, s) in self.coeffs.iter().zip(slots) {
            if *c != 0 {
                acc = acc.add(&K::from_i64(*c).mul(s));
            }
        }
        let u = self.unit_const + self.unit_total * t;
        if u != 0 {
            acc = acc.add(&K::from_i64(u).mul(unit));
        }
        if self.comp_sum != 0 {
            let mut cs = K::zero();
            for c in comp {
                cs = cs.add(c);
            }
            acc = acc.add(&K::from_i64(self.comp_sum).mul(&cs));
        }
        acc
    }
}

/// A per-variable linear expression: a [`LinExpr`] plus coefficients on
/// `x_i` and on the per-variable companion (b_i or a_i).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PerVarExpr {
    /// Slot-level part.
    pub base: LinExpr,
    /// Coefficient on `x_i`.
    pub x_coeff: i64,
    /// Coefficient on the companion of variable i.
    pub comp_coeff: i64,
}

impl PerVarExpr {
    /// Evaluates for variable index `i`.
    pub fn eval<K: Scalar>(
        &self,
        slots: &[K],
        comp: &[K],
        x: &[K],
        unit: &K,
        t: i64,
        i: usize,
    ) -> K {
        let mut acc = self.base.eval(slots, comp, unit, t);
        if self.x_coeff != 0 {
            acc = acc.add(&K::from_i64(self.x_coeff).mul(&x[i]));
        }
        if self.comp_coeff != 0 {
            acc = acc.add(&K::from_i64(self.comp_coeff).mul(&comp[i]));
        }
        acc
    }
}

/// How the summation variables move under an identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum VarMap {
    /// Variables unchanged.
    Identity,
    /// The family involution `x_i -> comp_i - (sum of comp) - x_i`,
    /// which reads `-m_i + |M| - x_i` for rectangular families (where
    /// comp_i = -m_i * unit) and `b_i - B - x_i` / `a_i - x_i - |a|` for
    /// the triangular ones.
    Reflect,
}

/// A product of shifted-factorial atoms multiplying the transformed side.
///
/// Global factors have length T; per-variable factors have length m_i
/// (rectangular families) or T (triangular families).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Default)]
pub struct Prefactor {
    /// Multiply by (-1)^T.
    pub sign_total: bool,
    /// Multiply by (-1)^(sum of per-variable factor lengths); produced by
    /// reflection canonicalization, never by catalog entries directly.
    pub sign_pervar: bool,
    /// Numerator factors `[arg]_T`.
    pub global_num: Vec<LinExpr>,
    /// Denominator factors `[arg]_T`.
    pub global_den: Vec<LinExpr>,
    /// Numerator factors `prod_i [arg_i]_{len_i}`.
    pub pervar_num: Vec<PerVarExpr>,
    /// Denominator factors `prod_i [arg_i]_{len_i}`.
    pub pervar_den: Vec<PerVarExpr>,
}

/// The structural kind of an identity's parameter rule.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum MapKind {
    /// Slot-to-slot integer affine map plus a variable rule.
    Affine {
        /// One expression per image slot.
        param_map: Vec<LinExpr>,
        /// Variable rule.
        var_map: VarMap,
    },
    /// The dimension-swapping duality (structured rule, not a square
    /// matrix: the two sides have different parameter-space shapes).
    DualitySwap,
    /// The duality specialized to a one-dimensional image series.
    DualityCollapse,
}

/// One catalog entry.
#[derive(Debug, Clone, Serialize)]
pub struct TransformIdentity {
    /// Identity name as used by filters and reports.
    pub name: &'static str,
    /// Series family of the left-hand side.
    pub family: Family,
    /// Parameter rule.
    pub map: MapKind,
    /// Prefactor multiplying the transformed series.
    pub prefactor: Prefactor,
    /// The balancing condition (must vanish on admissible points).
    pub balancing: LinExpr,
}

/// Parses an integer linear expression over a family's slots.
///
/// Grammar: terms joined by `+` / `-`, each term one of
/// - an integer (a multiple of the shift unit),
/// - `T` (the termination total times the unit), optionally with an
///   integer coefficient (`2T`),
/// - a slot name with optional integer coefficient (`2s`, `c4`),
/// - `CMP` (the companion sum), `cmp` (per-variable companion) and `x`
///   (the variable), the latter two only valid in [`parse_pervar`].
pub fn parse_expr(family: Family, text: &str) -> LinExpr {
    let (lin, x, cmp) = parse_with_pervar(family, text);
    assert_eq!(x, 0, "x is not allowed in a slot expression: {text}");
    assert_eq!(cmp, 0, "cmp is not allowed in a slot expression: {text}");
    lin
}

/// Parses a per-variable expression (may mention `x` and `cmp`).
pub fn parse_pervar(family: Family, text: &str) -> PerVarExpr {
    let (base, x_coeff, comp_coeff) = parse_with_pervar(family, text);
    PerVarExpr {
        base,
        x_coeff,
        comp_coeff,
    }
}

fn parse_with_pervar(family: Family, text: &str) -> (LinExpr, i64, i64) {
    let slots = family.slot_names();
    let mut lin = LinExpr::zeros(slots.len());
    let mut x_coeff = 0i64;
    let mut comp_coeff = 0i64;
    let mut sign = 1i64;
    let mut expect_term = true;
    for tok in text.split_whitespace() {
        match tok {
            "+" => {
                assert!(!expect_term, "misplaced + in {text}");
                sign = 1;
                expect_term = true;
                continue;
            }
            "-" => {
                assert!(!expect_term, "misplaced - in {text}");
                sign = -1;
                expect_term = true;
                continue;
            }
            _ => {}
        }
        assert!(expect_term, "missing operator before {tok} in {text}");
        expect_term = false;
        // split an optional leading integer coefficient
        let split = tok.find(|c: char| !c.is_ascii_digit()).unwrap_or(tok.len());
        let (coef_str, name) = tok.split_at(split);
        let coef: i64 = if coef_str.is_empty() {
            1
        } else {
            coef_str.parse().expect("integer coefficient")
        };
        let coef = sign * coef;
        if name.is_empty() {
            lin.unit_const += coef;
        } else if name == "T" {
            lin.unit_total += coef;
        } else if name == "CMP" {
            lin.comp_sum += coef;
        } else if name == "cmp" {
            comp_coeff += coef;
        } else if name == "x" {
            x_coeff += coef;
        } else if let Some(idx) = slots.iter().position(|s| *s == name) {
            lin.coeffs[idx] += coef;
        } else {
            panic!("unknown token {tok} for family {family:?} in {text}");
        }
        sign = 1;
    }
    assert!(!expect_term, "dangling operator in {text}");
    (lin, x_coeff, comp_coeff)
}

/// Builds an affine map from one expression string per image slot.
pub fn affine(family: Family, var_map: VarMap, rows: &[&str]) -> MapKind {
    assert_eq!(
        rows.len(),
        family.slot_names().len(),
        "need one row per slot"
    );
    MapKind::Affine {
        param_map: rows.iter().map(|r| parse_expr(family, r)).collect(),
        var_map,
    }
}

/// Builds a prefactor from expression strings.
pub fn prefactor(
    family: Family,
    sign_total: bool,
    global_num: &[&str],
    global_den: &[&str],
    pervar_num: &[&str],
    pervar_den: &[&str],
) -> Prefactor {
    Prefactor {
        sign_total,
        sign_pervar: false,
        global_num: global_num.iter().map(|s| parse_expr(family, s)).collect(),
        global_den: global_den.iter().map(|s| parse_expr(family, s)).collect(),
        pervar_num: pervar_num.iter().map(|s| parse_pervar(family, s)).collect(),
        pervar_den: pervar_den.iter().map(|s| parse_pervar(family, s)).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_i};

    #[test]
    fn parser_roundtrip() {
        let e = parse_expr(Family::F4Rect, "d + e1 - a2 - c");
        assert_eq!(e.coeffs, vec![0, -1, -1, 1, 1, 0]);
        assert_eq!((e.unit_const, e.unit_total, e.comp_sum), (0, 0, 0));

        let e = parse_expr(Family::F4A1, "1 - T - d1");
        assert_eq!(e.coeffs, vec![0, 0, 0, -1, 0, 0]);
        assert_eq!((e.unit_const, e.unit_total), (1, -1));

        let e = parse_expr(Family::E10, "2 + 3s - c0 - c1 - c2 - c3 - 2c4");
        assert_eq!(e.coeffs, vec![3, -1, -1, -1, -1, -2, 0]);
        assert_eq!(e.unit_const, 2);

        let p = parse_pervar(Family::EnmTri, "1 + s - d1 - cmp + x");
        assert_eq!((p.x_coeff, p.comp_coeff), (1, -1));
        assert_eq!(p.base.unit_const, 1);
    }

    #[test]
    fn eval_with_unit_and_total() {
        let e = parse_expr(Family::F4A1, "1 - T - d1");
        let slots: Vec<_> = (1..=6).map(rat_i).collect();
        let v = e.eval(&slots, &[], &rat_i(1), 3);
        // 1 - 3 - d1 where d1 = slot 4 value = 4
        assert_eq!(v, rat_i(1 - 3 - 4));

        let e = parse_expr(Family::F4Tri, "e1 - CMP");
        let slots = vec![rat_i(1), rat_i(2), rat_i(3), rat(7, 2), rat_i(5)];
        let comp = vec![rat(1, 3), rat(1, 4)];
        let v = e.eval(&slots, &comp, &rat_i(1), 2);
        assert_eq!(v, rat(7, 2) - rat(1, 3) - rat(1, 4));
    }
}
