//! The concrete integer-matrix realizations of every symmetry-group
//! generator used by the identity families.
//!
//! Ordinary (4F3-type) groups act linearly on a 6-vector of parameters; the
//! elliptic groups act on an 8-vector whose last coordinate is the shift
//! delta, making shifts by multiples of delta expressible as matrix entries.

use std::collections::HashMap;

use super::group::GroupElement;

/// A named generating set acting on a fixed parameter vector.
#[derive(Debug, Clone)]
pub struct Realization {
    /// Short label for reports ("4f3-a1", "e10-w(e6)", ...).
    pub name: &'static str,
    /// Coordinate names of the vector being acted on.
    pub coords: &'static [&'static str],
    /// Ordered generator list (name, matrix).
    pub gens: Vec<(&'static str, GroupElement)>,
}

impl Realization {
    /// Looks a generator up by name.
    pub fn gen(&self, name: &str) -> &GroupElement {
        &self
            .gens
            .iter()
            .find(|(n, _)| *n == name)
            .unwrap_or_else(|| panic!("no generator named {name}"))
            .1
    }

    /// All generator matrices, in declaration order.
    pub fn gen_matrices(&self) -> Vec<GroupElement> {
        self.gens.iter().map(|(_, m)| m.clone()).collect()
    }

    /// Generator map for presentation checks.
    pub fn gen_map(&self) -> HashMap<String, GroupElement> {
        self.gens
            .iter()
            .map(|(n, m)| (n.to_string(), m.clone()))
            .collect()
    }

    /// Product of a word of generator names, leftmost factor first (the
    /// rightmost factor acts first on parameter vectors).
    pub fn word(&self, names: &[&str]) -> GroupElement {
        let mats: Vec<&GroupElement> = names.iter().map(|n| self.gen(n)).collect();
        GroupElement::word_product(&mats)
    }
}

/// Symmetries of the terminating balanced 4F3 sum, acting on
/// `(a1, a2, a3, d1, d2, d3)`: the Whipple move `s`, upper-parameter swaps
/// `r1, r2` and lower-parameter swaps `t1, t2`. Generates a group
/// isomorphic to S6.
pub fn whipple_a1() -> Realization {
    let s = GroupElement::from_rows(&[
        &[1, 0, 0, 0, 0, 0],
        &[0, 0, -1, 1, 0, 0],
        &[0, -1, 0, 1, 0, 0],
        &[0, 0, 0, 1, 0, 0],
        &[0, -1, -1, 1, 1, 0],
        &[0, -1, -1, 1, 0, 1],
    ]);
    Realization {
        name: "4f3-a1",
        coords: &["a1", "a2", "a3", "d1", "d2", "d3"],
        gens: vec![
            ("s", s),
            ("r1", GroupElement::swap(6, 0, 1)),
            ("r2", GroupElement::swap(6, 1, 2)),
            ("t1", GroupElement::swap(6, 3, 4)),
            ("t2", GroupElement::swap(6, 4, 5)),
        ],
    }
}

/// Symmetries of the rectangular multivariate 4F3 sum, acting on
/// `(a1, a2, c, d, e1, e2)`: the Sears move `s1` plus the parameter swaps
/// `s0` (a1<->a2) and `s2` (e1<->e2). Generates the order-72 "periodic
/// affine" group.
pub fn rect_an() -> Realization {
    Realization {
        name: "4f3-rect",
        coords: &["a1", "a2", "c", "d", "e1", "e2"],
        gens: vec![
            ("s0", GroupElement::swap(6, 0, 1)),
            ("s1", sears_matrix()),
            ("s2", GroupElement::swap(6, 4, 5)),
        ],
    }
}

/// The Sears-move matrix shared by the rectangular and triangular
/// multivariate 4F3 realizations.
fn sears_matrix() -> GroupElement {
    GroupElement::from_rows(&[
        &[1, 0, 0, 0, 0, 0],
        &[0, -1, 0, 0, 1, 0],
        &[0, 0, -1, 0, 1, 0],
        &[0, -1, -1, 0, 1, 1],
        &[0, 0, 0, 0, 1, 0],
        &[0, -1, -1, 1, 1, 0],
    ])
}

/// Symmetries of the triangular multivariate 4F3 sum on
/// `(b, a, c, d, e1, e2)` (first coordinate inert): `s1` is the same Sears
/// matrix, `s2` swaps e1, e2. Generates W(C2) of order 8.
pub fn tri_an() -> Realization {
    Realization {
        name: "4f3-tri",
        coords: &["b", "a", "c", "d", "e1", "e2"],
        gens: vec![
            ("s1", sears_matrix()),
            ("s2", GroupElement::swap(6, 4, 5)),
        ],
    }
}

/// Symmetries of the one-dimensional terminating balanced 10E9 series,
/// acting on `(s, c0, c1, c2, c3, c4, c5, delta)`: the Bailey move `b` and
/// adjacent transpositions `s1..s5` of the c-parameters. Generates a group
/// isomorphic to W(E6), order 51840.
///
/// Aliases `w1..w6` follow Bourbaki numbering of the E6 diagram:
/// `w1 = s1`, `w2 = b`, `w(i+1) = si` for i = 2..5.
pub fn bailey_e6() -> Realization {
    let b = bailey_matrix();
    let mut gens: Vec<(&'static str, GroupElement)> = vec![("b", b)];
    let names = ["s1", "s2", "s3", "s4", "s5"];
    for (k, name) in names.iter().enumerate() {
        gens.push((name, GroupElement::swap(8, k + 1, k + 2)));
    }
    Realization {
        name: "e10-w(e6)",
        coords: &["s", "c0", "c1", "c2", "c3", "c4", "c5", "delta"],
        gens,
    }
}

/// The Bailey-move matrix on `(s, c0..c5, delta)`; also the central
/// generator `b2` of the rectangular elliptic realization.
fn bailey_matrix() -> GroupElement {
    GroupElement::from_rows(&[
        &[2, -1, -1, -1, 0, 0, 0, 1],
        &[1, 0, -1, -1, 0, 0, 0, 1],
        &[1, -1, 0, -1, 0, 0, 0, 1],
        &[1, -1, -1, 0, 0, 0, 0, 1],
        &[0, 0, 0, 0, 1, 0, 0, 0],
        &[0, 0, 0, 0, 0, 1, 0, 0],
        &[0, 0, 0, 0, 0, 0, 1, 0],
        &[0, 0, 0, 0, 0, 0, 0, 1],
    ])
}

/// Symmetries of the rectangular multivariate elliptic series, acting on
/// `(s, c0, c1, c2, d0, d1, d2, delta)`: two Bailey moves `b1, b2` and the
/// parameter swaps `s0, s1` (c's) and `t0, t1` (d's). Generates S6 x S2 of
/// order 1440.
///
/// Aliases: `sigma1 = s1`, `sigma2 = s0`, `sigma3 = b1`, `sigma4 = t0`,
/// `sigma5 = t1`, `tau = b2`.
pub fn rect_enm() -> Realization {
    let b1 = GroupElement::from_rows(&[
        &[2, -1, 0, 0, 0, -1, -1, 1],
        &[1, 0, 0, 0, 0, -1, -1, 1],
        &[0, 0, 1, 0, 0, 0, 0, 0],
        &[0, 0, 0, 1, 0, 0, 0, 0],
        &[0, 0, 0, 0, 1, 0, 0, 0],
        &[1, -1, 0, 0, 0, 0, -1, 1],
        &[1, -1, 0, 0, 0, -1, 0, 1],
        &[0, 0, 0, 0, 0, 0, 0, 1],
    ]);
    Realization {
        name: "enm-rect",
        coords: &["s", "c0", "c1", "c2", "d0", "d1", "d2", "delta"],
        gens: vec![
            ("b1", b1),
            ("b2", bailey_matrix()),
            ("s0", GroupElement::swap(8, 1, 2)),
            ("s1", GroupElement::swap(8, 2, 3)),
            ("t0", GroupElement::swap(8, 4, 5)),
            ("t1", GroupElement::swap(8, 5, 6)),
        ],
    }
}

/// Symmetries of the triangular multivariate elliptic series: the
/// rectangular generators with `t0` removed (the d0 slot is pinned to the
/// termination parameter). Generates S4 x S2 x S2 of order 96.
pub fn tri_enm() -> Realization {
    let rect = rect_enm();
    Realization {
        name: "enm-tri",
        coords: rect.coords,
        gens: rect
            .gens
            .into_iter()
            .filter(|(n, _)| *n != "t0")
            .collect(),
    }
}

/// `b2` of the rectangular elliptic realization equals the Bailey matrix of
/// the one-dimensional realization entrywise.
pub fn b2_equals_bailey() -> bool {
    rect_enm().gen("b2") == bailey_e6().gen("b")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_are_involutions_with_unit_determinant() {
        for real in [
            whipple_a1(),
            rect_an(),
            tri_an(),
            bailey_e6(),
            rect_enm(),
            tri_enm(),
        ] {
            for (name, m) in &real.gens {
                assert!(
                    m.mul(m).is_identity(),
                    "{}::{name} should be an involution",
                    real.name
                );
                assert_eq!(m.det().abs(), 1, "{}::{name} determinant", real.name);
            }
        }
    }

    #[test]
    fn b2_is_the_bailey_matrix() {
        assert!(b2_equals_bailey());
    }

    #[test]
    fn sears_matrix_sends_parameters_as_documented() {
        // s1 . (a1,a2,c,d,e1,e2) = (a1, e1-a2, e1-c, e1+e2-a2-c, e1, e1+d-a2-c)
        let s1 = rect_an().gen("s1").clone();
        let v = [2, 3, 5, 7, 11, 13];
        let image = s1.apply_vec(&v);
        assert_eq!(
            image,
            vec![2, 11 - 3, 11 - 5, 11 + 13 - 3 - 5, 11, 11 + 7 - 3 - 5]
        );
    }

    #[test]
    fn bailey_matrix_sends_parameters_as_documented() {
        // b . (s, c0..c5, delta): s -> 2s + delta - c0 - c1 - c2,
        // ck -> s + delta - (sum of the other two of c0,c1,c2) for k < 3.
        let b = bailey_e6().gen("b").clone();
        let v = [2, 3, 5, 7, 11, 13, 17, 19];
        let image = b.apply_vec(&v);
        assert_eq!(
            image,
            vec![
                2 * 2 + 19 - 3 - 5 - 7,
                2 + 19 - 5 - 7,
                2 + 19 - 3 - 7,
                2 + 19 - 3 - 5,
                11,
                13,
                17,
                19
            ]
        );
    }
}
