//! The transformation-identity catalog.
//!
//! Each entry records, as data, the parameter map, variable rule,
//! prefactor and balancing condition of one transformation formula.
//! Integer literals in expressions denote multiples of the family's shift
//! unit (1 for ordinary families, delta for elliptic ones); `T` is the
//! termination total (N or |M|), `CMP` the companion sum, `cmp` / `x` the
//! per-variable companion and variable.
//!
//! Two prefactor tokens in the rectangular/triangular sources are
//! ambiguous in print (a bare `e` and a fused `d x_i`); the readings used
//! here are the unique ones that make the identities hold exactly, as
//! certified empirically by the typo-resolution harness.

use super::model::{affine, prefactor, Family, MapKind, TransformIdentity, VarMap};

fn entry(
    name: &'static str,
    family: Family,
    map: MapKind,
    pf: super::model::Prefactor,
) -> TransformIdentity {
    TransformIdentity {
        name,
        family,
        map,
        prefactor: pf,
        balancing: family.balancing(),
    }
}

fn f4a1() -> Vec<TransformIdentity> {
    let f = Family::F4A1;
    vec![
        // Whipple transformation.
        entry(
            "d1st1",
            f,
            affine(
                f,
                VarMap::Identity,
                &[
                    "a1",
                    "d1 - a3",
                    "d1 - a2",
                    "d1",
                    "d1 + d3 - a2 - a3",
                    "d1 + d2 - a2 - a3",
                ],
            ),
            prefactor(
                f,
                false,
                &["d2 - a1", "d1 + d2 - a2 - a3"],
                &["d2", "d1 + d2 - a1 - a2 - a3"],
                &[],
                &[],
            ),
        ),
        // Double-coset representative sigma3 sigma4 sigma2 sigma3.
        entry(
            "d1rst1",
            f,
            affine(
                f,
                VarMap::Identity,
                &[
                    "d1 - a3",
                    "d2 - a3",
                    "d1 + d2 - a1 - a2 - a3",
                    "d1 + d2 - a2 - a3",
                    "d1 + d2 - a1 - a3",
                    "d1 + d2 + d3 - a1 - a2 - 2a3",
                ],
            ),
            prefactor(
                f,
                false,
                &["d1 + d2 - a1 - a3", "d1 + d2 - a2 - a3", "a3"],
                &["d1", "d2", "d1 + d2 - a1 - a2 - a3"],
                &[],
                &[],
            ),
        ),
        // The longest coset representative.
        entry(
            "d1r1",
            f,
            affine(
                f,
                VarMap::Identity,
                &[
                    "d1 + d2 - a1 - a2 - a3",
                    "d1 + d3 - a1 - a2 - a3",
                    "d2 + d3 - a1 - a2 - a3",
                    "d1 + d2 + d3 - a1 - a2 - 2a3",
                    "d1 + d2 + d3 - a1 - 2a2 - a3",
                    "d1 + d2 + d3 - 2a1 - a2 - a3",
                ],
            ),
            prefactor(
                f,
                false,
                &["a1", "a2", "a3"],
                &["d1", "d2", "d1 + d2 - a1 - a2 - a3"],
                &[],
                &[],
            ),
        ),
        // Alternative expression of d1r1: order reversal of the sum.
        entry(
            "ad1r1",
            f,
            affine(
                f,
                VarMap::Identity,
                &[
                    "1 - T - d1",
                    "1 - T - d2",
                    "1 - T - d3",
                    "1 - T - a1",
                    "1 - T - a2",
                    "1 - T - a3",
                ],
            ),
            prefactor(
                f,
                true,
                &["a1", "a2", "a3"],
                &["d1", "d2", "d3"],
                &[],
                &[],
            ),
        ),
    ]
}

fn f4rect() -> Vec<TransformIdentity> {
    let f = Family::F4Rect;
    vec![
        // The Sears move itself (representative s1).
        entry(
            "ias2",
            f,
            affine(
                f,
                VarMap::Reflect,
                &[
                    "a1",
                    "e1 - a2",
                    "e1 - c",
                    "e1 + e2 - a2 - c",
                    "e1",
                    "e1 + d - a2 - c",
                ],
            ),
            prefactor(
                f,
                false,
                &["d + e1 - a2 - c"],
                &["d + e1 - a1 - a2 - c"],
                &["d - a1 + x"],
                &["d + x"],
            ),
        ),
        // Representative s1 s2 s1.
        entry(
            "ias1",
            f,
            affine(
                f,
                VarMap::Identity,
                &[
                    "a1",
                    "d - c",
                    "d - a2",
                    "d",
                    "d + e2 - a2 - c",
                    "d + e1 - a2 - c",
                ],
            ),
            prefactor(
                f,
                false,
                &["d + e1 - a2 - c", "e1 - a1"],
                &["d + e1 - a1 - a2 - c", "e1"],
                &[],
                &[],
            ),
        ),
        // Representative s1 s0 s1.
        entry(
            "ias3",
            f,
            affine(
                f,
                VarMap::Identity,
                &[
                    "e1 - a1",
                    "e1 - a2",
                    "c",
                    "d + e1 - a1 - a2",
                    "e1 + e2 - a1 - a2",
                    "e1",
                ],
            ),
            prefactor(
                f,
                false,
                &["d - c"],
                &["d + e1 - a1 - a2 - c"],
                &["d + e1 - a1 - a2 + x"],
                &["d + x"],
            ),
        ),
        // Representative s1 s0 s2 s1.
        entry(
            "iars2",
            f,
            affine(
                f,
                VarMap::Identity,
                &[
                    "e1 - a2",
                    "d + e1 - a1 - a2 - c",
                    "d - a2",
                    "d + e1 - a1 - a2",
                    "d + e1 + e2 - a1 - 2a2 - c",
                    "d + e1 - a2 - c",
                ],
            ),
            prefactor(
                f,
                false,
                &["d + e1 - a2 - c", "a2"],
                &["d + e1 - a1 - a2 - c", "e1"],
                &["d + e1 - a1 - a2 + x"],
                &["d + x"],
            ),
        ),
        // Representative s1 s2 s1 s0 s1.
        entry(
            "iars1",
            f,
            affine(
                f,
                VarMap::Reflect,
                &[
                    "e1 - a2",
                    "e2 - a2",
                    "e1 + e2 - a1 - a2 - c",
                    "e1 + e2 - a2 - c",
                    "e1 + e2 - a1 - a2",
                    "d + e1 + e2 - a1 - 2a2 - c",
                ],
            ),
            prefactor(
                f,
                false,
                &["d - c", "d + e1 + e2 - a1 - 2a2 - c"],
                &["d + e1 - a1 - a2 - c", "d + e2 - a1 - a2 - c"],
                &["d - a1 + x"],
                &["d + x"],
            ),
        ),
        // Representative s1 s0 s1 s2 s1.
        entry(
            "iars3",
            f,
            affine(
                f,
                VarMap::Reflect,
                &[
                    "d - c",
                    "d + e1 - a1 - a2 - c",
                    "e1 - c",
                    "d + e1 + e2 - a1 - a2 - 2c",
                    "d + e1 - a1 - c",
                    "d + e1 - a2 - c",
                ],
            ),
            prefactor(
                f,
                false,
                &["d + e1 - a2 - c", "d + e1 - a1 - c"],
                &["d + e1 - a1 - a2 - c", "e1"],
                &["c + x"],
                &["d + x"],
            ),
        ),
        // Representative s1 s0 s2 s1 s0 s2 s1.
        entry(
            "iara",
            f,
            affine(
                f,
                VarMap::Reflect,
                &[
                    "d + e1 - a1 - a2 - c",
                    "d + e2 - a1 - a2 - c",
                    "e1 + e2 - a1 - a2 - c",
                    "d + e1 + e2 - a1 - a2 - 2c",
                    "d + e1 + e2 - a1 - 2a2 - c",
                    "d + e1 + e2 - 2a1 - a2 - c",
                ],
            ),
            prefactor(
                f,
                false,
                &["a1", "a2"],
                &["e1", "d + e1 - a1 - a2 - c"],
                &["c + x"],
                &["d + x"],
            ),
        ),
        // Alternative expression of iara: order reversal of the sum. The
        // (-1)^|M| sign is required for consistency with the n = 1
        // reduction and is certified by exact testing at odd |M|.
        entry(
            "iar",
            f,
            affine(
                f,
                VarMap::Reflect,
                &[
                    "1 - T - e1",
                    "1 - T - e2",
                    "1 - T - d",
                    "1 - T - c",
                    "1 - T - a1",
                    "1 - T - a2",
                ],
            ),
            prefactor(
                f,
                true,
                &["a1", "a2"],
                &["e1", "e2"],
                &["c + x"],
                &["d + x"],
            ),
        ),
    ]
}

fn f4tri() -> Vec<TransformIdentity> {
    let f = Family::F4Tri;
    vec![
        // The triangular Sears move.
        entry(
            "las2",
            f,
            affine(
                f,
                VarMap::Reflect,
                &[
                    "e1 - a",
                    "e1 - c",
                    "e1 + e2 - a - c",
                    "e1",
                    "d + e1 - a - c",
                ],
            ),
            prefactor(
                f,
                false,
                &["d + e1 - a - c"],
                &["d + e1 - a - CMP - c"],
                &["d - cmp + x"],
                &["d + x"],
            ),
        ),
        // Representative s1 s2 s1.
        entry(
            "las1",
            f,
            affine(
                f,
                VarMap::Identity,
                &["d - c", "d - a", "d", "d + e2 - a - c", "d + e1 - a - c"],
            ),
            prefactor(
                f,
                false,
                &["e1 - CMP", "d + e1 - a - c"],
                &["e1", "d + e1 - a - CMP - c"],
                &[],
                &[],
            ),
        ),
    ]
}

fn e10() -> Vec<TransformIdentity> {
    let f = Family::E10;
    vec![
        // The elliptic Bailey transformation.
        entry(
            "EBaileyT1",
            f,
            affine(
                f,
                VarMap::Identity,
                &[
                    "1 + 2s - c0 - c1 - c2",
                    "1 + s - c1 - c2",
                    "1 + s - c0 - c2",
                    "1 + s - c0 - c1",
                    "c3",
                    "c4",
                    "c5",
                ],
            ),
            prefactor(
                f,
                false,
                &[
                    "1 + s",
                    "1 + s - c4 - c5",
                    "1 + s - c3 - c5",
                    "1 + s - c3 - c4",
                ],
                &[
                    "1 + s - c3 - c4 - c5",
                    "1 + s - c3",
                    "1 + s - c4",
                    "1 + s - c5",
                ],
                &[],
                &[],
            ),
        ),
        // The duality move specialized to one dimension; slots are read as
        // (c0, c1, c2, c3, d0, d1) = (c0, .., c5).
        entry(
            "mn1EBDT1",
            f,
            affine(
                f,
                VarMap::Identity,
                &[
                    "2 + 3s - c0 - c1 - c2 - c3 - 2c4",
                    "1 + s - c4 - c0",
                    "1 + s - c4 - c1",
                    "1 + s - c4 - c2",
                    "1 + s - c4 - c3",
                    "2 + 2s - c0 - c1 - c2 - c3 - c4",
                    "c5",
                ],
            ),
            prefactor(
                f,
                false,
                &[
                    "c4",
                    "1 + s",
                    "1 + s - c0 - c5",
                    "1 + s - c1 - c5",
                    "1 + s - c2 - c5",
                    "1 + s - c3 - c5",
                ],
                &[
                    "c4 - c5",
                    "1 + s - c5",
                    "1 + s - c0",
                    "1 + s - c1",
                    "1 + s - c2",
                    "1 + s - c3",
                ],
                &[],
                &[],
            ),
        ),
        // The two-orbit-deeper representative.
        entry(
            "BaileyT3",
            f,
            affine(
                f,
                VarMap::Identity,
                &[
                    "3 + 4s - c0 - c1 - c2 - 2c3 - 2c4 - 2c5",
                    "1 + s - c4 - c5",
                    "1 + s - c3 - c5",
                    "1 + s - c3 - c4",
                    "2 + 2s - c1 - c2 - c3 - c4 - c5",
                    "2 + 2s - c0 - c2 - c3 - c4 - c5",
                    "2 + 2s - c0 - c1 - c3 - c4 - c5",
                ],
            ),
            prefactor(
                f,
                false,
                &[
                    "1 + s",
                    "c3",
                    "1 + s - c1 - c2",
                    "c4",
                    "1 + s - c0 - c2",
                    "c5",
                    "1 + s - c0 - c1",
                ],
                &[
                    "4 + 4s - c0 - c1 - c2 - 2c3 - 2c4 - 2c5",
                    "1 + s - c0",
                    "1 + s - c3",
                    "1 + s - c1",
                    "1 + s - c4",
                    "1 + s - c2",
                    "1 + s - c5",
                ],
                &[],
                &[],
            ),
        ),
        // Order reversal of the sum.
        entry(
            "BaileyT4",
            f,
            affine(
                f,
                VarMap::Identity,
                &[
                    "4 + 5s - 2c0 - 2c1 - 2c2 - 2c3 - 2c4 - 2c5",
                    "2 + 2s - c1 - c2 - c3 - c4 - c5",
                    "2 + 2s - c0 - c2 - c3 - c4 - c5",
                    "2 + 2s - c0 - c1 - c3 - c4 - c5",
                    "2 + 2s - c0 - c1 - c2 - c4 - c5",
                    "2 + 2s - c0 - c1 - c2 - c3 - c5",
                    "2 + 2s - c0 - c1 - c2 - c3 - c4",
                ],
            ),
            prefactor(
                f,
                false,
                &["1 + s", "c0", "c1", "c2", "c3", "c4", "c5"],
                &[
                    "5 + 5s - 2c0 - 2c1 - 2c2 - 2c3 - 2c4 - 2c5",
                    "1 + s - c0",
                    "1 + s - c1",
                    "1 + s - c2",
                    "1 + s - c3",
                    "1 + s - c4",
                    "1 + s - c5",
                ],
                &[],
                &[],
            ),
        ),
    ]
}

fn enm_rect() -> Vec<TransformIdentity> {
    let f = Family::EnmRect;
    vec![
        // Bailey I (Milne-Newcomb type) = T(1,0).
        entry(
            "MN",
            f,
            affine(
                f,
                VarMap::Identity,
                &[
                    "1 + 2s - c0 - d1 - d2",
                    "1 + s - d1 - d2",
                    "c1",
                    "c2",
                    "d0",
                    "1 + s - c0 - d2",
                    "1 + s - c0 - d1",
                ],
            ),
            prefactor(
                f,
                false,
                &["1 + s - c1 - d0", "1 + s - c2 - d0"],
                &["1 + s - c1", "1 + s - c2"],
                &["1 + s + x", "2 + 2s - c0 - d0 - d1 - d2 + x"],
                &["1 + s - d0 + x", "2 + 2s - c0 - d1 - d2 + x"],
            ),
        ),
        // Bailey II (Kajihara-Noumi type) = T(0,1).
        entry(
            "KN",
            f,
            affine(
                f,
                VarMap::Reflect,
                &[
                    "1 + 2s - c0 - c1 - c2",
                    "1 + s - c1 - c2",
                    "1 + s - c0 - c2",
                    "1 + s - c0 - c1",
                    "d0",
                    "d1",
                    "d2",
                ],
            ),
            prefactor(
                f,
                false,
                &[],
                &[],
                &[
                    "1 + s + x",
                    "1 + s - d0 - d1 + x",
                    "1 + s - d0 - d2 + x",
                    "1 + s - d1 - d2 + x",
                ],
                &[
                    "1 + s - d0 + x",
                    "1 + s - d1 + x",
                    "1 + s - d2 + x",
                    "1 + s - d0 - d1 - d2 + x",
                ],
            ),
        ),
        entry(
            "T(2,0)",
            f,
            affine(
                f,
                VarMap::Identity,
                &[
                    "2 + 3s - c0 - c1 - d0 - d1 - 2d2",
                    "1 + s - d0 - d2",
                    "1 + s - d1 - d2",
                    "c2",
                    "1 + s - c0 - d2",
                    "1 + s - c1 - d2",
                    "2 + 2s - c0 - c1 - d0 - d1 - d2",
                ],
            ),
            prefactor(
                f,
                true,
                &["d2", "1 + s - c2 - d0", "1 + s - c2 - d1"],
                &["1 + s - c0", "1 + s - c1", "1 + s - c2"],
                &[
                    "1 + s + x",
                    "2 + 2s - c0 - d0 - d1 - d2 + x",
                    "2 + 2s - c1 - d0 - d1 - d2 + x",
                ],
                &[
                    "1 + s - d0 + x",
                    "1 + s - d1 + x",
                    "3 + 3s - c0 - c1 - d0 - d1 - 2d2 + x",
                ],
            ),
        ),
        entry(
            "T(3,0)",
            f,
            affine(
                f,
                VarMap::Identity,
                &[
                    "3 + 4s - c0 - c1 - c2 - 2d0 - 2d1 - 2d2",
                    "1 + s - d0 - d1",
                    "1 + s - d0 - d2",
                    "1 + s - d1 - d2",
                    "2 + 2s - c0 - c1 - d0 - d1 - d2",
                    "2 + 2s - c0 - c2 - d0 - d1 - d2",
                    "2 + 2s - c1 - c2 - d0 - d1 - d2",
                ],
            ),
            prefactor(
                f,
                true,
                &["d0", "d1", "d2"],
                &["1 + s - c0", "1 + s - c1", "1 + s - c2"],
                &[
                    "1 + s + x",
                    "2 + 2s - c0 - d0 - d1 - d2 + x",
                    "2 + 2s - c1 - d0 - d1 - d2 + x",
                    "2 + 2s - c2 - d0 - d1 - d2 + x",
                ],
                &[
                    "1 + s - d0 + x",
                    "1 + s - d1 + x",
                    "1 + s - d2 + x",
                    "4 + 4s - c0 - c1 - c2 - 2d0 - 2d1 - 2d2 + x",
                ],
            ),
        ),
        entry(
            "T(1,1)",
            f,
            affine(
                f,
                VarMap::Reflect,
                &[
                    "2 + 3s - 2c0 - c1 - c2 - d1 - d2",
                    "2 + 2s - c0 - c1 - c2 - d1 - d2",
                    "1 + s - c0 - c2",
                    "1 + s - c0 - c1",
                    "d0",
                    "1 + s - c0 - d2",
                    "1 + s - c0 - d1",
                ],
            ),
            prefactor(
                f,
                false,
                &["1 + s - c1 - d0", "1 + s - c2 - d0"],
                &["1 + s - c1", "1 + s - c2"],
                &[
                    "1 + s + x",
                    "c0 + x",
                    "1 + s - d0 - d2 + x",
                    "1 + s - d0 - d1 + x",
                ],
                &[
                    "1 + s - d0 + x",
                    "1 + s - d1 + x",
                    "1 + s - d2 + x",
                    "c0 - d0 + x",
                ],
            ),
        ),
        entry(
            "T(2,1)",
            f,
            affine(
                f,
                VarMap::Reflect,
                &[
                    "3 + 4s - 2c0 - 2c1 - c2 - d0 - d1 - 2d2",
                    "2 + 2s - c0 - c1 - c2 - d0 - d2",
                    "2 + 2s - c0 - c1 - c2 - d1 - d2",
                    "1 + s - c0 - c1",
                    "1 + s - c0 - d2",
                    "1 + s - c1 - d2",
                    "2 + 2s - c0 - c1 - d0 - d1 - d2",
                ],
            ),
            prefactor(
                f,
                true,
                &["1 + s - c2 - d0", "d2", "1 + s - c2 - d1"],
                &["1 + s - c0", "1 + s - c1", "1 + s - c2"],
                &[
                    "1 + s + x",
                    "c1 + x",
                    "c0 + x",
                    "1 + s - d0 - d1 + x",
                ],
                &[
                    "1 + s - d0 + x",
                    "1 + s - d1 + x",
                    "1 + s - d2 + x",
                    "0 - 1 - s + c0 + c1 + d2 + x",
                ],
            ),
        ),
        entry(
            "T(3,1)",
            f,
            affine(
                f,
                VarMap::Reflect,
                &[
                    "4 + 5s - 2c0 - 2c1 - 2c2 - 2d0 - 2d1 - 2d2",
                    "2 + 2s - c0 - c1 - c2 - d0 - d1",
                    "2 + 2s - c0 - c1 - c2 - d0 - d2",
                    "2 + 2s - c0 - c1 - c2 - d1 - d2",
                    "2 + 2s - c0 - c1 - d0 - d1 - d2",
                    "2 + 2s - c0 - c2 - d0 - d1 - d2",
                    "2 + 2s - c1 - c2 - d0 - d1 - d2",
                ],
            ),
            prefactor(
                f,
                true,
                &["d0", "d1", "d2"],
                &["1 + s - c0", "1 + s - c1", "1 + s - c2"],
                &["1 + s + x", "c0 + x", "c1 + x", "c2 + x"],
                &[
                    "0 - 2 - 2s + c0 + c1 + c2 + d0 + d1 + d2 + x",
                    "1 + s - d0 + x",
                    "1 + s - d1 + x",
                    "1 + s - d2 + x",
                ],
            ),
        ),
    ]
}

fn enm_tri() -> Vec<TransformIdentity> {
    let f = Family::EnmTri;
    vec![
        // Triangular Bailey I.
        entry(
            "LMN",
            f,
            affine(
                f,
                VarMap::Identity,
                &[
                    "1 + 2s - c0 - d1 - d2",
                    "1 + s - d1 - d2",
                    "c1",
                    "c2",
                    "1 + s - c0 - d2",
                    "1 + s - c0 - d1",
                ],
            ),
            prefactor(
                f,
                false,
                &["2 + 2s - c0 - c1 - d1 - d2", "2 + 2s - c0 - c2 - d1 - d2"],
                &["1 + s - c1", "1 + s - c2"],
                &["1 + s + x", "2 + 2s - c0 - d1 - d2 - cmp + x"],
                &["1 + s - cmp + x", "2 + 2s - c0 - d1 - d2 + x"],
            ),
        ),
        // Triangular Bailey II.
        entry(
            "LKN",
            f,
            affine(
                f,
                VarMap::Reflect,
                &[
                    "1 + 2s - c0 - c1 - c2",
                    "1 + s - c1 - c2",
                    "1 + s - c0 - c2",
                    "1 + s - c0 - c1",
                    "d1",
                    "d2",
                ],
            ),
            prefactor(
                f,
                false,
                &[],
                &[],
                &[
                    "1 + s + x",
                    "1 + s - d1 - d2 + x",
                    "1 + s - d1 - cmp + x",
                    "1 + s - d2 - cmp + x",
                ],
                &[
                    "1 + s - d1 + x",
                    "1 + s - d2 + x",
                    "1 + s - cmp + x",
                    "1 + s - d1 - d2 - cmp + x",
                ],
            ),
        ),
        // The composition of the two triangular moves.
        entry(
            "LMNKN",
            f,
            affine(
                f,
                VarMap::Reflect,
                &[
                    "2 + 3s - 2c0 - c1 - c2 - d1 - d2",
                    "2 + 2s - c0 - c1 - c2 - d1 - d2",
                    "1 + s - c0 - c2",
                    "1 + s - c0 - c1",
                    "1 + s - c0 - d2",
                    "1 + s - c0 - d1",
                ],
            ),
            prefactor(
                f,
                false,
                &["2 + 2s - c0 - c1 - d1 - d2", "2 + 2s - c0 - c2 - d1 - d2"],
                &["1 + s - c1", "1 + s - c2"],
                &[
                    "1 + s + x",
                    "c0 + x",
                    "1 + s - d1 - cmp + x",
                    "1 + s - d2 - cmp + x",
                ],
                &[
                    "1 + s - cmp + x",
                    "c0 - cmp + x",
                    "1 + s - d1 + x",
                    "1 + s - d2 + x",
                ],
            ),
        ),
    ]
}

fn duality() -> Vec<TransformIdentity> {
    vec![
        TransformIdentity {
            name: "EBDT1",
            family: Family::Duality,
            map: MapKind::DualitySwap,
            prefactor: Default::default(),
            balancing: super::model::LinExpr::zeros(0),
        },
        TransformIdentity {
            name: "m1EBDT",
            family: Family::Duality,
            map: MapKind::DualityCollapse,
            prefactor: Default::default(),
            balancing: super::model::LinExpr::zeros(0),
        },
    ]
}

/// The full identity catalog, in family order.
pub fn catalog() -> Vec<TransformIdentity> {
    let mut out = f4a1();
    out.extend(f4rect());
    out.extend(f4tri());
    out.extend(e10());
    out.extend(duality());
    out.extend(enm_rect());
    out.extend(enm_tri());
    out
}

/// Looks an identity up by name.
pub fn lookup(name: &str) -> Option<TransformIdentity> {
    catalog().into_iter().find(|t| t.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_contains_exactly_the_enumerated_identities() {
        let names: Vec<&str> = catalog().iter().map(|t| t.name).collect();
        let expected = [
            "d1st1", "d1rst1", "d1r1", "ad1r1", "ias2", "ias1", "ias3", "iars2", "iars1",
            "iars3", "iara", "iar", "las2", "las1", "EBaileyT1", "mn1EBDT1", "BaileyT3",
            "BaileyT4", "EBDT1", "m1EBDT", "MN", "KN", "T(2,0)", "T(3,0)", "T(1,1)", "T(2,1)",
            "T(3,1)", "LMN", "LKN", "LMNKN",
        ];
        assert_eq!(names.len(), expected.len());
        for e in expected {
            assert!(names.contains(&e), "missing {e}");
        }
    }

    #[test]
    fn lookup_knows_variable_rules() {
        let kn = lookup("KN").unwrap();
        match kn.map {
            MapKind::Affine { var_map, .. } => assert_eq!(var_map, VarMap::Reflect),
            _ => panic!("KN is affine"),
        }
        let ebdt = lookup("EBDT1").unwrap();
        assert_eq!(ebdt.family, Family::Duality);
        assert_eq!(ebdt.map, MapKind::DualitySwap);
    }

    #[test]
    fn affine_maps_have_full_slot_rows() {
        for t in catalog() {
            if let MapKind::Affine { param_map, .. } = &t.map {
                assert_eq!(
                    param_map.len(),
                    t.family.slot_names().len(),
                    "{} rows",
                    t.name
                );
            }
        }
    }
}
