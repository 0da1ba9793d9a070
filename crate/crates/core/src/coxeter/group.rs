//! Finite matrix group enumeration and double-coset machinery.

use std::collections::HashMap;

use crate::error::{Error, Result};

/// A square integer matrix acting on a parameter vector; the unit of group
/// enumeration. The canonical key is the row-major entry tuple, so elements
/// hash and compare by exact matrix equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    dim: usize,
    entries: Vec<i64>,
}

impl GroupElement {
    /// Builds an element from rows; panics if the rows are not square.
    pub fn from_rows(rows: &[&[i64]]) -> Self {
        let dim = rows.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for row in rows {
            assert_eq!(row.len(), dim, "matrix must be square");
            entries.extend_from_slice(row);
        }
        GroupElement { dim, entries }
    }

    /// Identity matrix of the given dimension.
    pub fn identity(dim: usize) -> Self {
        let mut entries = vec![0; dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = 1;
        }
        GroupElement { dim, entries }
    }

    /// Permutation matrix swapping coordinates `i` and `j` (0-based).
    pub fn swap(dim: usize, i: usize, j: usize) -> Self {
        let mut m = Self::identity(dim);
        m.entries[i * dim + i] = 0;
        m.entries[j * dim + j] = 0;
        m.entries[i * dim + j] = 1;
        m.entries[j * dim + i] = 1;
        m
    }

    /// Matrix dimension.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Entry at `(row, col)`.
    pub fn entry(&self, row: usize, col: usize) -> i64 {
        self.entries[row * self.dim + col]
    }

    /// Row-major entries; the canonical key.
    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &GroupElement) -> GroupElement {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let d = self.dim;
        let mut out = vec![0i64; d * d];
        for i in 0..d {
            for k in 0..d {
                let a = self.entries[i * d + k];
                if a == 0 {
                    continue;
                }
                for j in 0..d {
                    out[i * d + j] += a * rhs.entries[k * d + j];
                }
            }
        }
        GroupElement {
            dim: d,
            entries: out,
        }
    }

    /// `self^k` by repeated multiplication (k is small everywhere we use it).
    pub fn pow(&self, k: usize) -> GroupElement {
        let mut acc = GroupElement::identity(self.dim);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// True when this is the identity matrix.
    pub fn is_identity(&self) -> bool {
        *self == GroupElement::identity(self.dim)
    }

    /// Product of a word of elements, leftmost factor first:
    /// `word_product([A, B, C]) = A * B * C` (C acts first on vectors).
    pub fn word_product(word: &[&GroupElement]) -> GroupElement {
        assert!(!word.is_empty());
        let mut acc = word[0].clone();
        for m in &word[1..] {
            acc = acc.mul(m);
        }
        acc
    }

    /// Applies the matrix to an integer vector (for spot checks in tests).
    pub fn apply_vec(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(v.len(), self.dim);
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.entry(i, j) * v[j]).sum())
            .collect()
    }

    /// Determinant by fraction-free Gaussian elimination (Bareiss); the
    /// group elements here all have determinant +1 or -1.
    pub fn det(&self) -> i64 {
        let d = self.dim;
        let mut m: Vec<i128> = self.entries.iter().map(|&e| e as i128).collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..d {
            if m[k * d + k] == 0 {
                let Some(p) = (k + 1..d).find(|&r| m[r * d + k] != 0) else {
                    return 0;
                };
                for j in 0..d {
                    m.swap(k * d + j, p * d + j);
                }
                sign = -sign;
            }
            for i in k + 1..d {
                for j in k + 1..d {
                    m[i * d + j] = (m[i * d + j] * m[k * d + k] - m[i * d + k] * m[k * d + j])
                        / prev;
                }
                m[i * d + k] = 0;
            }
            prev = m[k * d + k];
        }
        (sign * m[(d - 1) * d + (d - 1)]) as i64
    }
}

/// A relation check: `(product of word)^expected_order == identity`.
#[derive(Debug, Clone)]
pub struct PresentationCheck {
    /// Generator names, leftmost factor first.
    pub word: Vec<String>,
    /// The order the word's product is expected to have (the check passes
    /// when the power equals the identity).
    pub expected_order: usize,
}

impl PresentationCheck {
    /// Convenience constructor.
    pub fn new(word: &[&str], expected_order: usize) -> Self {
        PresentationCheck {
            word: word.iter().map(|s| s.to_string()).collect(),
            expected_order,
        }
    }

    /// Resolves names against `gens` and evaluates the check.
    pub fn run(&self, gens: &HashMap<String, GroupElement>) -> Result<bool> {
        let mut mats = Vec::with_capacity(self.word.len());
        for name in &self.word {
            mats.push(
                gens.get(name)
                    .ok_or_else(|| Error::UnknownGenerator(name.clone()))?,
            );
        }
        let prod = GroupElement::word_product(&mats);
        Ok(prod.pow(self.expected_order).is_identity())
    }
}

/// A fully enumerated finite matrix group with constant-time membership.
#[derive(Debug, Clone)]
pub struct Group {
    elements: Vec<GroupElement>,
    index: HashMap<GroupElement, usize>,
}

impl Group {
    /// Number of elements.
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Elements in enumeration (BFS) order; index 0 is the identity.
    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    /// Index of an element, if present.
    pub fn index_of(&self, g: &GroupElement) -> Option<usize> {
        self.index.get(g).copied()
    }

    /// True when `g` is in the group.
    pub fn contains(&self, g: &GroupElement) -> bool {
        self.index.contains_key(g)
    }

    /// Minimal word lengths over `gens` for every element (Cayley-graph BFS
    /// from the identity). Generators must lie in the group.
    pub fn word_lengths(&self, gens: &[GroupElement]) -> Result<Vec<usize>> {
        for g in gens {
            if !self.contains(g) {
                return Err(Error::GeneratorNotInGroup(format!("{:?}", g.entries())));
            }
        }
        let mut dist = vec![usize::MAX; self.elements.len()];
        let id = GroupElement::identity(self.elements[0].dim());
        let start = self.index_of(&id).expect("identity in group");
        dist[start] = 0;
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            let d = dist[i];
            for g in gens {
                let next = self.elements[i].mul(g);
                let j = self.index_of(&next).expect("group closed under gens");
                if dist[j] == usize::MAX {
                    dist[j] = d + 1;
                    queue.push_back(j);
                }
            }
        }
        Ok(dist)
    }
}

/// Breadth-first closure of the generated group, with canonical hashing.
///
/// Fails with [`Error::GroupGrowth`] if more than `cap` distinct elements
/// appear, which almost always means wrong generators.
pub fn generate_group(gens: &[GroupElement], cap: usize) -> Result<Group> {
    assert!(!gens.is_empty(), "need at least one generator");
    let dim = gens[0].dim();
    for g in gens {
        assert_eq!(g.dim(), dim, "all generators must share a dimension");
    }
    let id = GroupElement::identity(dim);
    let mut elements = vec![id.clone()];
    let mut index = HashMap::from([(id, 0usize)]);
    let mut head = 0;
    while head < elements.len() {
        let current = elements[head].clone();
        head += 1;
        for g in gens {
            let next = current.mul(g);
            if !index.contains_key(&next) {
                if elements.len() >= cap {
                    return Err(Error::GroupGrowth { cap });
                }
                index.insert(next.clone(), elements.len());
                elements.push(next);
            }
        }
    }
    Ok(Group { elements, index })
}

/// The orbit partition of a group under two-sided multiplication by the
/// subgroups generated by `h1_gens` (left) and `h2_gens` (right).
#[derive(Debug, Clone)]
pub struct CosetDecomposition {
    /// Orbits as sorted element-index lists into the parent group.
    pub orbits: Vec<Vec<usize>>,
    /// Per-orbit canonical representative: lexicographically least matrix.
    pub representatives: Vec<GroupElement>,
    /// Orbit id for every group element index.
    pub orbit_of: Vec<usize>,
}

impl CosetDecomposition {
    /// Number of double cosets.
    pub fn orbit_count(&self) -> usize {
        self.orbits.len()
    }
}

/// Computes the double-coset decomposition `H1 \ G / H2`.
///
/// Orbits are explored by BFS with generator multiplication on both sides,
/// then sorted by canonical representative so the output is deterministic.
pub fn double_cosets(
    group: &Group,
    h1_gens: &[GroupElement],
    h2_gens: &[GroupElement],
) -> Result<CosetDecomposition> {
    for g in h1_gens.iter().chain(h2_gens) {
        if !group.contains(g) {
            return Err(Error::GeneratorNotInGroup(format!("{:?}", g.entries())));
        }
    }
    let n = group.order();
    let mut orbit_of = vec![usize::MAX; n];
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    for seed in 0..n {
        if orbit_of[seed] != usize::MAX {
            continue;
        }
        let oid = orbits.len();
        let mut members = vec![seed];
        orbit_of[seed] = oid;
        let mut queue = std::collections::VecDeque::from([seed]);
        while let Some(i) = queue.pop_front() {
            let g = &group.elements()[i];
            let neighbors = h1_gens
                .iter()
                .map(|h| h.mul(g))
                .chain(h2_gens.iter().map(|h| g.mul(h)));
            for next in neighbors {
                let j = group.index_of(&next).expect("closed under subgroup action");
                if orbit_of[j] == usize::MAX {
                    orbit_of[j] = oid;
                    members.push(j);
                    queue.push_back(j);
                }
            }
        }
        members.sort_unstable();
        orbits.push(members);
    }
    // Canonical representative: lexicographically least matrix key.
    let reps: Vec<GroupElement> = orbits
        .iter()
        .map(|orbit| {
            orbit
                .iter()
                .map(|&i| group.elements()[i].clone())
                .min()
                .expect("orbit nonempty")
        })
        .collect();
    // Deterministic orbit order: sort orbits by representative.
    let mut perm: Vec<usize> = (0..orbits.len()).collect();
    perm.sort_by(|&a, &b| reps[a].cmp(&reps[b]));
    let mut orbits_sorted = Vec::with_capacity(orbits.len());
    let mut reps_sorted = Vec::with_capacity(reps.len());
    let mut relabel = vec![0usize; orbits.len()];
    for (new_id, &old_id) in perm.iter().enumerate() {
        relabel[old_id] = new_id;
        orbits_sorted.push(std::mem::take(&mut orbits[old_id]));
        reps_sorted.push(reps[old_id].clone());
    }
    for o in orbit_of.iter_mut() {
        *o = relabel[*o];
    }
    Ok(CosetDecomposition {
        orbits: orbits_sorted,
        representatives: reps_sorted,
        orbit_of,
    })
}

/// Checks that the supplied elements hit every orbit exactly once; returns
/// the orbit index of each on success.
pub fn match_representatives(
    group: &Group,
    decomp: &CosetDecomposition,
    reps: &[GroupElement],
) -> Result<Vec<usize>> {
    if reps.len() != decomp.orbit_count() {
        return Err(Error::Constraint(format!(
            "{} representatives supplied for {} orbits",
            reps.len(),
            decomp.orbit_count()
        )));
    }
    let mut seen = vec![false; decomp.orbit_count()];
    let mut out = Vec::with_capacity(reps.len());
    for r in reps {
        let idx = group
            .index_of(r)
            .ok_or_else(|| Error::GeneratorNotInGroup(format!("{:?}", r.entries())))?;
        let oid = decomp.orbit_of[idx];
        if seen[oid] {
            return Err(Error::Constraint(format!(
                "two representatives land in orbit {oid}"
            )));
        }
        seen[oid] = true;
        out.push(oid);
    }
    Ok(out)
}
