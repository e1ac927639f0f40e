//! Finite matrix groups, their quotients by `±I`, and identification of the
//! isomorphism type by fingerprint.
//!
//! The reference fingerprints are not typed in by hand: they are computed by
//! the same closure and fingerprint code from explicit permutation
//! presentations of each target group.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

use exactkernel::cyclo::common_conductor;
use num_integer::Integer;
use serde::Serialize;

use crate::error::AutError;
use crate::monomial::SignedMonomialMatrix;

/// Default bound on the size of a closure.
pub const DEFAULT_CAP: usize = 4096;

/// A finite group of monomial matrices given by generators, together with
/// its full element list (sorted).
#[derive(Clone, Debug)]
pub struct FiniteMatrixGroup {
    /// The generators as supplied.
    pub generators: Vec<SignedMonomialMatrix>,
    /// Every element, in increasing order.
    pub elements: Vec<SignedMonomialMatrix>,
}

impl FiniteMatrixGroup {
    /// Number of elements.
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Dimension of the matrices.
    pub fn dim(&self) -> usize {
        self.elements[0].dim()
    }

    /// Membership test (exact equality, independent of representation).
    pub fn contains(&self, m: &SignedMonomialMatrix) -> bool {
        self.elements.iter().any(|x| x == m)
    }
}

/// Breadth-first closure of `gens` under multiplication, layer by layer so
/// that the result does not depend on scheduling.
pub fn close<E: Ord + Clone>(
    gens: &[E],
    identity: E,
    mul: impl Fn(&E, &E) -> E,
    cap: usize,
) -> Result<Vec<E>, AutError> {
    let mut seen = BTreeSet::from([identity.clone()]);
    let mut frontier = vec![identity];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for x in &frontier {
            for g in gens {
                let y = mul(x, g);
                if seen.insert(y.clone()) {
                    if seen.len() > cap {
                        return Err(AutError::GroupTooLarge(cap));
                    }
                    next.push(y);
                }
            }
        }
        frontier = next;
    }
    Ok(seen.into_iter().collect())
}

/// The group generated by `gens` (a finite set of monomial matrices of equal
/// dimension); errors once more than `cap` elements are found.
///
/// All entries are first promoted to one cyclotomic field, so that the
/// element order used for deduplication is a single lexicographic order.
pub fn group_closure(
    gens: &[SignedMonomialMatrix],
    cap: usize,
) -> Result<FiniteMatrixGroup, AutError> {
    let n = gens.first().map_or(0, SignedMonomialMatrix::dim);
    if let Some(g) = gens.iter().find(|g| g.dim() != n) {
        return Err(AutError::Dimension {
            expected: n,
            got: g.dim(),
        });
    }
    let field = gens
        .iter()
        .try_fold(1, |acc, g| Ok::<_, AutError>(common_conductor(acc, g.conductor()?)?))?;
    let promoted = gens
        .iter()
        .map(|g| g.promote(field))
        .collect::<Result<Vec<_>, _>>()?;
    let identity = SignedMonomialMatrix::identity(n).promote(field)?;
    let elements = close(&promoted, identity, |a, b| a.mul(b), cap)?;
    Ok(FiniteMatrixGroup {
        generators: gens.to_vec(),
        elements,
    })
}

/// A finite group as a multiplication table on `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CayleyTable {
    n: usize,
    table: Vec<usize>,
    identity: usize,
}

impl CayleyTable {
    /// Table of the elements (sorted, deduplicated) under `mul`; `index`
    /// locates a product in the list.
    pub fn from_elements<E: Ord>(elements: &[E], identity: &E, mul: impl Fn(&E, &E) -> E) -> Self {
        let n = elements.len();
        let index = |e: &E| elements.binary_search(e).expect("closed under multiplication");
        let mut table = Vec::with_capacity(n * n);
        for a in elements {
            for b in elements {
                table.push(index(&mul(a, b)));
            }
        }
        CayleyTable {
            n,
            table,
            identity: index(identity),
        }
    }

    /// Number of elements.
    pub fn order(&self) -> usize {
        self.n
    }

    /// Product of two element indices.
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b]
    }

    fn element_order(&self, a: usize) -> usize {
        let (mut x, mut k) = (a, 1);
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    fn inverse(&self, a: usize) -> usize {
        (0..self.n).find(|&b| self.mul(a, b) == self.identity).expect("group")
    }

    /// Subgroup generated by a set of indices.
    fn generated(&self, gens: &[usize]) -> usize {
        close(gens, self.identity, |a, b| self.mul(*a, *b), self.n)
            .expect("subgroup of a finite group")
            .len()
    }
}

/// Isomorphism invariants of a finite group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupFingerprint {
    /// Group order.
    pub order: usize,
    /// Whether the group is abelian.
    pub abelian: bool,
    /// Least common multiple of the element orders.
    pub exponent: usize,
    /// Number of elements of each order.
    pub histogram: BTreeMap<usize, usize>,
    /// Order of the commutator subgroup.
    pub derived_order: usize,
    /// Order of the centre.
    pub center_order: usize,
    /// Number of distinct squares `g²`.
    pub squares: usize,
}

/// Computes the fingerprint of a multiplication table.
pub fn fingerprint(t: &CayleyTable) -> GroupFingerprint {
    let n = t.order();
    let orders: Vec<usize> = (0..n).map(|a| t.element_order(a)).collect();
    let mut histogram = BTreeMap::new();
    for &o in &orders {
        *histogram.entry(o).or_insert(0) += 1;
    }
    let commutes = |a: usize, b: usize| t.mul(a, b) == t.mul(b, a);
    let center_order = (0..n).filter(|&a| (0..n).all(|b| commutes(a, b))).count();
    let inv: Vec<usize> = (0..n).map(|a| t.inverse(a)).collect();
    let commutators: BTreeSet<usize> = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .map(|(a, b)| t.mul(t.mul(inv[a], inv[b]), t.mul(a, b)))
        .collect();
    let squares: BTreeSet<usize> = (0..n).map(|a| t.mul(a, a)).collect();
    GroupFingerprint {
        order: n,
        abelian: center_order == n,
        exponent: orders.iter().fold(1, |acc, &o| acc.lcm(&o)),
        histogram,
        derived_order: t.generated(&commutators.into_iter().collect::<Vec<_>>()),
        center_order,
        squares: squares.len(),
    }
}

fn compose(p: &[usize], q: &[usize]) -> Vec<usize> {
    q.iter().map(|&i| p[i]).collect()
}

/// Permutation of `0..n` from disjoint cycles.
fn cycles(n: usize, cs: &[&[usize]]) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    for c in cs {
        for k in 0..c.len() {
            p[c[k]] = c[(k + 1) % c.len()];
        }
    }
    p
}

/// `C₂² ⋊ C₄` with the generator of `C₄` swapping the two factors, as a
/// permutation group via its left regular representation.
fn semidirect_c2sq_c4() -> Vec<Vec<usize>> {
    let swap = |v: usize| ((v & 1) << 1) | ((v >> 1) & 1);
    let mul = |(v, k): (usize, usize), (w, l): (usize, usize)| {
        let w = if k % 2 == 1 { swap(w) } else { w };
        (v ^ w, (k + l) % 4)
    };
    let enc = |(v, k): (usize, usize)| v * 4 + k;
    let dec = |x: usize| (x / 4, x % 4);
    [(1, 0), (2, 0), (0, 1)]
        .iter()
        .map(|&g| (0..16).map(|x| enc(mul(g, dec(x)))).collect())
        .collect()
}

/// Labels of the recognised isomorphism types.
pub const GROUP_LABELS: [&str; 13] = [
    "trivial", "C2", "C3", "C2^2", "C5", "C6", "C2^3", "D4", "C10", "A4", "C2^2xC4", "C2^2:C4",
    "C2xA4",
];

/// Generators of a permutation presentation of each labelled group.
pub fn presentation(label: &str) -> Option<Vec<Vec<usize>>> {
    let c = cycles;
    Some(match label {
        "trivial" => vec![c(1, &[])],
        "C2" => vec![c(2, &[&[0, 1]])],
        "C3" => vec![c(3, &[&[0, 1, 2]])],
        "C2^2" => vec![c(4, &[&[0, 1]]), c(4, &[&[2, 3]])],
        "C5" => vec![c(5, &[&[0, 1, 2, 3, 4]])],
        "C6" => vec![c(6, &[&[0, 1, 2, 3, 4, 5]])],
        "C2^3" => vec![c(6, &[&[0, 1]]), c(6, &[&[2, 3]]), c(6, &[&[4, 5]])],
        "D4" => vec![c(4, &[&[0, 1, 2, 3]]), c(4, &[&[1, 3]])],
        "C10" => vec![c(10, &[&[0, 1, 2, 3, 4, 5, 6, 7, 8, 9]])],
        "A4" => vec![c(4, &[&[0, 1, 2]]), c(4, &[&[0, 1], &[2, 3]])],
        "C2^2xC4" => vec![c(8, &[&[0, 1]]), c(8, &[&[2, 3]]), c(8, &[&[4, 5, 6, 7]])],
        "C2^2:C4" => semidirect_c2sq_c4(),
        "C2xA4" => vec![c(6, &[&[0, 1, 2]]), c(6, &[&[0, 1], &[2, 3]]), c(6, &[&[4, 5]])],
        _ => return None,
    })
}

/// Fingerprint of a permutation group given by generators.
pub fn permutation_group_fingerprint(gens: &[Vec<usize>]) -> GroupFingerprint {
    let id: Vec<usize> = (0..gens[0].len()).collect();
    let elements = close(gens, id.clone(), |p, q| compose(p, q), DEFAULT_CAP).expect("small presentation");
    fingerprint(&CayleyTable::from_elements(&elements, &id, |p, q| compose(p, q)))
}

/// The reference table `(label, fingerprint)`, computed once.
pub fn reference_fingerprints() -> &'static [(&'static str, GroupFingerprint)] {
    static TABLE: OnceLock<Vec<(&'static str, GroupFingerprint)>> = OnceLock::new();
    TABLE.get_or_init(|| {
        GROUP_LABELS
            .iter()
            .map(|&l| (l, permutation_group_fingerprint(&presentation(l).expect("known label"))))
            .collect()
    })
}

/// The quotient `G / {±I}` as a multiplication table on canonical coset
/// representatives.
pub fn quotient_by_sign(g: &FiniteMatrixGroup) -> Result<CayleyTable, AutError> {
    let n = g.dim();
    if !g.contains(&SignedMonomialMatrix::minus_identity(n)) {
        return Err(AutError::MissingMinusIdentity);
    }
    let reps: Vec<SignedMonomialMatrix> = g
        .elements
        .iter()
        .map(SignedMonomialMatrix::canonical_mod_sign)
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    Ok(CayleyTable::from_elements(
        &reps,
        &SignedMonomialMatrix::identity(n)
            .promote(g.elements[0].conductor()?)?
            .canonical_mod_sign(),
        |a, b| a.mul(b).canonical_mod_sign(),
    ))
}

/// Result of [`identify_group`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Identification {
    /// Matched label, or `"unknown"`.
    pub label: String,
    /// Fingerprint of `G / {±I}`.
    pub fingerprint: GroupFingerprint,
}

/// Identifies `G / {±I}` among the labelled types.
pub fn identify_group(g: &FiniteMatrixGroup) -> Result<Identification, AutError> {
    let fp = fingerprint(&quotient_by_sign(g)?);
    let label = reference_fingerprints()
        .iter()
        .find(|(_, f)| *f == fp)
        .map_or("unknown", |(l, _)| l);
    Ok(Identification {
        label: label.to_string(),
        fingerprint: fp,
    })
}
