//! Verification of tabulated automorphism groups.
//!
//! A table row gives a permutation type, linear relations on the
//! coefficients `a = (a₀, …, a₅)` of `Q₁`, a claimed group, an example plane
//! and generators of the group (with `−I` adjoined, so that the claimed group
//! is the quotient by `±I`).  Verification samples an `a` satisfying the
//! relations and checks, for the resulting threefold:
//!
//! 1. every generator preserves the pencil;
//! 2. the plane lies on `Q`;
//! 3. every generator preserves the plane;
//! 4. the group modulo `±I` has the claimed isomorphism type;
//! 5. no other monomial transformation preserves the pencil and the plane,
//!    so the listed group is the full stabilizer among monomial maps.
//!
//! In the singular case the reflection `x₅ ↦ −x₅` in the vertex coordinate
//! is adjoined to the generators: every plane on the cone `Q` passes through
//! the vertex, so this reflection preserves `Q`, `Q₁` and every such plane.

use std::path::Path;

use exactkernel::{CycloElement, CycloMatrix};
use itertools::Itertools;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::AutError;
use crate::group::{group_closure, identify_group, DEFAULT_CAP};
use crate::monomial::SignedMonomialMatrix;
use crate::pencil::{preserves_pencil, QuadricKind};
use crate::plane::{parse_linear_form, plane_invariant, Plane};
use crate::skew::{cycle_type, singular_scaling_constraint};

/// Seed used when none is supplied.
pub const DEFAULT_SEED: u64 = 0x5eed;

/// One row of an automorphism table.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    /// Stable identifier, e.g. `smooth-012-345-a4`.
    pub label: String,
    /// Shape of the quadric `Q`.
    pub quadric: QuadricKind,
    /// The permutation type in cycle notation.
    pub sigma: String,
    /// Linear relations on `a0, …, a5` (each form is set to zero).
    #[serde(default)]
    pub relations: Vec<String>,
    /// Claimed isomorphism type of the group modulo `±I`.
    pub group: String,
    /// Three linear forms cutting out the example plane.
    pub plane: Vec<String>,
    /// Generators in bracket notation.
    pub generators: Vec<String>,
    /// Values chosen for free parameters of the plane, if any.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parameters: Option<String>,
    /// Description of any correction applied to the printed entry.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub erratum: Option<String>,
    /// The plane as printed, when corrected.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub printed_plane: Option<Vec<String>>,
    /// The generators as printed, when corrected.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub printed_generators: Option<Vec<String>>,
}

#[derive(Deserialize)]
struct TableFile {
    row: Vec<TableRow>,
}

/// Parses a table file (`[[row]]` entries).
pub fn parse_table(src: &str) -> Result<Vec<TableRow>, AutError> {
    let t: TableFile = toml::from_str(src).map_err(|e| AutError::Parse {
        input: "table".into(),
        reason: e.to_string(),
    })?;
    Ok(t.row)
}

/// Reads a table file.
pub fn load_table(path: &Path) -> Result<Vec<TableRow>, AutError> {
    let src = std::fs::read_to_string(path).map_err(|e| AutError::Io {
        path: path.display().to_string(),
        reason: e.to_string(),
    })?;
    parse_table(&src)
}

/// Looks up a row by label.
pub fn find_row<'a>(rows: &'a [TableRow], label: &str) -> Result<&'a TableRow, AutError> {
    rows.iter()
        .find(|r| r.label == label)
        .ok_or_else(|| AutError::UnknownRow(label.to_string()))
}

impl TableRow {
    /// The listed generators, with the vertex reflection adjoined in the
    /// singular case.
    pub fn generator_matrices(&self) -> Result<Vec<SignedMonomialMatrix>, AutError> {
        let mut gens = self
            .generators
            .iter()
            .map(|g| SignedMonomialMatrix::parse(g, 6))
            .collect::<Result<Vec<_>, _>>()?;
        if self.quadric == QuadricKind::Singular {
            gens.push(vertex_reflection());
        }
        Ok(gens)
    }

    /// The example plane.
    pub fn plane(&self) -> Result<Plane, AutError> {
        Plane::parse(&self.plane)
    }

    /// Coefficient matrix of the relations (zero rows if there are none).
    pub fn relation_matrix(&self) -> Result<CycloMatrix, AutError> {
        let rows = self
            .relations
            .iter()
            .map(|r| parse_linear_form(r, 'a', 6))
            .collect::<Result<Vec<_>, _>>()?;
        if rows.is_empty() {
            return Ok(CycloMatrix::zeros(0, 6));
        }
        Ok(CycloMatrix::from_rows(rows)?)
    }

    /// The same row with the sign of one entry of the first non-scalar
    /// generator flipped (a negative control).
    pub fn with_corrupted_sign(&self) -> Result<TableRow, AutError> {
        let mut row = self.clone();
        for g in row.generators.iter_mut() {
            let m = SignedMonomialMatrix::parse(g, 6)?;
            if !m.is_scalar() {
                let mut s = m.scalars().to_vec();
                s[0] = -s[0].clone();
                *g = SignedMonomialMatrix::new(m.perm().to_vec(), s)?.to_string();
                row.label = format!("{}-corrupted", self.label);
                return Ok(row);
            }
        }
        Err(AutError::NotMonomial("no non-scalar generator to corrupt".into()))
    }
}

/// `diag(1, 1, 1, 1, 1, −1)`.
pub fn vertex_reflection() -> SignedMonomialMatrix {
    let mut s = vec![CycloElement::one(); 6];
    s[5] = -CycloElement::one();
    SignedMonomialMatrix::diagonal(s).expect("nonzero diagonal")
}

/// Draws `a` satisfying the relations: small integer coordinates on a kernel
/// basis, rejecting samples that violate the genericity conditions.
pub fn sample_a(row: &TableRow, seed: u64) -> Result<Vec<CycloElement>, AutError> {
    let rel = row.relation_matrix()?;
    let basis: Vec<Vec<CycloElement>> = if rel.rows() == 0 {
        (0..6)
            .map(|i| (0..6).map(|j| CycloElement::from(i64::from(i == j))).collect())
            .collect()
    } else {
        rel.kernel()
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..1000 {
        let mut a = vec![CycloElement::zero(); 6];
        for v in &basis {
            let t = CycloElement::from(rng.gen_range(-30i64..=30));
            for (x, y) in a.iter_mut().zip(v) {
                *x = x.clone() + t.clone() * y.clone();
            }
        }
        if row.quadric.check_coefficients(&a).is_ok() {
            return Ok(a);
        }
    }
    Err(AutError::NotDistinct(format!("no admissible sample for {}", row.label)))
}

/// Candidate permutations with the scalings of the last coordinate that
/// make them preserve the pencil.
fn pencil_candidates(
    a: &[CycloElement],
    kind: QuadricKind,
) -> Result<Vec<(Vec<usize>, CycloElement)>, AutError> {
    let mut out = Vec::new();
    match kind {
        QuadricKind::Smooth => {
            for p in (0..6).permutations(6) {
                if preserves_pencil(&SignedMonomialMatrix::permutation(p.clone())?, a, kind)? {
                    out.push((p, CycloElement::one()));
                }
            }
        }
        QuadricKind::Singular => {
            for p in (0..5).permutations(5) {
                // Q₁ ∘ M has coefficient a_{p(i)} at xᵢ² (i < 5) and λ²a₅ at
                // x₅²; it lies in the pencil iff a_{p(i)} = q·aᵢ + r on the
                // first five slots, and then λ² = q.
                let d = a[1].clone() - a[0].clone();
                let q = (a[p[1]].clone() - a[p[0]].clone()) / d;
                let r = a[p[0]].clone() - q.clone() * a[0].clone();
                if !(2..5).all(|i| a[p[i]] == q.clone() * a[i].clone() + r.clone()) {
                    continue;
                }
                let mut full = p.clone();
                full.push(5);
                for l in singular_scaling_constraint(&cycle_type(&p), &q)? {
                    out.push((full.clone(), l));
                }
            }
        }
    }
    Ok(out)
}

/// All monomial transformations (modulo `±I`) preserving the pencil with
/// coefficients `a` and the plane, one representative per coset (the one
/// whose first column has entry `+1`).
pub fn monomial_stabilizer(
    a: &[CycloElement],
    kind: QuadricKind,
    plane: &Plane,
) -> Result<Vec<SignedMonomialMatrix>, AutError> {
    kind.check_coefficients(a)?;
    let signed = match kind {
        QuadricKind::Smooth => 5,
        QuadricKind::Singular => 4,
    };
    let mut found = Vec::new();
    for (p, lambda) in pencil_candidates(a, kind)? {
        // Fix the first sign to +1; −I accounts for the other half.
        for mask in 0..1u32 << signed {
            let mut s = vec![CycloElement::one(); 6];
            for (k, x) in s.iter_mut().enumerate().skip(1).take(signed) {
                if mask >> (k - 1) & 1 == 1 {
                    *x = -CycloElement::one();
                }
            }
            if kind == QuadricKind::Singular {
                s[5] = lambda.clone();
            }
            let m = SignedMonomialMatrix::new(p.clone(), s)?;
            if plane.preserved_by_fast(&m) && preserves_pencil(&m, a, kind)? {
                found.push(m);
            }
        }
    }
    Ok(found)
}

/// Outcome of one check of [`verify_table_row`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    /// What was checked.
    pub name: String,
    /// Whether it passed.
    pub passed: bool,
    /// Supporting detail.
    pub detail: String,
}

/// Report of [`verify_table_row`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RowReport {
    /// Row label.
    pub label: String,
    /// Quadric type.
    pub quadric: QuadricKind,
    /// Permutation type.
    pub sigma: String,
    /// Claimed isomorphism type.
    pub claimed: String,
    /// Identified isomorphism type of the generated group modulo `±I`.
    pub identified: String,
    /// Order of the generated group modulo `±I`.
    pub order: usize,
    /// The sampled coefficients `a`.
    pub sample_a: Vec<String>,
    /// Individual checks.
    pub checks: Vec<Check>,
}

impl RowReport {
    /// True when every check passed.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// Human-readable table.
    pub fn table(&self) -> String {
        let mut s = format!(
            "row {} ({} quadric, sigma {}): claimed {}, identified {} of order {}\n",
            self.label,
            match self.quadric {
                QuadricKind::Smooth => "smooth",
                QuadricKind::Singular => "singular",
            },
            self.sigma,
            self.claimed,
            self.identified,
            self.order
        );
        s += &format!("  a = ({})\n", self.sample_a.join(", "));
        for c in &self.checks {
            s += &format!(
                "  [{}] {}: {}\n",
                if c.passed { "pass" } else { "FAIL" },
                c.name,
                c.detail
            );
        }
        s
    }
}

fn check(name: &str, passed: bool, detail: impl Into<String>) -> Check {
    Check {
        name: name.into(),
        passed,
        detail: detail.into(),
    }
}

/// Verifies a table row for the coefficients sampled with `seed`.
///
/// Malformed row data is an error; mathematical failures are report entries.
pub fn verify_table_row(row: &TableRow, seed: u64) -> Result<RowReport, AutError> {
    let gens = row.generator_matrices()?;
    let plane = row.plane()?;
    let a = sample_a(row, seed)?;
    let kind = row.quadric;
    let mut checks = Vec::new();

    let bad: Vec<String> = gens
        .iter()
        .map(|g| preserves_pencil(g, &a, kind).map(|ok| (!ok).then(|| g.to_string())))
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .flatten()
        .collect();
    checks.push(check(
        "generators preserve the pencil",
        bad.is_empty(),
        if bad.is_empty() {
            format!("{} generators", gens.len())
        } else {
            format!("fails for {}", bad.join(" "))
        },
    ));
    checks.push(check("plane lies on Q", plane.lies_on(kind), ""));

    let (identified, order) = match group_closure(&gens, DEFAULT_CAP) {
        Ok(g) => {
            let inv = plane_invariant(&g, &plane);
            let bad: Vec<String> = gens
                .iter()
                .filter(|m| !plane.preserved_by(m))
                .map(ToString::to_string)
                .collect();
            checks.push(check(
                "plane is invariant",
                inv,
                if inv { String::new() } else { format!("moved by {}", bad.join(" ")) },
            ));
            match identify_group(&g) {
                Ok(id) => {
                    let order = id.fingerprint.order;
                    checks.push(check(
                        "isomorphism type",
                        id.label == row.group,
                        format!("{:?}", id.fingerprint),
                    ));
                    match monomial_stabilizer(&a, kind, &plane) {
                        Ok(stab) => {
                            let extra = stab.iter().filter(|m| !g.contains(m)).count();
                            checks.push(check(
                                "no further monomial automorphisms",
                                extra == 0 && stab.len() == order,
                                format!("stabilizer of order {}", stab.len()),
                            ))
                        }
                        Err(e) => checks.push(check("no further monomial automorphisms", false, e.to_string())),
                    }
                    (id.label, order)
                }
                Err(e) => {
                    checks.push(check("isomorphism type", false, e.to_string()));
                    ("unknown".into(), 0)
                }
            }
        }
        Err(e) => {
            checks.push(check("plane is invariant", false, e.to_string()));
            checks.push(check("isomorphism type", false, e.to_string()));
            ("unknown".into(), 0)
        }
    };
    Ok(RowReport {
        label: row.label.clone(),
        quadric: kind,
        sigma: row.sigma.clone(),
        claimed: row.group.clone(),
        identified,
        order,
        sample_a: a.iter().map(ToString::to_string).collect(),
        checks,
    })
}
