//! Worked examples for the automorphism checks, with independent oracles
//! for the group-theoretic reference values.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use autcheck::*;
use exactkernel::expr::parse_scalar;
use exactkernel::CycloElement;
use num_traits::{One, Zero};

fn ints(v: &[i64]) -> Vec<CycloElement> {
    v.iter().map(|&x| CycloElement::from(x)).collect()
}

fn m(s: &str) -> SignedMonomialMatrix {
    SignedMonomialMatrix::parse(s, 6).unwrap()
}

fn rows() -> Vec<TableRow> {
    let dir = format!("{}/../../data/aut", env!("CARGO_MANIFEST_DIR"));
    let mut rows = load_table(Path::new(&format!("{dir}/smooth.toml"))).unwrap();
    rows.extend(load_table(Path::new(&format!("{dir}/singular.toml"))).unwrap());
    rows
}

fn row(label: &str) -> TableRow {
    find_row(&rows(), label).unwrap().clone()
}

#[test]
fn pencil_rank_examples() {
    let id: Vec<usize> = (0..6).collect();
    let s = [1, 0, 3, 2, 5, 4];
    assert!(pencil_invariant(&id, &ints(&[3, 1, 4, 5, 9, 2]), None).unwrap());
    // a0 + a1 − a4 − a5 = a2 + a3 − a4 − a5 = 0.
    assert!(pencil_invariant(&s, &ints(&[2, -1, 3, -2, 0, 1]), None).unwrap());
    assert!(!pencil_invariant(&s, &ints(&[1, 2, 3, 4, 5, 7]), None).unwrap());
    assert!(matches!(
        pencil_invariant(&s, &ints(&[1, 1, 3, 4, 5, 7]), None),
        Err(AutError::NotDistinct(_))
    ));
}

#[test]
fn skew_examples() {
    let only_id = skew_classify(&ints(&[0, 1, 2, 3, 5])).unwrap();
    assert_eq!(only_id.len(), 1);
    assert_eq!(only_id[0].nu, vec![0, 1, 2, 3, 4]);
    assert_eq!(only_id[0].c, CycloElement::one());

    let z5 = CycloElement::zeta(5).unwrap();
    let geo: Vec<CycloElement> = (0..5).map(|k| z5.pow(k)).collect();
    let found = skew_classify(&geo).unwrap();
    assert!(found.iter().any(|s| s.nu == vec![1, 2, 3, 4, 0] && s.c == z5));
    // The rotations of the regular pentagon: c runs over all fifth roots.
    assert_eq!(found.len(), 5);

    let pm = skew_classify(&ints(&[2, -2, 3, -3, 0])).unwrap();
    assert!(pm.iter().any(|s| s.nu == vec![1, 0, 3, 2, 4] && s.c == CycloElement::from(-1)));

    let quarter = skew_classify(&[
        CycloElement::one(),
        CycloElement::i(),
        CycloElement::from(-1),
        -CycloElement::i(),
        CycloElement::from(0),
    ])
    .unwrap();
    assert!(quarter.iter().any(|s| s.nu == vec![1, 2, 3, 0, 4] && s.c == CycloElement::i()));
    assert!(skew_classify(&ints(&[1, 2, 3, 1, 5])).is_err());
}

#[test]
fn scaling_constraints() {
    let roots = |c: &CycloElement| singular_scaling_constraint(&[5], c).unwrap();
    assert_eq!(roots(&CycloElement::one()), ints(&[1, -1]));
    let four = singular_scaling_constraint(&[4, 1], &CycloElement::i()).unwrap();
    assert_eq!(four.len(), 2);
    for l in &four {
        assert_eq!(root_of_unity_order(l, 20), Some(8));
    }
    let z5 = CycloElement::zeta(5).unwrap();
    let ten = roots(&z5);
    assert_eq!(ten.len(), 2);
    for l in &ten {
        assert_eq!(l.pow(10), CycloElement::one());
        assert!(*l != CycloElement::one() && *l != CycloElement::from(-1));
    }
    let minus = singular_scaling_constraint(&[2, 2, 1], &CycloElement::from(-1)).unwrap();
    assert_eq!(minus, vec![CycloElement::i(), -CycloElement::i()]);
    assert!(singular_scaling_constraint(&[5], &CycloElement::from(2)).is_err());
}

#[test]
fn closures() {
    let minus = SignedMonomialMatrix::minus_identity(6);
    assert_eq!(group_closure(std::slice::from_ref(&minus), DEFAULT_CAP).unwrap().order(), 2);
    assert_eq!(group_closure(&[m("[1,2,3,4,5,0]")], DEFAULT_CAP).unwrap().order(), 6);
    let a4 = [m("[1,2,0,4,-5,-3]"), m("[-0,1,2,3,4,-5]"), m("[0,-1,2,-3,4,5]"), minus];
    let g = group_closure(&a4, DEFAULT_CAP).unwrap();
    assert_eq!(g.order(), 24);
    assert_eq!(quotient_by_sign(&g).unwrap().order(), 12);
    // A scalar of infinite order never closes up.
    let two = SignedMonomialMatrix::diagonal(ints(&[2, 1, 1, 1, 1, 1])).unwrap();
    assert_eq!(group_closure(&[two], 100).unwrap_err(), AutError::GroupTooLarge(100));
}

/// Element orders of `Z₂ × Z₂ × Z₄`, counted directly.
fn abelian_histogram() -> BTreeMap<usize, usize> {
    let mut h = BTreeMap::new();
    for a in 0..2 {
        for b in 0..2 {
            for c in 0..4usize {
                let o = [if a == 1 { 2 } else { 1 }, if b == 1 { 2 } else { 1 }, 4 / gcd(c, 4)]
                    .into_iter()
                    .max()
                    .unwrap();
                *h.entry(o).or_insert(0) += 1;
            }
        }
    }
    h
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Element orders of the even permutations of four letters.
fn alternating_histogram() -> BTreeMap<usize, usize> {
    let mut h = BTreeMap::new();
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    if p.iter().collect::<BTreeSet<_>>().len() < 4 {
                        continue;
                    }
                    let inversions = (0..4).flat_map(|i| (i + 1..4).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
                    if inversions % 2 == 1 {
                        continue;
                    }
                    let mut q = p;
                    let mut o = 1;
                    while q != [0, 1, 2, 3] {
                        q = [p[q[0]], p[q[1]], p[q[2]], p[q[3]]];
                        o += 1;
                    }
                    *h.entry(o).or_insert(0) += 1;
                }
            }
        }
    }
    h
}

#[test]
fn reference_fingerprints_match_direct_counts() {
    let t: BTreeMap<_, _> = reference_fingerprints().iter().cloned().collect();
    assert_eq!(t["C2^2xC4"].histogram, abelian_histogram());
    assert_eq!(t["A4"].histogram, alternating_histogram());
    assert_eq!(t["A4"].exponent, 6);
    assert!(!t["A4"].abelian);
    assert!(!t["C2^2:C4"].abelian && t["C2^2xC4"].abelian);
    assert_eq!(t["C2^2:C4"].histogram, t["C2^2xC4"].histogram);
    assert_eq!(t["D4"].derived_order, 2);
    for (label, f) in &t {
        assert_eq!(f.histogram.values().sum::<usize>(), f.order, "{label}");
    }
}

#[test]
fn identification_examples() {
    let minus = SignedMonomialMatrix::minus_identity(6);
    let g = group_closure(&[m("[-0,-1,-2,-3,4,5]"), minus.clone()], DEFAULT_CAP).unwrap();
    assert_eq!(identify_group(&g).unwrap().label, "C2");
    let trivial = group_closure(std::slice::from_ref(&minus), DEFAULT_CAP).unwrap();
    assert_eq!(identify_group(&trivial).unwrap().label, "trivial");
    // C2 × C4 is not among the recognised types.
    let c2c4 = group_closure(&[m("[0,1,2,3,-4,5]"), m("[1,2,3,0,4,5]"), minus], DEFAULT_CAP).unwrap();
    let id = identify_group(&c2c4).unwrap();
    assert_eq!(id.label, "unknown");
    assert_eq!(id.fingerprint.order, 8);
    let no_minus = group_closure(&[m("[1,0,2,3,4,5]")], DEFAULT_CAP).unwrap();
    assert_eq!(identify_group(&no_minus).unwrap_err(), AutError::MissingMinusIdentity);
}

#[test]
fn plane_examples() {
    let r = row("smooth-id-c2");
    let g = group_closure(&r.generator_matrices().unwrap(), DEFAULT_CAP).unwrap();
    assert!(plane_invariant(&g, &r.plane().unwrap()));
    let random = Plane::parse(&["x0 + 2*x1 - x5", "x2 + 3*x3 + x4", "x1 - x4 + 5*x5"]).unwrap();
    assert!(!plane_invariant(&g, &random));
    let trivial = group_closure(&[SignedMonomialMatrix::identity(6)], DEFAULT_CAP).unwrap();
    assert!(plane_invariant(&trivial, &random));
}

#[test]
fn every_row_verifies() {
    let rows = rows();
    assert_eq!(rows.len(), 17);
    let mut types = BTreeSet::new();
    for r in &rows {
        let rep = verify_table_row(r, DEFAULT_SEED).unwrap();
        assert!(rep.passed(), "{}", rep.table());
        assert_eq!(rep.identified, r.group);
        types.insert(r.group.clone());
    }
    let expected: BTreeSet<String> = GROUP_LABELS[1..].iter().map(|s| s.to_string()).collect();
    assert_eq!(types, expected);
}

#[test]
fn other_samples_verify_too() {
    for label in ["smooth-012-345-a4", "singular-01234-c10", "singular-01-23-c2x2sc4"] {
        for seed in 1..4 {
            assert!(verify_table_row(&row(label), seed).unwrap().passed(), "{label} seed {seed}");
        }
    }
}

#[test]
fn corrupted_sign_fails() {
    for label in ["smooth-012-345-a4", "singular-01234-c10", "smooth-01-23-45-d4"] {
        let bad = row(label).with_corrupted_sign().unwrap();
        assert!(!verify_table_row(&bad, DEFAULT_SEED).unwrap().passed(), "{label}");
    }
}

#[test]
fn printed_entries_that_were_corrected_fail() {
    let r = row("singular-01-23-c2x2xc4");
    let mut printed = r.clone();
    printed.plane = r.printed_plane.clone().unwrap();
    printed.generators = r.printed_generators.clone().unwrap();
    let rep = verify_table_row(&printed, DEFAULT_SEED).unwrap();
    assert!(!rep.passed());
    // The printed plane is only stabilized by a group of order 8.
    let a = sample_a(&printed, DEFAULT_SEED).unwrap();
    let stab = monomial_stabilizer(&a, printed.quadric, &printed.plane().unwrap()).unwrap();
    assert_eq!(stab.len(), 8);

    let r = row("singular-01-23-c2x2sc4");
    let mut literal = r.clone();
    literal.plane = r.printed_plane.clone().unwrap();
    assert!(!verify_table_row(&literal, DEFAULT_SEED).unwrap().passed());
}

#[test]
fn vertex_reflection_is_needed_for_c10() {
    let r = row("singular-01234-c10");
    let listed: Vec<SignedMonomialMatrix> = r.generators.iter().map(|g| m(g)).collect();
    let g = group_closure(&listed, DEFAULT_CAP).unwrap();
    assert_eq!(identify_group(&g).unwrap().label, "C5");
    // The listed generator has order 10 but its fifth power is −I.
    let gen = m("[-4,0,1,2,3,-z5*5]");
    assert_eq!(gen.order(20), Some(10));
    let full = group_closure(&r.generator_matrices().unwrap(), DEFAULT_CAP).unwrap();
    assert!(full.contains(&vertex_reflection()));
}

#[test]
fn c3_row_parameters_satisfy_the_constraints() {
    let (al, be, ga) = (
        parse_scalar("-i").unwrap(),
        parse_scalar("1+i").unwrap(),
        parse_scalar("-1+i").unwrap(),
    );
    let sq = |x: &CycloElement| x.clone() * x.clone();
    assert_eq!(sq(&al) + sq(&be) + sq(&ga), CycloElement::from(-1));
    assert_eq!(
        al.clone() * be.clone() + be.clone() * ga.clone() + ga.clone() * al.clone(),
        CycloElement::from(0)
    );
    assert!(!(al * be * ga).is_zero());
}

#[test]
fn reports_serialize() {
    let rep = verify_table_row(&row("smooth-012-345-c3"), DEFAULT_SEED).unwrap();
    let js = serde_json::to_value(&rep).unwrap();
    assert_eq!(js["identified"], "C3");
    assert_eq!(js["quadric"], "smooth");
    assert!(rep.table().contains("[pass] plane is invariant"));
}
