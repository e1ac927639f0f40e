//! Property tests for the skew classification and the group machinery.

use std::path::Path;

use autcheck::*;
use exactkernel::{q, CycloElement, CycloMatrix};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn rational(n: i64, d: i64) -> CycloElement {
    CycloElement::from(q(n, d))
}

/// Five distinct rationals in random order.
fn distinct_five() -> impl Strategy<Value = Vec<CycloElement>> {
    (prop::collection::btree_set(-60i64..60, 5), 1i64..7).prop_flat_map(|(set, d)| {
        Just(set.into_iter().map(|n| rational(n, d)).collect::<Vec<_>>()).prop_shuffle()
    })
}

/// Configurations with extra symmetry, moved by a random affine map and
/// listed in random order.
fn symmetric_five() -> impl Strategy<Value = Vec<CycloElement>> {
    (0usize..3, 1i64..9, 1i64..9, -9i64..9, 1i64..5).prop_flat_map(|(kind, t, s, shift, scale)| {
        let base: Vec<CycloElement> = match kind {
            0 => {
                let z = CycloElement::zeta(5).unwrap();
                (0..5).map(|k| z.pow(k)).collect()
            }
            1 => {
                let (t, s) = (rational(t, 1), rational(t + s, 1));
                vec![t.clone(), -t, s.clone(), -s, CycloElement::zero()]
            }
            _ => {
                let i = CycloElement::i();
                vec![CycloElement::one(), i.clone(), rational(-1, 1), -i, CycloElement::zero()]
            }
        };
        let moved: Vec<CycloElement> = base
            .into_iter()
            .map(|b| b * rational(scale, 1) + rational(shift, 1))
            .collect();
        Just(moved).prop_shuffle()
    })
}

fn check_symmetry(b: &[CycloElement], s: &SkewSymmetry) {
    let bm = CycloMatrix::from_fn(5, 5, |i, j| b[i].clone() - b[j].clone());
    let p = CycloMatrix::from_fn(5, 5, |i, j| CycloElement::from(i64::from(s.nu[i] == j)));
    let lhs = p.mul(&bm).unwrap().mul(&p.transpose()).unwrap();
    assert_eq!(lhs, bm.map(|x| x.clone() * s.c.clone()));
    let m = root_of_unity_order(&s.c, 60).expect("c is a root of unity");
    assert!(cycle_type(&s.nu).contains(&(m as usize)), "order {m} for {:?}", s.nu);
}

fn signed_perm(perm: Vec<usize>, signs: &[bool], units: &[u8]) -> SignedMonomialMatrix {
    let scalars = signs
        .iter()
        .zip(units)
        .map(|(&neg, &u)| {
            let base = match u % 3 {
                0 => CycloElement::one(),
                1 => CycloElement::i(),
                _ => CycloElement::zeta(8).unwrap(),
            };
            if neg {
                -base
            } else {
                base
            }
        })
        .collect();
    SignedMonomialMatrix::new(perm, scalars).unwrap()
}

fn all_rows() -> Vec<TableRow> {
    let dir = format!("{}/../../data/aut", env!("CARGO_MANIFEST_DIR"));
    let mut rows = load_table(Path::new(&format!("{dir}/smooth.toml"))).unwrap();
    rows.extend(load_table(Path::new(&format!("{dir}/singular.toml"))).unwrap());
    rows
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn generic_tuples_have_only_the_identity(b in distinct_five()) {
        let found = skew_classify(&b).unwrap();
        prop_assert_eq!(found.len(), 1);
        prop_assert_eq!(&found[0].nu, &vec![0, 1, 2, 3, 4]);
        prop_assert!(found[0].c.is_one());
    }

    #[test]
    fn returned_symmetries_satisfy_the_matrix_identity(b in symmetric_five()) {
        let found = skew_classify(&b).unwrap();
        prop_assert!(found.iter().any(|s| s.nu == vec![0, 1, 2, 3, 4] && s.c.is_one()));
        prop_assert!(found.len() > 1);
        for s in &found {
            check_symmetry(&b, s);
        }
    }

    #[test]
    fn closure_order_is_divisible_by_generator_orders(
        gens in prop::collection::vec(
            (Just((0..4).collect::<Vec<usize>>()).prop_shuffle(), prop::collection::vec(any::<bool>(), 4)),
            1..4,
        )
    ) {
        let gens: Vec<SignedMonomialMatrix> = gens
            .into_iter()
            .map(|(p, s)| signed_perm(p, &s, &[0; 4]))
            .collect();
        let g = group_closure(&gens, DEFAULT_CAP).unwrap();
        for m in &gens {
            let o = m.order(64).unwrap();
            prop_assert_eq!(g.order() % o, 0);
        }
        // Closed under products and inverses.
        for m in &gens {
            prop_assert!(g.contains(&m.inverse()));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn identification_is_conjugation_invariant(
        idx in 0usize..17,
        perm in Just((0..6).collect::<Vec<usize>>()).prop_shuffle(),
        signs in prop::collection::vec(any::<bool>(), 6),
        units in prop::collection::vec(0u8..3, 6),
    ) {
        let row = all_rows()[idx].clone();
        let p = signed_perm(perm, &signs, &units);
        let gens = row.generator_matrices().unwrap();
        let conj: Vec<SignedMonomialMatrix> = gens.iter().map(|g| g.conjugate_by(&p)).collect();
        let a = identify_group(&group_closure(&gens, DEFAULT_CAP).unwrap()).unwrap();
        let b = identify_group(&group_closure(&conj, DEFAULT_CAP).unwrap()).unwrap();
        prop_assert_eq!(&a, &b);
        prop_assert_eq!(a.label, row.group.clone());
        // The moved plane P·Π (forms L·P⁻¹) is invariant under the conjugates.
        let plane = row.plane().unwrap();
        let moved = Plane::new(plane.forms.mul(&p.inverse().to_matrix()).unwrap()).unwrap();
        prop_assert!(conj.iter().all(|m| moved.preserved_by(m)));
    }
}
