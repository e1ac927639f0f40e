//! Property tests for the Zariski decomposition and volumes.

use exactkernel::{q, qi, Rational};
use proptest::prelude::*;
use surfgeom::{is_negative_definite, DivisorClass, SurfaceLattice};

fn model(name: &str) -> SurfaceLattice {
    let path = format!("{}/../../data/surfaces/{name}.toml", env!("CARGO_MANIFEST_DIR"));
    SurfaceLattice::from_path(std::path::Path::new(&path)).unwrap()
}

const MODELS: [&str; 5] = ["bl1p2", "bl2p2", "dp4", "iskovskikh", "dp4_blowup"];

/// A random effective class: a nonnegative rational combination of the
/// effective generators of the model.
fn effective_class() -> impl Strategy<Value = (usize, DivisorClass)> {
    (0..MODELS.len(), prop::collection::vec((0i64..6, 1i64..4), 18)).prop_map(|(m, w)| {
        let s = model(MODELS[m]);
        let gens = s.eff_generators.clone().unwrap();
        let d = gens
            .iter()
            .zip(&w)
            .fold(DivisorClass::zero(s.rank()), |acc, (g, &(n, den))| {
                &acc + &g.scale(&q(n, den))
            });
        (m, d)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn decomposition_invariants((m, d) in effective_class(), seed in any::<u64>()) {
        let s = model(MODELS[m]);
        let z = s.zariski(&d).unwrap();
        // Reconstruction.
        prop_assert_eq!(&z.positive + &z.negative_class(&s), d.clone());
        // Positivity of coefficients, orthogonality and nefness.
        for (i, a) in &z.negative {
            prop_assert!(a.is_positive());
            prop_assert_eq!(s.intersect(&z.positive, &s.tracked[*i].class).unwrap(), qi(0));
        }
        prop_assert!(s.is_nef(&z.positive).unwrap());
        prop_assert!(is_negative_definite(&s.support_gram(&z.support)));
        // Idempotence.
        let again = s.zariski(&z.positive).unwrap();
        prop_assert_eq!(&again.positive, &z.positive);
        prop_assert!(again.negative.is_empty());
        // Order independence: reverse-and-rotate the tracked list.
        let n = s.tracked.len();
        let shift = (seed % n as u64) as usize;
        let perm: Vec<usize> = (0..n).rev().map(|i| (i + shift) % n).collect();
        let t = s.with_tracked_order(&perm);
        let z2 = t.zariski(&d).unwrap();
        prop_assert_eq!(&z2.positive, &z.positive);
        prop_assert_eq!(z2.negative_class(&t), z.negative_class(&s));
    }

    #[test]
    fn volume_is_homogeneous((m, d) in effective_class(), num in 1i64..7, den in 1i64..5) {
        let s = model(MODELS[m]);
        let a = q(num, den);
        let v = s.volume(&d).unwrap();
        prop_assert_eq!(s.volume(&d.scale(&a)).unwrap(), &(&a * &a) * &v);
    }

    /// vol(D + D')^{1/2} ≥ vol(D)^{1/2} + vol(D')^{1/2}, checked after
    /// squaring so that everything stays rational.
    #[test]
    fn square_root_of_volume_is_superadditive(
        a in prop::collection::vec((0i64..6, 1i64..4), 3),
        b in prop::collection::vec((0i64..6, 1i64..4), 3),
    ) {
        let s = model("bl2p2");
        let gens = s.eff_generators.clone().unwrap();
        let mk = |w: &[(i64, i64)]| gens.iter().zip(w).fold(DivisorClass::zero(3), |acc, (g, &(n, d))| &acc + &g.scale(&q(n, d)));
        let (d1, d2) = (mk(&a), mk(&b));
        let (v1, v2) = (s.volume(&d1).unwrap(), s.volume(&d2).unwrap());
        let v12 = s.volume(&(&d1 + &d2)).unwrap();
        let gap = &(&v12 - &v1) - &v2;
        prop_assert!(!gap.is_negative());
        prop_assert!(&gap * &gap >= &(&qi(4) * &v1) * &v2);
    }
}

/// The five-case volume formula for `D = aL − b₁E₁ − b₂E₂` on the plane blown
/// up in two points, selected by the sign pattern of `D` against the three
/// negative curves.
pub fn chamber_formula(a: &Rational, b1: &Rational, b2: &Rational) -> Rational {
    let de1 = b1.clone();
    let de2 = b2.clone();
    let dline = a - &(b1 + b2);
    let sq = |x: &Rational| x * x;
    if !de1.is_negative() && !de2.is_negative() && !dline.is_negative() {
        &(&sq(a) - &sq(b1)) - &sq(b2)
    } else if dline.is_negative() {
        let two = qi(2);
        &(&(&(&two * &sq(a)) - &(&two * &(a * b1))) - &(&two * &(a * b2))) + &(&two * &(b1 * b2))
    } else if de1.is_negative() && de2.is_negative() {
        sq(a)
    } else if de1.is_negative() {
        &sq(a) - &sq(b2)
    } else {
        &sq(a) - &sq(b1)
    }
}

#[test]
fn volume_matches_chamber_formula_on_grid() {
    let s = model("bl2p2");
    let b1s: Vec<Rational> = (0..10).map(|k| q(2 * k - 9, 10)).collect();
    let b2s = [q(-3, 4), q(-1, 4), q(1, 4), q(1, 2), q(3, 4)];
    let mut chambers = std::collections::BTreeSet::new();
    let mut count = 0;
    for b1 in &b1s {
        for b2 in &b2s {
            let d = DivisorClass(vec![qi(1), -b1, -b2]);
            let z = s.zariski(&d).unwrap();
            chambers.insert(z.support.clone());
            assert_eq!(s.volume(&d).unwrap(), chamber_formula(&qi(1), b1, b2), "b = ({b1}, {b2})");
            count += 1;
        }
    }
    assert_eq!(count, 50);
    assert_eq!(chambers.len(), 5, "all five chambers are visited");
}
