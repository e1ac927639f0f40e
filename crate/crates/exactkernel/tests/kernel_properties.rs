//! Property tests for the exact kernel.

use exactkernel::cyclo::{cyclotomic_poly, CycloElement};
use exactkernel::{Field, Matrix, QMatrix, QPoly, Rational};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-40i64..40, 1i64..12).prop_map(|(n, d)| Rational::new(n, d))
}

fn cyclo_triple() -> impl Strategy<Value = (CycloElement, CycloElement, CycloElement)> {
    (0usize..CONDUCTORS.len()).prop_flat_map(|idx| {
        let n = CONDUCTORS[idx];
        let len = exactkernel::cyclo::euler_phi(n);
        let one = move || {
            prop::collection::vec(rational(), len)
                .prop_map(move |c| CycloElement::from_coeffs(n, c).unwrap())
        };
        (one(), one(), one())
    })
}

const CONDUCTORS: [u32; 7] = [3, 4, 5, 8, 10, 12, 20];

proptest! {
    #[test]
    fn rational_field_axioms(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!((a.clone() + b.clone()) + c.clone(), a.clone() + (b.clone() + c.clone()));
        prop_assert_eq!(a.clone() * (b.clone() + c.clone()), &a * &b + &a * &c);
        prop_assert_eq!(&a * &b, &b * &a);
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.inv().unwrap(), Rational::one());
        }
    }

    #[test]
    fn cyclotomic_field_axioms((a, b, c) in cyclo_triple()) {
        prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
        prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a.clone() * c.clone());
        prop_assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
        if !a.is_zero() {
            prop_assert_eq!(a.clone() * a.inv().unwrap(), CycloElement::one());
        }
    }

    #[test]
    fn rank_matches_transpose_and_nullity(
        rows in 1usize..5,
        cols in 1usize..6,
        entries in prop::collection::vec(-3i64..4, 30),
        zero_mask in prop::collection::vec(any::<bool>(), 30),
    ) {
        let m = QMatrix::from_fn(rows, cols, |i, j| {
            let k = i * cols + j;
            if zero_mask[k] { Rational::zero() } else { Rational::from(entries[k]) }
        });
        let r = m.rank();
        prop_assert_eq!(r, m.transpose().rank());
        let ker = m.kernel();
        prop_assert_eq!(r, cols - ker.len());
        for v in &ker {
            prop_assert!(m.mul_vec(v).unwrap().iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn integration_is_additive(
        coeffs in prop::collection::vec(rational(), 0..5),
        lo in rational(),
        w1 in rational(),
        w2 in rational(),
    ) {
        let p = QPoly::new(coeffs);
        let mid = &lo + &w1.abs();
        let hi = &mid + &w2.abs();
        prop_assert_eq!(
            p.integrate(&lo, &hi),
            p.integrate(&lo, &mid) + p.integrate(&mid, &hi)
        );
    }
}

#[test]
fn roots_of_unity_have_the_right_order() {
    for n in CONDUCTORS {
        let z = CycloElement::zeta(n).unwrap();
        assert_eq!(z.pow(n as i64), CycloElement::one(), "zeta_{n}^{n}");
        for k in 1..n {
            assert_ne!(z.pow(k as i64), CycloElement::one(), "zeta_{n} has order {n}");
        }
        // Φ_n(ζ_n) = 0 evaluated by Horner in the field.
        let phi = cyclotomic_poly(n).unwrap();
        let val = phi
            .iter()
            .rev()
            .fold(CycloElement::zero(), |acc, &c| acc * z.clone() + CycloElement::from(c));
        assert!(val.is_zero(), "Phi_{n}(zeta_{n}) = 0");
    }
}

#[test]
fn cyclotomic_matrices_have_exact_rank() {
    let z = CycloElement::zeta(5).unwrap();
    // Vandermonde rows in powers of ζ5 are independent; a repeated row is not.
    let m = Matrix::from_fn(3, 3, |i, j| z.pow(((i + 1) * j) as i64));
    assert_eq!(m.rank(), 3);
    let m2 = Matrix::from_fn(3, 3, |i, j| z.pow(((i % 2 + 1) * j) as i64));
    assert_eq!(m2.rank(), 2);
}
