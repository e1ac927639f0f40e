//! Property tests: homogeneity, the rank drop along `Δ`, double lines only
//! at singular points, and invariance of the exceptional surface type.

use exactkernel::{q, qi, Matrix, QMPoly, Rational};
use proptest::prelude::*;
use quartic::pencil::{LINEAR_MONOMIALS, QUADRATIC_MONOMIALS};
use quartic::*;

fn rat() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=3).prop_map(|(n, d)| q(n, d))
}

fn form(coeffs: &[Rational], monos: &[[u32; 3]]) -> QMPoly {
    QMPoly::from_terms(&base_ring(), monos.iter().zip(coeffs).map(|(m, c)| (m.to_vec(), c.clone())).collect())
}

fn pencil_strategy() -> impl Strategy<Value = PencilData<Rational>> {
    (prop::collection::vec(rat(), 12), prop::collection::vec(rat(), 15)).prop_map(|(quad, lin)| {
        let alpha = [
            form(&quad[..6], &QUADRATIC_MONOMIALS),
            form(&lin[0..3], &LINEAR_MONOMIALS),
            form(&lin[3..6], &LINEAR_MONOMIALS),
            form(&lin[6..9], &LINEAR_MONOMIALS),
        ];
        let beta = [
            form(&quad[6..], &QUADRATIC_MONOMIALS),
            form(&lin[9..12], &LINEAR_MONOMIALS),
            form(&lin[12..15], &LINEAR_MONOMIALS),
            form(&lin[0..3], &LINEAR_MONOMIALS),
        ];
        PencilData::new(alpha, beta).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn discriminant_is_a_quartic(p in pencil_strategy()) {
        let d = discriminant(&p).unwrap();
        prop_assert!(d.delta.is_homogeneous_of(4));
        let degenerate = d.is_degenerate();
        prop_assert_eq!(d.constant, if degenerate { None } else { Some(qi(-2)) });
    }

    #[test]
    fn rank_drops_exactly_on_the_discriminant(p in pencil_strategy(), pt in prop::collection::vec(rat(), 3)) {
        prop_assume!(pt.iter().any(|c| *c != qi(0)));
        let d = discriminant(&p).unwrap();
        if let Ok(t) = fiber_type(&p, &pt) {
            prop_assert_eq!(t != FiberType::Smooth, d.contains(&pt));
            if t == FiberType::DoubleLine {
                prop_assert!(d.singular_at(&pt));
            }
        }
    }

    /// For α = (0, x1, x2, x3) and β = (β0, 0, 0, 0) the quartic contains the
    /// conic x1² = 4x2x3, parametrised by (2st : s² : t²).
    #[test]
    fn points_on_a_conic_component(b0 in prop::collection::vec(rat(), 6), s in rat(), t in rat()) {
        prop_assume!(s != qi(0) || t != qi(0));
        let zero = form(&vec![qi(0); 3], &LINEAR_MONOMIALS);
        let p = PencilData::new(
            [form(&vec![qi(0); 6], &QUADRATIC_MONOMIALS), form(&[qi(1), qi(0), qi(0)], &LINEAR_MONOMIALS),
             form(&[qi(0), qi(1), qi(0)], &LINEAR_MONOMIALS), form(&[qi(0), qi(0), qi(1)], &LINEAR_MONOMIALS)],
            [form(&b0, &QUADRATIC_MONOMIALS), zero.clone(), zero.clone(), zero],
        ).unwrap();
        let pt = [&(&qi(2) * &s) * &t, &s * &s, &t * &t];
        let d = discriminant(&p).unwrap();
        prop_assert!(d.contains(&pt));
        match fiber_type(&p, &pt) {
            Ok(ty) => {
                prop_assert_ne!(ty, FiberType::Smooth);
                if ty == FiberType::DoubleLine {
                    prop_assert!(d.singular_at(&pt));
                }
            }
            Err(e) => prop_assert!(matches!(e, QuarticError::DegenerateAt(_))),
        }
    }

    /// Forms without x3 in α1, α2, β1, β2 and without x3² in α0, β0, with
    /// x3 present in α3, give a double line over (0:0:1).
    #[test]
    fn constructed_double_lines(
        quad in prop::collection::vec(rat(), 10),
        lin in prop::collection::vec(rat(), 12),
        a33 in rat(),
    ) {
        prop_assume!(a33 != qi(0));
        let no_x3 = |a: &Rational, b: &Rational| form(&[a.clone(), b.clone(), qi(0)], &LINEAR_MONOMIALS);
        let no_x3_sq = |c: &[Rational]| {
            form(&[c[0].clone(), c[1].clone(), c[2].clone(), c[3].clone(), c[4].clone(), qi(0)], &QUADRATIC_MONOMIALS)
        };
        let p = PencilData::new(
            [no_x3_sq(&quad[..5]), no_x3(&lin[0], &lin[1]), no_x3(&lin[2], &lin[3]),
             form(&[lin[4].clone(), lin[5].clone(), a33], &LINEAR_MONOMIALS)],
            [no_x3_sq(&quad[5..]), no_x3(&lin[6], &lin[7]), no_x3(&lin[8], &lin[9]),
             form(&lin[9..12], &LINEAR_MONOMIALS)],
        ).unwrap();
        let origin = [qi(0), qi(0), qi(1)];
        prop_assert_eq!(fiber_type(&p, &origin).unwrap(), FiberType::DoubleLine);
        let d = discriminant(&p).unwrap();
        prop_assert!(d.is_degenerate() || d.singular_at(&origin));
    }

    #[test]
    fn surface_type_is_invariant_under_coordinate_changes(
        p in pencil_strategy(),
        m in prop::collection::vec(-3i64..=3, 9),
    ) {
        let g = Matrix::from_fn(3, 3, |i, j| qi(m[3 * i + j]));
        prop_assume!(g.rank() == 3);
        let r = base_ring();
        let xs: Vec<QMPoly> = (0..3)
            .map(|i| (0..3).fold(QMPoly::zero_in(&r), |acc, j| acc + QMPoly::var(&r, j).scale(g.get(i, j))))
            .collect();
        let sub = |f: &QMPoly| f.substitute(&xs);
        let moved = PencilData::new(p.alpha.clone().map(|f| sub(&f)), p.beta.clone().map(|f| sub(&f))).unwrap();
        prop_assert_eq!(exceptional_surface_type(&p).ok(), exceptional_surface_type(&moved).ok());
    }
}
