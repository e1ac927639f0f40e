//! Property tests: monotonicity of the assembled bound, exactness of polygon
//! integration under splitting, and chamber validation at random seeds.

use std::path::PathBuf;

use exactkernel::{q, qi, Rational};
use flagdelta::chamber::chambered_zariski;
use flagdelta::{delta_bound, load_named_case, Affine2, BiPoly, Case, Polygon};
use proptest::prelude::*;

fn rat() -> impl Strategy<Value = Rational> {
    (1i64..200, 1i64..60).prop_map(|(a, b)| q(a, b))
}

proptest! {
    #[test]
    fn bound_is_monotone(
        s_x in rat(), s_f in rat(), a in rat(),
        pts in prop::collection::vec((0i64..5, rat()), 0..4),
        which in 0usize..6, bump in rat(),
    ) {
        let pts: Vec<(Rational, Rational)> = pts
            .into_iter()
            .map(|(n, s)| (&qi(n) / &qi(n + 1), s))
            .collect();
        let b0 = delta_bound(&s_x, &a, &s_f, &pts).unwrap();
        let (mut sx, mut sf, mut p2) = (s_x.clone(), s_f.clone(), pts.clone());
        match which {
            0 => sx = &sx + &bump,
            1 => sf = &sf + &bump,
            _ if !p2.is_empty() => {
                let i = which % p2.len();
                p2[i].1 = &p2[i].1 + &bump;
            }
            _ => {}
        }
        let b1 = delta_bound(&sx, &a, &sf, &p2).unwrap();
        prop_assert!(b1 <= b0);
        prop_assert!(b0 <= &qi(1) / &s_x);
    }

    #[test]
    fn polygon_integration_is_additive(
        verts in prop::collection::vec((-6i64..7, -6i64..7), 3),
        line in (-5i64..6, -5i64..6, -5i64..6),
        coeffs in prop::collection::vec(-4i64..5, 6),
    ) {
        let pts: Vec<(Rational, Rational)> = verts.iter().map(|&(a, b)| (qi(a), qi(b))).collect();
        let Some(poly) = Polygon::new(pts) else { return Ok(()); };
        let mut f = BiPoly::zero();
        let exps = [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)];
        for ((i, j), c) in exps.iter().zip(&coeffs) {
            f.add_term(*i, *j, qi(*c));
        }
        let g = Affine2::new(qi(line.0), qi(line.1), qi(line.2));
        let whole = poly.integrate(&f);
        let (a, b) = poly.split(&g);
        let parts: Rational = a.iter().chain(b.iter()).map(|p| p.integrate(&f)).sum();
        prop_assert_eq!(whole, parts);
        let area: Rational = a.iter().chain(b.iter()).map(|p| p.area()).sum();
        prop_assert_eq!(area, poly.area());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn chambers_validate_at_any_seed(seed in any::<u64>()) {
        let data = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data");
        let Case::Flag(c) = load_named_case(&data, "prop53").unwrap() else { panic!() };
        let cz = chambered_zariski(&c.flag, false).unwrap();
        prop_assert!(cz.validate(&c.flag, 5, seed).is_ok());
        let b = c.blowup.as_ref().unwrap();
        let bz = chambered_zariski(&b.flag, false).unwrap();
        prop_assert!(bz.validate(&b.flag, 5, seed).is_ok());
    }
}
