//! Cone intersections and Cox-ring decompositions, including a cross-check
//! against the lattice algorithm on rank-two surfaces.

use coxcone::{sector_intersect, zariski_cox, ClassVector2, CoxError, Sector};
use exactkernel::{q, qi, QMatrix, Rational};
use proptest::prelude::*;
use surfgeom::{DivisorClass, NamedCurve, SurfaceLattice};

fn v(x: i64, y: i64) -> ClassVector2 {
    ClassVector2::new(x, y)
}

#[test]
fn sector_intersections() {
    let quadrant = Sector::from_rays(&v(1, 0), &v(0, 1)).unwrap();
    let s = Sector::from_rays(&v(1, 3), &v(-1, 0)).unwrap();
    assert_eq!(
        sector_intersect(&quadrant, &s).unwrap(),
        Sector::Sector(v(1, 3), v(0, 1))
    );
    assert_eq!(sector_intersect(&s, &s).unwrap(), s);
    let opposite = Sector::from_rays(&v(-1, 0), &v(0, -1)).unwrap();
    assert_eq!(sector_intersect(&quadrant, &opposite).unwrap(), Sector::Zero);
    assert!(matches!(
        Sector::from_rays(&v(0, 1), &v(1, 0)),
        Err(CoxError::NonConvex(_))
    ));
    // Rays come out in lowest integer terms.
    let t = Sector::from_rays(&v(2, 6), &v(0, 5)).unwrap();
    assert_eq!(t, Sector::Sector(v(1, 3), v(0, 1)));
}

#[test]
fn appendix_style_input() {
    let w = [v(1, 0), v(0, 1), v(0, 1), v(1, 3)];
    let z = zariski_cox(&v(2, 5), &w).unwrap();
    assert_eq!(z.mu, vec![q(1, 3), qi(0), qi(0), qi(0)]);
    assert_eq!(z.w_p, ClassVector2(q(5, 3), qi(5)));
    assert_eq!(z.w_p.cross(&v(1, 3)), qi(0), "w_P lies on the ray (1,3)");
    let z = zariski_cox(&v(1, 3), &w).unwrap();
    assert!(z.mu.iter().all(|m| *m == qi(0)));
    assert_eq!(z.w_p, v(1, 3));
}

#[test]
fn two_generators_leave_nothing_positive() {
    let z = zariski_cox(&v(3, 2), &[v(1, 0), v(0, 1)]).unwrap();
    assert_eq!(z.mu, vec![qi(3), qi(2)]);
    assert_eq!(z.w_p, v(0, 0));
}

#[test]
fn rejects_bad_input() {
    let w = [v(1, 0), v(1, 3)];
    assert!(matches!(zariski_cox(&v(0, 1), &w), Err(CoxError::NotEffective(_))));
    assert!(matches!(zariski_cox(&v(1, 1), &[v(0, 0), v(1, 1)]), Err(CoxError::ZeroGenerator(0))));
    assert!(matches!(ClassVector2::from_slice(&[qi(1), qi(2), qi(3)]), Err(CoxError::RankNotTwo(3))));
}

/// The Hirzebruch surface `F_n` in the basis (fibre F, negative section S).
fn hirzebruch(n: i64) -> (SurfaceLattice, Vec<ClassVector2>) {
    let gram = QMatrix::from_rows(vec![vec![qi(0), qi(1)], vec![qi(1), qi(-n)]]).unwrap();
    let s = DivisorClass::from_ints(&[0, 1]);
    let f = DivisorClass::from_ints(&[1, 0]);
    let lat = SurfaceLattice::new(
        format!("F{n}"),
        vec!["F".into(), "S".into()],
        gram,
        vec![NamedCurve { name: "S".into(), class: s.clone() }],
        vec![],
        Some(vec![f, s]),
    )
    .unwrap();
    // Cox ring generators: two fibres, the negative section, a positive section.
    let w = vec![v(1, 0), v(1, 0), v(0, 1), v(n, 1)];
    (lat, w)
}

fn shipped_bl1p2() -> (SurfaceLattice, Vec<ClassVector2>) {
    let path = format!("{}/../../data/surfaces/bl1p2.toml", env!("CARGO_MANIFEST_DIR"));
    let lat = SurfaceLattice::from_path(std::path::Path::new(&path)).unwrap();
    // Basis (H, E): fibres H − E twice, exceptional curve E, and H.
    (lat, vec![v(1, -1), v(1, -1), v(0, 1), v(1, 0)])
}

fn cross_check(lat: &SurfaceLattice, w: &[ClassVector2], d: &[Rational]) {
    let z = lat.zariski(&DivisorClass(d.to_vec())).unwrap();
    let c = zariski_cox(&ClassVector2::from_slice(d).unwrap(), w).unwrap();
    assert_eq!(ClassVector2::from_slice(&z.positive.0).unwrap(), c.w_p, "{} at {:?}", lat.name, d);
    let n = z.negative_class(lat);
    assert_eq!(ClassVector2::from_slice(&n.0).unwrap(), c.w_n);
}

#[test]
fn agrees_with_lattice_algorithm() {
    let models = [shipped_bl1p2(), hirzebruch(2), hirzebruch(3)];
    for (lat, w) in &models {
        let gens = lat.eff_generators.clone().unwrap();
        for a in 0..6 {
            for b in 0..6 {
                for den in [1, 2, 3] {
                    let d = &gens[0].scale(&q(a, den)) + &gens[1].scale(&q(b, 1));
                    cross_check(lat, w, &d.0);
                }
            }
        }
    }
}

proptest! {
    #[test]
    fn decomposition_invariants(
        n in 1i64..4,
        a in 0i64..20, b in 0i64..20, den in 1i64..6,
        t_num in 1i64..10, t_den in 1i64..10,
    ) {
        let (lat, w) = hirzebruch(n);
        let d = ClassVector2(q(a, den), q(b, den));
        let z = zariski_cox(&d, &w).unwrap();
        prop_assert_eq!(z.w_p.add(&z.w_n), d.clone());
        prop_assert!(z.mu.iter().all(|m| !m.is_negative()));
        let gens: Vec<Vec<Rational>> = w.iter().map(|x| vec![x.0.clone(), x.1.clone()]).collect();
        prop_assert!(exactkernel::lp::cone_membership(&gens, &[z.w_p.0.clone(), z.w_p.1.clone()]).is_some());
        let t = q(t_num, t_den);
        let zt = zariski_cox(&d.scale(&t), &w).unwrap();
        prop_assert_eq!(zt.w_p, z.w_p.scale(&t));
        prop_assert_eq!(zt.mu, z.mu.iter().map(|m| m * &t).collect::<Vec<_>>());
        cross_check(&lat, &w, &[d.0.clone(), d.1.clone()]);
    }
}
