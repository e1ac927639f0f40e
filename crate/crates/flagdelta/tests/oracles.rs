//! Independent cross-checks: hand-expanded threefold intersection numbers,
//! pointwise decompositions at random interior points, and a second
//! integration path that sweeps vertical lines instead of integrating over
//! certified polygons.

use std::path::PathBuf;

use exactkernel::{q, qi, Rational};
use flagdelta::chamber::chambered_zariski;
use flagdelta::{
    load_named_case, run_flag_case, s_w_curve, s_w_point, sweep_integral, Case, FlagCase, FlagSurface, Integrand,
    PointData, ThreefoldModel,
};
use surfgeom::DivisorClass;

fn data() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

fn flag(name: &str) -> Box<FlagCase> {
    match load_named_case(&data(), name).unwrap() {
        Case::Flag(c) => c,
        _ => panic!("{name} is not a flag case"),
    }
}

/// `(aH + bE)³` from H³ = 4, H²E = 0, HE² = −2, E³ = −2 by the binomial
/// expansion.
fn cube_by_hand(a: &Rational, b: &Rational) -> Rational {
    let (a2, b2) = (a * a, b * b);
    let t1 = &(&a2 * a) * &qi(4);
    let t3 = &(&(a * &b2) * &qi(3)) * &qi(-2);
    let t4 = &(&b2 * b) * &qi(-2);
    &(&t1 + &t3) + &t4
}

#[test]
fn threefold_tensor_is_consistent() {
    let m = ThreefoldModel::from_path(&data().join("threefolds/fano_2_16.toml")).unwrap();
    let cls = |a: Rational, b: Rational| DivisorClass(vec![a, b]);
    assert_eq!(m.cube(&cls(qi(2), qi(-1))), qi(22));
    assert_eq!(m.cube(&cls(q(3, 2), q(-1, 2))), q(23, 2));
    for a in -3..4 {
        for b in -3..4 {
            let (a, b) = (q(a, 2), q(b, 3));
            assert_eq!(m.cube(&cls(a.clone(), b.clone())), cube_by_hand(&a, &b));
        }
    }
    // S_X(S) by Simpson's rule, exact for the cubic pieces of vol(−K − uS).
    let vol = |u: &Rational| {
        let (a, b) = (&qi(2) - u, u - &qi(1));
        // Positive part: (2 − u)H − (1 − u)E on [0, 1], (2 − u)H on [1, 2].
        if *u <= qi(1) {
            cube_by_hand(&a, &b)
        } else {
            cube_by_hand(&a, &qi(0))
        }
    };
    let simpson = |lo: Rational, hi: Rational| {
        let mid = lo.midpoint(&hi);
        let s = &(&vol(&lo) + &(&qi(4) * &vol(&mid))) + &vol(&hi);
        &(&(&hi - &lo) / &qi(6)) * &s
    };
    let total = &simpson(qi(0), qi(1)) + &simpson(qi(1), qi(2));
    assert_eq!(&total / &qi(22), q(13, 22));
}

#[test]
fn corrupted_tensor_is_rejected() {
    let src = std::fs::read_to_string(data().join("threefolds/fano_2_16.toml")).unwrap();
    let bad = src.replace("[[0, -2], [-2, -2]],", "[[0, -2], [-2, -3]],");
    assert_ne!(bad, src);
    let e = ThreefoldModel::from_toml(&bad).unwrap_err();
    assert!(e.to_string().contains("self-test"), "{e}");
}

fn all_flags() -> Vec<(String, FlagSurface, Vec<PointData>)> {
    let mut out = Vec::new();
    for name in ["prop53", "prop55", "remark54"] {
        let c = flag(name);
        out.push((name.to_string(), c.flag.clone(), c.points.iter().map(|p| p.data.clone()).collect()));
        if let Some(b) = &c.blowup {
            out.push((format!("{name}/blow-up"), b.flag.clone(), b.points.clone()));
        }
    }
    out
}

#[test]
fn chambers_match_pointwise_decompositions() {
    for (name, f, _) in all_flags() {
        let cz = chambered_zariski(&f, false).unwrap();
        let n = cz.validate(&f, 100, 0x5eed).unwrap();
        assert_eq!(n, 100 * cz.chambers.len(), "{name}");
        // The chambers tile the region: their areas add up to ∫ t(u) du.
        let area: Rational = cz.chambers.iter().map(|c| c.polygon.area()).sum();
        let expected: Rational = cz
            .threshold
            .iter()
            .map(|t| {
                let th = &t.threshold;
                &(&(&th.eval(&th.lo) + &th.eval(&th.hi)) / &qi(2)) * &(&th.hi - &th.lo)
            })
            .sum();
        assert_eq!(area, expected, "{name}");
        for ch in &cz.chambers {
            assert!(flagdelta::chamber::support_is_negative_definite(&f.lattice, &ch.support));
        }
    }
}

#[test]
fn sweep_agrees_with_chamber_integration() {
    for (name, f, points) in all_flags() {
        let cz = chambered_zariski(&f, false).unwrap();
        let three = &qi(3) / &f.volume;
        let six = &qi(6) / &f.volume;
        let s = s_w_curve(&f, &cz);
        assert_eq!(&three * &sweep_integral(&f, Integrand::Volume).unwrap(), s.second_term, "{name}");
        let base = &three * &sweep_integral(&f, Integrand::CurveSquare).unwrap();
        for p in &points {
            let v = s_w_point(&f, &cz, p).unwrap();
            assert_eq!(base, v.base, "{name} {}", p.name);
            let fp = &six * &sweep_integral(&f, Integrand::PointOrder(p)).unwrap();
            assert_eq!(fp, v.f_p, "{name} {}", p.name);
        }
    }
}

#[test]
fn serial_and_parallel_runs_agree() {
    for name in ["prop53", "prop55", "remark54"] {
        let c = flag(name);
        assert_eq!(chambered_zariski(&c.flag, true).unwrap(), chambered_zariski(&c.flag, false).unwrap());
        let a = run_flag_case(&c, true).unwrap();
        let b = run_flag_case(&c, false).unwrap();
        assert_eq!(a, b);
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }
}

#[test]
fn values_are_in_range() {
    for name in ["prop53", "prop55", "remark54"] {
        let r = run_flag_case(&flag(name), false).unwrap();
        assert!(r.s_x.is_positive() && r.s_x < qi(1));
        assert!(!r.s_w.total.is_negative());
        for p in r.points.iter().chain(r.exceptional.iter().flat_map(|e| e.points.iter())) {
            assert!(!p.value.base.is_negative() && !p.value.f_p.is_negative());
        }
    }
}
