//! Independent check of the tracked-curve lists of the shipped models.
//!
//! On a weak del Pezzo surface an integral class `D` with `D² = −1` and
//! `−K·D = 1` is the class of an irreducible (−1)-curve exactly when it meets
//! every (−2)-curve nonnegatively.  We enumerate such classes by brute force
//! and compare with the tracked lists.

use std::collections::BTreeSet;

use exactkernel::{qi, Rational};
use surfgeom::{DivisorClass, SurfaceLattice};

fn model(name: &str) -> SurfaceLattice {
    let path = format!("{}/../../data/surfaces/{name}.toml", env!("CARGO_MANIFEST_DIR"));
    SurfaceLattice::from_path(std::path::Path::new(&path)).unwrap()
}

/// Integer form of a rational matrix/vector (the shipped lattices are integral).
fn int(r: &Rational) -> i64 {
    assert!(r.is_integer());
    r.to_string().parse().unwrap()
}

fn check(name: &str, anticanonical: &[i64]) {
    let s = model(name);
    let n = s.rank();
    let g: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| int(s.gram.get(i, j))).collect()).collect();
    let dot = |a: &[i64], b: &[i64]| -> i64 {
        (0..n).map(|i| (0..n).map(|j| a[i] * g[i][j] * b[j]).sum::<i64>()).sum()
    };
    let tracked: Vec<Vec<i64>> = s.tracked.iter().map(|c| c.class.0.iter().map(int).collect()).collect();
    let minus2: Vec<&Vec<i64>> = tracked.iter().filter(|c| dot(c, c) == -2).collect();
    let mut found = BTreeSet::new();
    let mut v = vec![0i64; n];
    // Enumerate all integral classes with coordinates in [-3, 3].
    for mut k in 0..7usize.pow(n as u32) {
        for x in v.iter_mut() {
            *x = (k % 7) as i64 - 3;
            k /= 7;
        }
        if dot(&v, &v) == -1
            && dot(&v, anticanonical) == 1
            && minus2.iter().all(|r| dot(&v, r) >= 0)
        {
            found.insert(v.clone());
        }
    }
    let listed: BTreeSet<Vec<i64>> = tracked.iter().filter(|c| dot(c, c) == -1).cloned().collect();
    assert_eq!(found, listed, "{name}");
    for r in minus2 {
        assert_eq!(dot(r, anticanonical), 0);
    }
    // Sanity: the lattice reproduces the anticanonical degree.
    let k = DivisorClass(anticanonical.iter().map(|&x| qi(x)).collect());
    assert!(s.intersect(&k, &k).unwrap().is_positive());
}

#[test]
fn quartic_del_pezzo_has_sixteen_lines() {
    check("dp4", &[3, -1, -1, -1, -1, -1]);
    assert_eq!(model("dp4").tracked.len(), 16);
}

#[test]
fn iskovskikh_surface_has_eight_lines() {
    check("iskovskikh", &[3, -1, -1, -1, -1, -1]);
    assert_eq!(model("iskovskikh").tracked.len(), 10);
}

#[test]
fn blown_up_surface_has_sixteen_lines() {
    check("dp4_blowup", &[3, -1, -1, -1, -1, -1, -1]);
    assert_eq!(model("dp4_blowup").tracked.len(), 18);
}
