//! Worked examples for the exact kernel, checked against independent
//! hand-derived values.

use exactkernel::cyclo::CycloElement;
use exactkernel::{q, qi, Matrix, MPoly, QMPoly, QMatrix, QPoly, Rational};
use num_traits::{One, Zero};

fn z(n: u32, k: i64) -> CycloElement {
    CycloElement::zeta_pow(n, k).unwrap()
}

#[test]
fn cyclotomic_products() {
    assert_eq!(z(4, 1) * z(4, 1), CycloElement::from(-1));
    assert_eq!(z(5, 4) * z(5, 1), CycloElement::one());
    // ζ5^4 = −1 − ζ5 − ζ5² − ζ5³ in the power basis.
    assert_eq!(z(5, 4).coeffs(), &[qi(-1), qi(-1), qi(-1), qi(-1)]);
}

#[test]
fn mixed_conductors_promote() {
    let s2 = CycloElement::sqrt2();
    let i = CycloElement::i();
    let x = (i.clone() * s2.clone()).pow(2);
    assert_eq!(x, CycloElement::from(-2));
    let w = z(3, 1) * z(5, 1);
    assert_eq!(w.conductor(), 15);
    assert_eq!(w, z(15, 8));
}

#[test]
fn serialization_shapes() {
    let r = q(-7, 3);
    assert_eq!(serde_json::to_string(&r).unwrap(), "\"-7/3\"");
    assert_eq!(serde_json::to_string(&qi(4)).unwrap(), "\"4\"");
    let back: Rational = serde_json::from_str("\"-7/3\"").unwrap();
    assert_eq!(back, r);
    let e = z(4, 1) + CycloElement::from(q(1, 2));
    let js = serde_json::to_value(&e).unwrap();
    assert_eq!(js["conductor"], 4);
    assert_eq!(js["coeffs"], serde_json::json!(["1/2", "1"]));
    let back: CycloElement = serde_json::from_value(js).unwrap();
    assert_eq!(back, e);
}

#[test]
fn ranks() {
    assert_eq!(QMatrix::identity(3).rank(), 3);
    let ones = Matrix::from_fn(2, 6, |_, _| qi(1));
    assert_eq!(ones.rank(), 1);
    // Rows: ones, a, a permuted by (01)(23)(45).
    let a = [2, -1, 3, -2, 0, 1];
    let perm = [1, 0, 3, 2, 5, 4];
    let m = Matrix::from_fn(3, 6, |i, j| match i {
        0 => qi(1),
        1 => qi(a[j]),
        _ => qi(a[perm[j]]),
    });
    assert_eq!(m.rank(), 2);
    // Independent check: the permuted row is 1·ones − 1·a... verified by
    // exhibiting the explicit dependency coefficients.
    let dep: Vec<Rational> = (0..6).map(|j| qi(a[perm[j]]) + qi(a[j]) - qi(1)).collect();
    assert!(dep.iter().all(Zero::is_zero));
}

#[test]
fn integrals() {
    let p = QPoly::new(vec![qi(22), qi(-24), qi(6)]);
    assert_eq!(p.integrate(&qi(0), &qi(1)), qi(12));
    let w = QPoly::new(vec![qi(2), qi(-1)]).pow(3).scale(&qi(4));
    assert_eq!(w.integrate(&qi(1), &qi(2)), qi(1));
    assert_eq!(p.integrate(&qi(0), &qi(0)), qi(0));
}

#[test]
fn polynomial_determinants() {
    let r = MPoly::<Rational>::ring(&["x1", "x2", "x3"]);
    let x: Vec<QMPoly> = (0..3).map(|i| MPoly::var(&r, i)).collect();
    let diag = Matrix::from_fn(3, 3, |i, j| if i == j { x[i].clone() } else { QMPoly::zero() });
    assert_eq!(
        diag.det_cofactor().unwrap(),
        x[0].clone() * x[1].clone() * x[2].clone()
    );
    let single: Matrix<QMPoly> = Matrix::from_fn(1, 1, |_, _| x[2].clone());
    assert_eq!(single.det_cofactor().unwrap(), x[2]);
    // A 2×2 block with a zero third row/column has zero determinant.
    let two = MPoly::constant(qi(2));
    let m = Matrix::from_rows(vec![
        vec![two.clone() * x[1].clone() * x[1].clone(), two.clone() * x[1].clone() * x[2].clone() - QMPoly::one(), QMPoly::zero()],
        vec![two.clone() * x[1].clone() * x[2].clone() - QMPoly::one(), two * x[2].clone() * x[2].clone(), QMPoly::zero()],
        vec![QMPoly::zero(), QMPoly::zero(), QMPoly::zero()],
    ])
    .unwrap();
    assert!(m.det_cofactor().unwrap().is_zero());
}

#[test]
fn determinant_agrees_with_cofactor_expansion() {
    let m = Matrix::from_rows(vec![
        vec![qi(2), qi(-1), qi(0), q(1, 2)],
        vec![qi(1), qi(3), qi(4), qi(0)],
        vec![qi(0), q(2, 3), qi(-5), qi(1)],
        vec![qi(7), qi(0), qi(1), qi(1)],
    ])
    .unwrap();
    assert_eq!(m.det().unwrap(), m.det_cofactor().unwrap());
    let inv = m.inverse().unwrap();
    assert_eq!(m.mul(&inv).unwrap(), QMatrix::identity(4));
}
