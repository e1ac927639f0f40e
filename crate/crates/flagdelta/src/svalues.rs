//! The flag integrals `S(W; F)` and `S(W; F; P)`.
//!
//! With `V = (−K_X)³`:
//!
//! ```text
//! S(W; F)    = 3/V ∫ (P(u)|_S)² · ord_F N(u)|_S du + 3/V ∫∫ P(u, v)² dv du
//! S(W; F; P) = 3/V ∫∫ (P(u, v)·F)² dv du + F_P
//! F_P        = 6/V ∫∫ (P(u, v)·F) · ord_P(N′(u)|_F + N(u, v)|_F) dv du
//! ```
//!
//! where `N′(u)` is the part of `N(u)|_S` not supported on `F`.

use exactkernel::Rational;
use num_traits::Zero;
use serde::Serialize;

use crate::bipoly::{Affine2, BiPoly};
use crate::chamber::ChamberedZariski;
use crate::error::FlagError;
use crate::flag::{FlagSurface, PointData};

/// Split of `S(W; F)` into its two terms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CurveValue {
    /// Contribution of `N(u)|_S` along `F`.
    pub first_term: Rational,
    /// The volume integral.
    pub second_term: Rational,
    /// `S(W; F)`.
    pub total: Rational,
}

/// Split of `S(W; F; P)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointValue {
    /// Point name.
    pub point: String,
    /// `3/V ∫∫ (P·F)²`.
    pub base: Rational,
    /// Part of `F_P` coming from `N′(u)`.
    pub f_n_prime: Rational,
    /// Part of `F_P` coming from `N(u, v)`.
    pub f_n: Rational,
    /// `F_P`.
    pub f_p: Rational,
    /// `S(W; F; P)`.
    pub total: Rational,
}

fn factor(flag: &FlagSurface, k: i64) -> Rational {
    Rational::from(k) / flag.volume.clone()
}

/// `S(W; F)` for the flag curve (or exceptional curve) of `flag`.
pub fn s_w_curve(flag: &FlagSurface, cz: &ChamberedZariski) -> CurveValue {
    let mut first = Rational::zero();
    for (i, p) in flag.pieces.iter().enumerate() {
        let f = flag.restricted_square(i) * flag.order_along_flag(i);
        first = &first + &f.integrate(&p.lo, &p.hi);
    }
    let second: Rational = cz.chambers.iter().map(|c| c.polygon.integrate(&c.p_squared)).sum();
    let three = factor(flag, 3);
    let first_term = &three * &first;
    let second_term = &three * &second;
    CurveValue { total: &first_term + &second_term, first_term, second_term }
}

/// `S(W; G)` for the exceptional curve of a blown-up flag.
pub fn s_w_exceptional(flag: &FlagSurface, cz: &ChamberedZariski) -> Result<CurveValue, FlagError> {
    if flag.blowup.is_none() {
        return Err(FlagError::Model(format!("{} is not an exceptional curve", flag.curve)));
    }
    Ok(s_w_curve(flag, cz))
}

/// `ord_P N′(u)|_F` on a flag piece, affine in `u`.
fn n_prime_order(flag: &FlagSurface, piece: usize, point: &PointData) -> Affine2 {
    point.through.iter().fold(Affine2::constant(Rational::zero()), |acc, (name, m)| {
        let (c, s) = flag.n_prime_coefficient(piece, name);
        acc.add(&Affine2::new(c, s, Rational::zero()).scale(m))
    })
}

/// `S(W; F; P)` for a point of the flag curve.
pub fn s_w_point(flag: &FlagSurface, cz: &ChamberedZariski, point: &PointData) -> Result<PointValue, FlagError> {
    flag.check_point(point)?;
    let mut base = Rational::zero();
    let mut fnp = Rational::zero();
    let mut fn_ = Rational::zero();
    for ch in &cz.chambers {
        let pc = &ch.p_dot_c;
        base = &base + &ch.polygon.integrate(&pc.mul(pc));
        let np = n_prime_order(flag, ch.piece, point);
        if !np.is_zero() {
            fnp = &fnp + &ch.polygon.integrate(&pc.mul(&np));
        }
        let n = point
            .through
            .iter()
            .fold(Affine2::constant(Rational::zero()), |acc, (name, m)| acc.add(&ch.n_coefficient(name).scale(m)));
        if !n.is_zero() {
            fn_ = &fn_ + &ch.polygon.integrate(&pc.mul(&n));
        }
    }
    let (three, six) = (factor(flag, 3), factor(flag, 6));
    let base = &three * &base;
    let f_n_prime = &six * &fnp;
    let f_n = &six * &fn_;
    let f_p = &f_n_prime + &f_n;
    Ok(PointValue {
        point: point.name.clone(),
        total: &base + &f_p,
        base,
        f_n_prime,
        f_n,
        f_p,
    })
}

/// `S(W; G; O)` for a point of the exceptional curve of a blown-up flag.
pub fn s_w_point_on_exceptional(
    flag: &FlagSurface,
    cz: &ChamberedZariski,
    point: &PointData,
) -> Result<PointValue, FlagError> {
    if flag.blowup.is_none() {
        return Err(FlagError::Model(format!("{} is not an exceptional curve", flag.curve)));
    }
    s_w_point(flag, cz, point)
}

/// `∫∫ f` over all chambers, for an integrand assembled per chamber.
pub fn integrate_chambers(cz: &ChamberedZariski, f: impl Fn(&crate::chamber::Chamber) -> BiPoly) -> Rational {
    cz.chambers.iter().map(|c| c.polygon.integrate(&f(c))).sum()
}
