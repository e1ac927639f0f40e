//! Exact convex cones in the plane.

use std::fmt;

use exactkernel::Rational;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::CoxError;

/// A vector in a rank-two rational class group.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ClassVector2(pub Rational, pub Rational);

impl ClassVector2 {
    /// Vector from integer coordinates.
    pub fn new(x: i64, y: i64) -> Self {
        ClassVector2(Rational::from(x), Rational::from(y))
    }

    /// Builds a vector from a coordinate slice of length two.
    pub fn from_slice(v: &[Rational]) -> Result<Self, CoxError> {
        match v {
            [x, y] => Ok(ClassVector2(x.clone(), y.clone())),
            _ => Err(CoxError::RankNotTwo(v.len())),
        }
    }

    /// Cross product `self × other` (the 2×2 determinant).
    pub fn cross(&self, other: &Self) -> Rational {
        &(&self.0 * &other.1) - &(&self.1 * &other.0)
    }

    /// Dot product.
    pub fn dot(&self, other: &Self) -> Rational {
        &(&self.0 * &other.0) + &(&self.1 * &other.1)
    }

    /// True for the zero vector.
    pub fn is_zero(&self) -> bool {
        self.0.is_zero() && self.1.is_zero()
    }

    /// `self + other`.
    pub fn add(&self, other: &Self) -> Self {
        ClassVector2(&self.0 + &other.0, &self.1 + &other.1)
    }

    /// `self − other`.
    pub fn sub(&self, other: &Self) -> Self {
        ClassVector2(&self.0 - &other.0, &self.1 - &other.1)
    }

    /// `s · self`.
    pub fn scale(&self, s: &Rational) -> Self {
        ClassVector2(&self.0 * s, &self.1 * s)
    }

    /// `−self`.
    pub fn neg(&self) -> Self {
        ClassVector2(-&self.0, -&self.1)
    }

    /// The positive multiple of `self` with coprime integer coordinates.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.0.denom().lcm(self.1.denom());
        let a = self.0.numer() * (&l / self.0.denom());
        let b = self.1.numer() * (&l / self.1.denom());
        let g = a.gcd(&b);
        ClassVector2(
            Rational::from_bigints(a / &g, BigInt::one()),
            Rational::from_bigints(b / &g, BigInt::one()),
        )
    }

    /// Same direction (positive multiple).
    pub fn same_ray(&self, other: &Self) -> bool {
        self.cross(other).is_zero() && self.dot(other).is_positive()
    }
}

impl fmt::Display for ClassVector2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.0, self.1)
    }
}

/// A closed convex cone in the plane.
///
/// Sectors are stored with counterclockwise-ordered generators (`a × b > 0`)
/// and an angular span strictly below 180°; the half-plane and the line cover
/// the two spans of exactly 180°.  Generators are kept in lowest integer
/// terms.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub enum Sector {
    /// The origin.
    Zero,
    /// A single ray.
    Ray(ClassVector2),
    /// A full line through the origin (spanned by `±v`).
    Line(ClassVector2),
    /// The counterclockwise sector from `a` to `b`.
    Sector(ClassVector2, ClassVector2),
    /// The half-plane swept counterclockwise from `a` to `−a`.
    HalfPlane(ClassVector2),
}

impl Sector {
    /// The sector swept counterclockwise from `a` to `b`; errors if that
    /// sweep exceeds 180°.
    pub fn from_rays(a: &ClassVector2, b: &ClassVector2) -> Result<Sector, CoxError> {
        match (a.is_zero(), b.is_zero()) {
            (true, true) => return Ok(Sector::Zero),
            (true, false) => return Ok(Sector::Ray(b.primitive())),
            (false, true) => return Ok(Sector::Ray(a.primitive())),
            _ => {}
        }
        let c = a.cross(b);
        if c.is_positive() {
            Ok(Sector::Sector(a.primitive(), b.primitive()))
        } else if c.is_negative() {
            Err(CoxError::NonConvex(format!("sweep from {a} to {b} exceeds 180 degrees")))
        } else if a.dot(b).is_positive() {
            Ok(Sector::Ray(a.primitive()))
        } else {
            Ok(Sector::HalfPlane(a.primitive()))
        }
    }

    /// The cone generated by a list of vectors; it must not contain a line
    /// unless all vectors are parallel (then the line itself is returned).
    pub fn hull(vectors: &[ClassVector2]) -> Result<Sector, CoxError> {
        let vs: Vec<&ClassVector2> = vectors.iter().filter(|v| !v.is_zero()).collect();
        let Some(first) = vs.first() else {
            return Ok(Sector::Zero);
        };
        if vs.iter().all(|v| v.cross(first).is_zero()) {
            return Ok(if vs.iter().all(|v| v.same_ray(first)) {
                Sector::Ray(first.primitive())
            } else {
                Sector::Line(first.primitive())
            });
        }
        // Clockwise-most generator `a`: every vector lies counterclockwise
        // of it within 180°, and symmetrically for `b`.
        let a = vs.iter().find(|a| {
            vs.iter().all(|x| {
                let c = a.cross(x);
                c.is_positive() || (c.is_zero() && a.dot(x).is_positive())
            })
        });
        let b = vs.iter().find(|b| {
            vs.iter().all(|x| {
                let c = x.cross(b);
                c.is_positive() || (c.is_zero() && b.dot(x).is_positive())
            })
        });
        match (a, b) {
            (Some(a), Some(b)) if a.cross(b).is_positive() => {
                Ok(Sector::Sector(a.primitive(), b.primitive()))
            }
            _ => Err(CoxError::NonConvex(
                "generated cone is not pointed".to_string(),
            )),
        }
    }

    /// Extremal rays (both directions for a line or half-plane boundary).
    pub fn rays(&self) -> Vec<ClassVector2> {
        match self {
            Sector::Zero => vec![],
            Sector::Ray(v) => vec![v.clone()],
            Sector::Line(v) | Sector::HalfPlane(v) => vec![v.clone(), v.neg()],
            Sector::Sector(a, b) => vec![a.clone(), b.clone()],
        }
    }

    /// Membership test.
    pub fn contains(&self, x: &ClassVector2) -> bool {
        if x.is_zero() {
            return true;
        }
        match self {
            Sector::Zero => false,
            Sector::Ray(v) => v.same_ray(x),
            Sector::Line(v) => v.cross(x).is_zero(),
            Sector::HalfPlane(a) => !a.cross(x).is_negative(),
            Sector::Sector(a, b) => !a.cross(x).is_negative() && !x.cross(b).is_negative(),
        }
    }

    /// Exact intersection of two convex cones.
    pub fn intersect(&self, other: &Sector) -> Sector {
        if self == other {
            return self.clone();
        }
        if let (Sector::HalfPlane(a), Sector::HalfPlane(b)) = (self, other) {
            if a.same_ray(b) {
                return self.clone();
            }
        }
        // The intersection of two angular intervals of span ≤ 180° is
        // spanned by those boundary rays of each that lie in the other.
        let mut cand: Vec<ClassVector2> = Vec::new();
        for r in self.rays() {
            if other.contains(&r) {
                cand.push(r);
            }
        }
        for r in other.rays() {
            if self.contains(&r) {
                cand.push(r);
            }
        }
        Sector::hull(&cand).expect("intersection of convex cones is convex")
    }
}

/// Intersection of two sectors given by counterclockwise generator pairs.
pub fn sector_intersect(a: &Sector, b: &Sector) -> Result<Sector, CoxError> {
    for s in [a, b] {
        if let Sector::Sector(x, y) = s {
            if !x.cross(y).is_positive() {
                return Err(CoxError::NonConvex(format!(
                    "sector from {x} to {y} is not a convex sector"
                )));
            }
        }
    }
    Ok(a.intersect(b))
}

impl fmt::Display for Sector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sector::Zero => write!(f, "{{0}}"),
            Sector::Ray(v) => write!(f, "ray{v}"),
            Sector::Line(v) => write!(f, "line{v}"),
            Sector::Sector(a, b) => write!(f, "sector({a}, {b})"),
            Sector::HalfPlane(a) => write!(f, "halfplane{a}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: i64, y: i64) -> ClassVector2 {
        ClassVector2::new(x, y)
    }

    #[test]
    fn hulls() {
        assert_eq!(Sector::hull(&[]).unwrap(), Sector::Zero);
        assert_eq!(Sector::hull(&[v(2, 4)]).unwrap(), Sector::Ray(v(1, 2)));
        assert_eq!(Sector::hull(&[v(1, 0), v(-2, 0)]).unwrap(), Sector::Line(v(1, 0)));
        assert_eq!(
            Sector::hull(&[v(1, 3), v(0, 1), v(1, 0), v(0, 1)]).unwrap(),
            Sector::Sector(v(1, 0), v(0, 1))
        );
        assert!(Sector::hull(&[v(1, 0), v(0, 1), v(-1, -1)]).is_err());
    }

    #[test]
    fn from_rays_orientation() {
        assert!(Sector::from_rays(&v(0, 1), &v(1, 0)).is_err());
        assert_eq!(Sector::from_rays(&v(1, 0), &v(-1, 0)).unwrap(), Sector::HalfPlane(v(1, 0)));
    }
}
