//! Affine functions and polynomials in the flag parameters `(u, v)`, convex
//! polygons with rational vertices, and exact iterated integration
//! (first in `v`, then in `u`) over such polygons.

use std::collections::BTreeMap;
use std::fmt;

use exactkernel::{Poly, QPoly, Rational};
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

/// An affine function `c + a·u + b·v`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Affine2 {
    /// Constant term.
    pub c: Rational,
    /// Coefficient of `u`.
    pub u: Rational,
    /// Coefficient of `v`.
    pub v: Rational,
}

impl Affine2 {
    /// `c + a·u + b·v`.
    pub fn new(c: Rational, a: Rational, b: Rational) -> Self {
        Affine2 { c, u: a, v: b }
    }

    /// The constant function.
    pub fn constant(c: Rational) -> Self {
        Affine2::new(c, Rational::zero(), Rational::zero())
    }

    /// Value at `(u, v)`.
    pub fn eval(&self, u: &Rational, v: &Rational) -> Rational {
        &(&self.c + &(&self.u * u)) + &(&self.v * v)
    }

    /// True when identically zero.
    pub fn is_zero(&self) -> bool {
        self.c.is_zero() && self.u.is_zero() && self.v.is_zero()
    }

    /// True when constant.
    pub fn is_constant(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }

    /// Sum.
    pub fn add(&self, o: &Self) -> Self {
        Affine2::new(&self.c + &o.c, &self.u + &o.u, &self.v + &o.v)
    }

    /// Difference.
    pub fn sub(&self, o: &Self) -> Self {
        Affine2::new(&self.c - &o.c, &self.u - &o.u, &self.v - &o.v)
    }

    /// Scalar multiple.
    pub fn scale(&self, s: &Rational) -> Self {
        Affine2::new(&self.c * s, &self.u * s, &self.v * s)
    }

    /// As a polynomial.
    pub fn to_bipoly(&self) -> BiPoly {
        let mut p = BiPoly::zero();
        p.add_term(0, 0, self.c.clone());
        p.add_term(1, 0, self.u.clone());
        p.add_term(0, 1, self.v.clone());
        p
    }

    /// Product as a polynomial.
    pub fn mul(&self, o: &Self) -> BiPoly {
        self.to_bipoly().mul(&o.to_bipoly())
    }

    /// Normalised form used to identify equal lines `self = 0`: scaled so
    /// that the first nonzero of `(u, v, c)` coefficients is one.
    pub fn normalized(&self) -> Self {
        let lead = [&self.u, &self.v, &self.c]
            .into_iter()
            .find(|x| !x.is_zero())
            .cloned();
        match lead {
            Some(l) => self.scale(&(Rational::one() / l)),
            None => self.clone(),
        }
    }
}

impl fmt::Display for Affine2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_bipoly())
    }
}

/// A polynomial in `u` and `v` with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), Rational>,
}

impl BiPoly {
    /// The zero polynomial.
    pub fn zero() -> Self {
        BiPoly::default()
    }

    /// A constant.
    pub fn constant(c: Rational) -> Self {
        let mut p = BiPoly::zero();
        p.add_term(0, 0, c);
        p
    }

    /// Adds `c·u^i·v^j`.
    pub fn add_term(&mut self, i: u32, j: u32, c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry((i, j)).or_insert_with(Rational::zero);
        *e = &*e + &c;
        if e.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    /// Coefficient of `u^i·v^j`.
    pub fn coeff(&self, i: u32, j: u32) -> Rational {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(Rational::zero)
    }

    /// Terms `((i, j), c)` in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rational)> {
        self.terms.iter()
    }

    /// True for the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree (zero for the zero polynomial).
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|(i, j)| i + j).max().unwrap_or(0)
    }

    /// Sum.
    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (&(i, j), c) in &o.terms {
            r.add_term(i, j, c.clone());
        }
        r
    }

    /// Difference.
    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-Rational::one()))
    }

    /// Scalar multiple.
    pub fn scale(&self, s: &Rational) -> Self {
        let mut r = BiPoly::zero();
        for (&(i, j), c) in &self.terms {
            r.add_term(i, j, c * s);
        }
        r
    }

    /// Product.
    pub fn mul(&self, o: &Self) -> Self {
        let mut r = BiPoly::zero();
        for (&(i, j), a) in &self.terms {
            for (&(k, l), b) in &o.terms {
                r.add_term(i + k, j + l, a * b);
            }
        }
        r
    }

    /// Value at `(u, v)`.
    pub fn eval(&self, u: &Rational, v: &Rational) -> Rational {
        self.terms
            .iter()
            .map(|(&(i, j), c)| &(c * &u.pow(i as i32)) * &v.pow(j as i32))
            .sum()
    }

    /// A polynomial in `u` alone.
    pub fn from_u_poly(p: &QPoly) -> Self {
        let mut b = BiPoly::zero();
        for (i, c) in p.coeffs().iter().enumerate() {
            b.add_term(i as u32, 0, c.clone());
        }
        b
    }

    /// `∫_{lo(u)}^{hi(u)} self(u, v) dv` as a polynomial in `u`.
    pub fn integrate_v(&self, lo: &QPoly, hi: &QPoly) -> QPoly {
        let mut acc = QPoly::zero();
        for (&(i, j), c) in &self.terms {
            let k = j + 1;
            let diff = hi.pow(k) - lo.pow(k);
            let ui = Poly::new(
                (0..=i)
                    .map(|d| if d == i { c / &Rational::from(k as i64) } else { Rational::zero() })
                    .collect(),
            );
            acc = acc + ui * diff;
        }
        acc
    }

    /// The univariate polynomial `v ↦ self(u, v)` at a fixed `u`.
    pub fn at_u(&self, u: &Rational) -> QPoly {
        let mut coeffs: Vec<Rational> = Vec::new();
        for (&(i, j), c) in &self.terms {
            let j = j as usize;
            if coeffs.len() <= j {
                coeffs.resize(j + 1, Rational::zero());
            }
            coeffs[j] = &coeffs[j] + &(c * &u.pow(i as i32));
        }
        Poly::new(coeffs)
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // Highest total degree first, then by powers of u.
        let mut keys: Vec<&(u32, u32)> = self.terms.keys().collect();
        keys.sort_by(|a, b| (b.0 + b.1, b.0).cmp(&(a.0 + a.1, a.0)));
        for (n, key) in keys.into_iter().enumerate() {
            let c = &self.terms[key];
            let (i, j) = *key;
            let neg = c.is_negative();
            let mag = c.abs();
            match (n, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mono = |e: u32, x: &str| match e {
                0 => String::new(),
                1 => x.to_string(),
                _ => format!("{x}^{e}"),
            };
            let m = format!("{}{}", mono(i, "u"), mono(j, "v"));
            if m.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}{m}")?;
            }
        }
        Ok(())
    }
}

impl Serialize for BiPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// A point of the `(u, v)` plane.
pub type Point2 = (Rational, Rational);

/// A convex polygon with vertices in counterclockwise order and positive
/// area.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Polygon {
    /// Vertices, counterclockwise, without repetition.
    pub vertices: Vec<Point2>,
}

fn cross3(a: &Point2, b: &Point2, c: &Point2) -> Rational {
    &(&(&b.0 - &a.0) * &(&c.1 - &a.1)) - &(&(&b.1 - &a.1) * &(&c.0 - &a.0))
}

impl Polygon {
    /// Builds a polygon from vertices in either orientation, dropping
    /// repeated and collinear vertices; `None` if the area vanishes.
    pub fn new(mut vertices: Vec<Point2>) -> Option<Self> {
        vertices.dedup();
        while vertices.len() > 1 && vertices.first() == vertices.last() {
            vertices.pop();
        }
        // Remove collinear middle vertices.
        let mut changed = true;
        while changed && vertices.len() >= 3 {
            changed = false;
            let n = vertices.len();
            for i in 0..n {
                let a = &vertices[(i + n - 1) % n];
                let b = &vertices[i];
                let c = &vertices[(i + 1) % n];
                if cross3(a, b, c).is_zero() {
                    vertices.remove(i);
                    changed = true;
                    break;
                }
            }
        }
        if vertices.len() < 3 {
            return None;
        }
        let mut p = Polygon { vertices };
        let a = p.signed_area();
        if a.is_zero() {
            return None;
        }
        if a.is_negative() {
            p.vertices.reverse();
        }
        Some(p)
    }

    fn signed_area(&self) -> Rational {
        let n = self.vertices.len();
        let twice: Rational = (0..n)
            .map(|i| {
                let (a, b) = (&self.vertices[i], &self.vertices[(i + 1) % n]);
                &(&a.0 * &b.1) - &(&a.1 * &b.0)
            })
            .sum();
        twice / Rational::from(2)
    }

    /// Area.
    pub fn area(&self) -> Rational {
        self.signed_area().abs()
    }

    /// The average of the vertices, an interior point.
    pub fn interior_point(&self) -> Point2 {
        let n = Rational::from(self.vertices.len() as i64);
        let su: Rational = self.vertices.iter().map(|p| p.0.clone()).sum();
        let sv: Rational = self.vertices.iter().map(|p| p.1.clone()).sum();
        (su / n.clone(), sv / n)
    }

    /// Membership (boundary included).
    pub fn contains(&self, p: &Point2) -> bool {
        let n = self.vertices.len();
        (0..n).all(|i| !cross3(&self.vertices[i], &self.vertices[(i + 1) % n], p).is_negative())
    }

    /// Splits along the line `g = 0` into the parts where `g ≥ 0` and
    /// `g ≤ 0`; parts of zero area are `None`.
    pub fn split(&self, g: &Affine2) -> (Option<Polygon>, Option<Polygon>) {
        let vals: Vec<Rational> = self.vertices.iter().map(|p| g.eval(&p.0, &p.1)).collect();
        let n = self.vertices.len();
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        for i in 0..n {
            let j = (i + 1) % n;
            let (p, q) = (&self.vertices[i], &self.vertices[j]);
            let (a, b) = (&vals[i], &vals[j]);
            if !a.is_negative() {
                pos.push(p.clone());
            }
            if !a.is_positive() {
                neg.push(p.clone());
            }
            if (a.is_positive() && b.is_negative()) || (a.is_negative() && b.is_positive()) {
                let s = a / &(a - b);
                let x = (&p.0 + &(&s * &(&q.0 - &p.0)), &p.1 + &(&s * &(&q.1 - &p.1)));
                pos.push(x.clone());
                neg.push(x);
            }
        }
        (Polygon::new(pos), Polygon::new(neg))
    }

    /// The interval of `v` over the vertical line at `u`, if it meets the
    /// polygon.
    pub fn v_range(&self, u: &Rational) -> Option<(Rational, Rational)> {
        let n = self.vertices.len();
        let mut lo: Option<Rational> = None;
        let mut hi: Option<Rational> = None;
        let mut push = |v: Rational| {
            lo = Some(match lo.take() {
                Some(l) => l.min(v.clone()),
                None => v.clone(),
            });
            hi = Some(match hi.take() {
                Some(h) => h.max(v),
                None => v,
            });
        };
        for i in 0..n {
            let (p, q) = (&self.vertices[i], &self.vertices[(i + 1) % n]);
            let (umin, umax) = if p.0 <= q.0 { (&p.0, &q.0) } else { (&q.0, &p.0) };
            if u < umin || u > umax {
                continue;
            }
            if p.0 == q.0 {
                push(p.1.clone());
                push(q.1.clone());
            } else {
                let s = &(u - &p.0) / &(&q.0 - &p.0);
                push(&p.1 + &(&s * &(&q.1 - &p.1)));
            }
        }
        lo.zip(hi)
    }

    /// Exact `∫∫ f du dv` over the polygon, integrating first in `v`.
    pub fn integrate(&self, f: &BiPoly) -> Rational {
        let mut us: Vec<Rational> = self.vertices.iter().map(|p| p.0.clone()).collect();
        us.sort();
        us.dedup();
        let mut total = Rational::zero();
        for w in us.windows(2) {
            let (a, b) = (&w[0], &w[1]);
            let (la, ha) = self.v_range(a).expect("vertex abscissa meets the polygon");
            let (lb, hb) = self.v_range(b).expect("vertex abscissa meets the polygon");
            // Over a vertical strip the lower and upper boundaries are
            // single edges, hence affine in u; the strip endpoints may be
            // vertical edges, whose extreme values are the limits.
            let line = |ya: &Rational, yb: &Rational| {
                let slope = &(yb - ya) / &(b - a);
                Poly::linear(ya - &(&slope * a), slope)
            };
            let lo = line(&la, &lb);
            let hi = line(&ha, &hb);
            total = &total + &f.integrate_v(&lo, &hi).integrate(a, b);
        }
        total
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use exactkernel::{q, qi};

    fn pt(a: i64, b: i64) -> Point2 {
        (qi(a), qi(b))
    }

    #[test]
    fn unit_square_moments() {
        let sq = Polygon::new(vec![pt(0, 0), pt(1, 0), pt(1, 1), pt(0, 1)]).unwrap();
        assert_eq!(sq.area(), qi(1));
        let uv = Affine2::new(qi(0), qi(1), qi(0)).mul(&Affine2::new(qi(0), qi(0), qi(1)));
        assert_eq!(sq.integrate(&uv), q(1, 4));
        assert_eq!(sq.integrate(&BiPoly::constant(qi(3))), qi(3));
    }

    #[test]
    fn triangle_and_split() {
        // 0 ≤ v ≤ 1 − u over u ∈ [0,1].
        let t = Polygon::new(vec![pt(0, 0), pt(1, 0), pt(0, 1)]).unwrap();
        assert_eq!(t.area(), q(1, 2));
        let v2 = Affine2::new(qi(0), qi(0), qi(1)).mul(&Affine2::new(qi(0), qi(0), qi(1)));
        assert_eq!(t.integrate(&v2), q(1, 12));
        let (a, b) = t.split(&Affine2::new(q(-1, 2), qi(1), qi(0)));
        let (a, b) = (a.unwrap(), b.unwrap());
        assert_eq!(&a.area() + &b.area(), q(1, 2));
        assert_eq!(&a.integrate(&v2) + &b.integrate(&v2), q(1, 12));
        // A line missing the interior leaves the polygon whole.
        let (a, b) = t.split(&Affine2::new(qi(-5), qi(1), qi(0)));
        assert!(a.is_none());
        assert_eq!(b.unwrap(), t);
    }

    #[test]
    fn degenerate_polygons_are_rejected() {
        assert!(Polygon::new(vec![pt(0, 0), pt(1, 1), pt(2, 2)]).is_none());
        assert!(Polygon::new(vec![pt(0, 0), pt(0, 0), pt(1, 0)]).is_none());
    }

    #[test]
    fn display() {
        let p = Affine2::new(qi(8), qi(-4), qi(-2)).to_bipoly().sub(
            &Affine2::new(qi(0), qi(0), qi(1)).mul(&Affine2::new(qi(0), qi(0), qi(1))),
        );
        assert_eq!(p.to_string(), "-v^2 - 4u - 2v + 8");
    }
}
