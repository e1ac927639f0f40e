//! Chambered Zariski decomposition of `D(u, v) = P(u)|_S − v·C` over the
//! region `0 ≤ v ≤ t(u)`.
//!
//! Supports are seeded by decomposing at an interior point of a polygon.  The
//! negative coefficients are then solved symbolically — they are affine in
//! `(u, v)` once the support is fixed — and the chamber is certified by
//! checking at every vertex that all coefficients are nonnegative and that
//! the positive part meets every curve nonnegatively.  A violated inequality
//! is an affine wall; the polygon is split along it and both halves are
//! processed again.

use exactkernel::{QMatrix, Rational};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use surfgeom::{threshold_affine, AffinePiece, DivisorClass, SurfaceLattice};

use crate::bipoly::{Affine2, BiPoly, Point2, Polygon};
use crate::error::FlagError;
use crate::flag::FlagSurface;

/// A region on which the support of the negative part is constant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Chamber {
    /// Index of the flag piece containing the chamber.
    pub piece: usize,
    /// The region.
    pub polygon: Polygon,
    /// Tracked-curve indices of the support.
    pub support: Vec<usize>,
    /// Names of the support curves.
    pub support_names: Vec<String>,
    /// Coefficient of each support curve in `N(u, v)`.
    pub n_coeffs: Vec<Affine2>,
    /// Coordinates of `P(u, v)` in the lattice basis.
    pub p_class: Vec<Affine2>,
    /// `P(u, v)·C`.
    pub p_dot_c: Affine2,
    /// `P(u, v)²`.
    pub p_squared: BiPoly,
}

impl Chamber {
    /// Coefficient of a named curve in `N(u, v)` (zero off the support).
    pub fn n_coefficient(&self, name: &str) -> Affine2 {
        self.support_names
            .iter()
            .position(|n| n == name)
            .map(|i| self.n_coeffs[i].clone())
            .unwrap_or_else(|| Affine2::constant(Rational::zero()))
    }
}

/// The pseudo-effective threshold of one flag piece.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThresholdPiece {
    /// Flag piece index.
    pub piece: usize,
    /// Affine formula of `t(u)` and its interval.
    pub threshold: AffinePiece,
}

/// All chambers of a flag.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChamberedZariski {
    /// Piecewise-affine threshold `t(u)`.
    pub threshold: Vec<ThresholdPiece>,
    /// The chambers, ordered by flag piece and then by discovery.
    pub chambers: Vec<Chamber>,
}

/// Piecewise-affine `t(u)` on one flag piece.
pub fn pseff_threshold_2d(flag: &FlagSurface, piece: usize) -> Result<Vec<AffinePiece>, FlagError> {
    let p = &flag.pieces[piece];
    Ok(threshold_affine(&flag.lattice, &p.d_const, &p.d_slope, &flag.direction, &p.lo, &p.hi)?)
}

/// Affine coordinates of `D(u, v)` on a flag piece.
fn symbolic_class(flag: &FlagSurface, piece: usize) -> Vec<Affine2> {
    let p = &flag.pieces[piece];
    (0..flag.lattice.rank())
        .map(|i| Affine2::new(p.d_const.0[i].clone(), p.d_slope.0[i].clone(), -&flag.direction.0[i]))
        .collect()
}

fn dot_affine(lat: &SurfaceLattice, a: &[Affine2], c: &DivisorClass) -> Affine2 {
    let n = lat.rank();
    let mut acc = Affine2::constant(Rational::zero());
    for i in 0..n {
        let gc: Rational = (0..n).map(|j| lat.gram.get(i, j) * &c.0[j]).sum();
        if !gc.is_zero() {
            acc = acc.add(&a[i].scale(&gc));
        }
    }
    acc
}

fn square_affine(lat: &SurfaceLattice, a: &[Affine2]) -> BiPoly {
    let n = lat.rank();
    let mut acc = BiPoly::zero();
    for i in 0..n {
        for j in 0..n {
            let g = lat.gram.get(i, j);
            if !g.is_zero() {
                acc = acc.add(&a[i].mul(&a[j]).scale(g));
            }
        }
    }
    acc
}

/// Classes whose intersection with the positive part must be nonnegative:
/// the tracked curves and the effective-cone generators.
fn test_classes(lat: &SurfaceLattice) -> Vec<(String, DivisorClass)> {
    let mut out: Vec<(String, DivisorClass)> =
        lat.tracked.iter().map(|c| (c.name.clone(), c.class.clone())).collect();
    for (k, g) in lat.eff_generators.iter().flatten().enumerate() {
        if out.iter().all(|(_, c)| c != g) {
            out.push((format!("generator {k}"), g.clone()));
        }
    }
    out
}

/// Symbolic decomposition for a fixed support.
fn symbolic(flag: &FlagSurface, piece: usize, support: &[usize]) -> Result<(Vec<Affine2>, Vec<Affine2>), FlagError> {
    let lat = &flag.lattice;
    let d = symbolic_class(flag, piece);
    let k = support.len();
    let mut coeffs = vec![Affine2::constant(Rational::zero()); k];
    if k > 0 {
        let g = lat.support_gram(support);
        let inv = g.inverse().ok_or_else(|| {
            FlagError::Model(format!("support {support:?} has a singular intersection matrix"))
        })?;
        let rhs: Vec<Affine2> = support.iter().map(|&j| dot_affine(lat, &d, &lat.tracked[j].class)).collect();
        for (i, c) in coeffs.iter_mut().enumerate() {
            for (j, r) in rhs.iter().enumerate() {
                *c = c.add(&r.scale(inv.get(i, j)));
            }
        }
    }
    let mut p = d;
    for (a, &j) in coeffs.iter().zip(support) {
        for (pi, cj) in p.iter_mut().zip(&lat.tracked[j].class.0) {
            if !cj.is_zero() {
                *pi = pi.sub(&a.scale(cj));
            }
        }
    }
    Ok((coeffs, p))
}

fn certify_polygon(
    flag: &FlagSurface,
    piece: usize,
    start: Polygon,
    tests: &[(String, DivisorClass)],
) -> Result<Vec<Chamber>, FlagError> {
    let lat = &flag.lattice;
    let mut work = vec![start];
    let mut out = Vec::new();
    while let Some(poly) = work.pop() {
        let (u, v) = poly.interior_point();
        let d = flag.class_at(piece, &u, &v);
        let z = lat.zariski(&d).map_err(|e| FlagError::Validation {
            u: u.to_string(),
            v: v.to_string(),
            reason: e.to_string(),
        })?;
        let (coeffs, p) = symbolic(flag, piece, &z.support)?;
        let mut constraints: Vec<Affine2> = coeffs.clone();
        for (name, c) in tests {
            if lat.tracked_index(name).is_some_and(|i| z.support.contains(&i)) {
                continue;
            }
            constraints.push(dot_affine(lat, &p, c));
        }
        let violated = constraints
            .iter()
            .find(|g| poly.vertices.iter().any(|(a, b)| g.eval(a, b).is_negative()));
        match violated {
            Some(g) => {
                let (pos, neg) = poly.split(g);
                let parts: Vec<Polygon> = pos.into_iter().chain(neg).collect();
                if parts.len() < 2 {
                    return Err(FlagError::Validation {
                        u: u.to_string(),
                        v: v.to_string(),
                        reason: format!("wall {g} does not cut the region it violates"),
                    });
                }
                // Negative part first so the positive part is processed next.
                work.extend(parts.into_iter().rev());
            }
            None => {
                out.push(Chamber {
                    piece,
                    polygon: poly,
                    support_names: z.support.iter().map(|&i| lat.tracked[i].name.clone()).collect(),
                    support: z.support.clone(),
                    p_dot_c: dot_affine(lat, &p, &flag.direction),
                    p_squared: square_affine(lat, &p),
                    n_coeffs: coeffs,
                    p_class: p,
                });
            }
        }
    }
    Ok(out)
}

/// Builds and certifies all chambers.  The parallel and serial runs produce
/// identical output.
pub fn chambered_zariski(flag: &FlagSurface, parallel: bool) -> Result<ChamberedZariski, FlagError> {
    let mut threshold = Vec::new();
    let mut regions = Vec::new();
    for piece in 0..flag.pieces.len() {
        for t in pseff_threshold_2d(flag, piece)? {
            let zero = Rational::zero();
            let poly = Polygon::new(vec![
                (t.lo.clone(), zero.clone()),
                (t.hi.clone(), zero),
                (t.hi.clone(), t.eval(&t.hi)),
                (t.lo.clone(), t.eval(&t.lo)),
            ]);
            if let Some(poly) = poly {
                regions.push((piece, poly));
            }
            threshold.push(ThresholdPiece { piece, threshold: t });
        }
    }
    let tests = test_classes(&flag.lattice);
    let run = |(piece, poly): &(usize, Polygon)| certify_polygon(flag, *piece, poly.clone(), &tests);
    let results: Vec<Result<Vec<Chamber>, FlagError>> = if parallel {
        regions.par_iter().map(run).collect()
    } else {
        regions.iter().map(run).collect()
    };
    let mut chambers = Vec::new();
    for r in results {
        chambers.extend(r?);
    }
    Ok(ChamberedZariski { threshold, chambers })
}

impl ChamberedZariski {
    /// The chamber containing a point, if any.
    pub fn locate(&self, piece: usize, p: &Point2) -> Option<&Chamber> {
        self.chambers.iter().find(|c| c.piece == piece && c.polygon.contains(p))
    }

    /// `t(u)` on a flag piece.
    pub fn threshold_at(&self, piece: usize, u: &Rational) -> Option<Rational> {
        self.threshold
            .iter()
            .find(|t| t.piece == piece && t.threshold.lo <= *u && *u <= t.threshold.hi)
            .map(|t| t.threshold.eval(u))
    }

    /// Compares every chamber at `per_chamber` random interior points with
    /// the pointwise decomposition; returns the number of points checked.
    pub fn validate(&self, flag: &FlagSurface, per_chamber: usize, seed: u64) -> Result<usize, FlagError> {
        let lat = &flag.lattice;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut count = 0;
        for ch in &self.chambers {
            for _ in 0..per_chamber {
                // A random convex combination of the vertices with positive
                // integer weights lies in the interior.
                let w: Vec<i64> = ch.polygon.vertices.iter().map(|_| rng.gen_range(1..=50)).collect();
                let total = Rational::from(w.iter().sum::<i64>());
                let mut u = Rational::zero();
                let mut v = Rational::zero();
                for ((a, b), wi) in ch.polygon.vertices.iter().zip(&w) {
                    let wi = Rational::from(*wi);
                    u = &u + &(a * &wi);
                    v = &v + &(b * &wi);
                }
                let (u, v) = (u / total.clone(), v / total);
                let fail = |reason: String| FlagError::Validation {
                    u: u.to_string(),
                    v: v.to_string(),
                    reason,
                };
                let z = lat.zariski(&flag.class_at(ch.piece, &u, &v)).map_err(|e| fail(e.to_string()))?;
                let p: Vec<Rational> = ch.p_class.iter().map(|a| a.eval(&u, &v)).collect();
                if p != z.positive.0 {
                    return Err(fail(format!("positive part {:?} differs from {}", p, z.positive)));
                }
                let sq = lat.intersect(&z.positive, &z.positive)?;
                if ch.p_squared.eval(&u, &v) != sq {
                    return Err(fail(format!("P^2 differs from {sq}")));
                }
                let n = z.negative_class(lat);
                let sym = ch.support.iter().zip(&ch.n_coeffs).fold(DivisorClass::zero(lat.rank()), |acc, (&i, a)| {
                    &acc + &lat.tracked[i].class.scale(&a.eval(&u, &v))
                });
                if sym != n {
                    return Err(fail(format!("negative part differs from {n}")));
                }
                count += 1;
            }
        }
        Ok(count)
    }
}

/// Checks that a matrix built from chamber data has the sign pattern of a
/// negative definite form; used to audit supports.
pub fn support_is_negative_definite(lat: &SurfaceLattice, support: &[usize]) -> bool {
    let g: QMatrix = lat.support_gram(support);
    surfgeom::is_negative_definite(&g)
}
