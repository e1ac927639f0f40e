//! Threefolds of Picard rank two given by their cubic intersection form, and
//! the Zariski chamber data of a one-parameter family of divisors
//! `D(u) = base + u·direction`.
//!
//! In Picard rank two with the nef cone inside the effective cone, the
//! decomposition has at most one wall crossing on each side: outside the nef
//! cone, `D(u)` lies between a nef boundary ray `n` and an effective boundary
//! generator `e`, and `D = α·n + β·e` gives `P = α·n`, `N = β·e`.

use std::path::Path;

use exactkernel::{Poly, QPoly, Rational};
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use surfgeom::DivisorClass;

use crate::error::FlagError;
use crate::ratfun::parse_poly;

/// A named effective generator of the threefold.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NamedDivisor {
    /// Label used by restriction data.
    pub name: String,
    /// Class in the threefold basis.
    pub class: DivisorClass,
}

/// A smooth Fano threefold of Picard rank two.
#[derive(Clone, Debug)]
pub struct ThreefoldModel {
    /// Model identifier.
    pub name: String,
    /// Basis labels (e.g. `H`, `E`).
    pub basis: Vec<String>,
    /// Symmetric trilinear intersection form `T[i][j][k]`.
    pub cubic: Vec<Vec<Vec<Rational>>>,
    /// The anticanonical class.
    pub anticanonical: DivisorClass,
    /// Generators of the nef cone.
    pub nef: Vec<DivisorClass>,
    /// Generators of the effective cone.
    pub effective: Vec<NamedDivisor>,
    /// Anticanonical degree `(−K)³`, recomputed from the form.
    pub volume: Rational,
}

/// One piece of a one-parameter Zariski decomposition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PathPiece {
    /// Left end of the parameter interval.
    pub lo: Rational,
    /// Right end of the parameter interval.
    pub hi: Rational,
    /// `P(u) = p_const + u·p_slope`.
    pub p_const: DivisorClass,
    /// See `p_const`.
    pub p_slope: DivisorClass,
    /// Negative part as `(generator name, constant, slope)`: the coefficient
    /// of the generator is `constant + u·slope`.
    pub negative: Vec<(String, Rational, Rational)>,
}

impl PathPiece {
    /// `P(u)` at a parameter value.
    pub fn positive_at(&self, u: &Rational) -> DivisorClass {
        &self.p_const + &self.p_slope.scale(u)
    }
}

/// Zariski data of `base + u·direction` for `u ∈ [0, τ]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DivisorPath1D {
    /// Class at `u = 0`.
    pub base: DivisorClass,
    /// Direction of the path.
    pub direction: DivisorClass,
    /// Pseudo-effective threshold.
    pub tau: Rational,
    /// Pieces covering `[0, τ]` in order.
    pub pieces: Vec<PathPiece>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ThreefoldFile {
    name: String,
    #[allow(dead_code)]
    #[serde(default)]
    version: u32,
    #[allow(dead_code)]
    #[serde(default)]
    description: String,
    basis: Vec<String>,
    cubic: Vec<Vec<Vec<Rational>>>,
    #[allow(dead_code)]
    #[serde(default)]
    cubic_provenance: String,
    anticanonical: String,
    volume: Rational,
    nef: Vec<String>,
    effective: Vec<EffEntry>,
    #[serde(default)]
    selftest: Option<SelfTest>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct EffEntry {
    name: String,
    class: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SelfTest {
    direction: String,
    tau: Rational,
    cubes: Vec<CubeCheck>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CubeCheck {
    lo: Rational,
    hi: Rational,
    polynomial: String,
}

fn cross2(a: &DivisorClass, b: &DivisorClass) -> Rational {
    &(&a.0[0] * &b.0[1]) - &(&a.0[1] * &b.0[0])
}

/// Coordinates `(x, y)` with `d = x·a + y·b`, for independent `a`, `b`.
fn coords(d: &DivisorClass, a: &DivisorClass, b: &DivisorClass) -> (Rational, Rational) {
    let det = cross2(a, b);
    (&cross2(d, b) / &det, &cross2(a, d) / &det)
}

impl ThreefoldModel {
    /// Builds and validates a model.
    pub fn new(
        name: impl Into<String>,
        basis: Vec<String>,
        cubic: Vec<Vec<Vec<Rational>>>,
        anticanonical: DivisorClass,
        nef: Vec<DivisorClass>,
        effective: Vec<NamedDivisor>,
    ) -> Result<Self, FlagError> {
        let n = basis.len();
        if n != 2 {
            return Err(FlagError::Model(format!("Picard rank {n} is not supported (need 2)")));
        }
        let shape_ok = cubic.len() == n
            && cubic.iter().all(|m| m.len() == n && m.iter().all(|r| r.len() == n));
        if !shape_ok {
            return Err(FlagError::Model("cubic form must be an n×n×n array".into()));
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let x = &cubic[i][j][k];
                    if *x != cubic[j][i][k] || *x != cubic[i][k][j] || *x != cubic[k][j][i] {
                        return Err(FlagError::Model("cubic form is not symmetric".into()));
                    }
                }
            }
        }
        if nef.len() != 2 || effective.len() != 2 {
            return Err(FlagError::Model("nef and effective cones need two generators each".into()));
        }
        for c in nef.iter().chain(effective.iter().map(|e| &e.class)).chain([&anticanonical]) {
            if c.rank() != n {
                return Err(FlagError::Model(format!("class {c} has the wrong rank")));
            }
        }
        let mut m = ThreefoldModel {
            name: name.into(),
            basis,
            cubic,
            anticanonical,
            nef,
            effective,
            volume: Rational::zero(),
        };
        // Orient both cones counterclockwise and check nef ⊆ effective.
        if cross2(&m.nef[0], &m.nef[1]).is_negative() {
            m.nef.swap(0, 1);
        }
        if cross2(&m.effective[0].class, &m.effective[1].class).is_negative() {
            m.effective.swap(0, 1);
        }
        for c in &m.nef {
            if !m.is_effective(c) {
                return Err(FlagError::Model(format!("nef generator {c} is not effective")));
            }
        }
        m.volume = m.cube(&m.anticanonical);
        Ok(m)
    }

    /// Loads a model file and runs its self-test.
    pub fn from_path(path: &Path) -> Result<Self, FlagError> {
        let src = std::fs::read_to_string(path).map_err(|e| FlagError::Io {
            path: path.display().to_string(),
            reason: e.to_string(),
        })?;
        Self::from_toml(&src)
    }

    /// Parses a model from TOML text, checking the declared volume and the
    /// optional self-test.
    pub fn from_toml(src: &str) -> Result<Self, FlagError> {
        let f: ThreefoldFile = toml::from_str(src).map_err(|e| FlagError::Model(e.to_string()))?;
        let parse = |s: &str| DivisorClass::parse(s, &f.basis).map_err(FlagError::from);
        let effective = f
            .effective
            .iter()
            .map(|e| Ok(NamedDivisor { name: e.name.clone(), class: parse(&e.class)? }))
            .collect::<Result<Vec<_>, FlagError>>()?;
        let nef = f.nef.iter().map(|s| parse(s)).collect::<Result<Vec<_>, _>>()?;
        let m = ThreefoldModel::new(
            f.name.clone(),
            f.basis.clone(),
            f.cubic.clone(),
            parse(&f.anticanonical)?,
            nef,
            effective,
        )?;
        if m.volume != f.volume {
            return Err(FlagError::Model(format!(
                "self-test failed: (-K)^3 = {} but the file declares {}",
                m.volume, f.volume
            )));
        }
        if let Some(t) = &f.selftest {
            let path = threefold_path(&m, &m.anticanonical, &parse(&t.direction)?)?;
            if path.tau != t.tau {
                return Err(FlagError::Model(format!(
                    "self-test failed: threshold {} but expected {}",
                    path.tau, t.tau
                )));
            }
            for c in &t.cubes {
                let want = parse_poly(&c.polynomial, "u")?;
                let got = path
                    .pieces
                    .iter()
                    .find(|p| p.lo == c.lo && p.hi == c.hi)
                    .map(|p| m.cube_poly(p))
                    .ok_or_else(|| {
                        FlagError::Model(format!("self-test failed: no piece [{}, {}]", c.lo, c.hi))
                    })?;
                if got != want {
                    return Err(FlagError::Model(format!(
                        "self-test failed: P(u)^3 on [{}, {}] is {:?}, expected {}",
                        c.lo, c.hi, got, c.polynomial
                    )));
                }
            }
        }
        Ok(m)
    }

    /// The trilinear form `a·b·c`.
    pub fn triple(&self, a: &DivisorClass, b: &DivisorClass, c: &DivisorClass) -> Rational {
        let n = self.basis.len();
        let mut s = Rational::zero();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    s = &s + &(&(&(&self.cubic[i][j][k] * &a.0[i]) * &b.0[j]) * &c.0[k]);
                }
            }
        }
        s
    }

    /// `D³`.
    pub fn cube(&self, d: &DivisorClass) -> Rational {
        self.triple(d, d, d)
    }

    /// Membership in the effective cone.
    pub fn is_effective(&self, d: &DivisorClass) -> bool {
        let (x, y) = coords(d, &self.effective[0].class, &self.effective[1].class);
        !x.is_negative() && !y.is_negative()
    }

    /// Membership in the nef cone.
    pub fn is_nef(&self, d: &DivisorClass) -> bool {
        let (x, y) = coords(d, &self.nef[0], &self.nef[1]);
        !x.is_negative() && !y.is_negative()
    }

    /// `P(u)³` on a path piece, as a cubic polynomial in `u`.
    pub fn cube_poly(&self, piece: &PathPiece) -> QPoly {
        self.triple_poly(piece, piece, &piece.p_const, &piece.p_slope)
    }

    /// `P(u)·P(u)·(c + u·s)` on a path piece.
    pub fn square_times(&self, piece: &PathPiece, c: &DivisorClass, s: &DivisorClass) -> QPoly {
        self.triple_poly(piece, piece, c, s)
    }

    fn triple_poly(&self, a: &PathPiece, b: &PathPiece, c: &DivisorClass, s: &DivisorClass) -> QPoly {
        let n = self.basis.len();
        let lin = |x: &DivisorClass, y: &DivisorClass, i: usize| Poly::linear(x.0[i].clone(), y.0[i].clone());
        let mut acc = QPoly::zero();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if self.cubic[i][j][k].is_zero() {
                        continue;
                    }
                    let t = lin(&a.p_const, &a.p_slope, i)
                        * lin(&b.p_const, &b.p_slope, j)
                        * lin(c, s, k);
                    acc = acc + t.scale(&self.cubic[i][j][k]);
                }
            }
        }
        acc
    }
}

/// One-parameter Zariski data of `base + u·direction` on `[0, τ]`.
pub fn threefold_path(
    model: &ThreefoldModel,
    base: &DivisorClass,
    direction: &DivisorClass,
) -> Result<DivisorPath1D, FlagError> {
    if !model.is_effective(base) {
        return Err(FlagError::NotEffective(base.render(&model.basis)));
    }
    let (e0, e1) = (&model.effective[0].class, &model.effective[1].class);
    // Coordinates in the effective basis are affine in u.
    let (x0, y0) = coords(base, e0, e1);
    let (xs, ys) = coords(direction, e0, e1);
    let mut tau: Option<Rational> = None;
    for (c, s) in [(&x0, &xs), (&y0, &ys)] {
        if s.is_negative() {
            let r = -(c / s);
            tau = Some(match tau {
                Some(t) => t.min(r),
                None => r,
            });
        }
    }
    let tau = tau.ok_or(FlagError::Surface(surfgeom::SurfError::UnboundedThreshold))?;
    let at = |u: &Rational| base + &direction.scale(u);
    // Breakpoints: crossings of the nef boundary rays.
    let mut cuts = vec![Rational::zero(), tau.clone()];
    for n in &model.nef {
        let c = cross2(base, n);
        let s = cross2(direction, n);
        if !s.is_zero() {
            let r = -(&c / &s);
            if r.is_positive() && r < tau {
                cuts.push(r);
            }
        }
    }
    cuts.sort();
    cuts.dedup();
    let mut pieces: Vec<PathPiece> = Vec::new();
    let intervals: Vec<(Rational, Rational)> = if cuts.len() == 1 {
        vec![(cuts[0].clone(), cuts[0].clone())]
    } else {
        cuts.windows(2).map(|w| (w[0].clone(), w[1].clone())).collect()
    };
    for (lo, hi) in intervals {
        let mid = lo.midpoint(&hi);
        let d = at(&mid);
        let piece = if model.is_nef(&d) {
            PathPiece {
                lo: lo.clone(),
                hi: hi.clone(),
                p_const: base.clone(),
                p_slope: direction.clone(),
                negative: vec![],
            }
        } else {
            let mut found = None;
            for n in &model.nef {
                for e in &model.effective {
                    if model.is_nef(&e.class) || cross2(n, &e.class).is_zero() {
                        continue;
                    }
                    let (a, b) = coords(&d, n, &e.class);
                    if !a.is_negative() && !b.is_negative() {
                        let (a0, b0) = coords(base, n, &e.class);
                        let (a1, b1) = coords(direction, n, &e.class);
                        found = Some(PathPiece {
                            lo: lo.clone(),
                            hi: hi.clone(),
                            p_const: n.scale(&a0),
                            p_slope: n.scale(&a1),
                            negative: vec![(e.name.clone(), b0, b1)],
                        });
                    }
                }
            }
            found.ok_or_else(|| {
                FlagError::Model(format!("no decomposition found at u = {mid}"))
            })?
        };
        match pieces.last_mut() {
            Some(last)
                if last.p_const == piece.p_const
                    && last.p_slope == piece.p_slope
                    && last.negative == piece.negative =>
            {
                last.hi = piece.hi
            }
            _ => pieces.push(piece),
        }
    }
    Ok(DivisorPath1D {
        base: base.clone(),
        direction: direction.clone(),
        tau,
        pieces,
    })
}

/// `S_X(S) = (1/V)·∫₀^τ P(u)³ du`.
pub fn s_threefold(model: &ThreefoldModel, path: &DivisorPath1D) -> Rational {
    let total: Rational = path
        .pieces
        .iter()
        .map(|p| model.cube_poly(p).integrate(&p.lo, &p.hi))
        .sum();
    total / model.volume.clone()
}
