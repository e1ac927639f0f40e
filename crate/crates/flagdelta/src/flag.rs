//! A flag `S ⊃ C` inside the threefold: the surface lattice of `S`, the
//! restriction `P(u)|_S`, `N(u)|_S` of the one-parameter threefold data, the
//! flag curve (or exceptional curve of a blow-up of `S`) and point data.

use std::collections::BTreeMap;

use exactkernel::{Poly, QPoly, Rational};
use num_traits::{One, Zero};
use serde::Serialize;
use surfgeom::{blow_up, DivisorClass, SurfaceLattice};

use crate::error::FlagError;
use crate::threefold::{DivisorPath1D, ThreefoldModel};

/// A curve component of `N(u)|_S` with coefficient `constant + u·slope`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Component {
    /// Curve name on the surface.
    pub curve: String,
    /// Constant part of the coefficient.
    pub constant: Rational,
    /// Slope of the coefficient in `u`.
    pub slope: Rational,
}

impl Component {
    /// Coefficient at `u`.
    pub fn at(&self, u: &Rational) -> Rational {
        &self.constant + &(&self.slope * u)
    }
}

/// One `u`-interval on which `P(u)|_S` and `N(u)|_S` are affine.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlagPiece {
    /// Left end.
    pub lo: Rational,
    /// Right end.
    pub hi: Rational,
    /// `P(u)|_S = d_const + u·d_slope`.
    pub d_const: DivisorClass,
    /// See `d_const`.
    pub d_slope: DivisorClass,
    /// Components of `N(u)|_S`.
    pub negative: Vec<Component>,
}

impl FlagPiece {
    /// `P(u)|_S` at `u`.
    pub fn restricted_at(&self, u: &Rational) -> DivisorClass {
        &self.d_const + &self.d_slope.scale(u)
    }
}

/// How the threefold classes restrict to the surface.
#[derive(Clone, Debug, Default)]
pub struct Restriction {
    /// Image of each threefold basis class in the surface lattice.
    pub classes: Vec<DivisorClass>,
    /// For each named effective generator of the threefold that may occur
    /// in `N(u)`, its restriction as a sum of curves with multiplicities.
    pub components: BTreeMap<String, Vec<(String, Rational)>>,
}

/// A point of the flag curve, described by the curves through it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointData {
    /// Identifier.
    pub name: String,
    /// Human-readable location.
    pub description: String,
    /// Curves `D ≠ C` through the point with the local intersection number
    /// `(D·C)_P`.
    pub through: Vec<(String, Rational)>,
    /// Orbifold order of the surface at the point (1 at smooth points).
    pub orbifold_order: u32,
    /// Externally quoted value of the total, if any, to be compared with the
    /// computed one.
    pub reference_total: Option<Rational>,
}

impl PointData {
    /// A point on no other curve.
    pub fn general(name: &str) -> Self {
        PointData {
            name: name.into(),
            description: "general point".into(),
            through: vec![],
            orbifold_order: 1,
            reference_total: None,
        }
    }

    /// Order of the different at the point, `(n − 1)/n`.
    pub fn different_order(&self) -> Rational {
        let n = Rational::from(self.orbifold_order as i64);
        &(&n - &Rational::one()) / &n
    }
}

/// The purely log terminal blow-up of a surface point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PltBlowup {
    /// Curves through the centre with their (weighted) multiplicities.
    pub center: Vec<(String, Rational)>,
    /// Weights `(w₁, w₂)`; `(1, 1)` is the ordinary blow-up.
    pub weights: (u32, u32),
    /// `G² = −1/(w₁w₂)`.
    pub g_square: Rational,
    /// Log discrepancy `A_S(G) = w₁ + w₂`.
    pub log_discrepancy: Rational,
    /// Orbifold orders of the singular points of the blow-up on `G`.
    pub orbifold_points: Vec<u32>,
}

/// All data of a flag computation.
#[derive(Clone, Debug)]
pub struct FlagSurface {
    /// The surface (or its blow-up).
    pub lattice: SurfaceLattice,
    /// Name of the flag curve `C` (or of the exceptional curve `G`).
    pub curve: String,
    /// Class of the flag curve.
    pub direction: DivisorClass,
    /// Restricted one-parameter data.
    pub pieces: Vec<FlagPiece>,
    /// `(−K_X)³`.
    pub volume: Rational,
    /// `ord_F` of each curve of the original surface, where `F` is the flag
    /// divisor: `{C: 1}` for a curve, the multiplicities at the centre for a
    /// blow-up.
    pub orders: BTreeMap<String, Rational>,
    /// Blow-up data when `F` is exceptional.
    pub blowup: Option<PltBlowup>,
}

fn restrict_class(r: &Restriction, c: &DivisorClass, rank: usize) -> DivisorClass {
    c.0.iter()
        .zip(&r.classes)
        .fold(DivisorClass::zero(rank), |acc, (a, img)| &acc + &img.scale(a))
}

/// `(c + u·s)²` in the lattice, as a polynomial in `u`.
pub fn class_square(lat: &SurfaceLattice, c: &DivisorClass, s: &DivisorClass) -> QPoly {
    let n = lat.rank();
    let coord = |i: usize| Poly::linear(c.0[i].clone(), s.0[i].clone());
    let mut acc = QPoly::zero();
    for i in 0..n {
        for j in 0..n {
            let g = lat.gram.get(i, j);
            if !g.is_zero() {
                acc = acc + (coord(i) * coord(j)).scale(g);
            }
        }
    }
    acc
}

/// Restricts the pieces of a threefold path to a surface `S`.
///
/// The restriction data is cross-checked against the threefold: the
/// restricted classes must reproduce `P(u)²·S` and `P(u)·N(u)·S`.
pub fn restrict_pieces(
    model: &ThreefoldModel,
    path: &DivisorPath1D,
    lattice: &SurfaceLattice,
    restriction: &Restriction,
    surface: &DivisorClass,
) -> Result<Vec<FlagPiece>, FlagError> {
    if restriction.classes.len() != model.basis.len() {
        return Err(FlagError::Model(format!(
            "restriction lists {} classes for a basis of {}",
            restriction.classes.len(),
            model.basis.len()
        )));
    }
    let rank = lattice.rank();
    for c in &restriction.classes {
        if c.rank() != rank {
            return Err(FlagError::Model(format!("restricted class {c} has the wrong rank")));
        }
    }
    // Intersection numbers on S must agree with those on X computed with S.
    for (i, a) in restriction.classes.iter().enumerate() {
        for (j, b) in restriction.classes.iter().enumerate() {
            let mut ei = DivisorClass::zero(model.basis.len());
            ei.0[i] = Rational::one();
            let mut ej = DivisorClass::zero(model.basis.len());
            ej.0[j] = Rational::one();
            if lattice.intersect(a, b)? != model.triple(&ei, &ej, surface) {
                return Err(FlagError::Model(format!(
                    "restricted {}·{} does not match the threefold",
                    model.basis[i], model.basis[j]
                )));
            }
        }
    }
    // Each decomposed generator must restrict to the sum of its curves.
    for (gen, curves) in &restriction.components {
        let g = model
            .effective
            .iter()
            .find(|e| e.name == *gen)
            .ok_or_else(|| FlagError::Model(format!("unknown threefold divisor {gen:?}")))?;
        let mut sum = DivisorClass::zero(rank);
        for (name, m) in curves {
            let cl = lattice
                .class_of(name)
                .ok_or_else(|| FlagError::Model(format!("unknown curve {name:?}")))?;
            sum = &sum + &cl.scale(m);
        }
        if sum != restrict_class(restriction, &g.class, rank) {
            return Err(FlagError::Model(format!(
                "components of {gen} do not sum to its restriction"
            )));
        }
    }
    let mut pieces = Vec::new();
    for p in &path.pieces {
        let mut negative = Vec::new();
        for (gen, c, s) in &p.negative {
            let parts = restriction.components.get(gen).ok_or_else(|| {
                FlagError::Model(format!("no curve decomposition given for {gen}"))
            })?;
            for (name, m) in parts {
                negative.push(Component { curve: name.clone(), constant: c * m, slope: s * m });
            }
        }
        let piece = FlagPiece {
            lo: p.lo.clone(),
            hi: p.hi.clone(),
            d_const: restrict_class(restriction, &p.p_const, rank),
            d_slope: restrict_class(restriction, &p.p_slope, rank),
            negative,
        };
        let zero = DivisorClass::zero(model.basis.len());
        if class_square(lattice, &piece.d_const, &piece.d_slope) != model.square_times(p, surface, &zero) {
            return Err(FlagError::Model(format!(
                "restricted P(u)^2 on [{}, {}] does not match P(u)^2 S",
                p.lo, p.hi
            )));
        }
        pieces.push(piece);
    }
    Ok(pieces)
}

impl FlagSurface {
    /// Restricts threefold path data to the surface `S` (of class `surface`
    /// on the threefold) and fixes the flag curve.
    pub fn restrict(
        model: &ThreefoldModel,
        path: &DivisorPath1D,
        lattice: SurfaceLattice,
        restriction: &Restriction,
        surface: &DivisorClass,
        curve: &str,
    ) -> Result<Self, FlagError> {
        let pieces = restrict_pieces(model, path, &lattice, restriction, surface)?;
        let direction = lattice
            .class_of(curve)
            .ok_or_else(|| FlagError::Model(format!("unknown flag curve {curve:?}")))?;
        let mut orders = BTreeMap::new();
        orders.insert(curve.to_string(), Rational::one());
        Ok(FlagSurface {
            lattice,
            curve: curve.to_string(),
            direction,
            pieces,
            volume: model.volume.clone(),
            orders,
            blowup: None,
        })
    }

    /// The flag obtained by a (weighted) blow-up of a point of the surface,
    /// with the exceptional curve as new flag curve.
    pub fn blow_up(
        &self,
        center: &[(String, Rational)],
        weights: (u32, u32),
        g_name: &str,
    ) -> Result<FlagSurface, FlagError> {
        let (w1, w2) = weights;
        if w1 == 0 || w2 == 0 {
            return Err(FlagError::Multiplicity("weights must be positive".into()));
        }
        let w = Rational::from((w1 as i64) * (w2 as i64));
        let g_square = -(Rational::one() / w);
        for (name, m) in center {
            if !m.is_positive() {
                return Err(FlagError::Multiplicity(format!("multiplicity of {name} is {m}")));
            }
            if self.lattice.class_of(name).is_none() {
                return Err(FlagError::Multiplicity(format!("unknown curve {name:?}")));
            }
        }
        let b = blow_up(&self.lattice, center, g_name, g_square.clone())?;
        // Distinct curves must keep meeting nonnegatively.
        for (i, (a, _)) in center.iter().enumerate() {
            for (c, _) in &center[i + 1..] {
                let ca = b.lattice.class_of(a).expect("strict transform exists");
                let cc = b.lattice.class_of(c).expect("strict transform exists");
                let x = b.lattice.intersect(&ca, &cc)?;
                if x.is_negative() {
                    return Err(FlagError::Multiplicity(format!(
                        "strict transforms of {a} and {c} would meet negatively ({x})"
                    )));
                }
            }
        }
        let direction = b.lattice.tracked[b.exceptional].class.clone();
        let pieces = self
            .pieces
            .iter()
            .map(|p| FlagPiece {
                lo: p.lo.clone(),
                hi: p.hi.clone(),
                d_const: p.d_const.extended(Rational::zero()),
                d_slope: p.d_slope.extended(Rational::zero()),
                negative: p.negative.clone(),
            })
            .collect();
        let orders = center.iter().cloned().collect();
        let orbifold_points = [w1, w2].into_iter().filter(|&n| n > 1).collect();
        Ok(FlagSurface {
            lattice: b.lattice,
            curve: g_name.to_string(),
            direction,
            pieces,
            volume: self.volume.clone(),
            orders,
            blowup: Some(PltBlowup {
                center: center.to_vec(),
                weights,
                g_square,
                log_discrepancy: Rational::from((w1 + w2) as i64),
                orbifold_points,
            }),
        })
    }

    /// `A_S(F)`: one for a curve, `w₁ + w₂` for an exceptional curve.
    pub fn log_discrepancy(&self) -> Rational {
        self.blowup
            .as_ref()
            .map(|b| b.log_discrepancy.clone())
            .unwrap_or_else(Rational::one)
    }

    /// `D(u, v) = P(u)|_S − v·C` on a piece.
    pub fn class_at(&self, piece: usize, u: &Rational, v: &Rational) -> DivisorClass {
        &self.pieces[piece].restricted_at(u) - &self.direction.scale(v)
    }

    /// `(P(u)|_S)²` on a piece, as a polynomial in `u`.
    pub fn restricted_square(&self, piece: usize) -> QPoly {
        let p = &self.pieces[piece];
        class_square(&self.lattice, &p.d_const, &p.d_slope)
    }

    /// `ord_F(N(u)|_S)` on a piece, as an affine polynomial in `u`.
    pub fn order_along_flag(&self, piece: usize) -> QPoly {
        self.pieces[piece]
            .negative
            .iter()
            .filter_map(|c| {
                self.orders
                    .get(&c.curve)
                    .map(|m| Poly::linear(&c.constant * m, &c.slope * m))
            })
            .fold(QPoly::zero(), |a, b| a + b)
    }

    /// Coefficient of a curve in `N′(u)`, the part of `N(u)|_S` (or its
    /// strict transform) not supported on the flag curve.
    pub fn n_prime_coefficient(&self, piece: usize, curve: &str) -> (Rational, Rational) {
        if curve == self.curve {
            return (Rational::zero(), Rational::zero());
        }
        self.pieces[piece]
            .negative
            .iter()
            .filter(|c| c.curve == curve)
            .fold((Rational::zero(), Rational::zero()), |(a, b), c| {
                (&a + &c.constant, &b + &c.slope)
            })
    }

    /// Checks that a point can lie on the flag curve: every listed curve
    /// must meet `C` with global intersection at least the local one.
    pub fn check_point(&self, p: &PointData) -> Result<(), FlagError> {
        for (name, m) in &p.through {
            let cl = self
                .lattice
                .class_of(name)
                .ok_or_else(|| FlagError::Model(format!("unknown curve {name:?} at point {}", p.name)))?;
            if name == &self.curve {
                return Err(FlagError::Model(format!(
                    "point {} lists the flag curve itself",
                    p.name
                )));
            }
            let global = self.lattice.intersect(&cl, &self.direction)?;
            if !m.is_positive() || *m > global {
                return Err(FlagError::PointNotOnCurve(format!(
                    "{} (({name}·{})_P = {m} but {name}·{} = {global})",
                    p.name, self.curve, self.curve
                )));
            }
        }
        if p.orbifold_order == 0 {
            return Err(FlagError::Model(format!("orbifold order of {} is zero", p.name)));
        }
        Ok(())
    }
}
