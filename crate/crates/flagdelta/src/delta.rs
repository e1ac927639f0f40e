//! Local δ-invariant lower bounds assembled from flag integrals, and the
//! bound through quoted δ-invariants of the surface.

use std::fmt::Write as _;

use exactkernel::{Poly, QPoly, Rational};
use num_traits::{One, Zero};
use serde::Serialize;

use crate::bipoly::{Affine2, BiPoly};
use crate::chamber::{chambered_zariski, ThresholdPiece};
use crate::config::{FlagCase, QuotientCase};
use crate::error::FlagError;
use crate::flag::{class_square, PointData};
use crate::svalues::{s_w_curve, s_w_point, CurveValue, PointValue};
use crate::threefold::s_threefold;

/// `min{A_X(S)/S_X(S), A_S(F)/S(W; F), min_O (1 − ord_O Δ)/S(W; F; O)}`
/// with `A_X(S) = 1`.  Terms with a vanishing `S`-value impose nothing.
///
/// The bound is monotone: it does not increase when any `S`-value grows.
pub fn delta_bound(s_x: &Rational, a_f: &Rational, s_f: &Rational, points: &[(Rational, Rational)]) -> Option<Rational> {
    let mut terms = Vec::new();
    if s_x.is_positive() {
        terms.push(Rational::one() / s_x.clone());
    }
    if s_f.is_positive() {
        terms.push(a_f / s_f);
    }
    for (ord, s) in points {
        if s.is_positive() {
            terms.push(&(&Rational::one() - ord) / s);
        }
    }
    terms.into_iter().min()
}

/// Bound at one point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointReport {
    /// Point name.
    pub point: String,
    /// Description of the point.
    pub description: String,
    /// The flag integrals at the point.
    pub value: PointValue,
    /// Bound from this flag.
    pub flag_bound: Rational,
    /// Bound from the blow-up, when the point is refined.
    pub refined_bound: Option<Rational>,
    /// The better of the two.
    pub bound: Rational,
    /// Externally quoted total, when it differs from the computed one.
    pub reference_total: Option<Rational>,
}

/// The blow-up part of a report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExceptionalReport {
    /// Exceptional curve.
    pub curve: String,
    /// Weights of the blow-up.
    pub weights: (u32, u32),
    /// `A_S(G)`.
    pub log_discrepancy: Rational,
    /// `S(W; G)`.
    pub s_w: CurveValue,
    /// Points on `G`.
    pub points: Vec<PointReport>,
    /// Resulting bound.
    pub bound: Rational,
}

/// Certificate of a flag case.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeltaReport {
    /// Case name.
    pub case: String,
    /// Description.
    pub description: String,
    /// `S_X(S)`.
    pub s_x: Rational,
    /// `β(S) = 1 − S_X(S)`.
    pub beta: Rational,
    /// `t(u)`.
    pub threshold: Vec<ThresholdPiece>,
    /// Number of certified chambers.
    pub chambers: usize,
    /// Flag curve.
    pub curve: String,
    /// `S(W; C)`.
    pub s_w: CurveValue,
    /// Points of the flag curve.
    pub points: Vec<PointReport>,
    /// Blow-up refinement.
    pub exceptional: Option<ExceptionalReport>,
    /// Overall lower bound for `δ_P(X)` over the listed points.
    pub bound: Rational,
    /// Whether the bound exceeds one.
    pub conclusive: bool,
    /// Remarks, including disagreements with quoted values.
    pub notes: Vec<String>,
}

fn point_report(
    p: &PointData,
    value: PointValue,
    s_x: &Rational,
    a: &Rational,
    s_f: &Rational,
    notes: &mut Vec<String>,
    on: &str,
) -> PointReport {
    let flag_bound = delta_bound(s_x, a, s_f, &[(p.different_order(), value.total.clone())]).expect("S_X(S) > 0");
    if let Some(r) = &p.reference_total {
        if *r != value.total {
            notes.push(format!(
                "point {} on {on}: computed S = {}, quoted value {r} disagrees",
                p.name, value.total
            ));
        }
    }
    PointReport {
        point: p.name.clone(),
        description: p.description.clone(),
        reference_total: p.reference_total.clone(),
        bound: flag_bound.clone(),
        flag_bound,
        refined_bound: None,
        value,
    }
}

/// Runs a flag case.
pub fn run_flag_case(case: &FlagCase, parallel: bool) -> Result<DeltaReport, FlagError> {
    let s_x = s_threefold(&case.model, &case.path);
    let cz = chambered_zariski(&case.flag, parallel)?;
    let s_w = s_w_curve(&case.flag, &cz);
    let mut notes = Vec::new();
    let one = Rational::one();
    let mut points = Vec::new();
    for p in &case.points {
        let v = s_w_point(&case.flag, &cz, &p.data)?;
        points.push(point_report(&p.data, v, &s_x, &one, &s_w.total, &mut notes, &case.flag.curve));
    }
    let exceptional = match &case.blowup {
        Some(b) => {
            let bz = chambered_zariski(&b.flag, parallel)?;
            let sg = s_w_curve(&b.flag, &bz);
            let a = b.flag.log_discrepancy();
            let mut reps = Vec::new();
            for p in &b.points {
                let v = s_w_point(&b.flag, &bz, p)?;
                reps.push(point_report(p, v, &s_x, &a, &sg.total, &mut notes, &b.flag.curve));
            }
            let terms: Vec<(Rational, Rational)> = b
                .points
                .iter()
                .zip(&reps)
                .map(|(p, r)| (p.different_order(), r.value.total.clone()))
                .collect();
            let bound = delta_bound(&s_x, &a, &sg.total, &terms).expect("S_X(S) > 0");
            let bl = b.flag.blowup.as_ref().expect("blown-up flag");
            Some(ExceptionalReport {
                curve: b.flag.curve.clone(),
                weights: bl.weights,
                log_discrepancy: a,
                s_w: sg,
                points: reps,
                bound,
            })
        }
        None => None,
    };
    for (r, p) in points.iter_mut().zip(&case.points) {
        if p.refine {
            let e = exceptional.as_ref().expect("checked when loading");
            r.refined_bound = Some(e.bound.clone());
            r.bound = r.flag_bound.clone().max(e.bound.clone());
        }
    }
    let bound = points
        .iter()
        .map(|p| p.bound.clone())
        .min()
        .unwrap_or_else(|| delta_bound(&s_x, &one, &s_w.total, &[]).expect("S_X(S) > 0"));
    let conclusive = bound > one;
    if !conclusive {
        notes.push(format!("the bound {bound} does not exceed 1; this flag is inconclusive"));
    }
    Ok(DeltaReport {
        case: case.name.clone(),
        description: case.description.clone(),
        beta: &one - &s_x,
        s_x,
        threshold: cz.threshold.clone(),
        chambers: cz.chambers.len(),
        curve: case.flag.curve.clone(),
        s_w,
        points,
        exceptional,
        bound,
        conclusive,
        notes,
    })
}

fn affine(c: &Rational, s: &Rational) -> String {
    Affine2::new(c.clone(), s.clone(), Rational::zero()).to_string()
}

/// Renders a polynomial in `u`.
pub fn render_u(p: &QPoly) -> String {
    BiPoly::from_u_poly(p).to_string()
}

impl DeltaReport {
    /// Human-readable table.
    pub fn table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "case {}: {}", self.case, self.description);
        let _ = writeln!(out, "S_X(S) = {}   beta(S) = {}", self.s_x, self.beta);
        for t in &self.threshold {
            let _ = writeln!(
                out,
                "t(u) = {} on [{}, {}]",
                affine(&t.threshold.constant, &t.threshold.slope),
                t.threshold.lo,
                t.threshold.hi
            );
        }
        let _ = writeln!(out, "chambers: {}", self.chambers);
        let _ = writeln!(
            out,
            "S(W;{}) = {}  (= {} + {})",
            self.curve, self.s_w.total, self.s_w.first_term, self.s_w.second_term
        );
        let row = |out: &mut String, p: &PointReport| {
            let _ = writeln!(
                out,
                "  {:<12} base {:>8}  F_P {:>8}  S {:>8}  bound {:>8}{}",
                p.point,
                p.value.base.to_string(),
                p.value.f_p.to_string(),
                p.value.total.to_string(),
                p.bound.to_string(),
                p.refined_bound.as_ref().map(|r| format!("  (refined {r})")).unwrap_or_default()
            );
        };
        if !self.points.is_empty() {
            let _ = writeln!(out, "points of {}:", self.curve);
            for p in &self.points {
                row(&mut out, p);
            }
        }
        if let Some(e) = &self.exceptional {
            let _ = writeln!(
                out,
                "blow-up {} (weights {:?}, A = {}): S(W;{}) = {}  (= {} + {}), bound {}",
                e.curve, e.weights, e.log_discrepancy, e.curve, e.s_w.total, e.s_w.first_term, e.s_w.second_term, e.bound
            );
            for p in &e.points {
                row(&mut out, p);
            }
        }
        let _ = writeln!(out, "bound: delta_P(X) >= {}{}", self.bound, if self.conclusive { "" } else { " (inconclusive)" });
        for n in &self.notes {
            let _ = writeln!(out, "note: {n}");
        }
        out
    }
}

/// Fibre type of a quotient row.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FiberType {
    /// Smooth fibre.
    Smooth,
    /// Reduced reducible fibre.
    Reducible,
}

impl FiberType {
    /// Parses `smooth` or `reducible`.
    pub fn parse(s: &str) -> Result<Self, FlagError> {
        match s {
            "smooth" => Ok(FiberType::Smooth),
            "reducible" => Ok(FiberType::Reducible),
            _ => Err(FlagError::Parse(format!("fibre type must be smooth or reducible, got {s:?}"))),
        }
    }

    fn name(self) -> &'static str {
        match self {
            FiberType::Smooth => "smooth",
            FiberType::Reducible => "reducible",
        }
    }
}

/// One term of the quotient bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuotientTerm {
    /// Interval in `u`.
    pub lo: Rational,
    /// Interval in `u`.
    pub hi: Rational,
    /// What the term bounds.
    pub kind: String,
    /// The integrand (already divided by `A_S(F)`), a polynomial in `u`.
    pub integrand: String,
    /// `3/V ∫ integrand du`.
    pub value: Rational,
}

/// Result of the quotient bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuotientReport {
    /// Fibre type.
    pub fiber_type: FiberType,
    /// Whether the point lies on `E`.
    pub on_e: bool,
    /// The terms.
    pub terms: Vec<QuotientTerm>,
    /// `S(W; F)/A_S(F) ≤ Σ terms`.
    pub total: Rational,
    /// `γ = 1/total`.
    pub gamma: Rational,
}

/// Solves `d = λ·k + μ·c` exactly.
fn span_coords(lat: &surfgeom::SurfaceLattice, d: &surfgeom::DivisorClass, k: &surfgeom::DivisorClass, c: &surfgeom::DivisorClass) -> Result<(Rational, Rational), FlagError> {
    let kk = lat.intersect(k, k)?;
    let kc = lat.intersect(k, c)?;
    let cc = lat.intersect(c, c)?;
    let det = &(&kk * &cc) - &(&kc * &kc);
    if det.is_zero() {
        return Err(FlagError::Model("anticanonical and fibre classes are dependent".into()));
    }
    let dk = lat.intersect(d, k)?;
    let dc = lat.intersect(d, c)?;
    let l = &(&(&dk * &cc) - &(&dc * &kc)) / &det;
    let m = &(&(&kk * &dc) - &(&kc * &dk)) / &det;
    if &k.scale(&l) + &c.scale(&m) != *d {
        return Err(FlagError::Model(format!("{d} is not in the span of -K_S and the fibre")));
    }
    Ok((l, m))
}

/// The quotient bound `γ` for a fibre type, with or without the
/// contribution of `N(u)|_S` at a point of `E`.
///
/// On each piece `P(u)|_S = λ(−K_S + tC)` and
/// `∫ vol(P(u)|_S − vF) dv ≤ λ³ (−K_S + tC)² A_S(F)/δ_P(S, −K_S + tC)`;
/// the quoted δ-bound is used where `t ≠ 0` and `δ(S)` where `t = 0`.
pub fn prop52_quotient_bound(case: &QuotientCase, fiber: FiberType, on_e: bool) -> Result<QuotientReport, FlagError> {
    let lat = &case.lattice;
    let three = Rational::from(3) / case.model.volume.clone();
    let mut terms = Vec::new();
    for p in &case.pieces {
        if on_e && !p.negative.is_empty() {
            // ord_F of N(u)|_S is at most A_S(F) at points of E.
            let coef = p
                .negative
                .iter()
                .fold(QPoly::zero(), |acc, c| acc + Poly::linear(c.constant.clone(), c.slope.clone()));
            let f = class_square(lat, &p.d_const, &p.d_slope) * coef;
            terms.push(QuotientTerm {
                lo: p.lo.clone(),
                hi: p.hi.clone(),
                kind: "N(u)|_S along E".into(),
                value: &three * &f.integrate(&p.lo, &p.hi),
                integrand: render_u(&f),
            });
        }
        let (l0, m0) = span_coords(lat, &p.d_const, &case.anticanonical, &case.fibre)?;
        let (l1, m1) = span_coords(lat, &p.d_slope, &case.anticanonical, &case.fibre)?;
        let lambda = Poly::linear(l0.clone(), l1.clone());
        let mu = Poly::linear(m0, m1);
        let (integrand, kind) = if mu.is_zero() {
            let k2 = lat.intersect(&case.anticanonical, &case.anticanonical)?;
            let f = lambda.pow(3).scale(&(&k2 / &case.delta_surface));
            (f, "delta(S)".to_string())
        } else {
            if !l1.is_zero() || l0.is_zero() {
                return Err(FlagError::Model(format!(
                    "t(u) is not affine on [{}, {}]",
                    p.lo, p.hi
                )));
            }
            let t = mu.scale(&(Rational::one() / l0.clone()));
            let (ta, tb) = (t.eval(&p.lo), t.eval(&p.hi));
            let (tmin, tmax) = if ta <= tb { (ta, tb) } else { (tb, ta) };
            let b = case
                .bounds
                .iter()
                .find(|b| b.fiber_type == fiber.name() && b.t_range.0 <= tmin && tmax <= b.t_range.1)
                .ok_or_else(|| {
                    FlagError::Model(format!("no {} bound covers t in [{tmin}, {tmax}]", fiber.name()))
                })?;
            let inv = b
                .formula
                .recip()
                .ok_or_else(|| FlagError::NonPolynomial(format!("{} vanishes identically", b.source)))?;
            // λ³ (−K_S + tC)² = λ · (P(u)|_S)².
            let num = class_square(lat, &p.d_const, &p.d_slope) * lambda.clone();
            let f = inv.compose(&t).mul_poly(&num);
            let f = f.to_poly().ok_or_else(|| {
                FlagError::NonPolynomial(format!(
                    "({}) / ({}) with t = {} on [{}, {}]",
                    render_u(&num), b.source, render_u(&t), p.lo, p.hi
                ))
            })?;
            (f, format!("{} fibre: {}", fiber.name(), b.source))
        };
        terms.push(QuotientTerm {
            lo: p.lo.clone(),
            hi: p.hi.clone(),
            kind,
            value: &three * &integrand.integrate(&p.lo, &p.hi),
            integrand: render_u(&integrand),
        });
    }
    let total: Rational = terms.iter().map(|t| t.value.clone()).sum();
    if !total.is_positive() {
        return Err(FlagError::Model("quotient bound total is not positive".into()));
    }
    Ok(QuotientReport { fiber_type: fiber, on_e, terms, gamma: Rational::one() / total.clone(), total })
}
