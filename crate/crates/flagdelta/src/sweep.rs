//! An independent evaluation of the flag integrals that never forms a
//! polygon: vertical lines `u = const` are decomposed into `v`-intervals of
//! constant support by pointwise Zariski decompositions, each interval is
//! integrated with Milne's open rule (exact for cubics), and the resulting
//! piecewise-cubic function of `u` is integrated the same way after locating
//! its breakpoints as crossings of affine walls.

use exactkernel::Rational;
use num_traits::Zero;
use surfgeom::{AffinePiece, DivisorClass, SurfaceLattice};

use crate::chamber::pseff_threshold_2d;
use crate::error::FlagError;
use crate::flag::{FlagSurface, PointData};

/// Which integrand to sweep.
#[derive(Clone, Copy, Debug)]
pub enum Integrand<'a> {
    /// `P(u, v)²`.
    Volume,
    /// `(P(u, v)·F)²`.
    CurveSquare,
    /// `(P(u, v)·F)·ord_P(N′(u)|_F + N(u, v)|_F)`.
    PointOrder(&'a PointData),
}

/// A `v`-interval at fixed `u` with `N` and `P` affine in `v`.
#[derive(Clone, Debug)]
struct VPiece {
    lo: Rational,
    hi: Rational,
    support: Vec<usize>,
    a0: Vec<Rational>,
    a1: Vec<Rational>,
    p0: DivisorClass,
    p1: DivisorClass,
}

const MAX_DEPTH: usize = 60;

fn sweep_err(msg: String) -> FlagError {
    FlagError::Sweep(msg)
}

fn tests(lat: &SurfaceLattice) -> Vec<DivisorClass> {
    let mut out: Vec<DivisorClass> = lat.tracked.iter().map(|c| c.class.clone()).collect();
    for g in lat.eff_generators.iter().flatten() {
        if !out.contains(g) {
            out.push(g.clone());
        }
    }
    out
}

struct Line<'a> {
    flag: &'a FlagSurface,
    piece: usize,
    u: Rational,
    d: DivisorClass,
    tests: &'a [DivisorClass],
}

impl Line<'_> {
    /// Maximal interval of constant support around `probe`.
    fn piece_at(&self, probe: &Rational) -> Result<VPiece, FlagError> {
        let lat = &self.flag.lattice;
        let c = &self.flag.direction;
        let at = &self.d - &c.scale(probe);
        let z = lat.zariski(&at)?;
        let s = &z.support;
        let k = s.len();
        let mut a1 = vec![Rational::zero(); k];
        if k > 0 {
            let rhs: Vec<Rational> = s.iter().map(|&j| -lat.intersect(c, &lat.tracked[j].class).unwrap()).collect();
            a1 = lat
                .support_gram(s)
                .solve(&rhs)
                .ok_or_else(|| sweep_err(format!("singular support {s:?}")))?;
        }
        let a0: Vec<Rational> = z.negative.iter().zip(&a1).map(|((_, a), d)| a - &(d * probe)).collect();
        let comb = |coef: &[Rational]| {
            s.iter().zip(coef).fold(DivisorClass::zero(lat.rank()), |acc, (&j, a)| {
                &acc + &lat.tracked[j].class.scale(a)
            })
        };
        let p0 = &self.d - &comb(&a0);
        let p1 = &c.scale(&Rational::from(-1)) - &comb(&a1);
        let mut lo: Option<Rational> = None;
        let mut hi: Option<Rational> = None;
        let mut bound = |c0: Rational, c1: Rational| {
            // c0 + v·c1 ≥ 0
            if c1.is_positive() {
                let r = -(c0 / c1);
                lo = Some(lo.take().map_or(r.clone(), |x| x.max(r)));
            } else if c1.is_negative() {
                let r = -(c0 / c1);
                hi = Some(hi.take().map_or(r.clone(), |x| x.min(r)));
            }
        };
        for (x, y) in a0.iter().zip(&a1) {
            bound(x.clone(), y.clone());
        }
        for (i, t) in self.tests.iter().enumerate() {
            if lat.tracked.get(i).is_some() && s.contains(&i) {
                continue;
            }
            bound(lat.intersect(&p0, t)?, lat.intersect(&p1, t)?);
        }
        Ok(VPiece {
            lo: lo.unwrap_or_else(Rational::zero),
            hi: hi.unwrap_or_else(|| probe.clone()),
            support: s.clone(),
            a0,
            a1,
            p0,
            p1,
        })
    }

    fn cover(&self, lo: &Rational, hi: &Rational, out: &mut Vec<VPiece>, depth: usize) -> Result<(), FlagError> {
        if lo >= hi {
            return Ok(());
        }
        if depth > MAX_DEPTH {
            return Err(sweep_err(format!("v-chain at u = {} does not resolve", self.u)));
        }
        let mid = lo.midpoint(hi);
        let mut p = self.piece_at(&mid)?;
        if p.lo > mid || p.hi < mid {
            return Err(sweep_err(format!("validity interval misses its probe at u = {}", self.u)));
        }
        p.lo = p.lo.max(lo.clone());
        p.hi = p.hi.min(hi.clone());
        let (l, r) = (p.lo.clone(), p.hi.clone());
        out.push(p);
        self.cover(lo, &l, out, depth + 1)?;
        self.cover(&r, hi, out, depth + 1)
    }
}

/// The `v`-chain over `u` and the integral of the integrand along it.
struct Chain {
    supports: Vec<Vec<usize>>,
    breaks: Vec<Rational>,
    value: Rational,
}

fn milne(lo: &Rational, hi: &Rational, f: impl Fn(&Rational) -> Rational) -> Rational {
    let h = (hi - lo) / Rational::from(4);
    let x = |k: i64| lo + &(&h * &Rational::from(k));
    let s = &(&(&Rational::from(2) * &f(&x(1))) - &f(&x(2))) + &(&Rational::from(2) * &f(&x(3)));
    &(&(&h * &Rational::from(4)) / &Rational::from(3)) * &s
}

struct Sweep<'a> {
    flag: &'a FlagSurface,
    integrand: Integrand<'a>,
    tests: Vec<DivisorClass>,
}

impl Sweep<'_> {
    fn chain(&self, piece: usize, u: &Rational, t: &Rational) -> Result<Chain, FlagError> {
        let line = Line {
            flag: self.flag,
            piece,
            u: u.clone(),
            d: self.flag.pieces[piece].restricted_at(u),
            tests: &self.tests,
        };
        let mut pieces = Vec::new();
        line.cover(&Rational::zero(), t, &mut pieces, 0)?;
        pieces.sort_by(|a, b| a.lo.cmp(&b.lo));
        let mut merged: Vec<VPiece> = Vec::new();
        for p in pieces {
            match merged.last_mut() {
                Some(last) if last.support == p.support => last.hi = p.hi,
                _ => merged.push(p),
            }
        }
        let value = merged
            .iter()
            .map(|p| milne(&p.lo, &p.hi, |v| self.eval(&line, p, v)))
            .sum();
        Ok(Chain {
            supports: merged.iter().map(|p| p.support.clone()).collect(),
            breaks: merged.iter().skip(1).map(|p| p.lo.clone()).collect(),
            value,
        })
    }

    fn eval(&self, line: &Line<'_>, p: &VPiece, v: &Rational) -> Rational {
        let lat = &self.flag.lattice;
        let pv = &p.p0 + &p.p1.scale(v);
        let pc = || lat.intersect(&pv, &self.flag.direction).unwrap();
        match self.integrand {
            Integrand::Volume => lat.intersect(&pv, &pv).unwrap(),
            Integrand::CurveSquare => {
                let x = pc();
                &x * &x
            }
            Integrand::PointOrder(point) => {
                let mut ord = Rational::zero();
                for (name, m) in &point.through {
                    let (c, s) = self.flag.n_prime_coefficient(line.piece, name);
                    let mut coef = &c + &(&s * &line.u);
                    if let Some(i) = lat.tracked_index(name) {
                        if let Some(pos) = p.support.iter().position(|&j| j == i) {
                            coef = &coef + &(&p.a0[pos] + &(&p.a1[pos] * v));
                        }
                    }
                    ord = &ord + &(m * &coef);
                }
                &pc() * &ord
            }
        }
    }

    fn integrate(&self, piece: usize, t: &AffinePiece, a: &Rational, b: &Rational, depth: usize) -> Result<Rational, FlagError> {
        if depth > MAX_DEPTH {
            return Err(sweep_err(format!("u-interval [{a}, {b}] does not resolve")));
        }
        let h = (b - a) / Rational::from(8);
        let us: Vec<Rational> = (1..=7).map(|k| a + &(&h * &Rational::from(k))).collect();
        let chains = us
            .iter()
            .map(|u| self.chain(piece, u, &t.eval(u)))
            .collect::<Result<Vec<_>, _>>()?;
        // Affine walls fitted on runs of probes with equal signature.
        let fit = |i: usize, j: usize, k: usize| -> (Rational, Rational) {
            let slope = &(&chains[j].breaks[k] - &chains[i].breaks[k]) / &(&us[j] - &us[i]);
            (&chains[i].breaks[k] - &(&slope * &us[i]), slope)
        };
        let mut runs: Vec<(usize, usize)> = Vec::new();
        let mut start = 0;
        for i in 1..=7 {
            if i == 7 || chains[i].supports != chains[start].supports {
                runs.push((start, i - 1));
                start = i;
            }
        }
        let mut cuts: Vec<Rational> = Vec::new();
        let mut consistent = runs.len() == 1;
        for &(i, j) in &runs {
            if i == j {
                continue;
            }
            let mut lines: Vec<(Rational, Rational)> = vec![(Rational::zero(), Rational::zero())];
            for k in 0..chains[i].breaks.len() {
                let (c, s) = fit(i, j, k);
                for m in i..=j {
                    if &c + &(&s * &us[m]) != chains[m].breaks[k] {
                        consistent = false;
                    }
                }
                lines.push((c, s));
            }
            lines.push((t.constant.clone(), t.slope.clone()));
            for x in 0..lines.len() {
                for y in x + 1..lines.len() {
                    let ds = &lines[x].1 - &lines[y].1;
                    if !ds.is_zero() {
                        let u = &(&lines[y].0 - &lines[x].0) / &ds;
                        if &u > a && &u < b {
                            cuts.push(u);
                        }
                    }
                }
            }
        }
        if consistent && cuts.is_empty() {
            // The chains at the end points must show the same walls.
            let (i, j) = runs[0];
            let walls = |u: &Rational| -> Vec<Rational> {
                let top = t.eval(u);
                let mut w: Vec<Rational> = (0..chains[i].breaks.len())
                    .map(|k| {
                        let (c, s) = fit(i, j, k);
                        &c + &(&s * u)
                    })
                    .filter(|v| v.is_positive() && *v < top)
                    .collect();
                w.dedup();
                w
            };
            let mut ok = true;
            for e in [a, b] {
                if self.chain(piece, e, &t.eval(e))?.breaks != walls(e) {
                    ok = false;
                }
            }
            if ok {
                let h4 = (b - a) / Rational::from(4);
                let s = &(&(&Rational::from(2) * &chains[1].value) - &chains[3].value)
                    + &(&Rational::from(2) * &chains[5].value);
                return Ok(&(&(&h4 * &Rational::from(4)) / &Rational::from(3)) * &s);
            }
        }
        cuts.sort();
        cuts.dedup();
        if cuts.is_empty() {
            cuts.push(a.midpoint(b));
        }
        let mut pts = vec![a.clone()];
        pts.extend(cuts);
        pts.push(b.clone());
        let mut total = Rational::zero();
        for w in pts.windows(2) {
            total = &total + &self.integrate(piece, t, &w[0], &w[1], depth + 1)?;
        }
        Ok(total)
    }
}

/// `∫∫ f dv du` over the region `0 ≤ v ≤ t(u)` computed by the sweep.
pub fn sweep_integral(flag: &FlagSurface, integrand: Integrand<'_>) -> Result<Rational, FlagError> {
    let sw = Sweep { flag, integrand, tests: tests(&flag.lattice) };
    let mut total = Rational::zero();
    for piece in 0..flag.pieces.len() {
        for t in pseff_threshold_2d(flag, piece)? {
            if t.lo < t.hi {
                total = &total + &sw.integrate(piece, &t, &t.lo, &t.hi, 0)?;
            }
        }
    }
    Ok(total)
}
