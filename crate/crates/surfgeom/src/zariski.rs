//! Zariski decomposition, nefness and volume.
//!
//! The decomposition follows the classical iterate–solve–subtract loop: curves
//! meeting the current positive part negatively join an accumulated support
//! set, the negative coefficients are re-solved from the linear system
//! `(D − Σ aᵢCᵢ)·Cⱼ = 0` over the whole support, and the loop repeats until
//! the positive part is nef.

use exactkernel::lp::cone_membership;
use exactkernel::{QMatrix, Rational};
use num_traits::Zero;
use serde::Serialize;

use crate::error::SurfError;
use crate::lattice::{DivisorClass, SurfaceLattice};

/// Output of a Zariski decomposition `D = P + Σ aᵢ Cᵢ`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ZariskiResult {
    /// The nef positive part `P`.
    pub positive: DivisorClass,
    /// Pairs `(tracked curve index, coefficient aᵢ > 0)`, sorted by index.
    pub negative: Vec<(usize, Rational)>,
    /// Support indices (the same indices as in `negative`).
    pub support: Vec<usize>,
}

impl ZariskiResult {
    /// The negative part as a divisor class.
    pub fn negative_class(&self, lat: &SurfaceLattice) -> DivisorClass {
        self.negative
            .iter()
            .fold(DivisorClass::zero(lat.rank()), |acc, (i, a)| {
                &acc + &lat.tracked[*i].class.scale(a)
            })
    }

    /// Coefficient of tracked curve `i` in the negative part.
    pub fn coefficient(&self, i: usize) -> Rational {
        self.negative
            .iter()
            .find(|(j, _)| *j == i)
            .map(|(_, a)| a.clone())
            .unwrap_or_else(Rational::zero)
    }
}

/// True iff every leading principal minor of `m` has sign `(−1)^k`.
pub fn is_negative_definite(m: &QMatrix) -> bool {
    let n = m.rows();
    (1..=n).all(|k| {
        let sub = QMatrix::from_fn(k, k, |i, j| m.get(i, j).clone());
        let d = sub.det().expect("square");
        if k % 2 == 1 {
            d.is_negative()
        } else {
            d.is_positive()
        }
    })
}

impl SurfaceLattice {
    /// True iff `D·C ≥ 0` for every tracked curve `C`.
    pub fn is_nef(&self, d: &DivisorClass) -> Result<bool, SurfError> {
        self.check_rank(d)?;
        Ok(self
            .tracked
            .iter()
            .all(|c| !self.dot(d, &c.class).is_negative()))
    }

    /// Whether `D` is a nonnegative combination of the effective generators.
    pub fn in_effective_cone(&self, d: &DivisorClass) -> Result<bool, SurfError> {
        self.check_rank(d)?;
        let gens = self
            .eff_generators
            .as_ref()
            .ok_or_else(|| SurfError::MissingEffectiveCone(self.name.clone()))?;
        let gens: Vec<Vec<Rational>> = gens.iter().map(|g| g.0.clone()).collect();
        Ok(cone_membership(&gens, &d.0).is_some())
    }

    /// Gram matrix of the tracked curves with the given indices.
    pub fn support_gram(&self, support: &[usize]) -> QMatrix {
        QMatrix::from_fn(support.len(), support.len(), |i, j| {
            self.dot(&self.tracked[support[i]].class, &self.tracked[support[j]].class)
        })
    }

    /// Zariski decomposition of `D`.
    ///
    /// When effective-cone generators are present, `D` is first checked to be
    /// a nonnegative combination of them.
    pub fn zariski(&self, d: &DivisorClass) -> Result<ZariskiResult, SurfError> {
        self.check_rank(d)?;
        if self.eff_generators.is_some() && !self.in_effective_cone(d)? {
            return Err(SurfError::NotPseudoEffective(format!(
                "{} is outside the effective cone",
                d.render(&self.basis_names)
            )));
        }
        self.zariski_loop(d)
    }

    /// The decomposition loop alone, without the effective-cone pre-check.
    pub fn zariski_loop(&self, d: &DivisorClass) -> Result<ZariskiResult, SurfError> {
        self.check_rank(d)?;
        let mut support: Vec<usize> = Vec::new();
        let mut coeffs: Vec<Rational> = Vec::new();
        for _ in 0..=self.tracked.len() {
            let p = support
                .iter()
                .zip(&coeffs)
                .fold(d.clone(), |acc, (&i, a)| &acc - &self.tracked[i].class.scale(a));
            let fresh: Vec<usize> = (0..self.tracked.len())
                .filter(|i| !support.contains(i))
                .filter(|&i| self.dot(&p, &self.tracked[i].class).is_negative())
                .collect();
            if fresh.is_empty() {
                let negative: Vec<(usize, Rational)> =
                    support.iter().cloned().zip(coeffs.iter().cloned()).collect();
                return Ok(ZariskiResult {
                    positive: p,
                    negative,
                    support,
                });
            }
            support.extend(fresh);
            support.sort_unstable();
            let g = self.support_gram(&support);
            if !is_negative_definite(&g) {
                let names: Vec<&str> =
                    support.iter().map(|&i| self.tracked[i].name.as_str()).collect();
                return Err(SurfError::NotPseudoEffective(format!(
                    "support {{{}}} is not negative definite",
                    names.join(", ")
                )));
            }
            let rhs: Vec<Rational> = support
                .iter()
                .map(|&i| self.dot(d, &self.tracked[i].class))
                .collect();
            let a = g.solve(&rhs).expect("negative definite systems are regular");
            if let Some(k) = a.iter().position(|x| !x.is_positive()) {
                return Err(SurfError::NotPseudoEffective(format!(
                    "coefficient {} of {} is not positive",
                    a[k], self.tracked[support[k]].name
                )));
            }
            coeffs = a;
        }
        Err(SurfError::NotPseudoEffective(
            "decomposition did not stabilise".into(),
        ))
    }

    /// Volume `P²` of the Zariski positive part.
    pub fn volume(&self, d: &DivisorClass) -> Result<Rational, SurfError> {
        let z = self.zariski(d)?;
        Ok(self.dot(&z.positive, &z.positive))
    }

    /// Largest `v ≥ 0` with `D − v·C` effective, or `None` if `D` itself is
    /// not effective.
    pub fn pseff_threshold(
        &self,
        d: &DivisorClass,
        c: &DivisorClass,
    ) -> Result<Option<Rational>, SurfError> {
        crate::threshold::threshold_at(self, d, c)
    }
}
