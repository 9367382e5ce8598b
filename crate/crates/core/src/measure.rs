//! Probability measures on the circle: a Haar part plus finitely many atoms.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::algebra::{check_unimodular, unimodular_pow};
use crate::error::{Error, Result};

/// Weights must sum to one within this.
pub const WEIGHT_TOL: f64 = 1e-10;
/// Atom points closer than this are the same point.
pub const POINT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Atom {
    pub point: Complex64,
    pub weight: f64,
}

/// `haar · m + Σ w_j δ_{c_j}` with atoms sorted by argument in `[0, 2π)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CircleMeasure {
    haar_weight: f64,
    atoms: Vec<Atom>,
}

fn argument(c: Complex64) -> f64 {
    let a = c.arg();
    if a < 0.0 {
        a + TAU
    } else {
        a
    }
}

impl CircleMeasure {
    pub fn new(haar_weight: f64, atoms: Vec<Atom>) -> Result<Self> {
        if haar_weight.is_nan() || haar_weight < 0.0 {
            return Err(Error::InvalidMeasure(format!("negative Haar weight {haar_weight}")));
        }
        for a in &atoms {
            if a.weight.is_nan() || a.weight <= 0.0 {
                return Err(Error::InvalidMeasure(format!("atom weight {} is not positive", a.weight)));
            }
            if (a.point.norm() - 1.0).abs() > 1e-12 {
                return Err(Error::InvalidMeasure(format!(
                    "atom ({}, {}) is off the circle",
                    a.point.re, a.point.im
                )));
            }
        }
        let total = haar_weight + atoms.iter().map(|a| a.weight).sum::<f64>();
        if (total - 1.0).abs() > WEIGHT_TOL {
            return Err(Error::InvalidMeasure(format!("total mass {total} is not 1")));
        }
        let mut atoms = atoms;
        atoms.sort_by(|a, b| argument(a.point).total_cmp(&argument(b.point)));
        for i in 0..atoms.len() {
            for j in i + 1..atoms.len() {
                if (atoms[i].point - atoms[j].point).norm() <= POINT_TOL {
                    return Err(Error::InvalidMeasure("atom points must be distinct".into()));
                }
            }
        }
        Ok(CircleMeasure { haar_weight, atoms })
    }

    pub fn haar() -> Self {
        CircleMeasure { haar_weight: 1.0, atoms: Vec::new() }
    }

    pub fn point_mass(c: Complex64) -> Result<Self> {
        Self::new(0.0, vec![Atom { point: c, weight: 1.0 }])
    }

    /// Point mass at `e^{iθ}`.
    pub fn point_mass_at_angle(theta: f64) -> Self {
        Self::point_mass(Complex64::from_polar(1.0, theta)).expect("unit point")
    }

    pub fn atomic(atoms: &[(Complex64, f64)]) -> Result<Self> {
        Self::new(0.0, atoms.iter().map(|&(point, weight)| Atom { point, weight }).collect())
    }

    pub fn haar_weight(&self) -> f64 {
        self.haar_weight
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn has_haar(&self) -> bool {
        self.haar_weight > WEIGHT_TOL
    }

    pub fn is_atomic(&self) -> bool {
        !self.has_haar()
    }

    /// `∫ z^m dμ`.
    pub fn moment(&self, m: i64) -> Complex64 {
        let haar = if m == 0 { self.haar_weight } else { 0.0 };
        self.atoms
            .iter()
            .map(|a| unimodular_pow(a.point, m) * a.weight)
            .sum::<Complex64>()
            + haar
    }

    /// The extension is pure iff the measure is a unit point mass.
    pub fn is_pure(&self) -> bool {
        !self.has_haar() && self.atoms.len() == 1 && (self.atoms[0].weight - 1.0).abs() <= WEIGHT_TOL
    }

    /// Push-forward under `z ↦ λ z`.
    pub fn rotate(&self, lambda: Complex64) -> Result<CircleMeasure> {
        check_unimodular(lambda, 1e-12)?;
        let atoms = self
            .atoms
            .iter()
            .map(|a| {
                let c = lambda * a.point;
                Atom { point: c / c.norm(), weight: a.weight }
            })
            .collect();
        CircleMeasure::new(self.haar_weight, atoms)
    }

    /// The measure parameterizing `ρ̃[μ] ∘ γ_λ` when the state has period `p`.
    pub fn gauge(&self, lambda: Complex64, p: usize) -> Result<CircleMeasure> {
        check_unimodular(lambda, 1e-12)?;
        self.rotate(unimodular_pow(lambda, p as i64))
    }

    fn contains_point(&self, c: Complex64) -> bool {
        self.atoms.iter().any(|a| (a.point - c).norm() <= POINT_TOL)
    }

    /// Same null sets, within the Haar-plus-atoms class.
    pub fn equivalent(&self, other: &CircleMeasure) -> bool {
        self.has_haar() == other.has_haar()
            && self.atoms.len() == other.atoms.len()
            && self.atoms.iter().all(|a| other.contains_point(a.point))
    }

    /// Mutually singular, within the Haar-plus-atoms class.
    pub fn disjoint(&self, other: &CircleMeasure) -> bool {
        !(self.has_haar() && other.has_haar())
            && self.atoms.iter().all(|a| !other.contains_point(a.point))
    }

    /// Some `λ` with `self` equivalent to `other` rotated by `λ`.
    pub fn translate_equivalent(&self, other: &CircleMeasure) -> Option<Complex64> {
        if self.has_haar() != other.has_haar() || self.atoms.len() != other.atoms.len() {
            return None;
        }
        let Some(anchor) = other.atoms.first() else {
            return Some(Complex64::new(1.0, 0.0));
        };
        self.atoms.iter().find_map(|a| {
            let lambda = a.point / anchor.point;
            let lambda = lambda / lambda.norm();
            let rotated = other.rotate(lambda).ok()?;
            self.equivalent(&rotated).then_some(lambda)
        })
    }

    /// Atom points split into (only here, only in `other`, shared).
    pub fn support_split(&self, other: &CircleMeasure) -> (Vec<Complex64>, Vec<Complex64>, Vec<Complex64>) {
        let only_self = self
            .atoms
            .iter()
            .filter(|a| !other.contains_point(a.point))
            .map(|a| a.point)
            .collect();
        let only_other = other
            .atoms
            .iter()
            .filter(|a| !self.contains_point(a.point))
            .map(|a| a.point)
            .collect();
        let shared = self
            .atoms
            .iter()
            .filter(|a| other.contains_point(a.point))
            .map(|a| a.point)
            .collect();
        (only_self, only_other, shared)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn half_pm() -> CircleMeasure {
        CircleMeasure::atomic(&[(c(1.0, 0.0), 0.5), (c(-1.0, 0.0), 0.5)]).unwrap()
    }

    #[test]
    fn moments() {
        let z = Complex64::from_polar(1.0, 0.7);
        let d = CircleMeasure::point_mass(z).unwrap();
        assert!((d.moment(5) - z.powu(5)).norm() < 1e-14);
        assert!((d.moment(-2) - z.conj().powu(2)).norm() < 1e-14);
        assert_eq!(CircleMeasure::haar().moment(3), c(0.0, 0.0));
        assert_eq!(CircleMeasure::haar().moment(0), c(1.0, 0.0));
        assert!((half_pm().moment(2) - c(1.0, 0.0)).norm() < 1e-15);
        assert!(half_pm().moment(1).norm() < 1e-15);
    }

    #[test]
    fn purity() {
        assert!(CircleMeasure::point_mass(c(0.0, 1.0)).unwrap().is_pure());
        assert!(!CircleMeasure::haar().is_pure());
        assert!(!half_pm().is_pure());
    }

    #[test]
    fn gauge_rotation() {
        let d1 = CircleMeasure::point_mass(c(1.0, 0.0)).unwrap();
        let g = d1.gauge(c(-1.0, 0.0), 1).unwrap();
        assert!((g.atoms()[0].point - c(-1.0, 0.0)).norm() < 1e-15);

        let mu = CircleMeasure::new(
            0.2,
            vec![Atom { point: Complex64::from_polar(1.0, 0.4), weight: 0.8 }],
        )
        .unwrap();
        let root = Complex64::from_polar(1.0, TAU / 3.0);
        let g = mu.gauge(root, 3).unwrap();
        assert!(g.equivalent(&mu));
        assert!((g.atoms()[0].point - mu.atoms()[0].point).norm() < 1e-12);
        assert_eq!(CircleMeasure::haar().gauge(root, 2).unwrap(), CircleMeasure::haar());
        assert!(mu.gauge(c(2.0, 0.0), 1).is_err());
    }

    #[test]
    fn equivalence_and_disjointness() {
        let a = half_pm();
        let b = CircleMeasure::atomic(&[(c(1.0, 0.0), 1.0 / 3.0), (c(-1.0, 0.0), 2.0 / 3.0)]).unwrap();
        assert!(a.equivalent(&b));
        let d1 = CircleMeasure::point_mass(c(1.0, 0.0)).unwrap();
        let dm1 = CircleMeasure::point_mass(c(-1.0, 0.0)).unwrap();
        assert!(!d1.equivalent(&dm1));
        let mix = CircleMeasure::new(0.5, vec![Atom { point: c(1.0, 0.0), weight: 0.5 }]).unwrap();
        assert!(mix.equivalent(&mix.clone()));

        assert!(d1.disjoint(&dm1));
        assert!(CircleMeasure::haar().disjoint(&d1));
        assert!(!mix.disjoint(&CircleMeasure::haar()));
    }

    #[test]
    fn translates() {
        let d1 = CircleMeasure::point_mass(c(1.0, 0.0)).unwrap();
        let di = CircleMeasure::point_mass(c(0.0, 1.0)).unwrap();
        let lambda = d1.translate_equivalent(&di).unwrap();
        assert!((lambda - c(0.0, -1.0)).norm() < 1e-15);
        assert_eq!(d1.translate_equivalent(&half_pm()), None);
        assert_eq!(
            CircleMeasure::haar().translate_equivalent(&CircleMeasure::haar()),
            Some(c(1.0, 0.0))
        );
    }

    #[test]
    fn validation() {
        assert!(CircleMeasure::atomic(&[(c(1.0, 0.0), 0.5)]).is_err());
        assert!(CircleMeasure::atomic(&[(c(1.0, 0.0), 0.5), (c(1.0, 0.0), 0.5)]).is_err());
        assert!(CircleMeasure::atomic(&[(c(2.0, 0.0), 1.0)]).is_err());
        let m = CircleMeasure::atomic(&[(c(0.0, -1.0), 0.5), (c(0.0, 1.0), 0.5)]).unwrap();
        assert_eq!(m.atoms()[0].point, c(0.0, 1.0));
    }
}
