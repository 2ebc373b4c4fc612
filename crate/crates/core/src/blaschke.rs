//! Finite Blaschke products `B(z) = c · Π (a_k − z)/(1 − conj(a_k) z)`.
//!
//! On the unit circle the argument of `B(e^{it})` is strictly increasing in `t`
//! with total increase `2πn`, so each level set `B(ζ) = γ` has exactly `n`
//! simple roots. When `B(0) = 0` those roots carry the Clark atoms of the
//! partial-fraction identity
//!
//! ```text
//! 1 / (1 − conj(γ) B(z)) = Σ c_k / (1 − conj(ζ_k) z),   c_k = 1 / (ζ_k B'(ζ_k) / B(ζ_k)).
//! ```

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

const UNIMODULAR_TOL: f64 = 1e-12;
const ZERO_MARGIN: f64 = 1e-12;
const CIRCLE_TOL: f64 = 1e-9;
const POLE_TOL: f64 = 1e-14;
const BISECTION_TOL: f64 = 1e-13;
const ORIGIN_TOL: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BlaschkeError {
    #[error("constant {0} is not unimodular")]
    ConstantNotUnimodular(Complex64),
    #[error("zero {0} is not inside the open unit disk")]
    ZeroOutsideDisk(Complex64),
    #[error("a Blaschke product needs at least one zero")]
    NoZeros,
    #[error("evaluation hit a pole at z = {0}")]
    PoleHit(Complex64),
    #[error("point {0} is not on the unit circle")]
    NotOnCircle(Complex64),
    #[error("level {0} is not unimodular")]
    NotUnimodular(Complex64),
    #[error("bisection interval does not bracket the level crossing (target {target}, range [{low}, {high}])")]
    BisectionFailure { target: f64, low: f64, high: f64 },
    #[error("the product does not vanish at the origin")]
    RequiresVanishingAtZero,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlaschkeProduct {
    constant: Complex64,
    zeros: Vec<Complex64>,
}

impl BlaschkeProduct {
    pub fn new(constant: Complex64, zeros: Vec<Complex64>) -> Result<Self, BlaschkeError> {
        if (constant.norm() - 1.0).abs() > UNIMODULAR_TOL {
            return Err(BlaschkeError::ConstantNotUnimodular(constant));
        }
        if zeros.is_empty() {
            return Err(BlaschkeError::NoZeros);
        }
        if let Some(&bad) = zeros.iter().find(|a| !a.is_finite() || a.norm() > 1.0 - ZERO_MARGIN) {
            return Err(BlaschkeError::ZeroOutsideDisk(bad));
        }
        Ok(Self { constant, zeros })
    }

    /// `B(z) = z`, stored as constant `−1` times the single factor `(0 − z)/1`.
    pub fn identity() -> Self {
        Self { constant: Complex64::new(-1.0, 0.0), zeros: vec![Complex64::new(0.0, 0.0)] }
    }

    pub fn constant(&self) -> Complex64 {
        self.constant
    }

    pub fn zeros(&self) -> &[Complex64] {
        &self.zeros
    }

    pub fn degree(&self) -> usize {
        self.zeros.len()
    }

    /// True when one of the stored zeros is the origin.
    pub fn vanishes_at_origin(&self) -> bool {
        self.zeros.iter().any(|a| a.norm() <= ORIGIN_TOL)
    }

    pub fn eval(&self, z: Complex64) -> Result<Complex64, BlaschkeError> {
        let mut acc = self.constant;
        for &a in &self.zeros {
            let den = Complex64::new(1.0, 0.0) - a.conj() * z;
            if den.norm() < POLE_TOL {
                return Err(BlaschkeError::PoleHit(z));
            }
            acc *= (a - z) / den;
        }
        Ok(acc)
    }

    /// `ζ B'(ζ) / B(ζ) = Σ (1 − |a_k|²) / |ζ − a_k|²`, real and strictly positive on the circle.
    pub fn circle_log_derivative(&self, zeta: Complex64) -> Result<f64, BlaschkeError> {
        if (zeta.norm() - 1.0).abs() > CIRCLE_TOL {
            return Err(BlaschkeError::NotOnCircle(zeta));
        }
        Ok(self.log_derivative_at_angle_point(zeta))
    }

    fn log_derivative_at_angle_point(&self, zeta: Complex64) -> f64 {
        self.zeros.iter().map(|a| (1.0 - a.norm_sqr()) / (zeta - a).norm_sqr()).sum()
    }

    /// Continuous branch of `arg B(e^{it})` for `t ∈ ℝ`.
    ///
    /// Each factor equals `−e^{it} · conj(w)/w` with `w = 1 − conj(a) e^{it}`, and
    /// `Re w > 0`, so the principal argument of `w` is already continuous.
    pub fn boundary_argument(&self, t: f64) -> f64 {
        let zeta = Complex64::from_polar(1.0, t);
        let n = self.zeros.len() as f64;
        let twists: f64 = self
            .zeros
            .iter()
            .map(|a| (Complex64::new(1.0, 0.0) - a.conj() * zeta).arg())
            .sum();
        self.constant.arg() + n * (PI + t) - 2.0 * twists
    }

    /// The `n` points of the unit circle where `B(ζ) = γ`, sorted by angle in `[0, 2π)`.
    pub fn level_set(&self, gamma: Complex64) -> Result<Vec<Complex64>, BlaschkeError> {
        Ok(self.level_set_angles(gamma)?.into_iter().map(|t| Complex64::from_polar(1.0, t)).collect())
    }

    /// Angles `t_k ∈ [0, 2π)` of the level set.
    pub fn level_set_angles(&self, gamma: Complex64) -> Result<Vec<f64>, BlaschkeError> {
        if (gamma.norm() - 1.0).abs() > CIRCLE_TOL {
            return Err(BlaschkeError::NotUnimodular(gamma));
        }
        let start = self.boundary_argument(0.0);
        let mut offset = (gamma.arg() - start).rem_euclid(TAU);
        if TAU - offset < 1e-15 {
            offset = 0.0;
        }
        (0..self.degree())
            .map(|k| self.solve_argument(start + offset + TAU * k as f64))
            .collect()
    }

    /// Finds `t ∈ [0, 2π)` with `boundary_argument(t) = target` by bisection,
    /// then polishes with Newton steps kept inside the final bracket.
    fn solve_argument(&self, target: f64) -> Result<f64, BlaschkeError> {
        let f = |t: f64| self.boundary_argument(t) - target;
        let (mut lo, mut hi) = (0.0, TAU);
        let (f_lo, f_hi) = (f(lo), f(hi));
        if f_lo > 0.0 || f_hi <= 0.0 {
            // Rounding at the ends of the range; accept a root sitting on t = 0.
            if f_lo.abs() < 1e-12 {
                return Ok(0.0);
            }
            return Err(BlaschkeError::BisectionFailure { target, low: f_lo + target, high: f_hi + target });
        }
        while hi - lo > BISECTION_TOL {
            let mid = 0.5 * (lo + hi);
            if f(mid) <= 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let mut t = 0.5 * (lo + hi);
        for _ in 0..3 {
            let slope = self.log_derivative_at_angle_point(Complex64::from_polar(1.0, t));
            let next = t - f(t) / slope;
            if !(next >= lo - BISECTION_TOL && next <= hi + BISECTION_TOL) {
                break;
            }
            t = next;
        }
        Ok(t.rem_euclid(TAU))
    }

    /// Clark atoms `(ζ_k, c_k)` for the level `γ`. Requires a zero at the origin.
    pub fn clark_decomposition(&self, gamma: Complex64) -> Result<ClarkDecomposition, BlaschkeError> {
        if !self.vanishes_at_origin() {
            return Err(BlaschkeError::RequiresVanishingAtZero);
        }
        let atoms = self
            .level_set(gamma)?
            .into_iter()
            .map(|zeta| ClarkAtom { zeta, weight: 1.0 / self.log_derivative_at_angle_point(zeta) })
            .collect();
        Ok(ClarkDecomposition { gamma, atoms })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClarkAtom {
    pub zeta: Complex64,
    pub weight: f64,
}

/// Discrete Clark measure of a Blaschke product vanishing at the origin.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClarkDecomposition {
    pub gamma: Complex64,
    pub atoms: Vec<ClarkAtom>,
}

impl ClarkDecomposition {
    pub fn total_weight(&self) -> f64 {
        self.atoms.iter().map(|a| a.weight).sum()
    }

    /// Right-hand side `Σ c_k / (1 − conj(ζ_k) z)`.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.atoms
            .iter()
            .map(|a| a.weight / (Complex64::new(1.0, 0.0) - a.zeta.conj() * z))
            .sum()
    }

    /// `|1/(1 − conj(γ)B(z)) − Σ c_k/(1 − conj(ζ_k) z)|` maximised over `points`.
    pub fn identity_residual(&self, b: &BlaschkeProduct, points: &[Complex64]) -> Result<f64, BlaschkeError> {
        let one = Complex64::new(1.0, 0.0);
        let mut worst: f64 = 0.0;
        for &z in points {
            let lhs = one / (one - self.gamma.conj() * b.eval(z)?);
            worst = worst.max((lhs - self.eval(z)).norm());
        }
        Ok(worst)
    }
}

/// Points on a few concentric circles inside `|z| ≤ radius`, deterministic.
pub fn disk_test_points(count: usize, radius: f64) -> Vec<Complex64> {
    let rings = 4usize;
    (0..count)
        .map(|k| {
            let ring = k % rings;
            let r = radius * (ring + 1) as f64 / rings as f64;
            let angle = TAU * k as f64 / count as f64 + 0.37 * ring as f64;
            Complex64::from_polar(r, angle)
        })
        .collect()
}
