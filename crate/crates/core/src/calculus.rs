//! Closed-form disk-algebra functions and their holomorphic functional calculus.
//!
//! A [`DiskFunction`] is a small expression tree over polynomials, Möbius maps,
//! finite Blaschke products, composition and radial dilation `z ↦ f(ρz)`.
//! Matrix evaluation uses Horner for polynomials and resolvents for the rational
//! nodes, so `f(T)` is exact up to rounding whenever the required inverses exist.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::blaschke::{BlaschkeError, BlaschkeProduct};
use crate::linalg::{solve, CMatrix, LinalgError};

const DENOMINATOR_TOL: f64 = 1e-13;
const MAX_DEPTH: usize = 64;
const CIRCLE_MARGIN: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CalculusError {
    #[error("denominator vanishes at z = {0}")]
    PoleHit(Complex64),
    #[error("a pole of the function is too close to the spectrum: {0}")]
    PolesNearSpectrum(LinalgError),
    #[error("Möbius map with identically zero denominator")]
    DegenerateMobius,
    #[error("empty polynomial")]
    EmptyPolynomial,
    #[error("dilation factor {0} outside (0, 1]")]
    BadScale(f64),
    #[error("expression nested deeper than {MAX_DEPTH}")]
    TooDeep,
    #[error("|alpha| = {0} is not below 1")]
    AlphaOnCircle(f64),
    #[error("alpha {alpha} does not match f(0) = {value}")]
    AlphaMismatch { alpha: Complex64, value: Complex64 },
    #[error(transparent)]
    Blaschke(#[from] BlaschkeError),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum DiskFunction {
    /// Coefficients, constant term first.
    Polynomial(Vec<Complex64>),
    /// `z ↦ (a + bz)/(c + dz)`.
    Mobius { a: Complex64, b: Complex64, c: Complex64, d: Complex64 },
    Blaschke(BlaschkeProduct),
    Compose { outer: Box<DiskFunction>, inner: Box<DiskFunction> },
    /// `z ↦ inner(ρz)`.
    Scale { rho: f64, inner: Box<DiskFunction> },
}

impl DiskFunction {
    pub fn polynomial(coefficients: Vec<Complex64>) -> Result<Self, CalculusError> {
        if coefficients.is_empty() {
            return Err(CalculusError::EmptyPolynomial);
        }
        Ok(Self::Polynomial(coefficients))
    }

    pub fn mobius(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Result<Self, CalculusError> {
        if c.norm() + d.norm() == 0.0 {
            return Err(CalculusError::DegenerateMobius);
        }
        Ok(Self::Mobius { a, b, c, d })
    }

    pub fn compose(outer: DiskFunction, inner: DiskFunction) -> Self {
        Self::Compose { outer: Box::new(outer), inner: Box::new(inner) }
    }

    pub fn scale(rho: f64, inner: DiskFunction) -> Result<Self, CalculusError> {
        if !(rho > 0.0 && rho <= 1.0) {
            return Err(CalculusError::BadScale(rho));
        }
        Ok(Self::Scale { rho, inner: Box::new(inner) })
    }

    pub fn identity() -> Self {
        Self::Polynomial(vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)])
    }

    pub fn constant(value: Complex64) -> Self {
        Self::Polynomial(vec![value])
    }

    /// `z ↦ z^n`.
    pub fn power(n: usize) -> Self {
        let mut coefficients = vec![Complex64::new(0.0, 0.0); n + 1];
        coefficients[n] = Complex64::new(1.0, 0.0);
        Self::Polynomial(coefficients)
    }

    pub fn depth(&self) -> usize {
        match self {
            Self::Polynomial(_) | Self::Mobius { .. } | Self::Blaschke(_) => 1,
            Self::Compose { outer, inner } => 1 + outer.depth().max(inner.depth()),
            Self::Scale { inner, .. } => 1 + inner.depth(),
        }
    }

    /// Structural checks: nonempty polynomials, nondegenerate Möbius maps,
    /// dilations in `(0, 1]`, bounded nesting.
    pub fn validate(&self) -> Result<(), CalculusError> {
        if self.depth() > MAX_DEPTH {
            return Err(CalculusError::TooDeep);
        }
        match self {
            Self::Polynomial(c) if c.is_empty() => Err(CalculusError::EmptyPolynomial),
            Self::Polynomial(_) | Self::Blaschke(_) => Ok(()),
            Self::Mobius { c, d, .. } if c.norm() + d.norm() == 0.0 => Err(CalculusError::DegenerateMobius),
            Self::Mobius { .. } => Ok(()),
            Self::Compose { outer, inner } => {
                outer.validate()?;
                inner.validate()
            }
            Self::Scale { rho, inner } => {
                if !(*rho > 0.0 && *rho <= 1.0) {
                    return Err(CalculusError::BadScale(*rho));
                }
                inner.validate()
            }
        }
    }

    pub fn eval_scalar(&self, z: Complex64) -> Result<Complex64, CalculusError> {
        match self {
            Self::Polynomial(coefficients) => Ok(coefficients
                .iter()
                .rev()
                .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)),
            Self::Mobius { a, b, c, d } => {
                let den = c + d * z;
                if den.norm() <= DENOMINATOR_TOL {
                    return Err(CalculusError::PoleHit(z));
                }
                Ok((a + b * z) / den)
            }
            Self::Blaschke(b) => b.eval(z).map_err(|e| match e {
                BlaschkeError::PoleHit(p) => CalculusError::PoleHit(p),
                other => other.into(),
            }),
            Self::Compose { outer, inner } => outer.eval_scalar(inner.eval_scalar(z)?),
            Self::Scale { rho, inner } => inner.eval_scalar(z * *rho),
        }
    }

    /// `f(T)` by the holomorphic functional calculus; inner functions are applied first.
    pub fn eval_matrix(&self, t: &CMatrix) -> Result<CMatrix, CalculusError> {
        let n = t.dim();
        match self {
            Self::Polynomial(coefficients) => {
                let mut acc = CMatrix::zeros(n);
                for &c in coefficients.iter().rev() {
                    acc = &(&acc * t) + &CMatrix::scalar(n, c);
                }
                Ok(acc)
            }
            Self::Mobius { a, b, c, d } => {
                let num = &CMatrix::scalar(n, *a) + &t.scale(*b);
                let den = &CMatrix::scalar(n, *c) + &t.scale(*d);
                let inv = solve(&den, &CMatrix::identity(n)).map_err(CalculusError::PolesNearSpectrum)?;
                Ok(&num * &inv)
            }
            Self::Blaschke(b) => {
                let identity = CMatrix::identity(n);
                let mut acc = CMatrix::scalar(n, b.constant());
                for &a in b.zeros() {
                    let num = &CMatrix::scalar(n, a) - t;
                    let den = &identity - &t.scale(a.conj());
                    let inv = solve(&den, &identity).map_err(CalculusError::PolesNearSpectrum)?;
                    acc = &acc * &(&num * &inv);
                }
                Ok(acc)
            }
            Self::Compose { outer, inner } => outer.eval_matrix(&inner.eval_matrix(t)?),
            Self::Scale { rho, inner } => inner.eval_matrix(&t.scale_real(*rho)),
        }
    }

    /// `max |f(e^{it})|` on `n` uniformly spaced boundary points.
    pub fn circle_sup(&self, n: usize) -> Result<f64, CalculusError> {
        let mut best: f64 = 0.0;
        for k in 0..n {
            best = best.max(self.eval_scalar(Complex64::from_polar(1.0, TAU * k as f64 / n as f64))?.norm());
        }
        Ok(best)
    }
}

/// Disk automorphism `φ_α(z) = (α + z)/(1 + conj(α) z)` moving `0` to `α`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MobiusAutomorphism {
    alpha: Complex64,
}

impl MobiusAutomorphism {
    pub fn new(alpha: Complex64) -> Result<Self, CalculusError> {
        if !(alpha.norm() < 1.0) {
            return Err(CalculusError::AlphaOnCircle(alpha.norm()));
        }
        Ok(Self { alpha })
    }

    pub fn alpha(&self) -> Complex64 {
        self.alpha
    }

    pub fn to_function(self) -> DiskFunction {
        let one = Complex64::new(1.0, 0.0);
        DiskFunction::Mobius { a: self.alpha, b: one, c: one, d: self.alpha.conj() }
    }

    /// `φ_α^{-1}(w) = (w − α)/(1 − conj(α) w)`.
    pub fn inverse_function(self) -> DiskFunction {
        let one = Complex64::new(1.0, 0.0);
        DiskFunction::Mobius { a: -self.alpha, b: one, c: one, d: -self.alpha.conj() }
    }
}

/// Returns `g = φ_α^{-1} ∘ f`, which vanishes at the origin when `α = f(0)`.
pub fn normalize_through_automorphism(f: &DiskFunction, alpha: Complex64) -> Result<DiskFunction, CalculusError> {
    if alpha.norm() >= 1.0 - CIRCLE_MARGIN {
        return Err(CalculusError::AlphaOnCircle(alpha.norm()));
    }
    let value = f.eval_scalar(Complex64::new(0.0, 0.0))?;
    if (value - alpha).norm() > 1e-9 {
        return Err(CalculusError::AlphaMismatch { alpha, value });
    }
    let phi = MobiusAutomorphism::new(alpha)?;
    Ok(DiskFunction::compose(phi.inverse_function(), f.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn teardrop_example() -> DiskFunction {
        // (1 − 2z)/(2 − z)
        DiskFunction::mobius(c(1.0, 0.0), c(-2.0, 0.0), c(2.0, 0.0), c(-1.0, 0.0)).unwrap()
    }

    fn jordan2() -> CMatrix {
        CMatrix::from_real_rows(&[&[0.0, 2.0], &[0.0, 0.0]]).unwrap()
    }

    #[test]
    fn scalar_examples() {
        let phi = MobiusAutomorphism::new(c(0.5, 0.0)).unwrap().to_function();
        assert_eq!(phi.eval_scalar(c(0.0, 0.0)).unwrap(), c(0.5, 0.0));
        assert_eq!(teardrop_example().eval_scalar(c(0.0, 0.0)).unwrap(), c(0.5, 0.0));
        assert_abs_diff_eq!(teardrop_example().circle_sup(360).unwrap(), 1.0, epsilon = 1e-9);
    }

    #[test]
    fn scalar_pole() {
        assert_eq!(teardrop_example().eval_scalar(c(2.0, 0.0)), Err(CalculusError::PoleHit(c(2.0, 0.0))));
    }

    #[test]
    fn matrix_examples() {
        let t = jordan2();
        assert_eq!(DiskFunction::power(2).eval_matrix(&t).unwrap(), CMatrix::zeros(2));

        let ft = teardrop_example().eval_matrix(&t).unwrap();
        let expected = CMatrix::from_real_rows(&[&[0.5, -1.5], &[0.0, 0.5]]).unwrap();
        assert!((&ft - &expected).max_abs() < 1e-12);

        let alpha = c(0.3, -0.4);
        let phi = MobiusAutomorphism::new(alpha).unwrap().to_function();
        assert!((&phi.eval_matrix(&CMatrix::zeros(3)).unwrap() - &CMatrix::scalar(3, alpha)).max_abs() < 1e-15);
    }

    #[test]
    fn matrix_pole() {
        // cI + dT singular when T = 2I for (1 − 2z)/(2 − z).
        let t = CMatrix::scalar(2, c(2.0, 0.0));
        assert!(matches!(teardrop_example().eval_matrix(&t), Err(CalculusError::PolesNearSpectrum(_))));
    }

    #[test]
    fn normalization_examples() {
        let alpha = c(0.3, 0.0);
        let phi = MobiusAutomorphism::new(alpha).unwrap().to_function();
        let g = normalize_through_automorphism(&phi, alpha).unwrap();
        for k in 0..100 {
            let z = Complex64::from_polar(0.95 * (k as f64 / 100.0), 0.3 * k as f64);
            assert!((g.eval_scalar(z).unwrap() - z).norm() < 1e-12);
        }

        let zero = DiskFunction::constant(c(0.0, 0.0));
        let g = normalize_through_automorphism(&zero, c(0.0, 0.0)).unwrap();
        assert_eq!(g.eval_scalar(c(0.3, 0.1)).unwrap(), c(0.0, 0.0));

        let g = normalize_through_automorphism(&teardrop_example(), c(0.5, 0.0)).unwrap();
        assert!(g.eval_scalar(c(0.0, 0.0)).unwrap().norm() < 1e-12);
        assert_abs_diff_eq!(g.circle_sup(720).unwrap(), 1.0, epsilon = 1e-8);
    }

    #[test]
    fn normalization_errors() {
        let f = DiskFunction::constant(c(1.0, 0.0));
        assert!(matches!(normalize_through_automorphism(&f, c(1.0, 0.0)), Err(CalculusError::AlphaOnCircle(_))));
        assert!(matches!(
            normalize_through_automorphism(&teardrop_example(), c(0.2, 0.0)),
            Err(CalculusError::AlphaMismatch { .. })
        ));
    }

    #[test]
    fn constructor_guards() {
        assert_eq!(DiskFunction::polynomial(vec![]), Err(CalculusError::EmptyPolynomial));
        let zero = c(0.0, 0.0);
        assert_eq!(DiskFunction::mobius(zero, zero, zero, zero), Err(CalculusError::DegenerateMobius));
        assert_eq!(DiskFunction::scale(0.0, DiskFunction::identity()), Err(CalculusError::BadScale(0.0)));
        assert_eq!(DiskFunction::scale(1.5, DiskFunction::identity()), Err(CalculusError::BadScale(1.5)));
    }

    #[test]
    fn scale_matches_dilated_matrix() {
        let t = CMatrix::from_fn(3, |i, j| c((i + 2 * j) as f64 * 0.1, (i as f64 - j as f64) * 0.05));
        let f = teardrop_example();
        let lhs = DiskFunction::scale(0.7, f.clone()).unwrap().eval_matrix(&t).unwrap();
        let rhs = f.eval_matrix(&t.scale_real(0.7)).unwrap();
        assert!((&lhs - &rhs).max_abs() < 1e-12);
    }
}
