//! Numerical range `W(T)` through its support function.
//!
//! For a direction `θ` the rotated Hermitian part `H(θ) = (e^{-iθ}T + e^{iθ}T*)/2`
//! has top eigenvalue `max Re(e^{-iθ} W(T))`, and a top eigenvector `x` gives a
//! boundary point `⟨Tx, x⟩`. The numerical radius is the maximum of that
//! support function over all directions.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::linalg::{hermitian_eig, hermitian_eigenvalues, CMatrix, LinalgError};

const RADIUS_GRID: usize = 256;
const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Tolerance used for eigen-solves on the (exactly symmetrized) rotated Hermitian parts.
const HERMITIAN_TOL: f64 = 1e-9;

/// Default bracket width for the radius refinement.
pub const DEFAULT_RADIUS_TOL: f64 = 1e-12;

/// `(e^{-iθ}T + e^{iθ}T*)/2`, Hermitian to the last bit.
pub fn hermitian_part(t: &CMatrix, theta: f64) -> CMatrix {
    let rot = Complex64::from_polar(1.0, -theta);
    t.scale(rot).symmetrized()
}

/// `λ_max(H(θ))`.
pub fn support(t: &CMatrix, theta: f64) -> Result<f64, LinalgError> {
    let values = hermitian_eigenvalues(&hermitian_part(t, theta), HERMITIAN_TOL)?;
    Ok(*values.last().expect("non-empty matrix"))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundarySample {
    pub theta: f64,
    pub support: f64,
    pub point: Complex64,
}

/// Sampled support data of `W(T)` on a uniform angle grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundaryCurve {
    pub samples: Vec<BoundarySample>,
}

impl BoundaryCurve {
    pub fn points(&self) -> impl Iterator<Item = Complex64> + '_ {
        self.samples.iter().map(|s| s.point)
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Largest `Re(e^{-iφ}p) − support(φ)` over every sampled point `p` and
    /// every sampled direction `φ`. Non-positive (up to rounding) for a valid curve.
    pub fn max_support_violation(&self) -> f64 {
        let mut worst = f64::NEG_INFINITY;
        for dir in &self.samples {
            let rot = Complex64::from_polar(1.0, -dir.theta);
            for s in &self.samples {
                worst = worst.max((rot * s.point).re - dir.support);
            }
        }
        worst
    }

    /// Largest mismatch between `Re(e^{-iθ}point)` and `support(θ)` at the same sample.
    pub fn max_self_support_error(&self) -> f64 {
        self.samples
            .iter()
            .map(|s| ((Complex64::from_polar(1.0, -s.theta) * s.point).re - s.support).abs())
            .fold(0.0, f64::max)
    }
}

fn uniform_grid(n: usize) -> impl Iterator<Item = f64> + Clone {
    (0..n).map(move |k| TAU * k as f64 / n as f64)
}

/// Samples the boundary of `W(T)` at `n_angles` uniformly spaced directions.
pub fn boundary(t: &CMatrix, n_angles: usize) -> Result<BoundaryCurve, LinalgError> {
    if n_angles < 8 {
        return Err(LinalgError::Invalid(format!("n_angles must be at least 8, got {n_angles}")));
    }
    let samples = uniform_grid(n_angles)
        .map(|theta| {
            let eig = hermitian_eig(&hermitian_part(t, theta), HERMITIAN_TOL)?;
            Ok(BoundarySample { theta, support: eig.max(), point: t.quadratic_form(eig.top_vector()) })
        })
        .collect::<Result<Vec<_>, LinalgError>>()?;
    Ok(BoundaryCurve { samples })
}

/// Same as [`boundary`] with the per-angle eigenproblems spread over the rayon pool.
pub fn boundary_par(t: &CMatrix, n_angles: usize) -> Result<BoundaryCurve, LinalgError> {
    if n_angles < 8 {
        return Err(LinalgError::Invalid(format!("n_angles must be at least 8, got {n_angles}")));
    }
    let samples = (0..n_angles)
        .into_par_iter()
        .map(|k| {
            let theta = TAU * k as f64 / n_angles as f64;
            let eig = hermitian_eig(&hermitian_part(t, theta), HERMITIAN_TOL)?;
            Ok(BoundarySample { theta, support: eig.max(), point: t.quadratic_form(eig.top_vector()) })
        })
        .collect::<Result<Vec<_>, LinalgError>>()?;
    Ok(BoundaryCurve { samples })
}

/// Numerical radius `w(T) = max_θ λ_max(H(θ))`.
///
/// A 256-angle grid locates the peak; golden-section search then refines the
/// winning bracket and its two neighbours. Support functions satisfy
/// `h + h'' ≥ 0`, so near the maximum `h` drops by at most `‖T‖·δ²/2` over an
/// angle `δ`; brackets are shrunk until that bound is below `tol`.
/// The result is never below the grid maximum.
pub fn numerical_radius(t: &CMatrix, tol: f64) -> f64 {
    try_numerical_radius(t, tol).expect("eigen-solves of symmetrized Hermitian parts converge")
}

pub fn try_numerical_radius(t: &CMatrix, tol: f64) -> Result<f64, LinalgError> {
    if t.max_abs() == 0.0 {
        return Ok(0.0);
    }
    let step = TAU / RADIUS_GRID as f64;
    let values = (0..RADIUS_GRID)
        .map(|k| support(t, step * k as f64))
        .collect::<Result<Vec<_>, _>>()?;
    let (best_k, &grid_max) = values
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .expect("non-empty grid");

    let width = (2.0 * tol.max(1e-16) / t.frobenius_norm()).sqrt();
    let mut best = grid_max;
    // Winning bracket plus its neighbours on both sides.
    for offset in [-1i64, 0, 1] {
        let centre = (best_k as i64 + offset).rem_euclid(RADIUS_GRID as i64) as f64 * step;
        best = best.max(golden_max(t, centre - step, centre + step, width)?);
    }
    Ok(best)
}

fn golden_max(t: &CMatrix, mut lo: f64, mut hi: f64, width: f64) -> Result<f64, LinalgError> {
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = support(t, x1)?;
    let mut f2 = support(t, x2)?;
    let mut best = f1.max(f2);
    while hi - lo > width {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = support(t, x2)?;
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = support(t, x1)?;
        }
        best = best.max(f1).max(f2);
        if x2 - x1 <= 0.0 {
            break;
        }
    }
    Ok(best)
}

/// Membership of `z` in the closure of `W(T)` against the support function on
/// `n_angles` uniform directions.
pub fn contains(t: &CMatrix, z: Complex64, tol: f64, n_angles: usize) -> Result<bool, LinalgError> {
    if n_angles < 64 {
        return Err(LinalgError::Invalid(format!("n_angles must be at least 64, got {n_angles}")));
    }
    for theta in uniform_grid(n_angles) {
        if (Complex64::from_polar(1.0, -theta) * z).re > support(t, theta)? + tol {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Signed area-style orientation check of the boundary polygon: returns the most
/// negative cross product of consecutive edges, relative to the polygon scale.
/// A convex counter-clockwise polygon gives a value `≥ −tol`.
pub fn min_turn(curve: &BoundaryCurve) -> f64 {
    let pts: Vec<Complex64> = curve.points().collect();
    let n = pts.len();
    let scale = pts.iter().map(|p| p.norm()).fold(0.0, f64::max).max(1.0);
    let mut worst = f64::INFINITY;
    for k in 0..n {
        let a = pts[k];
        let b = pts[(k + 1) % n];
        let c = pts[(k + 2) % n];
        let e1 = b - a;
        let e2 = c - b;
        worst = worst.min((e1.re * e2.im - e1.im * e2.re) / (scale * scale));
    }
    worst
}

/// Angle of `z` folded into `[0, 2π)`.
pub fn angle_0_tau(z: Complex64) -> f64 {
    let a = z.arg();
    if a < 0.0 {
        a + TAU
    } else if a >= TAU {
        a - TAU
    } else {
        a
    }
}
