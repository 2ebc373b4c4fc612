//! Teardrop regions, the parameter region `S` of the quadratic operator form
//! `Q(T, t, s) = I + t(T + T*) + s T*T`, and the `(ω, t, s)` reparametrisations
//! that reduce teardrop containment to membership in `S`.

use std::f64::consts::TAU;
use std::sync::OnceLock;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{solve, CMatrix, LinalgError};

const TEARDROP_GRID: usize = 720;

/// `e^{-iφ}` on the uniform membership grid.
fn teardrop_directions() -> &'static [Complex64] {
    static GRID: OnceLock<Vec<Complex64>> = OnceLock::new();
    GRID.get_or_init(|| {
        (0..TEARDROP_GRID)
            .map(|k| Complex64::from_polar(1.0, -TAU * k as f64 / TEARDROP_GRID as f64))
            .collect()
    })
}
const DOMAIN_SLACK: f64 = 1e-12;
const RADICAND_FLOOR: f64 = -1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RegionError {
    #[error("|alpha| = {0} exceeds 1")]
    AlphaOutsideDisk(f64),
    #[error("t = {0} is negative")]
    NegativeT(f64),
    #[error("alpha = {0} is outside [0, 1)")]
    AlphaOutOfRange(f64),
    #[error("cos(theta) = {cos_theta} is on the wrong side of alpha = {alpha} for this branch")]
    DomainError { alpha: f64, cos_theta: f64 },
    #[error("negative radicand {0} in the inner parametrisation")]
    NegativeRadicand(f64),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// `td(α)`: convex hull of the closed unit disk and the closed disk of
/// centre `α` and radius `1 − |α|²`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Teardrop {
    alpha: Complex64,
}

impl Teardrop {
    pub fn new(alpha: Complex64) -> Result<Self, RegionError> {
        if !(alpha.norm() <= 1.0 + 1e-12) {
            return Err(RegionError::AlphaOutsideDisk(alpha.norm()));
        }
        Ok(Self { alpha })
    }

    pub fn alpha(&self) -> Complex64 {
        self.alpha
    }

    pub fn small_radius(&self) -> f64 {
        (1.0 - self.alpha.norm_sqr()).max(0.0)
    }

    pub fn support(&self, phi: f64) -> f64 {
        let small = (Complex64::from_polar(1.0, -phi) * self.alpha).re + self.small_radius();
        small.max(1.0)
    }

    /// `max_φ (Re(e^{-iφ}z) − support(φ))` over the 720-point grid and the two
    /// directions `arg z`, `arg(z − α)`.
    pub fn excess(&self, z: Complex64) -> f64 {
        let radius = self.small_radius();
        let critical = [z.arg(), (z - self.alpha).arg()].map(|phi| Complex64::from_polar(1.0, -phi));
        teardrop_directions()
            .iter()
            .chain(critical.iter())
            .map(|&rot| (rot * z).re - ((rot * self.alpha).re + radius).max(1.0))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn contains(&self, z: Complex64, tol: f64) -> bool {
        self.excess(z) <= tol
    }

    /// Directions where both disks have the same support value, i.e.
    /// `cos(φ − arg α) = |α|`; these bound the two common tangent segments.
    pub fn tangent_directions(&self) -> Option<(f64, f64)> {
        let r = self.alpha.norm();
        if r == 0.0 {
            return None;
        }
        let spread = r.min(1.0).acos();
        let centre = self.alpha.arg();
        Some(((centre - spread).rem_euclid(TAU), (centre + spread).rem_euclid(TAU)))
    }

    /// Boundary traced counter-clockwise as `(φ, point)` pairs: unit-circle arc,
    /// tangent segment, arc of the small disk, tangent segment. At each tangent
    /// direction both endpoints are emitted with the same `φ`.
    pub fn boundary(&self, n_angles: usize) -> Vec<(f64, Complex64)> {
        let unit = |phi: f64| Complex64::from_polar(1.0, phi);
        let small = |phi: f64| self.alpha + Complex64::from_polar(self.small_radius(), phi);
        let small_dominates = |phi: f64| {
            (Complex64::from_polar(1.0, -phi) * self.alpha).re + self.small_radius() > 1.0
        };

        let mut angles: Vec<(f64, Option<bool>)> =
            (0..n_angles).map(|k| (TAU * k as f64 / n_angles as f64, None)).collect();
        if let Some((enter, leave)) = self.tangent_directions() {
            if enter != leave {
                angles.push((enter, Some(true)));
                angles.push((leave, Some(false)));
            }
        }
        angles.sort_by(|a, b| a.0.total_cmp(&b.0));

        let mut out = Vec::with_capacity(angles.len() + 2);
        for (phi, tangent) in angles {
            match tangent {
                Some(true) => {
                    out.push((phi, unit(phi)));
                    out.push((phi, small(phi)));
                }
                Some(false) => {
                    out.push((phi, small(phi)));
                    out.push((phi, unit(phi)));
                }
                None if small_dominates(phi) => out.push((phi, small(phi))),
                None => out.push((phi, unit(phi))),
            }
        }
        out
    }
}

pub fn teardrop_support(alpha: Complex64, phi: f64) -> Result<f64, RegionError> {
    Ok(Teardrop::new(alpha)?.support(phi))
}

pub fn teardrop_contains(alpha: Complex64, z: Complex64, tol: f64) -> Result<bool, RegionError> {
    Ok(Teardrop::new(alpha)?.contains(z, tol))
}

/// Lower boundary of `S`: the least `s` with `(t, s) ∈ S`.
pub fn region_s_floor(t: f64) -> Result<f64, RegionError> {
    if t < 0.0 {
        return Err(RegionError::NegativeT(t));
    }
    Ok(if t <= 0.5 {
        t * t - 0.25
    } else if t <= 1.0 {
        2.0 * t - 1.0
    } else {
        t * t
    })
}

pub fn region_s_contains(t: f64, s: f64) -> Result<bool, RegionError> {
    Ok(s >= region_s_floor(t)?)
}

/// `Q(T, t, s) = I + t(T + T*) + s T*T`.
pub fn q_form(t_op: &CMatrix, t: f64, s: f64) -> CMatrix {
    let n = t_op.dim();
    let adj = t_op.adjoint();
    let sum = &(&CMatrix::identity(n) + &(t_op + &adj).scale_real(t)) + &(&adj * t_op).scale_real(s);
    sum.symmetrized()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DruryParams {
    pub omega: Complex64,
    pub t: f64,
    pub s: f64,
}

fn check_alpha(alpha: f64) -> Result<(), RegionError> {
    if !(0.0..1.0).contains(&alpha) {
        return Err(RegionError::AlphaOutOfRange(alpha));
    }
    Ok(())
}

/// Parameters for the directions with `cos θ ≤ α`, where teardrop containment
/// reads `Re(e^{-iθ} φ_α(T)) ≤ I`. Congruence by `I + αT` turns it into
/// `2(1 − α cos θ) · Q(ωT, t, s) ≥ 0` with `t ∈ [1/2, 1]` and `s = 2t − 1`.
///
/// `ω` is the phase of the coefficient of `T` in that congruence,
/// `2α − e^{-iθ} − α² e^{iθ}`.
pub fn drury_params_outer(alpha: f64, theta: f64) -> Result<DruryParams, RegionError> {
    check_alpha(alpha)?;
    let cos = theta.cos();
    if cos > alpha + DOMAIN_SLACK {
        return Err(RegionError::DomainError { alpha, cos_theta: cos });
    }
    let denom = 1.0 - 2.0 * alpha * cos + alpha * alpha;
    let coefficient = Complex64::new(2.0 * alpha, 0.0)
        - Complex64::from_polar(1.0, -theta)
        - Complex64::from_polar(alpha * alpha, theta);
    Ok(DruryParams {
        omega: coefficient / denom,
        t: denom / (2.0 * (1.0 - alpha * cos)),
        s: alpha * (alpha - cos) / (1.0 - alpha * cos),
    })
}

/// Parameters for the directions with `cos θ ≥ α`, where containment reads
/// `Re(e^{-iθ} ψ_α(T)) ≤ I` with `ψ_α(z) = z/(1 + αz)`; congruence gives
/// `2 Q(ωT, t, s) ≥ 0` with `t ∈ [0, 1/2]` and `s = t² − 1/4`.
///
/// The radicand `α(α − cos θ) + 1/4` equals `(α − 1/2)² + α(1 − cos θ)`, so it is
/// nonnegative on the whole domain; `ω` defaults to `1` when it vanishes.
pub fn drury_params_inner(alpha: f64, theta: f64) -> Result<DruryParams, RegionError> {
    check_alpha(alpha)?;
    let cos = theta.cos();
    if cos < alpha - DOMAIN_SLACK {
        return Err(RegionError::DomainError { alpha, cos_theta: cos });
    }
    let s = alpha * (alpha - cos);
    let radicand = s + 0.25;
    if radicand < RADICAND_FLOOR {
        return Err(RegionError::NegativeRadicand(radicand));
    }
    let t = radicand.max(0.0).sqrt();
    let coefficient = Complex64::new(2.0 * alpha, 0.0) - Complex64::from_polar(1.0, -theta);
    let omega = if t > 1e-14 { coefficient / (2.0 * t) } else { Complex64::new(1.0, 0.0) };
    Ok(DruryParams { omega, t, s })
}

/// Both sides of the congruence behind the outer or inner branch:
/// `(I + αT)* (2I − e^{-iθ}g(T) − e^{iθ}g(T)*) (I + αT)` and the matching multiple
/// of `Q(ωT, t, s)`. Here `g = φ_α` on the outer branch and `g = ψ_α` on the inner one.
pub fn drury_congruence(t_op: &CMatrix, alpha: f64, theta: f64) -> Result<(CMatrix, CMatrix), RegionError> {
    let n = t_op.dim();
    let identity = CMatrix::identity(n);
    let b = &identity + &t_op.scale_real(alpha);
    let b_inv = solve(&b, &identity)?;
    let outer = theta.cos() <= alpha;
    let g = if outer {
        // φ_α(T) = (αI + T)(I + αT)^{-1}
        &(&identity.scale_real(alpha) + t_op) * &b_inv
    } else {
        t_op * &b_inv
    };
    let rot = Complex64::from_polar(1.0, -theta);
    let g_rot = g.scale(rot);
    let inner_form = &(&identity.scale_real(2.0) - &g_rot) - &g_rot.adjoint();
    let lhs = &(&b.adjoint() * &inner_form) * &b;

    let (params, factor) = if outer {
        (drury_params_outer(alpha, theta)?, 2.0 * (1.0 - alpha * theta.cos()))
    } else {
        (drury_params_inner(alpha, theta)?, 2.0)
    };
    let rhs = q_form(&t_op.scale(params.omega), params.t, params.s).scale_real(factor);
    Ok((lhs, rhs))
}
