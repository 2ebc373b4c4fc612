//! Seeded property suites for the mapping theorems.
//!
//! Each suite draws independent trials from a [`RandomModel`], evaluates a
//! residual `lhs − rhs` for the inequality under test and counts a failure when
//! the residual exceeds the suite tolerance. Trials run on the rayon pool, but
//! each one owns a generator derived from `(seed, suite, index)` and results are
//! reduced in index order, so reports do not depend on scheduling.
//!
//! The worst trial is kept as a [`Witness`]; [`witness_residual`] recomputes
//! its residual from the witness alone.

mod model;
mod report;
mod search;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

pub use model::RandomModel;
pub use report::{parse_reports, reports_to_text, ReportParseError, VerifyReport, Witness, WitnessDetail};
pub use search::{extremal_search, nilpotent_seed, SearchResult, SearchSettings};

use crate::calculus::{CalculusError, DiskFunction, MobiusAutomorphism};
use crate::linalg::{hermitian_eig, inner, is_psd, vec_norm, CMatrix, LinalgError};
use crate::numrange::{boundary, numerical_radius, DEFAULT_RADIUS_TOL};
use crate::regions::{q_form, region_s_floor, RegionError, Teardrop};

/// Slack on `w(f(T)) ≤ 1` style bounds (mapping theorem, power inequality).
pub const MAPPING_SLACK: f64 = 1e-7;
/// Slack on the pointwise norm inequalities.
pub const LOCAL_SLACK: f64 = 1e-9;
/// `λ_min(Q) ≥ −PSD_SLACK` counts as positive semidefinite.
pub const PSD_SLACK: f64 = 1e-8;
/// Slack on teardrop containment and the corollary radius bound.
pub const TEARDROP_SLACK: f64 = 1e-6;

/// Offset below each branch of the region `S` boundary used by the sharpness checks.
pub const SHARPNESS_OFFSET: f64 = 0.01;

const SCALE_RETRY_RHO: f64 = 0.999;
const MAX_BLASCHKE_DEGREE: usize = 5;
const DEFAULT_MAX_POWER: u32 = 6;
const DEFAULT_REGION_GRID: usize = 21;
const OPERATOR_GRID: usize = 21;
const DRURY_BOUNDARY_ANGLES: usize = 360;
const DRURY_ALPHA_RADIUS: f64 = 0.95;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum VerifyError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Calculus(#[from] CalculusError),
    #[error(transparent)]
    Region(#[from] RegionError),
    #[error("witness does not fit suite {suite}: {reason}")]
    WitnessMismatch { suite: &'static str, reason: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(into = "&'static str")]
pub enum Suite {
    BergerStampfli,
    Power,
    LocalInequality,
    OperatorInequality,
    RegionS,
    Drury,
    Props52,
}

impl From<Suite> for &'static str {
    fn from(s: Suite) -> Self {
        s.name()
    }
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::BergerStampfli,
        Suite::Power,
        Suite::LocalInequality,
        Suite::OperatorInequality,
        Suite::RegionS,
        Suite::Drury,
        Suite::Props52,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::BergerStampfli => "berger-stampfli",
            Suite::Power => "power",
            Suite::LocalInequality => "local-ineq",
            Suite::OperatorInequality => "operator-ineq",
            Suite::RegionS => "region-s",
            Suite::Drury => "drury",
            Suite::Props52 => "props52",
        }
    }

    pub fn from_name(name: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|s| s.name() == name)
    }

    pub fn tolerance(self) -> f64 {
        match self {
            Suite::BergerStampfli | Suite::Power => MAPPING_SLACK,
            Suite::LocalInequality | Suite::Props52 => LOCAL_SLACK,
            Suite::OperatorInequality | Suite::RegionS => PSD_SLACK,
            Suite::Drury => TEARDROP_SLACK,
        }
    }

    fn salt(self) -> u64 {
        Suite::ALL.iter().position(|&s| s == self).expect("listed suite") as u64 + 1
    }
}

/// Residual of one trial plus named sub-residuals kept as `max.*` statistics.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialEval {
    pub residual: f64,
    pub checks: usize,
    pub parts: Vec<(&'static str, f64)>,
}

impl TrialEval {
    fn single(residual: f64) -> Self {
        Self { residual, checks: 1, parts: Vec::new() }
    }
}

struct TrialOutcome {
    eval: TrialEval,
    witness: Witness,
    retried: bool,
}

/// Recomputes the residual that the given witness produced in `suite`.
pub fn witness_residual(suite: Suite, witness: &Witness) -> Result<TrialEval, VerifyError> {
    let t = &witness.matrix;
    let mismatch = |reason: &str| VerifyError::WitnessMismatch { suite: suite.name(), reason: reason.into() };
    match (suite, &witness.detail) {
        (Suite::BergerStampfli, WitnessDetail::Function(f)) => {
            let ft = f.eval_matrix(t)?;
            Ok(TrialEval::single(numerical_radius(&ft, DEFAULT_RADIUS_TOL) - 1.0))
        }
        (Suite::Power, WitnessDetail::Power(n)) => {
            Ok(TrialEval::single(numerical_radius(&t.pow(*n), DEFAULT_RADIUS_TOL) - 1.0))
        }
        (Suite::LocalInequality, WitnessDetail::Vector(x)) => {
            if x.len() != t.dim() {
                return Err(mismatch("vector length differs from matrix dimension"));
            }
            let local = local_inequality_residual(t, x);
            let sine = hermitian_angle_residual(t, x);
            let mut parts = vec![("local", local), ("prop51", sine)];
            if t.dim() == 2 {
                parts.push(("prop52", corner_entry_residual(t)));
            }
            Ok(combine(parts))
        }
        (Suite::Props52, WitnessDetail::Vector(x)) => {
            if t.dim() != 2 || x.len() != 2 {
                return Err(mismatch("reformulation checks use 2x2 matrices"));
            }
            Ok(combine(vec![("prop51", hermitian_angle_residual(t, x)), ("prop52", corner_entry_residual(t))]))
        }
        (Suite::OperatorInequality | Suite::RegionS, WitnessDetail::QForm { t: tp, s }) => {
            let min = hermitian_eig(&q_form(t, *tp, *s), PSD_SLACK)?.min();
            Ok(TrialEval::single(-min))
        }
        (Suite::Drury, WitnessDetail::Function(f)) => drury_residual(t, f),
        _ => Err(mismatch("witness kind does not belong to this suite")),
    }
}

fn combine(parts: Vec<(&'static str, f64)>) -> TrialEval {
    let residual = parts.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
    TrialEval { residual, checks: parts.len(), parts }
}

/// `‖Tx‖² − (2 + 2√(1 − |⟨Tx, x⟩|²))` for a unit vector `x`.
pub fn local_inequality_residual(t: &CMatrix, x: &[Complex64]) -> f64 {
    let tx = t.mul_vec(x);
    let norm_sq = vec_norm(&tx).powi(2);
    let q = inner(&tx, x).norm_sqr();
    norm_sq - (2.0 + 2.0 * (1.0 - q).max(0.0).sqrt())
}

/// `‖Tx‖ − max(2|sin θ|, √2)` with `θ` the hermitian angle between `x` and `Tx`.
pub fn hermitian_angle_residual(t: &CMatrix, x: &[Complex64]) -> f64 {
    let tx = t.mul_vec(x);
    let norm_tx = vec_norm(&tx);
    let norm_x = vec_norm(x);
    if norm_tx == 0.0 || norm_x == 0.0 {
        return -std::f64::consts::SQRT_2;
    }
    let cos = (inner(&tx, x).norm() / (norm_tx * norm_x)).min(1.0);
    let sin = (1.0 - cos * cos).max(0.0).sqrt();
    norm_tx - (2.0 * sin).max(std::f64::consts::SQRT_2)
}

/// For `[[a, b], [c, d]]`: `|c| − (1 + √(1 − |a|²))`.
pub fn corner_entry_residual(t: &CMatrix) -> f64 {
    let a = t[(0, 0)].norm();
    let c = t[(1, 0)].norm();
    c - (1.0 + (1.0 - a * a).max(0.0).sqrt())
}

fn drury_residual(t: &CMatrix, f: &DiskFunction) -> Result<TrialEval, VerifyError> {
    let alpha = f.eval_scalar(Complex64::new(0.0, 0.0))?;
    let ft = f.eval_matrix(t)?;
    let teardrop = Teardrop::new(alpha)?;
    let curve = boundary(&ft, DRURY_BOUNDARY_ANGLES)?;
    let excess = curve.points().map(|p| teardrop.excess(p)).fold(f64::NEG_INFINITY, f64::max);
    let a = alpha.norm();
    let radius = numerical_radius(&ft, DEFAULT_RADIUS_TOL) - (1.0 + a - a * a);
    Ok(TrialEval {
        residual: excess.max(radius),
        checks: curve.len() + 1,
        parts: vec![("teardrop_excess", excess), ("radius_over_bound", radius)],
    })
}

/// Evaluates the witness, retrying once with `f(ρ·)` when a resolvent is too
/// close to singular.
fn eval_with_scale_retry(suite: Suite, t: CMatrix, f: DiskFunction) -> Result<TrialOutcome, VerifyError> {
    let witness = Witness { matrix: t, detail: WitnessDetail::Function(f) };
    match witness_residual(suite, &witness) {
        Ok(eval) => Ok(TrialOutcome { eval, witness, retried: false }),
        Err(VerifyError::Calculus(CalculusError::PolesNearSpectrum(_))) => {
            let Witness { matrix, detail: WitnessDetail::Function(f) } = witness else { unreachable!() };
            let scaled = DiskFunction::scale(SCALE_RETRY_RHO, f)?;
            let witness = Witness { matrix, detail: WitnessDetail::Function(scaled) };
            let eval = witness_residual(suite, &witness)?;
            Ok(TrialOutcome { eval, witness, retried: true })
        }
        Err(e) => Err(e),
    }
}

/// Keeps the outcome with the larger residual, first one on ties.
fn worst_of(best: Option<(TrialEval, Witness)>, eval: TrialEval, witness: Witness) -> Option<(TrialEval, Witness)> {
    match best {
        Some((b, w)) if b.residual >= eval.residual => Some((b, w)),
        _ => Some((eval, witness)),
    }
}

fn run_trials<F>(suite: Suite, trials: usize, seed: u64, trial: F) -> VerifyReport
where
    F: Fn(&RandomModel, u64) -> Result<TrialOutcome, VerifyError> + Sync,
{
    let model = RandomModel::new(seed);
    let outcomes: Vec<Result<TrialOutcome, VerifyError>> =
        (0..trials as u64).into_par_iter().map(|k| trial(&model, k)).collect();

    let tolerance = suite.tolerance();
    let mut report = VerifyReport {
        suite,
        seed,
        trials,
        checks: 0,
        failures: 0,
        errors: 0,
        tolerance,
        worst_residual: f64::NEG_INFINITY,
        warning: false,
        scale_retries: 0,
        stats: Vec::new(),
        witness: None,
    };
    let mut part_max: Vec<(&'static str, f64)> = Vec::new();
    let mut first_error: Option<String> = None;
    let mut worst: Option<(TrialEval, Witness)> = None;
    for outcome in outcomes {
        match outcome {
            Ok(TrialOutcome { eval, witness, retried }) => {
                report.checks += eval.checks;
                report.scale_retries += usize::from(retried);
                if eval.residual > tolerance || eval.residual.is_nan() {
                    report.failures += 1;
                }
                for &(name, value) in &eval.parts {
                    match part_max.iter_mut().find(|(n, _)| *n == name) {
                        Some(entry) => entry.1 = entry.1.max(value),
                        None => part_max.push((name, value)),
                    }
                }
                worst = worst_of(worst, eval, witness);
            }
            Err(e) => {
                report.failures += 1;
                report.errors += 1;
                first_error.get_or_insert_with(|| e.to_string());
            }
        }
    }
    if let Some((eval, witness)) = worst {
        report.worst_residual = eval.residual;
        report.witness = Some(witness);
    }
    report.warning = report.worst_residual > 0.5 * tolerance;
    for (name, value) in part_max {
        report.stats.push((format!("max.{name}"), format!("{value:e}")));
    }
    if let Some(e) = first_error {
        report.stats.push(("first_error".into(), e));
    }
    report
}

/// `w(B(T)) ≤ 1` for random `T` with `w(T) = 1` and random finite Blaschke
/// products with `B(0) = 0`.
pub fn check_berger_stampfli(trials: usize, seed: u64) -> VerifyReport {
    let suite = Suite::BergerStampfli;
    run_trials(suite, trials, seed, |model, k| {
        let mut rng = model.trial_rng(suite.salt(), k);
        let t = model.sample_normalized(&mut rng);
        let b = model.sample_blaschke(&mut rng, MAX_BLASCHKE_DEGREE);
        eval_with_scale_retry(suite, t, DiskFunction::Blaschke(b))
    })
}

/// `w(T^n) ≤ 1` for `2 ≤ n ≤ n_max` and random `T` with `w(T) = 1`.
pub fn check_power_inequality(trials: usize, n_max: u32, seed: u64) -> VerifyReport {
    let suite = Suite::Power;
    let n_max = n_max.max(2);
    let mut report = run_trials(suite, trials, seed, |model, k| {
        let mut rng = model.trial_rng(suite.salt(), k);
        let t = model.sample_normalized(&mut rng);
        let mut best: Option<(TrialEval, Witness)> = None;
        for n in 2..=n_max {
            let witness = Witness { matrix: t.clone(), detail: WitnessDetail::Power(n) };
            let eval = witness_residual(suite, &witness)?;
            best = worst_of(best, eval, witness);
        }
        let (mut eval, witness) = best.expect("at least one power");
        eval.checks = (n_max - 1) as usize;
        Ok(TrialOutcome { eval, witness, retried: false })
    });
    report.stats.insert(0, ("max_power".into(), n_max.to_string()));
    report
}

/// Pointwise norm bound `‖Tx‖² ≤ 2 + 2√(1 − |⟨Tx, x⟩|²)` for random unit `x`, with
/// the hermitian-angle reformulation on the same pair and the corner-entry
/// reformulation whenever the sampled matrix is 2×2.
pub fn check_local_inequality(trials: usize, seed: u64) -> VerifyReport {
    let suite = Suite::LocalInequality;
    run_trials(suite, trials, seed, |model, k| {
        let mut rng = model.trial_rng(suite.salt(), k);
        let t = model.sample_normalized(&mut rng);
        let x = model.sample_unit_vector(&mut rng, t.dim());
        let witness = Witness { matrix: t, detail: WitnessDetail::Vector(x) };
        Ok(TrialOutcome { eval: witness_residual(suite, &witness)?, witness, retried: false })
    })
}

/// Both reformulations of the pointwise bound on random 2×2 matrices with `w(T) = 1`.
pub fn check_props52(trials: usize, seed: u64) -> VerifyReport {
    let suite = Suite::Props52;
    run_trials(suite, trials, seed, |model, k| {
        let mut rng = model.trial_rng(suite.salt(), k);
        let t = model.sample_normalized_dim(&mut rng, 2);
        let x = model.sample_unit_vector(&mut rng, 2);
        let witness = Witness { matrix: t, detail: WitnessDetail::Vector(x) };
        Ok(TrialOutcome { eval: witness_residual(suite, &witness)?, witness, retried: false })
    })
}

fn worst_qform(suite: Suite, t: &CMatrix, params: &[(f64, f64)]) -> Result<TrialOutcome, VerifyError> {
    let mut best: Option<(TrialEval, Witness)> = None;
    for &(tp, s) in params {
        let witness = Witness { matrix: t.clone(), detail: WitnessDetail::QForm { t: tp, s } };
        let eval = witness_residual(suite, &witness)?;
        best = worst_of(best, eval, witness);
    }
    let (mut eval, witness) = best.expect("non-empty parameter grid");
    eval.checks = params.len();
    Ok(TrialOutcome { eval, witness, retried: false })
}

/// Evenly spaced points of `[lo, hi]`, endpoints included.
fn linspace(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    if count <= 1 {
        return vec![lo];
    }
    (0..count).map(|k| lo + (hi - lo) * k as f64 / (count - 1) as f64).collect()
}

/// `I + t(T + T*) + (t² − 1/4) T*T ≥ 0` for `t` on a 21-point grid of `[0, 1/2]`.
pub fn check_operator_inequality(trials: usize, seed: u64) -> VerifyReport {
    let suite = Suite::OperatorInequality;
    let params: Vec<(f64, f64)> = linspace(0.0, 0.5, OPERATOR_GRID).into_iter().map(|t| (t, t * t - 0.25)).collect();
    let mut report = run_trials(suite, trials, seed, |model, k| {
        let mut rng = model.trial_rng(suite.salt(), k);
        let t = model.sample_normalized(&mut rng);
        worst_qform(suite, &t, &params)
    });
    report.stats.insert(0, ("t_grid".into(), OPERATOR_GRID.to_string()));
    report
}

/// Counterexample for a point strictly below the boundary of `S`, as used in
/// the three-case description of the region: the 2×2 Jordan-type block with
/// entry 2 when `t ≤ 1/2`, `−I` when `t ≤ 1` or `s < t`, and `−(t/s) I` otherwise.
pub fn region_s_counterexample(t: f64, s: f64) -> CMatrix {
    if t <= 0.5 {
        CMatrix::from_real_rows(&[&[0.0, 2.0], &[0.0, 0.0]]).expect("static matrix")
    } else if t <= 1.0 || s < t {
        CMatrix::scalar(2, Complex64::new(-1.0, 0.0))
    } else {
        CMatrix::scalar(2, Complex64::new(-t / s, 0.0))
    }
}

/// Sharpness data for one point below the boundary of `S`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SharpnessCheck {
    pub t: f64,
    pub s: f64,
    pub min_eigenvalue: f64,
    pub witness_radius: f64,
    pub determinant: Complex64,
}

impl SharpnessCheck {
    pub fn refutes(&self) -> bool {
        self.min_eigenvalue < -PSD_SLACK && self.witness_radius <= 1.0 + 1e-12
    }
}

pub fn sharpness_check(t: f64, offset: f64) -> Result<SharpnessCheck, VerifyError> {
    let s = region_s_floor(t)? - offset;
    let witness = region_s_counterexample(t, s);
    let q = q_form(&witness, t, s);
    let psd = is_psd(&q, PSD_SLACK)?;
    let determinant = q[(0, 0)] * q[(1, 1)] - q[(0, 1)] * q[(1, 0)];
    Ok(SharpnessCheck {
        t,
        s,
        min_eigenvalue: psd.min_eigenvalue,
        witness_radius: numerical_radius(&witness, DEFAULT_RADIUS_TOL),
        determinant,
    })
}

/// Grid of `t` values covering the three branches of the boundary of `S`.
pub fn region_s_grid(grid_density: usize) -> Vec<f64> {
    let mut ts = linspace(0.0, 0.5, grid_density);
    ts.extend(linspace(0.5, 1.0, grid_density).into_iter().skip(1));
    ts.extend(linspace(1.0, 3.0, grid_density).into_iter().skip(1));
    ts
}

/// Both directions of the region description: random `T` with `w(T) = 1` give
/// `Q(T, t, s) ≥ 0` on the boundary curves, and the designated counterexamples
/// give `Q < 0` at distance 0.01 below each branch.
pub fn check_region_s(grid_density: usize, trials: usize, seed: u64) -> VerifyReport {
    let suite = Suite::RegionS;
    let grid_density = grid_density.max(10);
    let ts = region_s_grid(grid_density);
    let params: Vec<(f64, f64)> = ts
        .iter()
        .map(|&t| (t, region_s_floor(t).expect("nonnegative grid")))
        .collect();
    let mut report = run_trials(suite, trials, seed, |model, k| {
        let mut rng = model.trial_rng(suite.salt(), k);
        let t = model.sample_normalized(&mut rng);
        worst_qform(suite, &t, &params)
    });

    let mut sharp_failures = 0;
    let mut sharp_max_min = f64::NEG_INFINITY;
    let mut case1_det_error: f64 = 0.0;
    for &t in &ts {
        match sharpness_check(t, SHARPNESS_OFFSET) {
            Ok(check) => {
                if !check.refutes() {
                    sharp_failures += 1;
                }
                sharp_max_min = sharp_max_min.max(check.min_eigenvalue);
                if t <= 0.5 {
                    case1_det_error = case1_det_error.max((check.determinant.re + 0.04).abs());
                }
            }
            Err(_) => sharp_failures += 1,
        }
    }
    report.failures += sharp_failures;
    report.checks += ts.len();
    report.stats.insert(0, ("grid_points".into(), ts.len().to_string()));
    report.stats.push(("sharpness.checks".into(), ts.len().to_string()));
    report.stats.push(("sharpness.failures".into(), sharp_failures.to_string()));
    report.stats.push(("sharpness.max_min_eigenvalue".into(), format!("{sharp_max_min:e}")));
    report.stats.push(("sharpness.case1_det_error".into(), format!("{case1_det_error:e}")));
    report
}

/// Teardrop containment `W(f(T)) ⊂ td(f(0))` and `w(f(T)) ≤ 1 + |α| − |α|²` for
/// `f = φ_α ∘ B` with random `|α| ≤ 0.95` and random `B` vanishing at the origin.
pub fn check_drury(trials: usize, seed: u64) -> VerifyReport {
    let suite = Suite::Drury;
    let mut report = run_trials(suite, trials, seed, |model, k| {
        let mut rng = model.trial_rng(suite.salt(), k);
        let t = model.sample_normalized(&mut rng);
        let alpha = model.sample_disk_point(&mut rng, DRURY_ALPHA_RADIUS);
        let b = model.sample_blaschke(&mut rng, MAX_BLASCHKE_DEGREE);
        let phi = MobiusAutomorphism::new(alpha)?.to_function();
        eval_with_scale_retry(suite, t, DiskFunction::compose(phi, DiskFunction::Blaschke(b)))
    });
    report.stats.insert(0, ("boundary_angles".into(), DRURY_BOUNDARY_ANGLES.to_string()));
    report
}

/// Runs one suite with its default parameters.
pub fn run_suite(suite: Suite, trials: usize, seed: u64) -> VerifyReport {
    match suite {
        Suite::BergerStampfli => check_berger_stampfli(trials, seed),
        Suite::Power => check_power_inequality(trials, DEFAULT_MAX_POWER, seed),
        Suite::LocalInequality => check_local_inequality(trials, seed),
        Suite::OperatorInequality => check_operator_inequality(trials, seed),
        Suite::RegionS => check_region_s(DEFAULT_REGION_GRID, trials, seed),
        Suite::Drury => check_drury(trials, seed),
        Suite::Props52 => check_props52(trials, seed),
    }
}

pub fn run_all(trials: usize, seed: u64) -> Vec<VerifyReport> {
    Suite::ALL.into_iter().map(|s| run_suite(s, trials, seed)).collect()
}
