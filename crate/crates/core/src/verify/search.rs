use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::calculus::DiskFunction;
use crate::linalg::CMatrix;
use crate::numrange::{numerical_radius, DEFAULT_RADIUS_TOL};

/// Step schedule of the coordinate hill climb.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchSettings {
    pub initial_step: f64,
    /// Consecutive non-improving moves before the step is halved.
    pub patience: usize,
    /// Restart from a new point once the step falls below this.
    pub min_step: f64,
}

impl Default for SearchSettings {
    fn default() -> Self {
        Self { initial_step: 0.3, patience: 20, min_step: 1e-4 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchResult {
    pub best_w: f64,
    /// Normalized matrix (`w = 1`) attaining `best_w`.
    pub witness: CMatrix,
    pub evaluations: usize,
    pub restarts: usize,
    /// Candidates rejected because `f(T)` could not be formed.
    pub skipped: usize,
}

/// `[[0, 2], [0, 0]]` padded with zeros to `dim`: numerical range the closed unit disk.
pub fn nilpotent_seed(dim: usize) -> CMatrix {
    assert!(dim >= 2, "the nilpotent seed needs dimension at least 2");
    let mut m = CMatrix::zeros(dim);
    m[(0, 1)] = Complex64::new(2.0, 0.0);
    m
}

fn to_params(m: &CMatrix) -> Vec<f64> {
    m.as_slice().iter().flat_map(|z| [z.re, z.im]).collect()
}

fn from_params(dim: usize, p: &[f64]) -> CMatrix {
    CMatrix::from_fn(dim, |i, j| {
        let k = 2 * (i * dim + j);
        Complex64::new(p[k], p[k + 1])
    })
}

/// `w(f(T/w(T)))`, or `None` when the candidate cannot be evaluated.
fn objective(f: &DiskFunction, dim: usize, p: &[f64]) -> Option<(f64, CMatrix)> {
    let raw = from_params(dim, p);
    let w = numerical_radius(&raw, DEFAULT_RADIUS_TOL);
    if !(w > 1e-12) {
        return None;
    }
    let t = raw.scale_real(1.0 / w);
    let ft = f.eval_matrix(&t).ok()?;
    let value = numerical_radius(&ft, DEFAULT_RADIUS_TOL);
    value.is_finite().then_some((value, t))
}

/// Maximises `w(f(T))` over `dim × dim` matrices with `w(T) = 1` by random
/// restarts and coordinate-wise hill climbing. `seeds` are used, in order, as
/// the first restarts. `iterations` bounds the number of objective evaluations.
/// Deterministic for a given `seed`.
pub fn extremal_search(
    f: &DiskFunction,
    dim: usize,
    iterations: usize,
    seed: u64,
    seeds: &[CMatrix],
    settings: SearchSettings,
) -> SearchResult {
    assert!(dim >= 1, "dimension must be positive");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n_params = 2 * dim * dim;
    let mut pending = seeds.iter().filter(|m| m.dim() == dim);

    let mut result = SearchResult {
        best_w: f64::NEG_INFINITY,
        witness: CMatrix::zeros(dim),
        evaluations: 0,
        restarts: 0,
        skipped: 0,
    };

    let random_start = |rng: &mut ChaCha8Rng| -> Vec<f64> { (0..n_params).map(|_| rng.random_range(-1.0..=1.0)).collect() };

    let mut current: Vec<f64> = Vec::new();
    let mut current_value = f64::NEG_INFINITY;
    let mut step = 0.0;
    let mut stale = 0;
    let mut coordinate = 0;
    let mut need_restart = true;

    while result.evaluations < iterations.max(1) {
        if need_restart {
            current = match pending.next() {
                Some(m) => to_params(m),
                None => random_start(&mut rng),
            };
            result.restarts += 1;
            result.evaluations += 1;
            match objective(f, dim, &current) {
                Some((value, t)) => {
                    current_value = value;
                    if value > result.best_w {
                        result.best_w = value;
                        result.witness = t;
                    }
                }
                None => {
                    result.skipped += 1;
                    continue;
                }
            }
            step = settings.initial_step;
            stale = 0;
            need_restart = false;
            continue;
        }

        let mut trial = current.clone();
        let direction = if rng.random::<bool>() { 1.0 } else { -1.0 };
        trial[coordinate] += direction * step;
        coordinate = (coordinate + 1) % n_params;
        result.evaluations += 1;
        match objective(f, dim, &trial) {
            Some((value, t)) if value > current_value => {
                current = trial;
                current_value = value;
                stale = 0;
                if value > result.best_w {
                    result.best_w = value;
                    result.witness = t;
                }
            }
            Some(_) => stale += 1,
            None => {
                result.skipped += 1;
                stale += 1;
            }
        }
        if stale >= settings.patience {
            step *= 0.5;
            stale = 0;
            if step < settings.min_step {
                need_restart = true;
            }
        }
    }
    result
}
