use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::blaschke::BlaschkeProduct;
use crate::linalg::{vec_norm, CMatrix};
use crate::numrange::{numerical_radius, DEFAULT_RADIUS_TOL};

/// Seeded law for the random operators used by the suites: dimension uniform
/// in `[min_dim, max_dim]`, entries with real and imaginary parts uniform in
/// `[−1, 1]`, then divided by the computed numerical radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RandomModel {
    pub seed: u64,
    pub min_dim: usize,
    pub max_dim: usize,
}

impl RandomModel {
    pub fn new(seed: u64) -> Self {
        Self { seed, min_dim: 2, max_dim: 8 }
    }

    pub fn with_dims(seed: u64, min_dim: usize, max_dim: usize) -> Self {
        assert!(min_dim >= 1 && min_dim <= max_dim, "invalid dimension range");
        Self { seed, min_dim, max_dim }
    }

    /// Independent generator for trial `index` of the suite identified by `salt`.
    /// Depends only on `(seed, salt, index)`, never on scheduling.
    pub fn trial_rng(&self, salt: u64, index: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15));
        rng.set_stream(index);
        rng
    }

    pub fn sample_dim(&self, rng: &mut impl Rng) -> usize {
        rng.random_range(self.min_dim..=self.max_dim)
    }

    /// Raw matrix, not normalized.
    pub fn sample_raw(&self, rng: &mut impl Rng, dim: usize) -> CMatrix {
        CMatrix::from_fn(dim, |_, _| Complex64::new(rng.random_range(-1.0..=1.0), rng.random_range(-1.0..=1.0)))
    }

    /// Random matrix scaled to numerical radius one.
    pub fn sample_normalized(&self, rng: &mut impl Rng) -> CMatrix {
        let dim = self.sample_dim(rng);
        self.sample_normalized_dim(rng, dim)
    }

    pub fn sample_normalized_dim(&self, rng: &mut impl Rng, dim: usize) -> CMatrix {
        loop {
            let raw = self.sample_raw(rng, dim);
            let w = numerical_radius(&raw, DEFAULT_RADIUS_TOL);
            if w > 1e-3 {
                return raw.scale_real(1.0 / w);
            }
        }
    }

    /// Uniformly distributed unit vector.
    pub fn sample_unit_vector(&self, rng: &mut impl Rng, dim: usize) -> Vec<Complex64> {
        loop {
            let v: Vec<Complex64> = (0..dim)
                .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
                .collect();
            let norm = vec_norm(&v);
            if norm > 1e-8 {
                return v.into_iter().map(|z| z / norm).collect();
            }
        }
    }

    pub fn sample_unimodular(&self, rng: &mut impl Rng) -> Complex64 {
        Complex64::from_polar(1.0, rng.random_range(0.0..TAU))
    }

    /// Uniform point in the disk of the given radius.
    pub fn sample_disk_point(&self, rng: &mut impl Rng, radius: f64) -> Complex64 {
        let r = radius * rng.random::<f64>().sqrt();
        Complex64::from_polar(r, rng.random_range(0.0..TAU))
    }

    /// Blaschke product of degree `1..=max_degree` with a zero at the origin and
    /// the remaining zeros uniform in `|a| ≤ 0.95`.
    pub fn sample_blaschke(&self, rng: &mut impl Rng, max_degree: usize) -> BlaschkeProduct {
        let degree = rng.random_range(1..=max_degree.max(1));
        self.sample_blaschke_of_degree(rng, degree)
    }

    /// Like [`sample_blaschke`](Self::sample_blaschke) with the degree fixed.
    pub fn sample_blaschke_of_degree(&self, rng: &mut impl Rng, degree: usize) -> BlaschkeProduct {
        let degree = degree.max(1);
        let mut zeros = vec![Complex64::new(0.0, 0.0)];
        zeros.extend((1..degree).map(|_| self.sample_disk_point(rng, 0.95)));
        let constant = self.sample_unimodular(rng);
        BlaschkeProduct::new(constant, zeros).expect("sampled zeros lie inside the disk")
    }
}
