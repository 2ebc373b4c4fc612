#![allow(dead_code)]

use num_complex::Complex64;
use numrange::linalg::CMatrix;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_matrix(rng: &mut impl Rng, n: usize) -> CMatrix {
    CMatrix::from_fn(n, |_, _| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
}

pub fn jordan2() -> CMatrix {
    CMatrix::from_real_rows(&[&[0.0, 2.0], &[0.0, 0.0]]).unwrap()
}

/// Unitary from Gram–Schmidt on random columns.
pub fn random_unitary(rng: &mut impl Rng, n: usize) -> CMatrix {
    let mut cols: Vec<Vec<Complex64>> = Vec::new();
    while cols.len() < n {
        let mut v: Vec<Complex64> = (0..n).map(|_| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect();
        for u in &cols {
            let proj: Complex64 = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            for (vi, ui) in v.iter_mut().zip(u) {
                *vi -= proj * ui;
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-6 {
            cols.push(v.into_iter().map(|z| z / norm).collect());
        }
    }
    CMatrix::from_fn(n, |i, j| cols[j][i])
}

/// Strategy: square complex matrix of dimension `lo..=hi`, entries in [−1, 1]².
pub fn matrix_strategy(lo: usize, hi: usize) -> impl Strategy<Value = CMatrix> {
    (lo..=hi).prop_flat_map(|n| {
        proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), n * n)
            .prop_map(move |v| CMatrix::from_fn(n, |i, j| c(v[i * n + j].0, v[i * n + j].1)))
    })
}
