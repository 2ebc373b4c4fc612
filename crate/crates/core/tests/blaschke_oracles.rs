mod common;

use common::{c, rng};
use num_complex::Complex64;
use numrange::blaschke::BlaschkeProduct;
use numrange::verify::RandomModel;
use proptest::prelude::*;
use rand::Rng;
use std::f64::consts::TAU;

fn random_product(seed: u64, degree: usize) -> BlaschkeProduct {
    let mut r = rng(seed);
    RandomModel::new(seed).sample_blaschke_of_degree(&mut r, degree)
}

/// Argument increment of `B(e^{it})` over `[t − h, t + h]`, divided by `2h`.
fn finite_difference_log_derivative(b: &BlaschkeProduct, t: f64, h: f64) -> f64 {
    let plus = b.eval(Complex64::from_polar(1.0, t + h)).unwrap();
    let minus = b.eval(Complex64::from_polar(1.0, t - h)).unwrap();
    (plus / minus).arg() / (2.0 * h)
}

#[test]
fn log_derivative_matches_finite_differences() {
    for seed in 0..10 {
        let b = random_product(seed, 1 + seed as usize % 5);
        for k in 0..16 {
            let t = TAU * k as f64 / 16.0 + 0.1;
            let exact = b.circle_log_derivative(Complex64::from_polar(1.0, t)).unwrap();
            let fd = finite_difference_log_derivative(&b, t, 1e-5);
            assert!((exact - fd).abs() < 1e-6 * exact.abs().max(1.0), "seed {seed}: {exact} vs {fd}");
            assert!(exact > 1e-12);
        }
    }
}

#[test]
fn unimodular_on_circle() {
    let b = random_product(4, 5);
    for k in 0..64 {
        let z = Complex64::from_polar(1.0, TAU * k as f64 / 64.0);
        assert!((b.eval(z).unwrap().norm() - 1.0).abs() < 1e-12);
    }
}

#[test]
fn clark_identity_at_random_points() {
    for seed in 0..20 {
        let b = random_product(50 + seed, 1 + seed as usize % 6);
        let mut r = rng(1000 + seed);
        let gamma = Complex64::from_polar(1.0, r.random_range(0.0..TAU));
        let clark = b.clark_decomposition(gamma).unwrap();
        assert_eq!(clark.atoms.len(), b.degree());
        assert!(clark.atoms.iter().all(|a| a.weight > 1e-12));
        assert!((clark.total_weight() - 1.0).abs() < 1e-10);
        let points: Vec<Complex64> = (0..100)
            .map(|_| Complex64::from_polar(0.9 * r.random::<f64>().sqrt(), r.random_range(0.0..TAU)))
            .collect();
        for z in points {
            let lhs = c(1.0, 0.0) / (c(1.0, 0.0) - gamma.conj() * b.eval(z).unwrap());
            let rhs: Complex64 = clark.atoms.iter().map(|a| a.weight / (c(1.0, 0.0) - a.zeta.conj() * z)).sum();
            assert!((lhs - rhs).norm() < 1e-9);
        }
    }
}

#[test]
fn level_set_points_are_distinct_solutions() {
    let b = random_product(77, 6);
    let gamma = Complex64::from_polar(1.0, 1.3);
    let points = b.level_set(gamma).unwrap();
    assert_eq!(points.len(), 6);
    for (i, z) in points.iter().enumerate() {
        assert!((z.norm() - 1.0).abs() < 1e-12);
        assert!((b.eval(*z).unwrap() - gamma).norm() < 1e-10);
        for w in &points[i + 1..] {
            assert!((z - w).norm() > 1e-8);
        }
    }
}

#[test]
fn partial_fractions_of_z_squared() {
    let b = BlaschkeProduct::new(c(1.0, 0.0), vec![c(0.0, 0.0); 2]).unwrap();
    let clark = b.clark_decomposition(c(1.0, 0.0)).unwrap();
    // 1/(1 − z²) = ½/(1 − z) + ½/(1 + z)
    let mut zetas: Vec<f64> = clark.atoms.iter().map(|a| a.zeta.re).collect();
    zetas.sort_by(f64::total_cmp);
    assert!((zetas[0] + 1.0).abs() < 1e-12 && (zetas[1] - 1.0).abs() < 1e-12);
    for a in &clark.atoms {
        assert!((a.weight - 0.5).abs() < 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn weights_form_a_probability_measure(seed in any::<u64>(), degree in 1usize..7, angle in 0.0f64..TAU) {
        let b = random_product(seed, degree);
        let clark = b.clark_decomposition(Complex64::from_polar(1.0, angle)).unwrap();
        prop_assert_eq!(clark.atoms.len(), degree);
        prop_assert!(clark.atoms.iter().all(|a| a.weight > 1e-12));
        prop_assert!((clark.total_weight() - 1.0).abs() < 1e-10);
    }
}
