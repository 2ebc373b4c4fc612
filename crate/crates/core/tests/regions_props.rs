mod common;

use common::{c, jordan2, matrix_strategy};
use num_complex::Complex64;
use numrange::linalg::{hermitian_eig, CMatrix};
use numrange::numrange::numerical_radius;
use numrange::regions::{
    drury_congruence, drury_params_inner, drury_params_outer, q_form, region_s_floor, teardrop_contains, Teardrop,
};
use proptest::prelude::*;
use std::f64::consts::{PI, TAU};

/// Support of the hull of the two disks from densely sampled circle points.
fn sampled_support(alpha: Complex64, phi: f64) -> f64 {
    let rot = Complex64::from_polar(1.0, -phi);
    let r = (1.0 - alpha.norm_sqr()).max(0.0);
    (0..4000)
        .flat_map(|k| {
            let u = Complex64::from_polar(1.0, TAU * k as f64 / 4000.0);
            [u, alpha + u * r]
        })
        .map(|p| (rot * p).re)
        .fold(f64::NEG_INFINITY, f64::max)
}

#[test]
fn teardrop_support_against_sampled_hull() {
    for alpha in [c(0.0, 0.0), c(0.5, 0.0), c(-0.3, 0.7), c(0.9, 0.1)] {
        let td = Teardrop::new(alpha).unwrap();
        for k in 0..37 {
            let phi = TAU * k as f64 / 37.0;
            assert!((td.support(phi) - sampled_support(alpha, phi)).abs() < 1e-5);
        }
    }
}

#[test]
fn teardrop_boundary_cases() {
    let unit = Teardrop::new(c(0.0, 0.0)).unwrap().boundary(360);
    assert!(unit.iter().all(|(_, z)| (z.norm() - 1.0).abs() < 1e-14));
    let degenerate = Teardrop::new(c(1.0, 0.0)).unwrap().boundary(360);
    assert!(degenerate.iter().all(|(_, z)| (z.norm() - 1.0).abs() < 1e-14));
    let half = Teardrop::new(c(0.5, 0.0)).unwrap().boundary(720);
    let rightmost = half.iter().map(|(_, z)| z.re).fold(f64::NEG_INFINITY, f64::max);
    assert!((rightmost - 1.25).abs() < 1e-12);
    // Every emitted vertex is on the boundary: inside with zero slack, outside when pushed out.
    let td = Teardrop::new(c(0.5, 0.0)).unwrap();
    for (_, z) in &half {
        assert!(td.excess(*z).abs() < 1e-9);
    }
    assert!(teardrop_contains(c(2.0, 0.0), c(0.0, 0.0), 1e-9).is_err());
}

#[test]
fn nilpotent_teardrop_witness_attains_the_bound() {
    let t = jordan2();
    let ft = &CMatrix::identity(2).scale_real(0.5) - &t.scale_real(0.75);
    let w = numerical_radius(&ft, 1e-12);
    assert!((w - (1.0 + 0.5 - 0.25)).abs() < 1e-9);
}

#[test]
fn sharpness_case_identities() {
    // Case 2: T = −I gives Q = (1 − 2t + s) I.
    for (t, s) in [(0.6, 0.1), (0.9, 0.79), (1.0, 0.5)] {
        let q = q_form(&CMatrix::scalar(2, c(-1.0, 0.0)), t, s);
        assert!((&q - &CMatrix::scalar(2, c(1.0 - 2.0 * t + s, 0.0))).max_abs() < 1e-15);
    }
    // Case 3: T = −(t/s) I gives Q = (1 − t²/s) I.
    for (t, s) in [(1.5, 2.2), (2.0, 3.99), (3.0, 8.99)] {
        let q = q_form(&CMatrix::scalar(3, c(-t / s, 0.0)), t, s);
        assert!((&q - &CMatrix::scalar(3, c(1.0 - t * t / s, 0.0))).max_abs() < 1e-14);
    }
}

#[test]
fn parametrizations_on_a_grid() {
    for i in 0..50 {
        let alpha = 0.98 * i as f64 / 49.0;
        for j in 0..50 {
            let cos = -1.0 + 2.0 * j as f64 / 49.0;
            let theta = cos.acos();
            if cos <= alpha {
                let p = drury_params_outer(alpha, theta).unwrap();
                assert!((0.5 - 1e-12..=1.0 + 1e-12).contains(&p.t));
                assert!((p.s - (2.0 * p.t - 1.0)).abs() < 1e-12);
                assert!((p.omega.norm() - 1.0).abs() < 1e-12);
            }
            if cos >= alpha {
                let p = drury_params_inner(alpha, theta).unwrap();
                assert!((-1e-12..=0.5 + 1e-12).contains(&p.t));
                assert!((p.s - (p.t * p.t - 0.25)).abs() < 1e-12);
                assert!((p.omega.norm() - 1.0).abs() < 1e-12 || p.t < 1e-14);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn seam_continuity(alpha in 0.0f64..0.99, sign in prop::bool::ANY) {
        let theta = if sign { alpha.acos() } else { -alpha.acos() };
        let outer = drury_params_outer(alpha, theta).unwrap();
        let inner = drury_params_inner(alpha, theta).unwrap();
        prop_assert!((outer.t - inner.t).abs() < 1e-9);
        prop_assert!((outer.s - inner.s).abs() < 1e-9);
        prop_assert!((outer.omega - inner.omega).norm() < 1e-9);
    }

    #[test]
    fn congruence_identity(t in matrix_strategy(2, 5), alpha in 0.0f64..0.95, theta in -PI..PI) {
        let t = t.scale_real(1.0 / numerical_radius(&t, 1e-12).max(1e-6));
        let (lhs, rhs) = drury_congruence(&t, alpha, theta).unwrap();
        let scale = 1.0 + lhs.max_abs();
        prop_assert!((&lhs - &rhs).max_abs() < 1e-9 * scale);
    }

    #[test]
    fn boundary_of_s_is_psd_for_unit_radius(t in matrix_strategy(2, 5), tp in 0.0f64..3.0) {
        let t = t.scale_real(1.0 / numerical_radius(&t, 1e-12).max(1e-6));
        let q = q_form(&t, tp, region_s_floor(tp).unwrap());
        prop_assert!(hermitian_eig(&q, 1e-9).unwrap().min() >= -1e-8);
    }
}
