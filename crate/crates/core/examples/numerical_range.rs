// Numerical range of the 2×2 nilpotent block with entry 2: the closed unit disk,
// although the operator norm is 2.
//
// ```text
// cargo run --example numerical_range
// ```

use num_complex::Complex64;
use numrange::linalg::{operator_norm, CMatrix};
use numrange::numrange::{boundary, contains, min_turn, numerical_radius};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let t = CMatrix::from_real_rows(&[&[0.0, 2.0], &[0.0, 0.0]])?;
    let norm = operator_norm(&t);
    let w = numerical_radius(&t, 1e-12);
    println!("||T|| = {norm:.12}");
    println!("w(T)  = {w:.12}");

    let curve = boundary(&t, 360)?;
    let off_circle = curve.points().map(|p| (p.norm() - 1.0).abs()).fold(0.0, f64::max);
    println!("boundary: {} points, max | |p| - 1 | = {off_circle:.3e}", curve.len());
    println!("convexity: min turn = {:.3e}", min_turn(&curve));

    for z in [Complex64::new(0.5, 0.5), Complex64::new(0.8, 0.7)] {
        println!("{z} in W(T): {}", contains(&t, z, 1e-9, 360)?);
    }

    // A normal matrix: W is the convex hull of the spectrum.
    let d = CMatrix::diagonal(&[Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)]);
    let segment = boundary(&d, 64)?;
    let (lo, hi) = segment
        .points()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| (lo.min(p.re), hi.max(p.re)));
    println!("W(diag(0, 1)) spans [{lo:.6}, {hi:.6}] on the real axis");

    if (norm - 2.0).abs() > 1e-9 || (w - 1.0).abs() > 1e-9 || off_circle > 1e-8 {
        return Err("unexpected numerical range of the nilpotent block".into());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
