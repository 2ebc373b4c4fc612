// Rational functional calculus on a 2×2 matrix: `f(z) = (1 − 2z)/(2 − z)` sends
// the nilpotent block `T` to `I/2 − 3T/4`, whose numerical range is the disk of
// centre 1/2 and radius 3/4.
//
// ```text
// cargo run --example functional_calculus
// ```

use num_complex::Complex64;
use numrange::calculus::{normalize_through_automorphism, DiskFunction};
use numrange::cli::expr::parse_function;
use numrange::linalg::CMatrix;
use numrange::numrange::numerical_radius;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let t = CMatrix::from_real_rows(&[&[0.0, 2.0], &[0.0, 0.0]])?;
    let f = parse_function("mobius 1 -2 2 -1")?;
    let ft = f.eval_matrix(&t)?;
    let expected = &CMatrix::identity(2).scale_real(0.5) - &t.scale_real(0.75);
    let entry_error = (&ft - &expected).max_abs();
    println!("f(T) = {ft:?}");
    println!("max |f(T) - (I/2 - 3T/4)| = {entry_error:.3e}");

    let w = numerical_radius(&ft, 1e-12);
    println!("w(f(T)) = {w:.12}");

    // Post-composing with the inverse automorphism moves f(0) = 1/2 to the origin.
    let alpha = f.eval_scalar(Complex64::new(0.0, 0.0))?;
    let g = normalize_through_automorphism(&f, alpha)?;
    println!("g(0) = {:.3e}, w(g(T)) = {:.12}", g.eval_scalar(Complex64::new(0.0, 0.0))?.norm(), numerical_radius(&g.eval_matrix(&t)?, 1e-12));

    // Polynomials and compositions go through the same tree.
    let square = DiskFunction::compose(DiskFunction::power(2), DiskFunction::identity());
    println!("w(T^2) = {:.12}", numerical_radius(&square.eval_matrix(&t)?, 1e-12));

    if entry_error > 1e-12 || (w - 1.25).abs() > 1e-9 {
        return Err("functional calculus mismatch".into());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
