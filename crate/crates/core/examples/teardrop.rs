// The teardrop region `td(α)` and containment of `W(f(T))` for `f(0) = α`.
//
// ```text
// cargo run --example teardrop > td.svg
// ```
// writes an SVG of `td(1/2)` with `W(f(T))` sampled inside it.

use num_complex::Complex64;
use numrange::cli::expr::parse_function;
use numrange::cli::plot;
use numrange::linalg::CMatrix;
use numrange::numrange::boundary;
use numrange::regions::Teardrop;

pub fn run_example() -> Result<String, Box<dyn std::error::Error>> {
    let alpha = Complex64::new(0.5, 0.0);
    let td = Teardrop::new(alpha)?;
    let outline = td.boundary(720);
    let rightmost = outline.iter().map(|p| p.1.re).fold(f64::NEG_INFINITY, f64::max);
    eprintln!("td(1/2): small disk radius {:.3}, rightmost point {rightmost:.12}", td.small_radius());
    if let Some((enter, leave)) = td.tangent_directions() {
        eprintln!("tangent segments at directions {enter:.6} and {leave:.6}");
    }

    let t = CMatrix::from_real_rows(&[&[0.0, 2.0], &[0.0, 0.0]])?;
    let ft = parse_function("mobius 1 -2 2 -1")?.eval_matrix(&t)?;
    let curve = boundary(&ft, 360)?;
    let worst = curve.points().map(|p| td.excess(p)).fold(f64::NEG_INFINITY, f64::max);
    eprintln!("max teardrop excess over 360 points of W(f(T)): {worst:.3e}");

    if (rightmost - 1.25).abs() > 1e-12 || worst > 1e-6 {
        return Err("teardrop geometry mismatch".into());
    }
    let zs: Vec<Complex64> = outline.iter().map(|p| p.1).collect();
    Ok(plot::svg(&zs, "teardrop(0.5)"))
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    print!("{}", run_example()?);
    Ok(())
}
