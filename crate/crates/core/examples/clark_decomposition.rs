// Clark decomposition of a seeded random Blaschke product:
// `1/(1 − conj(γ)B(z)) = Σ c_k/(1 − conj(ζ_k) z)` with positive weights summing to 1.
//
// ```text
// cargo run --example clark_decomposition
// ```

use num_complex::Complex64;
use numrange::blaschke::{disk_test_points, BlaschkeProduct};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut zeros = vec![Complex64::new(0.0, 0.0)];
    for _ in 0..4 {
        let r = 0.9 * rng.random::<f64>().sqrt();
        zeros.push(Complex64::from_polar(r, rng.random_range(0.0..std::f64::consts::TAU)));
    }
    let b = BlaschkeProduct::new(Complex64::from_polar(1.0, 0.4), zeros)?;
    let gamma = Complex64::from_polar(1.0, 2.1);

    let clark = b.clark_decomposition(gamma)?;
    println!("degree {}, gamma = {gamma:.6}", b.degree());
    for atom in &clark.atoms {
        println!("  zeta = {:.9}  |B(zeta) - gamma| = {:.1e}  c = {:.12}", atom.zeta, (b.eval(atom.zeta)? - gamma).norm(), atom.weight);
    }
    let total = clark.total_weight();
    let residual = clark.identity_residual(&b, &disk_test_points(100, 0.9))?;
    println!("sum c_k = {total:.15}");
    println!("identity residual on 100 points, |z| <= 0.9: {residual:.3e}");

    if clark.atoms.iter().any(|a| a.weight <= 0.0) || (total - 1.0).abs() > 1e-10 || residual > 1e-9 {
        return Err("Clark decomposition out of tolerance".into());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
