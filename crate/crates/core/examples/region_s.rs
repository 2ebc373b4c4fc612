// The parameter region `S` of pairs `(t, s)` with `I + t(T + T*) + sT*T ≥ 0`
// whenever `w(T) ≤ 1`, its sharpness witnesses and the parametrizations that
// land on its boundary.
//
// ```text
// cargo run --example region_s
// ```

use std::f64::consts::PI;

use numrange::linalg::{hermitian_eig, CMatrix};
use numrange::regions::{drury_congruence, drury_params_inner, drury_params_outer, q_form, region_s_floor};
use numrange::verify::{sharpness_check, RandomModel, SHARPNESS_OFFSET};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    println!("   t    floor   worst lambda_min (100 T)   lambda_min below floor");
    let model = RandomModel::new(11);
    let samples: Vec<CMatrix> = (0..100).map(|k| model.sample_normalized(&mut model.trial_rng(0, k))).collect();
    let mut ok = true;
    for t in [0.0, 0.25, 0.5, 0.75, 1.0, 2.0, 3.0] {
        let floor = region_s_floor(t)?;
        let mut worst = f64::INFINITY;
        for sample in &samples {
            worst = worst.min(hermitian_eig(&q_form(sample, t, floor), 1e-9)?.min());
        }
        let sharp = sharpness_check(t, SHARPNESS_OFFSET)?;
        ok &= worst >= -1e-8 && sharp.refutes();
        println!("{t:5.2} {floor:8.4} {worst:18.3e} {:24.3e}", sharp.min_eigenvalue);
    }

    let case1 = sharpness_check(0.3, SHARPNESS_OFFSET)?;
    println!("det Q for the nilpotent witness at offset {SHARPNESS_OFFSET}: {:.15}", case1.determinant.re);

    // Parametrizations: outer directions land on s = 2t − 1, inner on s = t² − 1/4.
    let alpha = 0.4;
    let outer = drury_params_outer(alpha, 0.8 * PI)?;
    let inner = drury_params_inner(alpha, 0.2 * PI)?;
    println!("outer: t = {:.6}, s - (2t - 1) = {:.1e}, |omega| = {:.15}", outer.t, outer.s - (2.0 * outer.t - 1.0), outer.omega.norm());
    println!("inner: t = {:.6}, s - (t^2 - 1/4) = {:.1e}, |omega| = {:.15}", inner.t, inner.s - (inner.t * inner.t - 0.25), inner.omega.norm());

    let t = &samples[0];
    let (lhs, rhs) = drury_congruence(t, alpha, 0.8 * PI)?;
    println!("congruence residual: {:.3e}", (&lhs - &rhs).max_abs());

    if !ok {
        return Err("region S check failed".into());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
