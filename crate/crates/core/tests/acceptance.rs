//! Acceptance criteria, run in sequence so each one is timed on an idle
//! process. One `PASS`/`FAIL` line per criterion is written straight to
//! standard error (visible without `--nocapture`).

use std::io::Write;
use std::process::Command;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use numrange::blaschke::BlaschkeProduct;
use numrange::calculus::DiskFunction;
use numrange::linalg::{operator_norm, CMatrix};
use numrange::numrange::{boundary, numerical_radius};
use numrange::regions::{drury_params_inner, drury_params_outer, Teardrop};
use numrange::verify::{
    check_berger_stampfli, check_local_inequality, check_operator_inequality, check_power_inequality, local_inequality_residual,
    region_s_grid, sharpness_check, RandomModel, SHARPNESS_OFFSET,
};

const SEED: u64 = 42;

type Outcome = Result<String, String>;

fn ensure(ok: bool, message: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(message())
    }
}

fn jordan2() -> CMatrix {
    CMatrix::from_real_rows(&[&[0.0, 2.0], &[0.0, 0.0]]).unwrap()
}

fn teardrop_function() -> DiskFunction {
    DiskFunction::mobius(Complex64::new(1.0, 0.0), Complex64::new(-2.0, 0.0), Complex64::new(2.0, 0.0), Complex64::new(-1.0, 0.0))
        .unwrap()
}

fn nilpotent_block() -> Outcome {
    let t = jordan2();
    let norm = operator_norm(&t);
    let w = numerical_radius(&t, 1e-12);
    let curve = boundary(&t, 360).map_err(|e| e.to_string())?;
    let off = curve.points().map(|p| (p.norm() - 1.0).abs()).fold(0.0, f64::max);
    ensure((norm - 2.0).abs() <= 1e-9, || format!("norm {norm}"))?;
    ensure((w - 1.0).abs() <= 1e-9, || format!("radius {w}"))?;
    ensure(curve.len() == 360 && off <= 1e-8, || format!("boundary off circle by {off:e}"))?;
    Ok(format!("norm {norm:.12}, w {w:.12}, 360 boundary points within {off:.1e} of the circle"))
}

fn sharp_teardrop() -> Outcome {
    let t = jordan2();
    let ft = teardrop_function().eval_matrix(&t).map_err(|e| e.to_string())?;
    let expected = &CMatrix::identity(2).scale_real(0.5) - &t.scale_real(0.75);
    let entry_error = (&ft - &expected).max_abs();
    let w = numerical_radius(&ft, 1e-12);
    let alpha = 0.5;
    let bound = 1.0 + alpha - alpha * alpha;
    let td = Teardrop::new(Complex64::new(alpha, 0.0)).map_err(|e| e.to_string())?;
    let excess = boundary(&ft, 360)
        .map_err(|e| e.to_string())?
        .points()
        .map(|p| td.excess(p))
        .fold(f64::NEG_INFINITY, f64::max);
    ensure(entry_error <= 1e-12, || format!("f(T) entries off by {entry_error:e}"))?;
    ensure((w - 1.25).abs() <= 1e-9 && (w - bound).abs() <= 1e-9, || format!("w(f(T)) = {w}"))?;
    ensure(excess <= 1e-6, || format!("teardrop excess {excess:e}"))?;
    Ok(format!("f(T) entry error {entry_error:.1e}, w(f(T)) {w:.12} = bound {bound}, max excess {excess:.1e}"))
}

fn clark_decompositions() -> Outcome {
    let model = RandomModel::new(SEED);
    let mut worst_sum: f64 = 0.0;
    let mut worst_residual: f64 = 0.0;
    let mut min_weight = f64::INFINITY;
    for k in 0..100 {
        let mut rng = model.trial_rng(0xC1A2, k);
        let b: BlaschkeProduct = model.sample_blaschke(&mut rng, 6);
        let gamma = model.sample_unimodular(&mut rng);
        let clark = b.clark_decomposition(gamma).map_err(|e| e.to_string())?;
        let points: Vec<Complex64> = (0..100).map(|_| model.sample_disk_point(&mut rng, 0.9)).collect();
        worst_residual = worst_residual.max(clark.identity_residual(&b, &points).map_err(|e| e.to_string())?);
        worst_sum = worst_sum.max((clark.total_weight() - 1.0).abs());
        min_weight = clark.atoms.iter().map(|a| a.weight).fold(min_weight, f64::min);
        ensure(clark.atoms.len() == b.degree(), || format!("product {k}: {} atoms for degree {}", clark.atoms.len(), b.degree()))?;
    }
    ensure(min_weight > 1e-12, || format!("weight {min_weight:e}"))?;
    ensure(worst_sum <= 1e-10, || format!("|sum - 1| = {worst_sum:e}"))?;
    ensure(worst_residual < 1e-9, || format!("identity residual {worst_residual:e}"))?;
    Ok(format!("100 products: min weight {min_weight:.3e}, max |sum - 1| {worst_sum:.1e}, max residual {worst_residual:.1e}"))
}

fn pointwise_inequality() -> Outcome {
    let report = check_local_inequality(10_000, SEED);
    let local: f64 = report.stat("max.local").and_then(|v| v.parse().ok()).ok_or("missing local statistic")?;
    let x = [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)];
    let t = jordan2();
    let tx = t.mul_vec(&x);
    let lhs = tx.iter().map(|z| z.norm_sqr()).sum::<f64>();
    let equality = local_inequality_residual(&t, &x);
    ensure(report.failures == 0 && report.errors == 0, || format!("{} failures", report.failures))?;
    ensure(local <= 1e-9, || format!("worst residual {local:e}"))?;
    ensure((lhs - 4.0).abs() <= 1e-12 && equality.abs() <= 1e-12, || format!("equality case {lhs} vs 4"))?;
    Ok(format!("10^4 pairs, 0 violations, worst residual {local:.3e}; equality case 4 = 4 (residual {equality:.1e})"))
}

fn operator_inequality_and_region() -> Outcome {
    let report = check_operator_inequality(100, SEED);
    ensure(report.passed(), || format!("{} failures, worst {:e}", report.failures, report.worst_residual))?;
    let mut worst_sharp = f64::NEG_INFINITY;
    let mut case1_det: f64 = 0.0;
    let ts = region_s_grid(21);
    for &t in &ts {
        let check = sharpness_check(t, SHARPNESS_OFFSET).map_err(|e| e.to_string())?;
        ensure(check.min_eigenvalue < 0.0 && check.refutes(), || format!("t = {t}: lambda_min {}", check.min_eigenvalue))?;
        worst_sharp = worst_sharp.max(check.min_eigenvalue);
        if t <= 0.5 {
            case1_det = case1_det.max((check.determinant.re + 0.04).abs());
        }
    }
    ensure(case1_det <= 1e-12, || format!("nilpotent witness determinant off by {case1_det:e}"))?;
    Ok(format!(
        "min lambda_min over 21 t x 100 T: {:.3e}; {} sharpness witnesses, max lambda_min {worst_sharp:.3e}, det error {case1_det:.1e}",
        -report.worst_residual,
        ts.len()
    ))
}

fn parametrization_identities() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut checked = 0;
    for i in 0..50 {
        let alpha = 0.98 * i as f64 / 49.0;
        for j in 0..50 {
            let cos = -1.0 + 2.0 * j as f64 / 49.0;
            let theta = cos.acos();
            if cos <= alpha {
                let p = drury_params_outer(alpha, theta).map_err(|e| e.to_string())?;
                ensure((0.5 - 1e-12..=1.0 + 1e-12).contains(&p.t), || format!("outer t = {}", p.t))?;
                worst = worst.max((p.s - (2.0 * p.t - 1.0)).abs()).max((p.omega.norm() - 1.0).abs());
                checked += 1;
            }
            if cos >= alpha {
                let p = drury_params_inner(alpha, theta).map_err(|e| e.to_string())?;
                ensure((-1e-12..=0.5 + 1e-12).contains(&p.t), || format!("inner t = {}", p.t))?;
                worst = worst.max((p.s - (p.t * p.t - 0.25)).abs()).max((p.omega.norm() - 1.0).abs());
                checked += 1;
            }
        }
        let seam = alpha.acos();
        let (o, n) = (
            drury_params_outer(alpha, seam).map_err(|e| e.to_string())?,
            drury_params_inner(alpha, seam).map_err(|e| e.to_string())?,
        );
        worst = worst.max((o.t - n.t).abs()).max((o.s - n.s).abs()).max((o.omega - n.omega).norm());
    }
    ensure(worst <= 1e-12, || format!("identity defect {worst:e}"))?;
    Ok(format!("{checked} grid evaluations plus 50 seam points, max defect {worst:.1e}"))
}

fn mapping_and_power() -> Outcome {
    let b = check_berger_stampfli(1000, SEED);
    let p = check_power_inequality(1000, 6, SEED);
    ensure(b.passed(), || format!("mapping suite: {} failures", b.failures))?;
    ensure(p.passed(), || format!("power suite: {} failures", p.failures))?;
    Ok(format!(
        "1000 + 1000 trials, 0 failures; worst residuals {:.3e} and {:.3e}, {} scale retries",
        b.worst_residual, p.worst_residual, b.scale_retries
    ))
}

fn full_verify_run() -> Outcome {
    let run = || -> Result<(Vec<u8>, Duration), String> {
        let start = Instant::now();
        let out = Command::new(env!("CARGO_BIN_EXE_numrange"))
            .args(["verify", "--suite", "all", "--trials", "500", "--seed", "42"])
            .env_remove("NUMRANGE_SEED")
            .output()
            .map_err(|e| e.to_string())?;
        let elapsed = start.elapsed();
        ensure(out.status.code() == Some(0), || format!("exit status {:?}", out.status.code()))?;
        ensure(elapsed < Duration::from_secs(120), || format!("took {elapsed:?}"))?;
        Ok((out.stdout, elapsed))
    };
    let (first, t1) = run()?;
    let (second, t2) = run()?;
    ensure(first == second, || "reruns differ".into())?;
    let blocks = String::from_utf8_lossy(&first).matches("status: PASS").count();
    ensure(blocks == 7, || format!("{blocks} passing suites"))?;
    Ok(format!("exit 0 twice ({:.1} s, {:.1} s), {} bytes, byte-identical", t1.as_secs_f64(), t2.as_secs_f64(), first.len()))
}

#[test]
fn acceptance_criteria() {
    let criteria: [(&str, u64, fn() -> Outcome); 8] = [
        ("nilpotent block: norm 2, radius 1, boundary on the circle", 1, nilpotent_block),
        ("sharp teardrop witness for (1 - 2z)/(2 - z)", 1, sharp_teardrop),
        ("Clark decompositions of random Blaschke products", 5, clark_decompositions),
        ("pointwise norm inequality on 10^4 pairs", 30, pointwise_inequality),
        ("operator inequality and region S sharpness", 20, operator_inequality_and_region),
        ("parametrization identities on a 50x50 grid", 1, parametrization_identities),
        ("mapping theorem and power inequality suites", 60, mapping_and_power),
        ("full verify run, deterministic", 240, full_verify_run),
    ];
    let mut stderr = std::io::stderr();
    let mut failed = Vec::new();
    for (k, (name, limit, check)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|detail| {
            if elapsed.as_secs_f64() < limit as f64 {
                Ok(detail)
            } else {
                Err(format!("{detail}; runtime {:.2} s over the {limit} s limit", elapsed.as_secs_f64()))
            }
        });
        let line = match &outcome {
            Ok(detail) => format!("acceptance {}: PASS  {name} ({:.2} s) {detail}\n", k + 1, elapsed.as_secs_f64()),
            Err(reason) => format!("acceptance {}: FAIL  {name} ({:.2} s) {reason}\n", k + 1, elapsed.as_secs_f64()),
        };
        let _ = stderr.write_all(line.as_bytes());
        if outcome.is_err() {
            failed.push(k + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

