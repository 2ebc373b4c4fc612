// Runs every verification suite with a small trial count and prints the
// reports, then re-checks the recorded worst witness of each.
//
// ```text
// cargo run --example verify_suites -- 200 7
// ```
// (trials, seed; defaults 25 and 42).

use numrange::verify::{parse_reports, reports_to_text, run_all, witness_residual};

pub fn run_example(trials: usize, seed: u64) -> Result<(), Box<dyn std::error::Error>> {
    let reports = run_all(trials, seed);
    let text = reports_to_text(&reports);
    print!("{text}");

    for report in parse_reports(&text)? {
        if let Some(witness) = &report.witness {
            let again = witness_residual(report.suite, witness)?;
            println!("# {}: reloaded witness residual {:e} (reported {:e})", report.suite.name(), again.residual, report.worst_residual);
        }
    }
    if reports.iter().any(|r| !r.passed()) {
        return Err("a suite failed".into());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let trials = args.next().map(|a| a.parse()).transpose()?.unwrap_or(25);
    let seed = args.next().map(|a| a.parse()).transpose()?.unwrap_or(42);
    run_example(trials, seed)
}
