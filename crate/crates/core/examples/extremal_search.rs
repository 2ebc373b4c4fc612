// Lower-bound search for `sup w(f(T))` over `w(T) = 1`. For
// `f(z) = (1 − 2z)/(2 − z)` the nilpotent seed already reaches 5/4; for `z²`
// the search stays below 1.
//
// ```text
// cargo run --example extremal_search
// ```

use numrange::cli::expr::parse_function;
use numrange::cli::matrix_file::format_matrix;
use numrange::verify::{extremal_search, nilpotent_seed, SearchSettings};

pub fn run_example(iterations: usize) -> Result<(), Box<dyn std::error::Error>> {
    for (expr, dim) in [("mobius 1 -2 2 -1", 2), ("poly 0 0 1", 3), ("blaschke 1 0 0.5", 2)] {
        let f = parse_function(expr)?;
        let result = extremal_search(&f, dim, iterations, 1, &[nilpotent_seed(dim)], SearchSettings::default());
        println!("{expr:>20}  dim {dim}  best w(f(T)) = {:.10}  ({} evaluations, {} restarts)", result.best_w, result.evaluations, result.restarts);
        if expr.starts_with("mobius") {
            print!("{}", format_matrix(&result.witness));
            if result.best_w < 1.25 - 1e-6 {
                return Err("search missed the known 5/4 witness".into());
            }
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example(1500)
}
