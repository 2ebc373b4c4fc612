//! Command handlers. Each returns the text destined for standard output (or
//! the output file) together with an exit code, or a [`CliError`] carrying the
//! code and the message for standard error.

use std::fmt::Write as _;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::blaschke::{disk_test_points, BlaschkeError, BlaschkeProduct};
use crate::calculus::DiskFunction;
use crate::cli::expr::parse_function;
use crate::cli::matrix_file::{format_complex, format_matrix, parse_complex, parse_matrix};
use crate::cli::plot;
use crate::numrange::{boundary_par, try_numerical_radius};
use crate::regions::Teardrop;
use crate::verify::{extremal_search, nilpotent_seed, reports_to_text, run_all, run_suite, RandomModel, SearchSettings, Suite};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;
pub const EXIT_PRECONDITION: i32 = 4;

/// Seed used when neither `--seed` nor `NUMRANGE_SEED` is given.
pub const DEFAULT_SEED: u64 = 42;

#[derive(Debug, Error, Clone, PartialEq)]
#[error("{message}")]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        Self { code: EXIT_USAGE, message: message.into() }
    }

    fn numeric(message: impl Into<String>) -> Self {
        Self { code: EXIT_NUMERIC, message: message.into() }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CommandOutput {
    pub text: String,
    pub code: i32,
}

impl CommandOutput {
    fn ok(text: String) -> Self {
        Self { text, code: EXIT_OK }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlotFormat {
    Csv,
    Svg,
}

/// Boundary of `W(T)` for the matrix in `matrix_text`.
pub fn range(matrix_text: &str, angles: usize, format: PlotFormat) -> Result<CommandOutput, CliError> {
    let t = parse_matrix(matrix_text).map_err(|e| CliError::usage(format!("matrix file: {e}")))?;
    let curve = boundary_par(&t, angles).map_err(|e| CliError::numeric(e.to_string()))?;
    let text = match format {
        PlotFormat::Csv => plot::range_csv(&curve),
        PlotFormat::Svg => {
            let points: Vec<Complex64> = curve.points().collect();
            plot::svg(&points, &format!("numerical range, {angles} directions"))
        }
    };
    Ok(CommandOutput::ok(text))
}

/// `w(T)` printed with 15 decimals.
pub fn radius(matrix_text: &str, tol: f64) -> Result<CommandOutput, CliError> {
    if !(tol > 0.0) {
        return Err(CliError::usage("--tol must be positive"));
    }
    let t = parse_matrix(matrix_text).map_err(|e| CliError::usage(format!("matrix file: {e}")))?;
    let w = try_numerical_radius(&t, tol).map_err(|e| CliError::numeric(e.to_string()))?;
    Ok(CommandOutput::ok(format!("{w:.15}\n")))
}

/// Where the Blaschke product for `clark` comes from.
#[derive(Debug, Clone, PartialEq)]
pub enum ClarkSource {
    Expression(String),
    Random { degree: usize, seed: u64 },
}

pub fn clark(source: &ClarkSource, gamma_text: &str, check_points: usize) -> Result<CommandOutput, CliError> {
    let gamma = parse_complex(gamma_text).map_err(|e| CliError::usage(format!("--gamma: {e}")))?;
    let b = match source {
        ClarkSource::Expression(text) => match parse_function(text).map_err(|e| CliError::usage(e.to_string()))? {
            DiskFunction::Blaschke(b) => b,
            _ => {
                return Err(CliError {
                    code: EXIT_PRECONDITION,
                    message: "Clark decomposition needs a `blaschke ...` expression".into(),
                })
            }
        },
        ClarkSource::Random { degree, seed } => {
            if *degree == 0 {
                return Err(CliError::usage("--random-degree must be at least 1"));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            RandomModel::new(*seed).sample_blaschke_of_degree(&mut rng, *degree)
        }
    };
    let decomposition = b.clark_decomposition(gamma).map_err(|e| match e {
        BlaschkeError::RequiresVanishingAtZero => CliError { code: EXIT_PRECONDITION, message: e.to_string() },
        BlaschkeError::NotUnimodular(_) => CliError::usage(format!("--gamma: {e}")),
        other => CliError::numeric(other.to_string()),
    })?;
    let points = disk_test_points(check_points, 0.9);
    let residual = decomposition.identity_residual(&b, &points).map_err(|e| CliError::numeric(e.to_string()))?;

    let mut text = String::new();
    let _ = writeln!(text, "function: {}", describe_blaschke(&b));
    let _ = writeln!(text, "gamma: {}", format_complex(gamma));
    for (k, atom) in decomposition.atoms.iter().enumerate() {
        let _ = writeln!(text, "atom {}: zeta={} weight={:.17e}", k + 1, format_complex(atom.zeta), atom.weight);
    }
    let _ = writeln!(text, "sum_weights: {:.17e}", decomposition.total_weight());
    let _ = writeln!(text, "check_points: {}", points.len());
    let _ = writeln!(text, "max_residual: {residual:e}");
    Ok(CommandOutput::ok(text))
}

fn describe_blaschke(b: &BlaschkeProduct) -> String {
    crate::cli::expr::format_function(&DiskFunction::Blaschke(b.clone()))
}

/// Boundary of the teardrop region `td(α)`.
pub fn teardrop(alpha_text: &str, angles: usize, format: PlotFormat) -> Result<CommandOutput, CliError> {
    let alpha = parse_complex(alpha_text).map_err(|e| CliError::usage(format!("--alpha: {e}")))?;
    let td = Teardrop::new(alpha).map_err(|e| CliError::usage(format!("--alpha: {e}")))?;
    if angles < 8 {
        return Err(CliError::usage("--angles must be at least 8"));
    }
    let points = td.boundary(angles);
    let text = match format {
        PlotFormat::Csv => plot::teardrop_csv(&points),
        PlotFormat::Svg => {
            let zs: Vec<Complex64> = points.iter().map(|p| p.1).collect();
            plot::svg(&zs, &format!("teardrop({})", format_complex(alpha)))
        }
    };
    Ok(CommandOutput::ok(text))
}

/// Runs one suite (or all of them when `suite` is `None`); exit 1 on any failure.
pub fn verify(suite: Option<Suite>, trials: usize, seed: u64, json: bool) -> Result<CommandOutput, CliError> {
    if trials == 0 {
        return Err(CliError::usage("--trials must be at least 1"));
    }
    let reports = match suite {
        Some(s) => vec![run_suite(s, trials, seed)],
        None => run_all(trials, seed),
    };
    let passed = reports.iter().all(|r| r.passed());
    let text = if json {
        let mut s = serde_json::to_string_pretty(&reports).map_err(|e| CliError::numeric(e.to_string()))?;
        s.push('\n');
        s
    } else {
        reports_to_text(&reports)
    };
    Ok(CommandOutput { text, code: if passed { EXIT_OK } else { EXIT_VERIFY_FAILED } })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchOutput {
    pub summary: String,
    /// Best matrix in matrix-file format.
    pub witness: String,
}

/// Hill-climb for `max w(f(T))`; the nilpotent seed matrix is always tried first.
pub fn search(expr_text: &str, dim: usize, iterations: usize, seed: u64) -> Result<SearchOutput, CliError> {
    let f = parse_function(expr_text).map_err(|e| CliError::usage(e.to_string()))?;
    if dim == 0 {
        return Err(CliError::usage("--dim must be at least 1"));
    }
    if iterations == 0 {
        return Err(CliError::usage("--iters must be at least 1"));
    }
    let seeds = if dim >= 2 { vec![nilpotent_seed(dim)] } else { Vec::new() };
    let result = extremal_search(&f, dim, iterations, seed, &seeds, SearchSettings::default());
    if !result.best_w.is_finite() {
        return Err(CliError::numeric("no candidate could be evaluated"));
    }
    let mut summary = String::new();
    let _ = writeln!(summary, "best_w: {:.15}", result.best_w);
    let _ = writeln!(summary, "evaluations: {}", result.evaluations);
    let _ = writeln!(summary, "restarts: {}", result.restarts);
    let _ = writeln!(summary, "skipped: {}", result.skipped);
    Ok(SearchOutput { summary, witness: format_matrix(&result.witness) })
}
