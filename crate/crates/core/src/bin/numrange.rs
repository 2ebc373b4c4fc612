use std::fs;
use std::io::{self, Read};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use numrange::cli::commands::{self, ClarkSource, CliError, CommandOutput, PlotFormat, DEFAULT_SEED, EXIT_USAGE};
use numrange::verify::Suite;

#[derive(Parser)]
#[command(name = "numrange", version, about = "Numerical ranges, Blaschke products and mapping-theorem checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Svg,
}

impl From<Format> for PlotFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Csv => PlotFormat::Csv,
            Format::Svg => PlotFormat::Svg,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    BergerStampfli,
    Power,
    LocalIneq,
    OperatorIneq,
    RegionS,
    Drury,
    Props52,
    All,
}

impl SuiteArg {
    fn suite(self) -> Option<Suite> {
        match self {
            SuiteArg::BergerStampfli => Some(Suite::BergerStampfli),
            SuiteArg::Power => Some(Suite::Power),
            SuiteArg::LocalIneq => Some(Suite::LocalInequality),
            SuiteArg::OperatorIneq => Some(Suite::OperatorInequality),
            SuiteArg::RegionS => Some(Suite::RegionS),
            SuiteArg::Drury => Some(Suite::Drury),
            SuiteArg::Props52 => Some(Suite::Props52),
            SuiteArg::All => None,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Boundary of the numerical range as CSV or SVG.
    Range {
        /// Matrix file, or `-` for standard input.
        matrix: PathBuf,
        #[arg(long, default_value_t = 360)]
        angles: usize,
        #[arg(long = "out", value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Numerical radius, 15 decimals.
    Radius {
        matrix: PathBuf,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Clark decomposition of a Blaschke product vanishing at the origin.
    Clark {
        /// Function expression, e.g. `blaschke 1 0 0.5+0.2i`.
        #[arg(required_unless_present = "random_degree")]
        function: Option<String>,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        gamma: String,
        #[arg(long, default_value_t = 100)]
        check_points: usize,
        /// Use a seeded random product of this degree instead of an expression.
        #[arg(long, conflicts_with = "function")]
        random_degree: Option<usize>,
        #[arg(long, env = "NUMRANGE_SEED", default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Boundary of the teardrop region for a given alpha.
    Teardrop {
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, default_value_t = 720)]
        angles: usize,
        #[arg(long = "out", value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run verification suites; exit 1 on any failure.
    Verify {
        #[arg(long, value_enum)]
        suite: SuiteArg,
        #[arg(long, default_value_t = 500)]
        trials: usize,
        #[arg(long, env = "NUMRANGE_SEED", default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        json: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Hill-climb for the largest w(f(T)) over matrices with w(T) = 1.
    Search {
        function: String,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long, default_value_t = 2000)]
        iters: usize,
        #[arg(long, env = "NUMRANGE_SEED", default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Write the witness matrix here instead of standard output.
        #[arg(long)]
        witness: Option<PathBuf>,
    },
}

fn read_input(path: &PathBuf) -> Result<String, CliError> {
    let result = if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map(|_| s)
    } else {
        fs::read_to_string(path)
    };
    result.map_err(|e| CliError { code: EXIT_USAGE, message: format!("{}: {e}", path.display()) })
}

fn emit(text: &str, output: Option<&PathBuf>) -> Result<(), CliError> {
    match output {
        Some(path) => fs::write(path, text)
            .map_err(|e| CliError { code: EXIT_USAGE, message: format!("{}: {e}", path.display()) }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<i32, CliError> {
    let (out, target): (CommandOutput, Option<PathBuf>) = match cli.command {
        Command::Range { matrix, angles, format, output } => {
            (commands::range(&read_input(&matrix)?, angles, format.into())?, output)
        }
        Command::Radius { matrix, tol } => (commands::radius(&read_input(&matrix)?, tol)?, None),
        Command::Clark { function, gamma, check_points, random_degree, seed } => {
            let source = match (function, random_degree) {
                (_, Some(degree)) => ClarkSource::Random { degree, seed },
                (Some(text), None) => ClarkSource::Expression(text),
                (None, None) => unreachable!("clap requires one of them"),
            };
            (commands::clark(&source, &gamma, check_points)?, None)
        }
        Command::Teardrop { alpha, angles, format, output } => {
            (commands::teardrop(&alpha, angles, format.into())?, output)
        }
        Command::Verify { suite, trials, seed, json, output } => {
            (commands::verify(suite.suite(), trials, seed, json)?, output)
        }
        Command::Search { function, dim, iters, seed, witness } => {
            let result = commands::search(&function, dim, iters, seed)?;
            print!("{}", result.summary);
            match witness {
                Some(path) => emit(&result.witness, Some(&path))?,
                None => print!("{}", result.witness),
            }
            return Ok(commands::EXIT_OK);
        }
    };
    emit(&out.text, target.as_ref())?;
    Ok(out.code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code as u8)
        }
    }
}
