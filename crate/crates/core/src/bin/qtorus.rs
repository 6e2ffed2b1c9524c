//! Command-line front end: dimension reports, Hochschild tables, structural
//! verifications and seminorm evaluations for quantum torus contexts.

use clap::{Parser, Subcommand, ValueEnum};
use qtorus::cli::{self, Failure, OutputFormat};
use qtorus::dimensions::Flavor;
use qtorus::koszul::Direction;
use qtorus::seminorms::SmoothWeight;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "qtorus",
    about = "Exact homological computations for quantum torus algebras",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Text,
}

impl From<FormatArg> for OutputFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Json => OutputFormat::Json,
            FormatArg::Text => OutputFormat::Text,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FlavorArg {
    Regular,
    Holomorphic,
    Smooth,
}

impl From<FlavorArg> for Flavor {
    fn from(f: FlavorArg) -> Self {
        match f {
            FlavorArg::Regular => Flavor::Regular,
            FlavorArg::Holomorphic => Flavor::Holomorphic,
            FlavorArg::Smooth => Flavor::Smooth,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum DirectionArg {
    Homology,
    Cohomology,
}

#[derive(Clone, Copy, ValueEnum)]
enum WeightArg {
    /// literal weight |a|^k (constants get seminorm 0 for k >= 1)
    Paper,
    /// shifted weight (1+|a|)^k
    Shifted,
}

#[derive(Subcommand)]
enum Command {
    /// Certified dg / w.dg / db / w.db report for one algebra flavor
    Report {
        /// context file
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "regular")]
        flavor: FlavorArg,
        /// entry bound for the incomplete-search fallback (several forms)
        #[arg(long, default_value_t = 2)]
        bound: i64,
        #[arg(long, value_enum, default_value = "json")]
        format: FormatArg,
    },
    /// Hochschild homology or cohomology table with twisted coefficients
    Hh {
        #[arg(long)]
        input: PathBuf,
        /// id | alpha | custom:c,m1,..;c,m1,..
        #[arg(long, default_value = "id")]
        twist: String,
        #[arg(long, value_enum, default_value = "homology")]
        direction: DirectionArg,
        /// box radius for finite dimension counts
        #[arg(long = "box", default_value_t = 2)]
        box_radius: i64,
        #[arg(long, value_enum, default_value = "json")]
        format: FormatArg,
    },
    /// Structural verification: koszul-d2 | duality | oracle | continuity
    Verify {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        check: String,
        /// twist for the oracle check
        #[arg(long, default_value = "id")]
        twist: String,
        #[arg(long, default_value_t = cli::DEFAULT_SEED)]
        seed: u64,
        /// scan box for duality counterexamples
        #[arg(long = "box", default_value_t = 3)]
        box_radius: i64,
        /// leg-weight budget for the bar oracle
        #[arg(long, default_value_t = 3)]
        oracle_bound: i64,
        #[arg(long, value_enum, default_value = "json")]
        format: FormatArg,
    },
    /// Seminorm evaluation of a numeric element
    Seminorm {
        #[arg(long)]
        input: PathBuf,
        /// element terms: "(a1,..,an):coeff; ..."
        #[arg(long)]
        terms: String,
        /// holomorphic seminorm radius
        #[arg(long, default_value_t = 1.0)]
        rho: f64,
        /// smooth seminorm order
        #[arg(long, default_value_t = 0)]
        k: u32,
        #[arg(long, value_enum, default_value = "paper")]
        weight: WeightArg,
        #[arg(long, value_enum, default_value = "json")]
        format: FormatArg,
    },
}

fn read_input(path: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure {
        message: format!("cannot read {}: {e}", path.display()),
        exit: cli::EXIT_INVALID,
    })
}

fn run(cmd: Command) -> Result<cli::Outcome, Failure> {
    match cmd {
        Command::Report { input, flavor, bound, format } => {
            cli::cmd_report(&read_input(&input)?, flavor.into(), bound, format.into())
        }
        Command::Hh { input, twist, direction, box_radius, format } => {
            let dir = match direction {
                DirectionArg::Homology => Direction::Homology,
                DirectionArg::Cohomology => Direction::Cohomology,
            };
            cli::cmd_hh(&read_input(&input)?, &twist, dir, box_radius, format.into())
        }
        Command::Verify { input, check, twist, seed, box_radius, oracle_bound, format } => {
            cli::cmd_verify(
                &read_input(&input)?,
                &check,
                &twist,
                seed,
                box_radius,
                oracle_bound,
                format.into(),
            )
        }
        Command::Seminorm { input, terms, rho, k, weight, format } => {
            let w = match weight {
                WeightArg::Paper => SmoothWeight::Paper,
                WeightArg::Shifted => SmoothWeight::Shifted,
            };
            cli::cmd_seminorm(&read_input(&input)?, &terms, rho, k, w, format.into())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(outcome) => {
            print!("{}", outcome.document);
            ExitCode::from(outcome.exit as u8)
        }
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.exit as u8)
        }
    }
}
