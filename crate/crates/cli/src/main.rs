//! `zeta`: exact Igusa, motivic and monodromy zeta functions from the
//! command line.

mod commands;
mod output;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use zeta_core::counting::DEFAULT_BUDGET;
use zeta_core::ZetaError;

use output::Format;

#[derive(Parser)]
#[command(name = "zeta", version, about = "Igusa p-adic, motivic and monodromy zeta functions")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
pub(crate) struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Tsv, global = true)]
    pub format: Format,
    /// Maximum number of points a single enumeration may visit.
    #[arg(long, env = "ZETA_BUDGET", default_value_t = DEFAULT_BUDGET, global = true)]
    pub budget: u64,
}

#[derive(Args, Clone)]
pub(crate) struct PolyArgs {
    /// Polynomial with integer coefficients, e.g. "y^2 - x^3".
    #[arg(long)]
    pub poly: String,
    /// Comma-separated variable order (default: order of first appearance).
    #[arg(long)]
    pub vars: Option<String>,
    #[arg(long)]
    pub prime: u64,
}

#[derive(Args, Clone)]
pub(crate) struct ResArgs {
    /// Bundled dataset name (cusp, parabola, line, cusp_bad) or a JSON file.
    #[arg(long)]
    pub resolution: String,
}

#[derive(Subcommand)]
pub(crate) enum Command {
    /// N_m = #{x mod p^m : f(x) = 0 mod p^m} for m = 1..levels.
    Count {
        #[command(flatten)]
        poly: PolyArgs,
        #[arg(long)]
        levels: u32,
    },
    /// Number of m-jets on f = 0 over F_p for m = 0..levels.
    Jets {
        #[command(flatten)]
        poly: PolyArgs,
        #[arg(long)]
        levels: u32,
    },
    /// Truncated Poincaré series Q and zeta series Z in t = p^-s.
    Series {
        #[command(flatten)]
        poly: PolyArgs,
        #[arg(long)]
        levels: u32,
    },
    /// Rational function with the given denominator matching the zeta series.
    Fit {
        #[command(flatten)]
        poly: PolyArgs,
        #[arg(long)]
        levels: u32,
        /// Denominator factors "N:nu,..." standing for prod (1 - p^-nu t^N).
        #[arg(long)]
        factors: String,
        /// Numerator degree bound (default: sum of the N).
        #[arg(long)]
        degree_bound: Option<usize>,
        /// Extra coefficients that must agree.
        #[arg(long, default_value_t = 5)]
        margin: usize,
    },
    /// Denef's formula at a prime.
    Denef {
        #[command(flatten)]
        res: ResArgs,
        #[arg(long)]
        prime: u64,
    },
    /// Symbolic motivic zeta function; with --levels also the jet classes.
    Motivic {
        #[command(flatten)]
        res: ResArgs,
        #[arg(long)]
        levels: Option<usize>,
        /// Specialize the jet classes at this prime.
        #[arg(long, requires = "levels")]
        prime: Option<u64>,
    },
    /// L -> p specialization of the motivic zeta function, compared with Denef.
    Specialize {
        #[command(flatten)]
        res: ResArgs,
        #[arg(long)]
        prime: u64,
    },
    /// A'Campo monodromy zeta function at each declared point.
    Acampo {
        #[command(flatten)]
        res: ResArgs,
        /// Restrict to one point.
        #[arg(long)]
        point: Option<String>,
    },
    /// Actual poles of the Denef zeta function.
    Poles {
        #[command(flatten)]
        res: ResArgs,
        #[arg(long)]
        prime: u64,
    },
    /// Monodromy conjecture report.
    Check {
        #[command(flatten)]
        res: ResArgs,
        #[arg(long)]
        prime: u64,
    },
    /// Structural and consistency checks of a resolution file.
    Validate {
        #[command(flatten)]
        res: ResArgs,
    },
    /// Measure of arcs of ideal order exactly e.
    Measure {
        /// Bundled ideal name (blowup) or a JSON file.
        #[arg(long, conflicts_with_all = ["gens", "order"])]
        ideal: Option<String>,
        /// Comma-separated generators.
        #[arg(long, required_unless_present = "ideal")]
        gens: Option<String>,
        #[arg(long, requires = "gens")]
        order: Option<u32>,
        #[arg(long)]
        vars: Option<String>,
        #[arg(long)]
        prime: u64,
        /// Truncation level (default: the order).
        #[arg(long)]
        level: Option<u32>,
    },
}

/// 1 computational failure, 2 usage or input error, 3 budget exceeded.
fn exit_code(e: &ZetaError) -> u8 {
    match e {
        ZetaError::BudgetExceeded { .. } => 3,
        ZetaError::FitFailure { .. }
        | ZetaError::Ambiguous { .. }
        | ZetaError::ModelInconsistency { .. }
        | ZetaError::DivisionByZero
        | ZetaError::Unsupported(_) => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command, &cli.common) {
        Ok((text, status)) => {
            print!("{text}");
            ExitCode::from(status)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
