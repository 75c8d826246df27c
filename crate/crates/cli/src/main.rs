//! `dicelab`: exact dice and coin probabilities from the command line.

mod commands;
mod error;
mod render;
mod sheets;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dicelab_core::space::{DieSpec, SampleSpace, DEFAULT_ENUMERATION_CAP};
use dicelab_core::stats::DEFAULT_LISTING_CAP;

use crate::error::CliError;

#[derive(Parser)]
#[command(
    name = "dicelab",
    version,
    about = "Exact probabilities over dice and coin rolls"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Probability of an event
    Prob(ProbArgs),
    /// Mean and variance of a random variable, variance both ways
    Stats(StatsArgs),
    /// Distribution (or CDF) of a random variable
    Dist(DistArgs),
    /// Normal approximation error of the sum for 1..=d dice
    Clt(CltArgs),
    /// Reproduce the answers of one problem sheet (1-7)
    Sheet(SheetArgs),
    /// Time enumeration against convolution for sum distributions
    Bench(BenchArgs),
}

#[derive(Args, Clone)]
pub struct DieArgs {
    /// Die faces: `1-6`, or `value:weight` pairs such as `1:1,2:1,3:1,4:1,5:1,6:5`
    #[arg(long, value_name = "SPEC", conflicts_with = "coin")]
    faces: Option<String>,
    /// Use the fair coin with faces K (1) and Z (0)
    #[arg(long)]
    coin: bool,
}

impl DieArgs {
    pub fn die(&self) -> Result<DieSpec, CliError> {
        if self.coin {
            return Ok(DieSpec::coin());
        }
        match &self.faces {
            None => Ok(DieSpec::fair(1..=6)),
            Some(spec) => {
                let text = if spec.starts_with("faces=") {
                    spec.clone()
                } else {
                    format!("faces={spec}")
                };
                Ok(text.parse::<DieSpec>()?)
            }
        }
    }
}

#[derive(Args, Clone)]
pub struct SpaceArgs {
    #[command(flatten)]
    die: DieArgs,
    /// Number of rolls
    #[arg(short = 'd', long = "dice", default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    dice: u32,
    /// Largest sample space that will be enumerated
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
    cap: u64,
}

impl SpaceArgs {
    pub fn space(&self) -> Result<SampleSpace, CliError> {
        Ok(SampleSpace::new(self.die.die()?, self.dice as usize).with_cap(self.cap))
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Bars,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CdfArg {
    /// P(X <= h)
    Inclusive,
    /// P(X < h)
    Strict,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Engine {
    Auto,
    Enum,
    Conv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Switch {
    On,
    Off,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RuleArg {
    /// Solve Φ(z) = 0.6827
    Printed,
    /// Solve Φ(z) = Φ(1)
    Corrected,
}

#[derive(Args)]
pub struct ProbArgs {
    #[command(flatten)]
    space: SpaceArgs,
    /// Event expression, e.g. "d1 <= d2 <= d3"
    #[arg(long)]
    event: String,
    /// Also list the favorable outcomes in lexicographic order
    #[arg(long)]
    list: bool,
    /// Refuse listings longer than this
    #[arg(long, default_value_t = DEFAULT_LISTING_CAP)]
    list_cap: usize,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    #[arg(long)]
    header: bool,
}

#[derive(Args)]
pub struct StatsArgs {
    #[command(flatten)]
    space: SpaceArgs,
    /// Random variable expression
    #[arg(long, default_value = "sum")]
    rv: String,
}

#[derive(Args)]
pub struct DistArgs {
    #[command(flatten)]
    space: SpaceArgs,
    /// Random variable expression
    #[arg(long, default_value = "sum")]
    rv: String,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Print probabilities as reduced fractions
    #[arg(long)]
    exact: bool,
    /// Print the cumulative distribution instead of the masses
    #[arg(long, value_enum)]
    cdf: Option<CdfArg>,
    /// Print rows for every value in 0..N
    #[arg(long, value_name = "N")]
    pad: Option<i64>,
    #[arg(long, value_enum, default_value_t = Engine::Auto)]
    engine: Engine,
    /// Start csv output with `value,probability`
    #[arg(long)]
    header: bool,
}

#[derive(Args)]
pub struct CltArgs {
    #[command(flatten)]
    die: DieArgs,
    /// Largest number of dice
    #[arg(short = 'd', long = "dice", default_value_t = 4, value_parser = clap::value_parser!(u32).range(1..))]
    dice: u32,
    /// Continuity correction for the approximate masses
    #[arg(long, value_enum, default_value_t = Switch::On)]
    correction: Switch,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    #[arg(long)]
    header: bool,
    /// Also estimate sigma from a guessed inflection abscissa
    #[arg(long, value_name = "I")]
    inflection: Option<f64>,
    /// Mean used with --inflection (default: exact mean of the sum of d dice)
    #[arg(long, requires = "inflection")]
    mean: Option<f64>,
    #[arg(long, value_enum, default_value_t = RuleArg::Printed, requires = "inflection")]
    rule: RuleArg,
    /// Accept an inflection below the mean and report |sigma|
    #[arg(long, requires = "inflection")]
    absolute: bool,
}

#[derive(Args)]
pub struct SheetArgs {
    /// Sheet number
    #[arg(value_parser = clap::value_parser!(u8).range(1..=7))]
    n: u8,
    /// Sheet 4 only: search contiguous sum ranges for the fairest rule
    #[arg(long)]
    search_fair: bool,
}

#[derive(Args)]
pub struct BenchArgs {
    #[command(flatten)]
    die: DieArgs,
    /// First dice count
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    from: u32,
    /// Last dice count
    #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u32).range(1..))]
    to: u32,
    /// Largest sample space the enumeration column will run
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
    cap: u64,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    #[arg(long)]
    header: bool,
}

fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Prob(a) => commands::prob(&a),
        Command::Stats(a) => commands::stats(&a),
        Command::Dist(a) => commands::dist(&a),
        Command::Clt(a) => commands::clt(&a),
        Command::Sheet(a) => sheets::sheet(a.n, a.search_fair),
        Command::Bench(a) => commands::bench(&a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            // a closed pipe is not an error worth reporting
            let _ = stdout
                .write_all(out.as_bytes())
                .and_then(|_| stdout.flush());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
