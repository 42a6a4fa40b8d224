use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use baire::stats::{Engine, PredicateMode, DEFAULT_BUDGET};
use baire::SubshiftSpec;

mod commands;
mod output;

#[derive(Parser, Debug)]
#[command(name = "baire", version, about = "Scrambled-set constructions and ξ checkpoint verification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a prefix of a constructed point.
    Gen(GenArgs),
    /// ξ trajectory between two prefix dumps.
    Xi(XiArgs),
    /// Checkpoint verification for the cylinder construction.
    VerifySft(SftArgs),
    /// Checkpoint verification for the dense family.
    VerifyDense(DenseArgs),
    /// Checkpoint verification for the bounded-type construction.
    VerifySbt(SbtArgs),
    /// Distinctness witnesses for the dense family (g ≠ h and p ≠ q).
    Lemmas(LemmaArgs),
    /// Exact bound tables for a schedule.
    Bounds(BoundsArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Variant {
    Sft,
    Dense,
    Sbt,
}

#[derive(Args, Debug)]
struct Common {
    /// Seed for every random base and selector stream.
    #[arg(long, default_value_t = 0)]
    rng_seed: u64,
    /// Output file; CSV goes to stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct CheckArgs {
    /// First checkpoint ordinal.
    #[arg(long)]
    min_j: Option<usize>,
    /// Last checkpoint ordinal.
    #[arg(long)]
    max_j: Option<usize>,
    /// Symbol budget per pair.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Number of random point pairs.
    #[arg(long, default_value_t = 1)]
    trials: usize,
    #[arg(long, default_value = "window", value_parser = parse_predicate)]
    predicate: PredicateMode,
    #[arg(long, default_value = "runs", value_parser = parse_engine)]
    engine: Engine,
}

impl CheckArgs {
    fn js(&self, min: usize, max: usize) -> Result<Vec<usize>> {
        let lo = self.min_j.unwrap_or(min);
        let hi = self.max_j.unwrap_or(max);
        if lo > hi {
            bail!("--min-j {lo} exceeds --max-j {hi}");
        }
        Ok((lo..=hi).collect())
    }
}

#[derive(Args, Debug)]
struct GenArgs {
    #[arg(long, value_enum, default_value_t = Variant::Sft)]
    variant: Variant,
    #[arg(long)]
    basis: Option<PathBuf>,
    #[arg(long)]
    seed_config: Option<PathBuf>,
    /// Cylinder word, decimal symbols separated by spaces.
    #[arg(long, default_value = "0")]
    word: String,
    #[arg(long, default_value_t = 1)]
    p: usize,
    #[arg(long, default_value_t = 0)]
    g: u64,
    /// Number of symbols to write.
    #[arg(long, default_value_t = 1000)]
    length: u64,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct XiArgs {
    /// Prefix dump of the first point.
    #[arg(long)]
    x: PathBuf,
    /// Prefix dump of the second point.
    #[arg(long)]
    y: PathBuf,
    #[arg(long, default_value_t = 3)]
    window: u64,
    /// Largest prefix length.
    #[arg(long, default_value_t = 1000)]
    length: u64,
    /// Number of evenly spaced lengths.
    #[arg(long, default_value_t = 10)]
    points: u64,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    #[arg(long, default_value = "window", value_parser = parse_predicate)]
    predicate: PredicateMode,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct SftArgs {
    #[arg(long)]
    basis: PathBuf,
    #[arg(long, default_value = "0")]
    word: String,
    /// Lower-checkpoint window.
    #[arg(long, default_value_t = 3)]
    q: u64,
    #[command(flatten)]
    check: CheckArgs,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct DenseArgs {
    #[arg(long)]
    basis: PathBuf,
    #[arg(long, default_value_t = 1)]
    p: usize,
    #[arg(long, default_value_t = 0)]
    g: u64,
    /// Word length of the second point (defaults to `p`).
    #[arg(long)]
    q: Option<usize>,
    /// Word index of the second point (defaults to `g`).
    #[arg(long)]
    h: Option<u64>,
    /// Lower-checkpoint window.
    #[arg(long, default_value_t = 3)]
    window: u64,
    #[command(flatten)]
    check: CheckArgs,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct SbtArgs {
    #[arg(long)]
    basis: PathBuf,
    #[arg(long)]
    seed_config: PathBuf,
    /// Lower-checkpoint window `R`.
    #[arg(long, default_value_t = 4)]
    window: u64,
    #[command(flatten)]
    check: CheckArgs,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct LemmaArgs {
    /// Safe symbol; taken from `--basis` when given.
    #[arg(long, default_value_t = 2)]
    k: u64,
    #[arg(long)]
    basis: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    p: usize,
    #[arg(long, default_value_t = 2)]
    q: usize,
    #[arg(long, default_value_t = 0)]
    g: u64,
    #[arg(long, default_value_t = 1)]
    h: u64,
    #[arg(long, default_value_t = 1000)]
    trials: usize,
    /// Scan limit for each witness.
    #[arg(long, default_value_t = 1 << 20)]
    cap: u64,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct BoundsArgs {
    #[arg(long, value_enum, default_value_t = Variant::Sft)]
    variant: Variant,
    /// Cylinder word (its length enters the cylinder schedule).
    #[arg(long, default_value = "0")]
    word: String,
    #[arg(long, default_value_t = 1)]
    p: usize,
    /// Second word length for the dense family; `a = |p − q|`.
    #[arg(long)]
    q: Option<usize>,
    /// Block length `M` for the bounded-type schedule.
    #[arg(long, default_value_t = 30)]
    block_len: u64,
    #[arg(long, default_value_t = 3)]
    window: u64,
    #[arg(long, default_value_t = 10)]
    max_j: usize,
    #[command(flatten)]
    common: Common,
}

fn parse_predicate(s: &str) -> Result<PredicateMode, String> {
    s.parse().map_err(|e: baire::Error| e.to_string())
}

fn parse_engine(s: &str) -> Result<Engine, String> {
    s.parse().map_err(|e: baire::Error| e.to_string())
}

fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_basis(path: &Path) -> Result<SubshiftSpec> {
    SubshiftSpec::parse(&read_text(path)?).with_context(|| format!("parsing basis file {}", path.display()))
}

fn main() -> Result<ExitCode> {
    let cli = Cli::parse();
    let ok = match &cli.command {
        Command::Gen(a) => commands::gen(a)?,
        Command::Xi(a) => commands::xi(a)?,
        Command::VerifySft(a) => commands::verify_sft(a)?,
        Command::VerifyDense(a) => commands::verify_dense(a)?,
        Command::VerifySbt(a) => commands::verify_sbt(a)?,
        Command::Lemmas(a) => commands::lemmas(a)?,
        Command::Bounds(a) => commands::bounds(a)?,
    };
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}
