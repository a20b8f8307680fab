mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use mixedab_core::classify::Verdict;

/// Decide, realize and verify mixed abelian groups with bounded p-torsion.
#[derive(Debug, Parser, Serialize)]
#[command(name = "mixedab", version)]
pub struct Cli {
    #[command(flatten)]
    pub config: Config,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Serialize)]
pub struct Config {
    /// Truncation depth B of the p-local models.
    #[arg(long, global = true, default_value_t = 12, value_parser = clap::value_parser!(u32).range(4..=1024))]
    pub depth: u32,
    /// Largest prime used by `example b`.
    #[arg(long, global = true, default_value_t = 13, value_parser = clap::value_parser!(u64).range(2..=10_000))]
    pub cutoff: u64,
    /// Jumps expanded from a JUMPY tail.
    #[arg(long, global = true, default_value_t = 8, value_parser = clap::value_parser!(u64).range(0..=256))]
    pub jump_cut: u64,
    /// Recorded in the report; every computation here is deterministic.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Exit 0 when the outcome matches, 1 otherwise.
    #[arg(long, global = true)]
    pub expect: Option<Expect>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Expect {
    Yes,
    No,
    Undecided,
}

impl From<Verdict> for Expect {
    fn from(v: Verdict) -> Self {
        match v {
            Verdict::Yes => Expect::Yes,
            Verdict::No => Expect::No,
            Verdict::Undecided => Expect::Undecided,
        }
    }
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "snake_case", tag = "name")]
pub enum Command {
    /// Bassian, B+E and generalized Bassian verdicts for a descriptor.
    Classify { desc: PathBuf },
    /// Bassian plus elementary split of a B+E descriptor.
    Split { desc: PathBuf },
    /// Compile a valuation into a presentation and check it.
    Realize {
        valuation: PathBuf,
        /// Input is a free valuated group rather than a cyclic one.
        #[arg(long)]
        free: bool,
        /// Exit 1 unless every check passes.
        #[arg(long)]
        verify: bool,
        /// Extra primes to check at.
        #[arg(long, value_delimiter = ',')]
        primes: Vec<u64>,
    },
    /// Ulm invariants of a valuation or of a presentation's model.
    Ulm {
        input: PathBuf,
        #[arg(short, long)]
        prime: u64,
        #[arg(short, long)]
        bound: usize,
    },
    /// Built-in examples.
    Example {
        which: Example,
        /// Steps of the PSP construction.
        #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u64).range(1..=5000))]
        steps: u64,
        #[arg(long, conflicts_with = "json")]
        csv: bool,
        #[arg(long)]
        json: bool,
    },
    /// Check a presentation against the valuation it should realize.
    Verify {
        presentation: PathBuf,
        #[arg(long)]
        against: PathBuf,
    },
    /// Embedding of a B+E descriptor into a generalized Bassian one.
    Embed { desc: PathBuf },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Example {
    B,
    Psp,
}

pub const EXIT_USAGE: u8 = 3;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(&cli) {
        Ok(out) => {
            print!("{}", out.text);
            let code = match cli.config.expect {
                Some(e) if e == out.outcome => 0,
                Some(_) => 1,
                None => match out.outcome {
                    Expect::Yes => 0,
                    Expect::No => 1,
                    Expect::Undecided => 2,
                },
            };
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("mixedab: {e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
