use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::output::Format;

#[derive(Debug, Parser)]
#[command(
    name = "charp",
    version,
    about = "Irreducible characters and decomposition numbers for type A in characteristic p"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Root system, `A<rank>`.
    #[arg(long = "type", global = true, default_value = "A5", value_parser = parse_type)]
    pub rank: usize,

    /// Characteristic.
    #[arg(long, short, global = true, default_value_t = 3)]
    pub p: u32,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Worker threads (defaults to the number of CPUs).
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub workers: Option<u64>,

    /// Directory for persisted rows and tables.
    #[arg(long, global = true, env = "CHARP_CACHE_DIR")]
    pub cache_dir: Option<PathBuf>,

    /// Apply every PBW monomial to the generator separately.
    #[arg(long, global = true)]
    pub no_memo: bool,

    /// Only warnings and errors on stderr.
    #[arg(long, short, global = true)]
    pub quiet: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// dim L(lambda), or dim L(lambda)_nu with --nu.
    Dim {
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        nu: Option<String>,
    },
    /// ch_p(lambda) in the orbit-sum basis.
    Char {
        #[arg(long)]
        lambda: String,
    },
    /// Decomposition numbers on the linkage block below lambda.
    Table {
        #[arg(long)]
        lambda: String,
    },
    /// Structural checks and comparison with the bundled A5, p = 3 tables.
    Verify {
        /// A2 completely plus a handful of A5 weights.
        #[arg(long, conflicts_with_all = ["full", "table"])]
        quick: bool,
        /// Every restricted weight of the chosen configuration (slow).
        #[arg(long, conflicts_with = "table")]
        full: bool,
        /// One bundled table, e.g. `4` or `6.2`.
        #[arg(long)]
        table: Option<String>,
    },
    /// matrix_B(lambda) with and without memoization.
    Bench {
        #[arg(long)]
        lambda: String,
    },
    /// Inspect or empty the disk cache.
    Cache {
        #[arg(value_enum, default_value_t = CacheAction::Stats)]
        action: CacheAction,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CacheAction {
    Stats,
    Clear,
}

fn parse_type(s: &str) -> Result<usize, String> {
    s.strip_prefix(['A', 'a'])
        .and_then(|r| r.parse().ok())
        .ok_or_else(|| format!("expected A<rank>, got {s:?}"))
}
