//! `glepoch` — pipeline driver for epoch-centered collaboration-network
//! analysis.
//!
//! The pipeline is staged: `ingest` (or `synth`) → `extract` → `transform`
//! → `compare` / `report`. Every stage reads and writes files under the
//! output directory, so stages can rerun independently and long runs are
//! resumable. Identical inputs always produce byte-identical outputs,
//! regardless of `--threads`.

mod artifact;
mod commands;
mod config;
mod error;

use clap::{Args, Parser, Subcommand};

use crate::config::RunConfig;
use crate::error::CliError;

#[derive(Parser)]
#[command(
    name = "glepoch",
    version,
    about = "Epoch-centered collaboration-network analytics"
)]
struct Cli {
    #[command(flatten)]
    common: CommonArgs,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
pub struct CommonArgs {
    /// Flat key=value config file; command-line flags override it.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<std::path::PathBuf>,
    /// Directory holding articles.tsv, citations.tsv, authorship.tsv.
    #[arg(long, global = true, value_name = "DIR")]
    corpus_dir: Option<std::path::PathBuf>,
    /// Binary corpus cache (default: $GLEPOCH_CACHE_DIR/cache.lgc, else OUT/cache.lgc).
    #[arg(long, global = true, value_name = "FILE")]
    cache: Option<std::path::PathBuf>,
    /// Comma-separated epochs `label=YYYY[-MM]:YYYY[-MM]` (default: the six canonical outbreak windows).
    #[arg(long, global = true, value_name = "LIST")]
    epochs: Option<String>,
    /// Output directory for artifacts, tables, and figures.
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<std::path::PathBuf>,
    /// Worker threads (default: all cores); outputs never depend on this.
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,
    /// Hölder order for node discrepancy (1 = arithmetic mean).
    #[arg(long, global = true, value_name = "P")]
    holder_p: Option<f64>,
    /// Exclude the singleton slot from discrepancy weights.
    #[arg(long, global = true)]
    no_sigma0: bool,
    /// RNG seed for `synth`.
    #[arg(long, global = true, value_name = "SEED")]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse a TSV corpus and write the binary cache.
    Ingest,
    /// Slice each epoch into a cohort-partitioned collaboration network.
    Extract,
    /// Compute exact graphlet fields and spectrogram exports per epoch.
    Transform,
    /// Pairwise agreement/intersection tables and per-pair reports.
    Compare,
    /// Histograms, rank-size curves, scatter, cohort table, heatmaps.
    Report,
    /// Generate a reproducible synthetic corpus.
    Synth {
        /// Number of articles (overrides config `n_articles`).
        #[arg(long, value_name = "N")]
        n: Option<usize>,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    let mut cfg = RunConfig::resolve(&cli.common)?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.threads)
        .build_global()
        .map_err(|e| CliError::config(format!("thread pool: {e}")))?;
    match cli.cmd {
        Cmd::Ingest => commands::cmd_ingest(&cfg),
        Cmd::Extract => commands::cmd_extract(&cfg),
        Cmd::Transform => commands::cmd_transform(&cfg),
        Cmd::Compare => commands::cmd_compare(&cfg),
        Cmd::Report => commands::cmd_report(&cfg),
        Cmd::Synth { n } => {
            if let Some(n) = n {
                cfg.synth.n_articles = n;
            }
            commands::cmd_synth(&cfg)
        }
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                std::process::exit(0);
            }
            let payload = serde_json::json!({
                "error": { "kind": "usage", "message": e.to_string() }
            });
            eprintln!("{payload}");
            std::process::exit(2);
        }
    };
    if let Err(err) = run(cli) {
        eprintln!("{}", err.to_json());
        std::process::exit(1);
    }
}
