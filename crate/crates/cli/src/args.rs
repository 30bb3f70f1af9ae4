use std::ops::RangeInclusive;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use holegames::oracle::HoleRule;
use holegames::schedule::Bias;
use serde::Deserialize;

#[derive(Parser, Debug)]
#[command(name = "holegames", version, about = "Exact Maker-Breaker hole games")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Play a range of seeded matches and write one trace per game.
    Simulate(SimulateArgs),
    /// Replay a trace, or check a point file for general position.
    Verify {
        file: PathBuf,
    },
    /// Print the exact number of k-holes in a point file.
    CountHoles {
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = Variant::Mono)]
        variant: Variant,
        file: PathBuf,
    },
    /// Build, verify or extract from the bent grid point set.
    Grid {
        #[command(subcommand)]
        action: GridAction,
    },
    /// Serve the session API.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        /// Persist one trace file per session here.
        #[arg(long, env = crate::TRACE_DIR_ENV)]
        trace_dir: Option<PathBuf>,
    },
    /// Draw a trace, point file or grid config as SVG.
    RenderSvg {
        file: PathBuf,
        /// Breaker points to draw on a grid.
        #[arg(long)]
        breaker: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    #[value(alias = "monochromatic")]
    #[serde(alias = "monochromatic")]
    Mono,
    #[value(alias = "bichromatic")]
    #[serde(alias = "bichromatic")]
    Bichrom,
}

impl From<Variant> for HoleRule {
    fn from(v: Variant) -> Self {
        match v {
            Variant::Mono => HoleRule::Monochromatic,
            Variant::Bichrom => HoleRule::Bichromatic,
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct SimulateArgs {
    #[arg(long, value_enum)]
    pub variant: Variant,
    #[arg(long)]
    pub k: usize,
    /// Speeds `maker:breaker`, e.g. `1:1`, `1:3/2`, `1:12`.
    #[arg(long, default_value = "1:1", value_parser = parse_bias)]
    pub bias: Bias,
    /// Maker strategy, `name` or `name:key=value,...`.
    #[arg(long)]
    pub maker: String,
    /// Breaker strategy, `name` or `name:key=value,...`.
    #[arg(long)]
    pub breaker: String,
    /// Inclusive seed range `a..b`, or a single seed.
    #[arg(long, default_value = "0", value_parser = parse_seeds)]
    pub seeds: RangeInclusive<u64>,
    #[arg(long)]
    pub max_points: Option<usize>,
    /// Trace directory; defaults to $HOLEGAMES_TRACE_DIR, then `./traces`.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum GridAction {
    /// Build the grid and write its full config, bending included.
    Build {
        #[command(flatten)]
        source: GridSource,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Run every exact check and print the report.
    Verify {
        #[command(flatten)]
        source: GridSource,
    },
    /// Find a Maker hole that avoids the given Breaker points.
    Extract {
        #[command(flatten)]
        source: GridSource,
        /// Breaker point file; none means no Breaker points.
        #[arg(long)]
        breaker: Option<PathBuf>,
        /// Hole size; defaults to `(t + 1) / 2`.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
}

#[derive(Args, Debug, Clone)]
pub struct GridSource {
    /// JSON grid config; overrides the sampling flags.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, default_value_t = 3)]
    pub t: usize,
    #[arg(long, default_value_t = 3)]
    pub d: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Seeds tried after `seed` when a sampled projection is degenerate.
    #[arg(long, default_value_t = 16)]
    pub attempts: usize,
}

pub fn parse_bias(s: &str) -> Result<Bias, String> {
    s.parse::<Bias>().map_err(|e| e.to_string())
}

pub fn parse_seeds(s: &str) -> Result<RangeInclusive<u64>, String> {
    let bad = || format!("expected `a..b` or a number, got `{s}`");
    match s.split_once("..") {
        Some((a, b)) => {
            let a: u64 = a.trim().parse().map_err(|_| bad())?;
            let b: u64 = b.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
            if a > b {
                return Err(bad());
            }
            Ok(a..=b)
        }
        None => {
            let a = s.trim().parse().map_err(|_| bad())?;
            Ok(a..=a)
        }
    }
}
