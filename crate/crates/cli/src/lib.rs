//! Command-line runner and HTTP session server for Maker-Breaker hole games.

pub mod args;
pub mod files;
pub mod grid;
pub mod server;
pub mod simulate;
pub mod verify;

use std::path::PathBuf;

/// Environment variable naming the directory traces are written to.
pub const TRACE_DIR_ENV: &str = "HOLEGAMES_TRACE_DIR";

/// `--out` if given, else the environment variable, else `./traces`.
pub fn trace_dir(out: Option<PathBuf>) -> PathBuf {
    out.or_else(|| std::env::var_os(TRACE_DIR_ENV).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("traces"))
}
