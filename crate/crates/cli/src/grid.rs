//! `grid build|verify|extract`.

use anyhow::{Context, Result};
use holegames::grid::{build_grid_pointset, build_sampled, extract_k_hole, verify_grid, GridPointSet};
use holegames::svg::render_grid;
use serde_json::json;

use crate::args::{GridAction, GridSource};
use crate::files::{load_grid_config, load_point_list};

pub fn build(source: &GridSource) -> Result<GridPointSet> {
    match &source.config {
        Some(path) => Ok(build_grid_pointset(&load_grid_config(path)?)?),
        None => Ok(build_sampled(source.t, source.d, source.seed, source.attempts)?),
    }
}

fn write(path: &std::path::Path, text: &str) -> Result<()> {
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

/// Runs one grid action; returns the text to print and whether every
/// check held.
pub fn run(action: &GridAction) -> Result<(String, bool)> {
    match action {
        GridAction::Build { source, out, svg } => {
            let g = build(source)?;
            let config = serde_json::to_string_pretty(&g.config)?;
            if let Some(path) = out {
                write(path, &config)?;
            }
            if let Some(path) = svg {
                write(path, &render_grid(&g, &[], None))?;
            }
            let summary = json!({
                "t": g.config.t,
                "d": g.config.d,
                "seed": g.config.seed,
                "points": g.len(),
                "lines": g.lines.len(),
                "sibling_lines": g.sibling_lines.iter().map(Vec::len).collect::<Vec<_>>(),
                "gamma": holegames::geom::coord_to_string(g.gamma()),
            });
            let text = if out.is_some() {
                serde_json::to_string_pretty(&summary)?
            } else {
                config
            };
            Ok((text, true))
        }
        GridAction::Verify { source } => {
            let report = verify_grid(&build(source)?);
            Ok((serde_json::to_string_pretty(&report)?, report.all_ok()))
        }
        GridAction::Extract { source, breaker, k, svg } => {
            let g = build(source)?;
            let b = breaker.as_deref().map(load_point_list).transpose()?.unwrap_or_default();
            let k = k.unwrap_or_else(|| g.config.k());
            let found = extract_k_hole(&g, &b, k)?;
            if let Some(path) = svg {
                write(path, &render_grid(&g, &b, found.certificate()))?;
            }
            let ok = found.certificate().is_some() && found.report().inequalities_hold();
            Ok((serde_json::to_string_pretty(&found)?, ok))
        }
    }
}
