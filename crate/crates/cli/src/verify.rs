//! `verify`, `count-holes` and `render-svg`.

use std::path::Path;

use anyhow::Result;
use holegames::board::{CollinearityIndex, Obstruction, PointSet};
use holegames::game::{replay, GameTrace, Status};
use holegames::oracle::{count_k_holes, HoleRule};
use holegames::svg::{render_board, render_grid};

use crate::files::{load, load_board, load_point_list, Input};

/// Outcome of `verify`: a message and whether the input checked out.
pub struct Verdict {
    pub ok: bool,
    pub message: String,
}

pub fn verify(path: &Path) -> Result<Verdict> {
    Ok(match load(path)? {
        Input::Trace(t) => verify_trace(&t),
        Input::Points(set) => verify_points(&set),
        Input::Grid(cfg) => {
            let g = holegames::grid::build_grid_pointset(&cfg)?;
            let report = holegames::grid::verify_grid(&g);
            Verdict {
                ok: report.all_ok(),
                message: serde_json::to_string_pretty(&report)?,
            }
        }
    })
}

pub fn verify_trace(trace: &GameTrace) -> Verdict {
    match replay(trace) {
        Ok(state) => {
            let mut message = format!(
                "ok: {} turns, {} points, status {}",
                trace.moves.len(),
                state.points().len(),
                state.status().label()
            );
            if let Status::MakerWon { certificate } = state.status() {
                message += &format!(", {}-hole at indices {:?}", certificate.k(), certificate.indices);
            }
            Verdict { ok: true, message }
        }
        Err(e) => Verdict {
            ok: false,
            message: match e.turn() {
                Some(_) => format!("trace diverges at {e}"),
                None => format!("trace rejected: {e}"),
            },
        },
    }
}

/// A point set passes when it has no repeated point and no three collinear
/// points.
pub fn verify_points(set: &PointSet) -> Verdict {
    let mut index = CollinearityIndex::default();
    for (i, p) in set.points().iter().enumerate() {
        if let Some(obstruction) = index.obstruction(p) {
            let message = match obstruction {
                Obstruction::Duplicate(j) => format!("point {i} {p} repeats point {j}"),
                Obstruction::Collinear(a, b) => format!(
                    "point {i} {p} is collinear with {} and {}",
                    index.points()[a],
                    index.points()[b]
                ),
            };
            return Verdict { ok: false, message };
        }
        index.insert(p.clone());
    }
    Verdict {
        ok: true,
        message: format!("ok: {} points in general position", set.len()),
    }
}

pub fn count_holes(path: &Path, k: usize, rule: HoleRule) -> Result<u64> {
    let set = load_board(path)?;
    let check = verify_points(&set);
    anyhow::ensure!(check.ok, "{}", check.message);
    Ok(count_k_holes(&set, k, rule))
}

pub fn render_svg(path: &Path, breaker: Option<&Path>) -> Result<String> {
    Ok(match load(path)? {
        Input::Trace(t) => {
            let state = replay(&t)?;
            let hole = match state.status() {
                Status::MakerWon { certificate } => Some(certificate.clone()),
                _ => None,
            };
            render_board(state.board(), &[], hole.as_ref())
        }
        Input::Points(set) => render_board(&set, &[], None),
        Input::Grid(cfg) => {
            let g = holegames::grid::build_grid_pointset(&cfg)?;
            let b = breaker.map(load_point_list).transpose()?.unwrap_or_default();
            render_grid(&g, &b, None)
        }
    })
}
