//! Input files. Points are `["num/den", "num/den"]` pairs throughout.

use std::path::Path;

use anyhow::{bail, Context, Result};
use holegames::board::{Owner, PointSet};
use holegames::game::{GameTrace, TRACE_SCHEMA};
use holegames::geom::Point;
use holegames::grid::GridConfig;
use serde::Deserialize;
use serde_json::Value;

/// A list of points, read as Maker's, or Maker and Breaker lists.
#[derive(Deserialize)]
#[serde(untagged)]
enum PointFile {
    Plain(Vec<Point>),
    Labeled {
        maker: Vec<Point>,
        #[serde(default)]
        breaker: Vec<Point>,
    },
}

/// What a JSON input file holds, told apart by its keys.
pub enum Input {
    Trace(Box<GameTrace>),
    Grid(Box<GridConfig>),
    Points(PointSet),
}

pub fn read_json(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

pub fn load(path: &Path) -> Result<Input> {
    let v = read_json(path)?;
    let what = || format!("reading {}", path.display());
    if let Some(schema) = v.get("schema").and_then(Value::as_str) {
        if schema != TRACE_SCHEMA {
            bail!("{}: unsupported trace schema `{schema}`", path.display());
        }
        return Ok(Input::Trace(Box::new(serde_json::from_value(v).with_context(what)?)));
    }
    if v.get("pi_map").is_some() {
        return Ok(Input::Grid(Box::new(serde_json::from_value(v).with_context(what)?)));
    }
    Ok(Input::Points(points_from_value(v).with_context(what)?))
}

fn points_from_value(v: Value) -> Result<PointSet> {
    Ok(match serde_json::from_value::<PointFile>(v)? {
        PointFile::Plain(points) => PointSet::from_points(points, Owner::Maker),
        PointFile::Labeled { maker, breaker } => PointSet::from_labeled(&maker, &breaker),
    })
}

/// A point file, or the final board of a trace after replaying it.
pub fn load_board(path: &Path) -> Result<PointSet> {
    match load(path)? {
        Input::Points(set) => Ok(set),
        Input::Trace(t) => {
            let state = holegames::game::replay(&t).with_context(|| format!("replaying {}", path.display()))?;
            Ok(state.board().clone())
        }
        Input::Grid(_) => bail!("{} is a grid config, not a point set", path.display()),
    }
}

/// All points of a point file, owners ignored.
pub fn load_point_list(path: &Path) -> Result<Vec<Point>> {
    Ok(load_board(path)?.points().to_vec())
}

pub fn load_grid_config(path: &Path) -> Result<GridConfig> {
    match load(path)? {
        Input::Grid(cfg) => Ok(*cfg),
        _ => bail!("{} is not a grid config", path.display()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn both_point_layouts() {
        let plain = points_from_value(json!([["0", "0"], ["1/2", "3"]])).unwrap();
        assert_eq!(plain.len(), 2);
        assert_eq!(plain.owner(1), Owner::Maker);
        let labeled = points_from_value(json!({"maker": [["0", "0"]], "breaker": [["5/1", "1"]]})).unwrap();
        assert_eq!(labeled.owned_by(Owner::Breaker), vec![Point::from_ints(5, 1)]);
        assert!(points_from_value(json!([["0", "x"]])).is_err());
    }
}
