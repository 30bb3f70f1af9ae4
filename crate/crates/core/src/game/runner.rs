use serde::Serialize;
use thiserror::Error;

use super::trace::GameTrace;
use super::{GameConfig, GameState, MoveError, Status};
use crate::board::Owner;
use crate::geom::{Coord, Direction, Point};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StrategyError {
    #[error("strategy invariant broken: {0}")]
    InvariantBroken(String),
    #[error("strategy cannot play this game: {0}")]
    Unsupported(String),
    #[error("no legal point found: {0}")]
    Stuck(String),
}

/// Drawable hints a strategy exposes about its internal state.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Overlay {
    Strip {
        points: Vec<Point>,
        direction: Direction,
    },
    Disk {
        center: Point,
        #[serde(with = "crate::geom::coord_serde")]
        radius_squared: Coord,
    },
    Circle {
        center: Point,
        #[serde(with = "crate::geom::coord_serde")]
        radius_squared: Coord,
        guards: Vec<Point>,
    },
}

/// A player. `respond` returns at most `count` points; the referee rejects
/// illegal answers.
pub trait Strategy: Send {
    fn name(&self) -> String;

    fn respond(&mut self, state: &GameState, count: usize) -> Result<Vec<Point>, StrategyError>;

    /// Called before each of this player's turns. Returning true ends the
    /// match: the strategy has met its own goal.
    fn goal_reached(&mut self, _state: &GameState) -> Result<bool, StrategyError> {
        Ok(false)
    }

    fn overlays(&self) -> Vec<Overlay> {
        Vec::new()
    }

    /// Strategy-specific diagnostics for traces and reports.
    fn report(&self) -> serde_json::Value {
        serde_json::Value::Null
    }
}

#[derive(Clone, Debug)]
pub struct MatchResult {
    pub trace: GameTrace,
    pub state: GameState,
    /// The Maker strategy declared its goal met.
    pub maker_goal: bool,
    pub error: Option<String>,
}

pub fn run_match(
    config: GameConfig,
    maker: &mut dyn Strategy,
    breaker: &mut dyn Strategy,
) -> Result<MatchResult, MoveError> {
    run_match_observed(config, maker, breaker, &mut |_, _| Ok(()))
}

/// Like [`run_match`], calling `observe` after every applied turn. An
/// observer error stops the match and is recorded.
pub fn run_match_observed(
    config: GameConfig,
    maker: &mut dyn Strategy,
    breaker: &mut dyn Strategy,
    observe: &mut dyn FnMut(&GameState, Owner) -> Result<(), String>,
) -> Result<MatchResult, MoveError> {
    let mut state = GameState::new(config.clone())?;
    let mut trace = GameTrace::new(config, maker.name(), breaker.name());
    let mut maker_goal = false;
    let mut error = None;
    while state.status().is_ongoing() {
        let (owner, count) = state.next_turn();
        if count == 0 {
            state.cap();
            break;
        }
        let player: &mut dyn Strategy = match owner {
            Owner::Maker => &mut *maker,
            Owner::Breaker => &mut *breaker,
        };
        if owner == Owner::Maker {
            match player.goal_reached(&state) {
                Ok(true) => {
                    maker_goal = true;
                    break;
                }
                Ok(false) => {}
                Err(e) => {
                    error = Some(e.to_string());
                    break;
                }
            }
        }
        let pts = match player.respond(&state, count) {
            Ok(p) => p,
            // a turn cut short by the point cap ends the game as capped
            Err(_) if count < state.schedule().peek().1 => {
                state.cap();
                trace.status = state.status().clone();
                break;
            }
            Err(e) => {
                error = Some(format!("{owner}: {e}"));
                break;
            }
        };
        if let Err(e) = state.apply_move(owner, pts.clone()) {
            error = Some(format!("{owner}: illegal move: {e}"));
            break;
        }
        trace.record(owner, pts, state.status());
        if let Err(e) = observe(&state, owner) {
            error = Some(format!("observer: {e}"));
            break;
        }
    }
    if !maker_goal && error.is_none() && state.status() == &Status::Capped {
        // the strategy may have completed on the very last turn
        if let Ok(true) = maker.goal_reached(&state) {
            maker_goal = true;
        }
    }
    trace.finish(&state, maker_goal, error.clone(), maker.report(), breaker.report());
    Ok(MatchResult {
        trace,
        state,
        maker_goal,
        error,
    })
}
