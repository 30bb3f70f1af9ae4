//! Replayable match records with a per-turn digest chain.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use super::{GameConfig, GameState, MoveError, Status};
use crate::board::Owner;
use crate::geom::Point;

pub const TRACE_SCHEMA: &str = "holegames.trace/v1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveRecord {
    pub turn: u64,
    pub owner: Owner,
    pub points: Vec<Point>,
    /// Hex sha256 over the previous digest, this move and the status label
    /// after it.
    pub digest: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GameTrace {
    pub schema: String,
    pub config: GameConfig,
    pub maker: String,
    pub breaker: String,
    pub moves: Vec<MoveRecord>,
    pub status: Status,
    #[serde(default)]
    pub maker_goal: bool,
    #[serde(default)]
    pub error: Option<String>,
    #[serde(default)]
    pub maker_report: serde_json::Value,
    #[serde(default)]
    pub breaker_report: serde_json::Value,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TraceError {
    #[error("unsupported trace schema `{0}`")]
    Schema(String),
    #[error("turn {turn}: {reason}")]
    Divergence { turn: u64, reason: String },
    #[error("turn {turn}: move rejected: {error}")]
    Illegal { turn: u64, error: MoveError },
    #[error("final status differs: recorded {recorded}, replayed {replayed}")]
    FinalStatus { recorded: String, replayed: String },
    #[error("bad configuration: {0}")]
    Config(MoveError),
}

impl TraceError {
    /// The first turn at which the replay disagreed, if the error is tied to
    /// one.
    pub fn turn(&self) -> Option<u64> {
        match self {
            TraceError::Divergence { turn, .. } | TraceError::Illegal { turn, .. } => Some(*turn),
            _ => None,
        }
    }
}

pub fn move_digest(prev: &str, turn: u64, owner: Owner, points: &[Point], status: &Status) -> String {
    let body = serde_json::to_string(&(turn, owner, points)).expect("points serialize");
    let mut h = Sha256::new();
    h.update(prev.as_bytes());
    h.update(body.as_bytes());
    h.update(status.label().as_bytes());
    hex::encode(h.finalize())
}

impl GameTrace {
    pub fn new(config: GameConfig, maker: String, breaker: String) -> Self {
        GameTrace {
            schema: TRACE_SCHEMA.to_string(),
            config,
            maker,
            breaker,
            moves: Vec::new(),
            status: Status::Ongoing,
            maker_goal: false,
            error: None,
            maker_report: serde_json::Value::Null,
            breaker_report: serde_json::Value::Null,
        }
    }

    pub fn last_digest(&self) -> &str {
        self.moves.last().map(|m| m.digest.as_str()).unwrap_or("")
    }

    pub fn record(&mut self, owner: Owner, points: Vec<Point>, status: &Status) {
        let turn = self.moves.len() as u64 + 1;
        let digest = move_digest(self.last_digest(), turn, owner, &points, status);
        self.moves.push(MoveRecord {
            turn,
            owner,
            points,
            digest,
        });
        self.status = status.clone();
    }

    pub fn finish(
        &mut self,
        state: &GameState,
        maker_goal: bool,
        error: Option<String>,
        maker_report: serde_json::Value,
        breaker_report: serde_json::Value,
    ) {
        self.status = state.status().clone();
        self.maker_goal = maker_goal;
        self.error = error;
        self.maker_report = maker_report;
        self.breaker_report = breaker_report;
    }

    pub fn maker_turns(&self) -> usize {
        self.moves.iter().filter(|m| m.owner == Owner::Maker).count()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("trace serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }
}

/// Re-runs the referee over the recorded moves, checking every digest and
/// the final status.
pub fn replay(trace: &GameTrace) -> Result<GameState, TraceError> {
    if trace.schema != TRACE_SCHEMA {
        return Err(TraceError::Schema(trace.schema.clone()));
    }
    let mut state = GameState::new(trace.config.clone()).map_err(TraceError::Config)?;
    let mut prev = String::new();
    for (i, m) in trace.moves.iter().enumerate() {
        let turn = i as u64 + 1;
        if m.turn != turn {
            return Err(TraceError::Divergence {
                turn,
                reason: format!("recorded turn number {}", m.turn),
            });
        }
        state
            .apply_move(m.owner, m.points.clone())
            .map_err(|error| TraceError::Illegal { turn, error })?;
        let d = move_digest(&prev, turn, m.owner, &m.points, state.status());
        if d != m.digest {
            return Err(TraceError::Divergence {
                turn,
                reason: "digest mismatch".to_string(),
            });
        }
        prev = d;
    }
    // the runner caps a game whose clipped last turn the player could not fill
    if trace.status == Status::Capped && state.status().is_ongoing() && state.next_turn().1 < state.schedule().peek().1 {
        state.cap();
    }
    if state.status() != &trace.status {
        return Err(TraceError::FinalStatus {
            recorded: trace.status.label().to_string(),
            replayed: state.status().label().to_string(),
        });
    }
    Ok(state)
}
