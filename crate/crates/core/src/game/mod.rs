//! The referee: configuration, legality checks, turn order and win
//! detection.

mod runner;
pub mod trace;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use runner::{run_match, run_match_observed, MatchResult, Overlay, Strategy, StrategyError};
pub use trace::{replay, GameTrace, MoveRecord, TraceError, TRACE_SCHEMA};

use crate::board::{CollinearityIndex, Obstruction, Owner, PointSet};
use crate::geom::Point;
use crate::oracle::{find_k_hole_through, HoleCertificate, HoleRule};
use crate::schedule::{Bias, Schedule, ScheduleConvention};

pub const DEFAULT_MAX_POINTS: usize = 200;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameConfig {
    pub variant: HoleRule,
    pub k: usize,
    pub bias: Bias,
    #[serde(default = "default_max_points")]
    pub max_points: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub convention: ScheduleConvention,
    /// When false the referee never declares a winner; strategy runs then
    /// end only on the point cap or on the Maker strategy's own goal.
    #[serde(default = "default_true")]
    pub detect_wins: bool,
}

fn default_max_points() -> usize {
    DEFAULT_MAX_POINTS
}

fn default_true() -> bool {
    true
}

impl GameConfig {
    pub fn new(variant: HoleRule, k: usize, bias: Bias) -> Self {
        GameConfig {
            variant,
            k,
            bias,
            max_points: DEFAULT_MAX_POINTS,
            seed: 0,
            convention: ScheduleConvention::Reciprocal,
            detect_wins: true,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_max_points(mut self, n: usize) -> Self {
        self.max_points = n;
        self
    }

    pub fn with_detect_wins(mut self, on: bool) -> Self {
        self.detect_wins = on;
        self
    }

    pub fn validate(&self) -> Result<(), MoveError> {
        if self.k < 3 {
            return Err(MoveError::BadConfig(format!("k must be at least 3, got {}", self.k)));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Status {
    Ongoing,
    MakerWon { certificate: HoleCertificate },
    Capped,
}

impl Status {
    pub fn is_ongoing(&self) -> bool {
        matches!(self, Status::Ongoing)
    }

    pub fn label(&self) -> &'static str {
        match self {
            Status::Ongoing => "ongoing",
            Status::MakerWon { .. } => "maker_won",
            Status::Capped => "capped",
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MoveError {
    #[error("the game is over")]
    GameOver,
    #[error("it is {expected}'s turn, not {got}'s")]
    WrongTurn { expected: Owner, got: Owner },
    #[error("{got} points submitted, turn allows {allowed}")]
    WrongCount { allowed: usize, got: usize },
    #[error("{point} is already placed")]
    Duplicate { point: Point },
    #[error("{point} is collinear with {a} and {b}")]
    IllegalCollinear { point: Point, a: Point, b: Point },
    #[error("invalid configuration: {0}")]
    BadConfig(String),
}

#[derive(Clone, Debug)]
pub struct GameState {
    pub config: GameConfig,
    board: PointSet,
    index: CollinearityIndex,
    schedule: Schedule,
    status: Status,
    turns: u64,
    maker_turns: u64,
}

impl GameState {
    pub fn new(config: GameConfig) -> Result<Self, MoveError> {
        config.validate()?;
        let schedule = Schedule::new(config.bias.clone(), config.convention);
        Ok(GameState {
            config,
            board: PointSet::new(),
            index: CollinearityIndex::default(),
            schedule,
            status: Status::Ongoing,
            turns: 0,
            maker_turns: 0,
        })
    }

    pub fn board(&self) -> &PointSet {
        &self.board
    }

    pub fn points(&self) -> &[Point] {
        self.board.points()
    }

    pub fn status(&self) -> &Status {
        &self.status
    }

    pub fn schedule(&self) -> &Schedule {
        &self.schedule
    }

    /// Turns applied so far.
    pub fn turns(&self) -> u64 {
        self.turns
    }

    pub fn maker_turns(&self) -> u64 {
        self.maker_turns
    }

    pub fn maker_points(&self) -> Vec<Point> {
        self.board.owned_by(Owner::Maker)
    }

    pub fn breaker_points(&self) -> Vec<Point> {
        self.board.owned_by(Owner::Breaker)
    }

    /// Owner and allotment of the next turn, clipped to the point cap.
    pub fn next_turn(&self) -> (Owner, usize) {
        let (o, n) = self.schedule.peek();
        (o, n.min(self.config.max_points.saturating_sub(self.board.len())))
    }

    pub fn fits(&self, p: &Point) -> bool {
        self.index.fits(p)
    }

    /// The legality verdict for a single point against the current board.
    pub fn check_point(&self, p: &Point) -> Result<(), MoveError> {
        check_against(&self.index, p)
    }

    /// Validates and applies a whole turn. On error the state is unchanged.
    pub fn apply_move(&mut self, owner: Owner, points: Vec<Point>) -> Result<(), MoveError> {
        if !self.status.is_ongoing() {
            return Err(MoveError::GameOver);
        }
        let (expected, allowed) = self.next_turn();
        if owner != expected {
            return Err(MoveError::WrongTurn { expected, got: owner });
        }
        let min = if owner == Owner::Maker { 1.min(allowed) } else { 0 };
        if points.len() > allowed || points.len() < min {
            return Err(MoveError::WrongCount {
                allowed,
                got: points.len(),
            });
        }
        let mut scratch = self.index.clone();
        for p in &points {
            check_against(&scratch, p)?;
            scratch.insert(p.clone());
        }
        self.index = scratch;
        let first_new = self.board.len();
        for p in points {
            self.board.push(p, owner);
        }
        self.schedule.advance();
        self.turns += 1;
        if owner == Owner::Maker {
            self.maker_turns += 1;
        }
        if self.config.detect_wins {
            if let Some(cert) = self.detect_win(first_new) {
                self.status = Status::MakerWon { certificate: cert };
                return Ok(());
            }
        }
        if self.board.len() >= self.config.max_points {
            self.status = Status::Capped;
        }
        Ok(())
    }

    /// Any new qualifying hole must use one of the points placed from
    /// `first_new` on: a hole of older points would have ended the game.
    fn detect_win(&self, first_new: usize) -> Option<HoleCertificate> {
        let rule = self.config.variant;
        (first_new..self.board.len())
            .filter(|&i| rule == HoleRule::Monochromatic || self.board.owner(i) == Owner::Maker)
            .find_map(|i| find_k_hole_through(&self.board, self.config.k, rule, i))
    }

    /// Ends the game as capped regardless of the point count.
    pub fn cap(&mut self) {
        if self.status.is_ongoing() {
            self.status = Status::Capped;
        }
    }
}

fn check_against(index: &CollinearityIndex, p: &Point) -> Result<(), MoveError> {
    match index.obstruction(p) {
        None => Ok(()),
        Some(Obstruction::Duplicate(_)) => Err(MoveError::Duplicate { point: p.clone() }),
        Some(Obstruction::Collinear(i, j)) => Err(MoveError::IllegalCollinear {
            point: p.clone(),
            a: index.points()[i].clone(),
            b: index.points()[j].clone(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::find_k_hole;

    fn p(x: i64, y: i64) -> Point {
        Point::from_ints(x, y)
    }

    fn mono3() -> GameState {
        GameState::new(GameConfig::new(HoleRule::Monochromatic, 3, "1:1".parse().unwrap())).unwrap()
    }

    #[test]
    fn third_point_wins_monochromatic_three() {
        let mut g = mono3();
        g.apply_move(Owner::Maker, vec![p(0, 0)]).unwrap();
        g.apply_move(Owner::Breaker, vec![p(4, 0)]).unwrap();
        assert!(g.status().is_ongoing());
        g.apply_move(Owner::Maker, vec![p(1, 3)]).unwrap();
        match g.status() {
            Status::MakerWon { certificate } => assert!(certificate.verify(g.board())),
            s => panic!("unexpected {s:?}"),
        }
        assert_eq!(g.apply_move(Owner::Breaker, vec![p(9, 9)]), Err(MoveError::GameOver));
    }

    #[test]
    fn collinear_move_is_rejected_without_side_effects() {
        let mut g = mono3();
        g.apply_move(Owner::Maker, vec![p(0, 0)]).unwrap();
        g.apply_move(Owner::Breaker, vec![p(1, 1)]).unwrap();
        let err = g.apply_move(Owner::Maker, vec![p(2, 2)]).unwrap_err();
        assert_eq!(
            err,
            MoveError::IllegalCollinear {
                point: p(2, 2),
                a: p(0, 0),
                b: p(1, 1)
            }
        );
        assert_eq!(g.board().len(), 2);
        assert_eq!(g.next_turn().0, Owner::Maker);
    }

    #[test]
    fn turn_and_count_checks() {
        let mut g = mono3();
        assert!(matches!(
            g.apply_move(Owner::Breaker, vec![p(0, 0)]),
            Err(MoveError::WrongTurn { .. })
        ));
        assert!(matches!(
            g.apply_move(Owner::Maker, vec![p(0, 0), p(1, 0)]),
            Err(MoveError::WrongCount { .. })
        ));
        assert!(matches!(
            g.apply_move(Owner::Maker, vec![]),
            Err(MoveError::WrongCount { .. })
        ));
    }

    #[test]
    fn bichromatic_breaker_point_inside_blocks() {
        let cfg = GameConfig::new(HoleRule::Bichromatic, 3, "1:1".parse().unwrap());
        let mut g = GameState::new(cfg).unwrap();
        g.apply_move(Owner::Maker, vec![p(0, 0)]).unwrap();
        g.apply_move(Owner::Breaker, vec![p(2, 1)]).unwrap();
        g.apply_move(Owner::Maker, vec![p(6, 0)]).unwrap();
        g.apply_move(Owner::Breaker, vec![p(3, 7)]).unwrap();
        g.apply_move(Owner::Maker, vec![p(3, 4)]).unwrap();
        assert!(g.status().is_ongoing());
        assert!(find_k_hole(g.board(), 3, HoleRule::Bichromatic).is_none());
    }

    #[test]
    fn cap_ends_game() {
        let cfg = GameConfig::new(HoleRule::Monochromatic, 5, "1:1".parse().unwrap()).with_max_points(2);
        let mut g = GameState::new(cfg).unwrap();
        g.apply_move(Owner::Maker, vec![p(0, 0)]).unwrap();
        g.apply_move(Owner::Breaker, vec![p(1, 5)]).unwrap();
        assert_eq!(g.status(), &Status::Capped);
    }

    #[test]
    fn k_below_three_rejected() {
        let cfg = GameConfig::new(HoleRule::Monochromatic, 2, "1:1".parse().unwrap());
        assert!(GameState::new(cfg).is_err());
    }
}
