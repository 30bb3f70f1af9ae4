//! Turn order for arbitrary rational speeds.
//!
//! Each player's i-th point (i = 1, 2, ...) has a schedule time; all times
//! are merged in increasing order and ties go to Maker. A turn is a maximal
//! run of consecutive times owned by one player.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::board::Owner;
use crate::geom::{coord_to_string, parse_coord, Coord};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BiasError {
    #[error("bias must look like `1:2` or `1:3/2`, got `{0}`")]
    Syntax(String),
    #[error("speeds must be positive")]
    NonPositive,
}

/// How the i-th point of a player with speed `s` is timed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScheduleConvention {
    /// Time `i / s`: the faster player moves more often.
    #[default]
    Reciprocal,
    /// Time `i * s`, the formula read literally.
    Literal,
}

/// Speeds `maker:breaker`, normalized so the smaller one is 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bias {
    #[serde(with = "crate::geom::coord_serde")]
    pub maker: Coord,
    #[serde(with = "crate::geom::coord_serde")]
    pub breaker: Coord,
}

impl Bias {
    pub fn new(maker: Coord, breaker: Coord) -> Result<Self, BiasError> {
        if !maker.is_positive() || !breaker.is_positive() {
            return Err(BiasError::NonPositive);
        }
        let m = if maker < breaker { maker.clone() } else { breaker.clone() };
        Ok(Bias {
            maker: maker / &m,
            breaker: breaker / &m,
        })
    }

    pub fn one_to(s: Coord) -> Result<Self, BiasError> {
        Bias::new(Coord::one(), s)
    }

    /// Breaker's speed when Maker's is 1.
    pub fn ratio(&self) -> Coord {
        &self.breaker / &self.maker
    }
}

impl fmt::Display for Bias {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", short(&self.maker), short(&self.breaker))
    }
}

fn short(c: &Coord) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        coord_to_string(c)
    }
}

impl FromStr for Bias {
    type Err = BiasError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (a, b) = s
            .split_once(':')
            .ok_or_else(|| BiasError::Syntax(s.to_string()))?;
        let a = parse_coord(a.trim()).map_err(|_| BiasError::Syntax(s.to_string()))?;
        let b = parse_coord(b.trim()).map_err(|_| BiasError::Syntax(s.to_string()))?;
        Bias::new(a, b)
    }
}

/// The cursor into the merged schedule: how many points each player has
/// been allotted so far.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Schedule {
    pub bias: Bias,
    pub convention: ScheduleConvention,
    pub maker_done: u64,
    pub breaker_done: u64,
}

impl Schedule {
    pub fn new(bias: Bias, convention: ScheduleConvention) -> Self {
        Schedule {
            bias,
            convention,
            maker_done: 0,
            breaker_done: 0,
        }
    }

    fn speed(&self, owner: Owner) -> &Coord {
        match owner {
            Owner::Maker => &self.bias.maker,
            Owner::Breaker => &self.bias.breaker,
        }
    }

    /// Schedule time of the `i`-th point (1-based) of `owner`.
    pub fn time(&self, owner: Owner, i: u64) -> Coord {
        let i = Coord::from_integer(i.into());
        match self.convention {
            ScheduleConvention::Reciprocal => i / self.speed(owner),
            ScheduleConvention::Literal => i * self.speed(owner),
        }
    }

    fn done(&self, owner: Owner) -> u64 {
        match owner {
            Owner::Maker => self.maker_done,
            Owner::Breaker => self.breaker_done,
        }
    }

    /// The owner of the next turn and the number of points in it.
    pub fn peek(&self) -> (Owner, usize) {
        let tm = self.time(Owner::Maker, self.maker_done + 1);
        let tb = self.time(Owner::Breaker, self.breaker_done + 1);
        let owner = if tm <= tb { Owner::Maker } else { Owner::Breaker };
        let other = if owner == Owner::Maker { tb } else { tm };
        let mut n = 0u64;
        let start = self.done(owner);
        loop {
            let t = self.time(owner, start + n + 1);
            let mine = match owner {
                Owner::Maker => t <= other,
                Owner::Breaker => t < other,
            };
            if !mine {
                break;
            }
            n += 1;
        }
        (owner, n as usize)
    }

    /// Consumes the next turn.
    pub fn advance(&mut self) -> (Owner, usize) {
        let (owner, n) = self.peek();
        match owner {
            Owner::Maker => self.maker_done += n as u64,
            Owner::Breaker => self.breaker_done += n as u64,
        }
        (owner, n)
    }

    /// The first `n` turns from the current cursor, without consuming them.
    pub fn preview(&self, n: usize) -> Vec<(Owner, usize)> {
        let mut s = self.clone();
        (0..n).map(|_| s.advance()).collect()
    }

    /// The owner of each of the first `n` points from the current cursor.
    pub fn point_sequence(&self, n: usize) -> Vec<Owner> {
        let mut s = self.clone();
        let mut out = Vec::with_capacity(n);
        while out.len() < n {
            let (o, c) = s.advance();
            out.extend(std::iter::repeat_n(o, c));
        }
        out.truncate(n);
        out
    }
}

/// Ceiling of a nonnegative rational.
pub fn ceil_u64(c: &Coord) -> u64 {
    let v = c.ceil().to_integer();
    if v.is_negative() || v.is_zero() {
        0
    } else {
        u64::try_from(v).unwrap_or(u64::MAX)
    }
}
