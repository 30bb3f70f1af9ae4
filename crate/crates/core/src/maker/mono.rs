//! Maker's strip construction in the monochromatic game.
//!
//! The board is first filled to `2T` points, which pair up by lateral order
//! into `T` parallel 2-strips. Each later level turns `4s t'` strips of size
//! `k'-1` into `t'` strips of size `k'` by placing `2t'` points on vertical
//! halflines inside the adjacent cones. With speed 1:1 the halfline sits
//! between the two strips of a pair; with speed 1:s it sits left of a group
//! of `2s` strips.

use num_traits::ToPrimitive;
use serde_json::json;

use super::common::*;
use crate::game::{GameState, Overlay, Strategy, StrategyError};
use crate::geom::{Coord, Direction, Point};
use crate::oracle::HoleRule;
use crate::strips::{first_hit, is_k_strip, tilted_down, Frame, Strip, StripFamily, Sweep};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Layout {
    /// One new point between the strips of each consecutive pair.
    Pairs,
    /// One new point left of each group of `2s` consecutive strips.
    Groups(usize),
}

#[derive(Clone, Debug)]
struct Slot {
    sigma: Coord,
    point: Point,
}

#[derive(Clone, Debug)]
enum Phase {
    Base,
    Level {
        size: usize,
        strips: Vec<Strip>,
        slots: Vec<Slot>,
        start_len: usize,
    },
    Done(Vec<Strip>),
}

/// Builds `t` parallel `k`-strips out of the points of both players.
#[derive(Clone, Debug)]
pub struct MonoStripMaker {
    k: usize,
    t: usize,
    layout: Layout,
    frame: Frame,
    phase: Phase,
    log: Vec<LevelLog>,
}

impl MonoStripMaker {
    pub fn new(k: usize, t: usize, layout: Layout) -> Self {
        MonoStripMaker {
            k,
            t,
            layout,
            frame: Frame::identity(),
            phase: Phase::Base,
            log: Vec::new(),
        }
    }

    pub fn one_to_one(k: usize, t: usize) -> Self {
        Self::new(k, t, Layout::Pairs)
    }

    pub fn biased(k: usize, t: usize, s: usize) -> Self {
        Self::new(k, t, Layout::Groups(s))
    }

    fn fan_in(&self) -> usize {
        match self.layout {
            Layout::Pairs => 4,
            Layout::Groups(s) => 4 * s,
        }
    }

    /// Strips of size `size` the construction needs.
    fn needed(&self, size: usize) -> usize {
        self.t * self.fan_in().pow((self.k - size.min(self.k)) as u32)
    }

    /// The finished strips in board coordinates.
    pub fn strips(&self) -> Option<Vec<Strip>> {
        match &self.phase {
            Phase::Done(s) => Some(strips_to_board(s, &self.frame)),
            _ => None,
        }
    }

    pub fn levels(&self) -> &[LevelLog] {
        &self.log
    }

    fn check_game(&self, state: &GameState) -> Result<(), StrategyError> {
        if state.config.variant != HoleRule::Monochromatic {
            return Err(StrategyError::Unsupported("needs the monochromatic game".into()));
        }
        if self.k < 2 {
            return Err(StrategyError::Unsupported("strips need k >= 2".into()));
        }
        let b = &state.config.bias;
        let s = b.ratio();
        let ok = match self.layout {
            Layout::Pairs => b.maker == b.breaker,
            Layout::Groups(g) => b.maker == Coord::from_integer(1.into()) && s == Coord::from_integer(g.into()),
        };
        if !ok {
            return Err(StrategyError::Unsupported(format!("bias {b} does not match the strategy")));
        }
        Ok(())
    }

    /// Advances the phase as far as the current board allows. Only called on
    /// Maker's turn, so every level's Breaker replies are in.
    fn sync(&mut self, state: &GameState) -> Result<(), StrategyError> {
        loop {
            match &self.phase {
                Phase::Base => {
                    let need = self.needed(2);
                    if state.points().len() < 2 * need {
                        return Ok(());
                    }
                    self.finish_base(state, need)?;
                }
                Phase::Level { slots, size, .. } => {
                    let out = self.needed(*size);
                    if slots.len() < self.slot_count(out) {
                        return Ok(());
                    }
                    self.finish_level(state)?;
                }
                Phase::Done(_) => return Ok(()),
            }
        }
    }

    fn slot_count(&self, out: usize) -> usize {
        2 * out
    }

    fn finish_base(&mut self, state: &GameState, need: usize) -> Result<(), StrategyError> {
        let all = state.points().to_vec();
        let delta = generic_tilt(&all, &[]);
        self.frame = Frame::identity().then_direction(&tilted_down(&delta));
        let mut f = frame_points(state, &self.frame);
        f.sort_by(|a, b| a.x.cmp(&b.x));
        let down = Direction::down();
        let all_f = frame_points(state, &self.frame);
        let mut strips = Vec::new();
        for pair in f.chunks_exact(2).take(need) {
            let s = Strip::new(pair.to_vec(), down.clone(), 2)
                .map_err(|e| StrategyError::InvariantBroken(format!("base pair: {e}")))?;
            if !s.is_valid(&all_f) {
                return Err(StrategyError::InvariantBroken("base pair region not empty".into()));
            }
            strips.push(s);
        }
        self.log.push(LevelLog {
            size: 2,
            input_strips: 0,
            maker_points: state.maker_turns() as usize,
            breaker_points: state.points().len() - state.maker_turns() as usize,
            survivors: strips.len(),
            needed: need,
            tilt: Some(crate::geom::coord_to_string(&delta)),
            ..Default::default()
        });
        self.next_level(state, 2, strips);
        Ok(())
    }

    fn next_level(&mut self, state: &GameState, done_size: usize, strips: Vec<Strip>) {
        if done_size >= self.k {
            let t = self.t;
            self.phase = Phase::Done(strips.into_iter().take(t).collect());
        } else {
            self.phase = Phase::Level {
                size: done_size + 1,
                strips,
                slots: Vec::new(),
                start_len: state.points().len(),
            };
        }
    }

    fn finish_level(&mut self, state: &GameState) -> Result<(), StrategyError> {
        let Phase::Level {
            size,
            strips,
            slots,
            start_len,
        } = std::mem::replace(&mut self.phase, Phase::Base)
        else {
            unreachable!()
        };
        let f = frame_points(state, &self.frame);
        let down = Direction::down();
        let out = self.needed(size);
        let mut made: Vec<Strip> = Vec::new();
        match self.layout {
            Layout::Pairs => {
                for (j, slot) in slots.iter().enumerate() {
                    let (left, right) = (&strips[2 * j], &strips[2 * j + 1]);
                    // Breaker points straight below a boundary vertex take its place
                    let apex = lowest_below(&f, &slot.point);
                    let mut a = left.points.clone();
                    a[0] = lowest_below(&f, &a[0]);
                    a.push(apex.clone());
                    let mut b = right.points.clone();
                    let n = b.len();
                    b[n - 1] = lowest_below(&f, &b[n - 1]);
                    b.insert(0, apex);
                    for cand in [a, b] {
                        if is_k_strip(&cand, &down, &f) {
                            made.push(Strip::new(cand, down.clone(), size as u32).expect("checked cap"));
                            break;
                        }
                    }
                }
            }
            Layout::Groups(s) => {
                for (j, slot) in slots.iter().enumerate() {
                    for st in &strips[2 * s * j..2 * s * (j + 1)] {
                        let apex = st.first();
                        let limit = apex.sub(&st.points[1]);
                        let hit = first_hit(apex, &down, &limit, Sweep::Clockwise, &f, |q| q.x >= slot.sigma);
                        if let Some(h) = hit {
                            let mut cand = st.points.clone();
                            cand.insert(0, f[h].clone());
                            if is_k_strip(&cand, &down, &f) {
                                made.push(Strip::new(cand, down.clone(), size as u32).expect("checked cap"));
                                break;
                            }
                        }
                    }
                }
            }
        }
        let breaker_points = state.points().len() - start_len - slots.len();
        self.log.push(LevelLog {
            size,
            input_strips: strips.len(),
            maker_points: slots.len(),
            breaker_points,
            survivors: made.len(),
            needed: out,
            ..Default::default()
        });
        if made.len() < out {
            return Err(StrategyError::InvariantBroken(format!(
                "level {size}: {} of {} candidates survived {} Breaker points, need {out}",
                made.len(),
                slots.len(),
                breaker_points
            )));
        }
        let family = StripFamily::new(down, made)
            .map_err(|e| StrategyError::InvariantBroken(format!("level {size}: {e}")))?;
        self.next_level(state, size, family.strips);
        Ok(())
    }

    fn place_slot(&mut self, state: &GameState) -> Result<Point, StrategyError> {
        let f = frame_points(state, &self.frame);
        let Phase::Level { strips, slots, .. } = &mut self.phase else {
            unreachable!()
        };
        let j = slots.len();
        let (sigma, top) = match self.layout {
            Layout::Pairs => {
                let (left, right) = (&strips[2 * j], &strips[2 * j + 1]);
                let sigma = pick_sigma(&left.last().x, &right.first().x, &f);
                let t1 = right_cone_top(left, right.first(), &f, &sigma);
                let t2 = left_cone_top(right, left.last(), &f, &sigma);
                (sigma, t1.min(t2))
            }
            Layout::Groups(s) => {
                let group = &strips[2 * s * j..2 * s * (j + 1)];
                let hi = group[0].first().x.clone();
                let lo = if j == 0 {
                    &hi - Coord::from_integer(2.into())
                } else {
                    strips[2 * s * j - 1].last().x.clone()
                };
                let sigma = pick_sigma(&lo, &hi, &f);
                let top = group
                    .iter()
                    .map(|st| left_cone_top(st, st.first(), &f, &sigma))
                    .min()
                    .expect("groups are nonempty");
                (sigma, top)
            }
        };
        let q = place_below(state, &self.frame, &sigma, &top)?;
        slots.push(Slot {
            sigma,
            point: q.clone(),
        });
        Ok(self.frame.from_frame(&q))
    }

    fn base_point(&self, state: &GameState) -> Result<Point, StrategyError> {
        let i = state.maker_turns() as i64;
        let x = Coord::from_integer((5 * i).into());
        let y = Coord::from_integer(((i * i) % 11).into());
        legal_near(state, &Frame::identity(), x, y)
    }
}

impl Strategy for MonoStripMaker {
    fn name(&self) -> String {
        match self.layout {
            Layout::Pairs => format!("strips-1-1:t={}", self.t),
            Layout::Groups(s) => format!("strips-biased:t={},s={s}", self.t),
        }
    }

    fn respond(&mut self, state: &GameState, count: usize) -> Result<Vec<Point>, StrategyError> {
        self.check_game(state)?;
        if count == 0 {
            return Ok(Vec::new());
        }
        self.sync(state)?;
        let p = match self.phase {
            Phase::Base => self.base_point(state)?,
            Phase::Level { .. } => self.place_slot(state)?,
            Phase::Done(_) => {
                let n = state.points().len() as i64;
                legal_near(state, &Frame::identity(), Coord::from_integer((1000 + 7 * n).into()), Coord::from_integer(0.into()))?
            }
        };
        Ok(vec![p])
    }

    fn goal_reached(&mut self, state: &GameState) -> Result<bool, StrategyError> {
        self.check_game(state)?;
        self.sync(state)?;
        Ok(matches!(self.phase, Phase::Done(_)))
    }

    fn overlays(&self) -> Vec<Overlay> {
        let strips = match &self.phase {
            Phase::Done(s) => s.clone(),
            Phase::Level { strips, .. } => strips.clone(),
            Phase::Base => Vec::new(),
        };
        strips_to_board(&strips, &self.frame)
            .into_iter()
            .map(|s| Overlay::Strip {
                points: s.points,
                direction: s.direction,
            })
            .collect()
    }

    fn report(&self) -> serde_json::Value {
        json!({
            "target_k": self.k,
            "target_t": self.t,
            "direction": self.frame.board_down(),
            "complete": matches!(self.phase, Phase::Done(_)),
            "strips": self.strips(),
            "levels": self.log,
            "fan_in": self.fan_in().to_u64(),
        })
    }
}
