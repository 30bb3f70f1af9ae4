//! Maker's strip construction in the bichromatic game against speed `s < 2`.
//!
//! All strips consist of Maker points and must avoid every Breaker point.
//! Level 1 places single Maker points and then picks a direction in which
//! their downward rays are empty. Each later level places one point between
//! the strips of every pair, tilts the direction slightly so that each
//! Breaker point of the level falls into at most one candidate region, and
//! keeps one surviving candidate per pair.

use num_traits::{One, ToPrimitive};
use serde_json::json;

use super::common::*;
use crate::game::{GameState, Overlay, Strategy, StrategyError};
use crate::geom::{coord_to_string, Coord, Direction, Point};
use crate::oracle::HoleRule;
use crate::schedule::ceil_u64;
use crate::strips::{rotation_margin, tilted_down, Frame, LateralIndex, Strip, StripFamily};

#[derive(Clone, Debug)]
enum Phase {
    Singles,
    Level {
        size: usize,
        strips: Vec<Strip>,
        /// Frame coordinates of the board when the level started.
        before: Vec<Point>,
        placed: Vec<Point>,
    },
    Done(Vec<Strip>),
}

/// Builds `r` parallel Maker-only `k`-strips whose regions avoid all of
/// Breaker's points.
#[derive(Clone, Debug)]
pub struct BichromStripMaker {
    k: usize,
    r: usize,
    /// `needs[size]`: strips of that size the construction must produce.
    needs: Vec<usize>,
    frame: Frame,
    phase: Phase,
    log: Vec<LevelLog>,
    breaker_speed: Option<Coord>,
}

/// Pairs placed at a level that must output `out` strips when Breaker has
/// speed `s = 2 - eps`: one survivor per pair, so `ceil(2 out / eps)`.
pub fn pairs_needed(out: usize, s: &Coord) -> usize {
    let eps = Coord::from_integer(2.into()) - s;
    ceil_u64(&(Coord::from_integer((2 * out).into()) / eps)) as usize
}

impl BichromStripMaker {
    pub fn new(k: usize, r: usize) -> Self {
        BichromStripMaker {
            k,
            r,
            needs: Vec::new(),
            frame: Frame::identity(),
            phase: Phase::Singles,
            log: Vec::new(),
            breaker_speed: None,
        }
    }

    /// Maker points the whole construction places against speed `s`.
    pub fn total_maker_points(k: usize, r: usize, s: &Coord) -> usize {
        let needs = Self::plan(k, r, s);
        needs[1] + (2..=k).map(|size| pairs_needed(needs[size], s)).sum::<usize>()
    }

    fn plan(k: usize, r: usize, s: &Coord) -> Vec<usize> {
        let mut needs = vec![0; k + 1];
        needs[k] = r;
        for size in (2..=k).rev() {
            needs[size - 1] = 2 * pairs_needed(needs[size], s);
        }
        needs
    }

    pub fn strips(&self) -> Option<Vec<Strip>> {
        match &self.phase {
            Phase::Done(s) => Some(strips_to_board(s, &self.frame)),
            _ => None,
        }
    }

    pub fn levels(&self) -> &[LevelLog] {
        &self.log
    }

    fn init(&mut self, state: &GameState) -> Result<(), StrategyError> {
        if state.config.variant != HoleRule::Bichromatic {
            return Err(StrategyError::Unsupported("needs the bichromatic game".into()));
        }
        let b = &state.config.bias;
        if !b.maker.is_one() {
            return Err(StrategyError::Unsupported(format!("Maker must have speed 1, bias {b}")));
        }
        let s = b.ratio();
        if s >= Coord::from_integer(2.into()) {
            return Err(StrategyError::Unsupported(format!("Breaker speed {s} is not below 2")));
        }
        if self.k < 1 {
            return Err(StrategyError::Unsupported("k must be positive".into()));
        }
        if self.breaker_speed.is_none() {
            self.needs = Self::plan(self.k, self.r, &s);
            self.breaker_speed = Some(s);
        }
        Ok(())
    }

    fn sync(&mut self, state: &GameState) -> Result<(), StrategyError> {
        loop {
            match &self.phase {
                Phase::Singles => {
                    if state.maker_points().len() < self.needs[1] {
                        return Ok(());
                    }
                    self.finish_singles(state)?;
                }
                Phase::Level { size, placed, .. } => {
                    if placed.len() < pairs_needed(self.needs[*size], self.breaker_speed.as_ref().unwrap()) {
                        return Ok(());
                    }
                    self.finish_level(state)?;
                }
                Phase::Done(_) => return Ok(()),
            }
        }
    }

    fn finish_singles(&mut self, state: &GameState) -> Result<(), StrategyError> {
        let makers = state.maker_points();
        let delta = generic_tilt(&makers, state.points());
        self.frame = Frame::identity().then_direction(&tilted_down(&delta));
        let f = frame_points(state, &self.frame);
        let down = Direction::down();
        let mut strips: Vec<Strip> = makers
            .iter()
            .map(|p| Strip::new(vec![self.frame.to_frame(p)], down.clone(), 1).expect("one point"))
            .collect();
        strips.sort_by(|a, b| a.first().x.cmp(&b.first().x));
        let index = LateralIndex::new(&down, &f);
        if let Some(bad) = strips.iter().find(|s| !s.is_valid_in(&index)) {
            return Err(StrategyError::InvariantBroken(format!(
                "ray below {} is not empty",
                self.frame.from_frame(bad.first())
            )));
        }
        self.log.push(LevelLog {
            size: 1,
            maker_points: makers.len(),
            breaker_points: state.points().len() - makers.len(),
            survivors: strips.len(),
            needed: self.needs[1],
            tilt: Some(coord_to_string(&delta)),
            ..Default::default()
        });
        self.next_level(1, strips, f);
        Ok(())
    }

    fn next_level(&mut self, done: usize, strips: Vec<Strip>, board: Vec<Point>) {
        if done >= self.k {
            let r = self.r;
            self.phase = Phase::Done(strips.into_iter().take(r).collect());
        } else {
            self.phase = Phase::Level {
                size: done + 1,
                strips,
                before: board,
                placed: Vec::new(),
            };
        }
    }

    fn finish_level(&mut self, state: &GameState) -> Result<(), StrategyError> {
        let Phase::Level {
            size,
            strips,
            before,
            placed,
        } = std::mem::replace(&mut self.phase, Phase::Singles)
        else {
            unreachable!()
        };
        let broken = |m: String| StrategyError::InvariantBroken(format!("level {size}: {m}"));
        let f = frame_points(state, &self.frame);
        let down = Direction::down();
        let mut reference = before.clone();
        reference.extend(placed.iter().cloned());
        let extra: Vec<Point> = f.iter().filter(|q| !reference.contains(q)).cloned().collect();

        let ref_index = LateralIndex::new(&down, &reference);
        let mut candidates: Vec<Strip> = Vec::new();
        for (i, p) in placed.iter().enumerate() {
            let mut a = strips[2 * i].points.clone();
            a.push(p.clone());
            let mut b = strips[2 * i + 1].points.clone();
            b.insert(0, p.clone());
            for c in [a, b] {
                let s = Strip::new(c, down.clone(), size as u32).map_err(|e| broken(e.to_string()))?;
                if !s.is_valid_in(&ref_index) {
                    return Err(broken("a candidate region holds an earlier point".into()));
                }
                candidates.push(s);
            }
        }
        let delta = rotation_margin(&candidates, &reference, &extra, &placed)
            .map_err(|e| broken(e.to_string()))?;
        let v = tilted_down(&delta);
        let tilted: Vec<Strip> = candidates
            .iter()
            .map(|c| Strip::new(c.points.clone(), v.clone(), c.generation))
            .collect::<Result<_, _>>()
            .map_err(|e| broken(e.to_string()))?;

        let extra_index = LateralIndex::new(&v, &extra);
        let mut hits = vec![0usize; extra.len()];
        for c in &tilted {
            for i in extra_index.in_region(&c.points) {
                hits[i] += 1;
            }
        }
        let max_regions = hits.into_iter().max().unwrap_or(0);
        if max_regions > 1 {
            return Err(broken(format!("a Breaker point lies in {max_regions} candidate regions")));
        }

        let board_index = LateralIndex::new(&v, &f);
        let mut survivors = Vec::new();
        let mut blocked = 0;
        for pair in tilted.chunks_exact(2) {
            match pair.iter().find(|c| board_index.is_k_strip(&c.points)) {
                Some(c) => survivors.push(c.clone()),
                None => blocked += 1,
            }
        }
        let s = self.breaker_speed.clone().unwrap();
        let slack = ceil_u64(&s) as usize;
        let allowed = ceil_u64(&(&s * Coord::from_integer(placed.len().into()))) as usize + slack;
        if extra.len() > allowed {
            return Err(broken(format!("{} Breaker points, schedule allows {allowed}", extra.len())));
        }
        if blocked > extra.len() / 2 {
            return Err(broken(format!("{blocked} pairs blocked by {} points", extra.len())));
        }
        let out = self.needs[size];
        self.log.push(LevelLog {
            size,
            input_strips: strips.len(),
            maker_points: placed.len(),
            breaker_points: extra.len(),
            survivors: survivors.len(),
            needed: out,
            max_regions_per_breaker_point: Some(max_regions),
            tilt: Some(coord_to_string(&delta)),
        });
        if survivors.len() < out {
            return Err(broken(format!("{} survivors, need {out}", survivors.len())));
        }

        // re-express everything in the tilted frame
        let step = Frame::identity().then_direction(&v);
        self.frame = self.frame.then_direction(&v);
        let moved: Vec<Strip> = survivors
            .iter()
            .map(|s| Strip::new(s.points.iter().map(|p| step.to_frame(p)).collect(), down.clone(), s.generation))
            .collect::<Result<_, _>>()
            .map_err(|e| broken(e.to_string()))?;
        let f2 = frame_points(state, &self.frame);
        let moved_index = LateralIndex::new(&down, &f2);
        if !moved.iter().all(|s| s.is_valid_in(&moved_index)) {
            return Err(broken("a survivor fails after the tilt".into()));
        }
        let family = StripFamily::new(down, moved).map_err(|e| broken(e.to_string()))?;
        self.next_level(size, family.strips, f2);
        Ok(())
    }

    fn place_pair_point(&mut self, state: &GameState) -> Result<Point, StrategyError> {
        let f = frame_points(state, &self.frame);
        let Phase::Level { strips, placed, .. } = &mut self.phase else {
            unreachable!()
        };
        let i = placed.len();
        let (left, right) = (&strips[2 * i], &strips[2 * i + 1]);
        let sigma = pick_sigma(&left.last().x, &right.first().x, &f);
        let t1 = right_cone_top(left, right.first(), &f, &sigma);
        let t2 = left_cone_top(right, left.last(), &f, &sigma);
        let q = place_below(state, &self.frame, &sigma, &t1.min(t2))?;
        placed.push(q.clone());
        Ok(self.frame.from_frame(&q))
    }

    fn single_point(&self, state: &GameState) -> Result<Point, StrategyError> {
        let i = state.maker_points().len() as i64;
        // a convex chain keeps the singles' neighbours clear of each other
        let x = Coord::from_integer((4 * i).into());
        let y = Coord::new((i * i).into(), 8.into());
        legal_near(state, &Frame::identity(), x, y)
    }
}

impl Strategy for BichromStripMaker {
    fn name(&self) -> String {
        format!("strips-bichrom:r={}", self.r)
    }

    fn respond(&mut self, state: &GameState, count: usize) -> Result<Vec<Point>, StrategyError> {
        self.init(state)?;
        if count == 0 {
            return Ok(Vec::new());
        }
        self.sync(state)?;
        let p = match self.phase {
            Phase::Singles => self.single_point(state)?,
            Phase::Level { .. } => self.place_pair_point(state)?,
            Phase::Done(_) => {
                let n = state.points().len() as i64;
                legal_near(
                    state,
                    &Frame::identity(),
                    Coord::from_integer((-1000 - 7 * n).into()),
                    Coord::from_integer(0.into()),
                )?
            }
        };
        Ok(vec![p])
    }

    fn goal_reached(&mut self, state: &GameState) -> Result<bool, StrategyError> {
        self.init(state)?;
        self.sync(state)?;
        Ok(matches!(self.phase, Phase::Done(_)))
    }

    fn overlays(&self) -> Vec<Overlay> {
        let strips = match &self.phase {
            Phase::Done(s) => s.clone(),
            Phase::Level { strips, .. } => strips.clone(),
            Phase::Singles => Vec::new(),
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
            "target_r": self.r,
            "plan": self.needs,
            "breaker_speed": self.breaker_speed.as_ref().map(coord_to_string),
            "direction": self.frame.board_down(),
            "complete": matches!(self.phase, Phase::Done(_)),
            "strips": self.strips(),
            "levels": self.log,
            "max_regions_per_breaker_point": self.log.iter().filter_map(|l| l.max_regions_per_breaker_point).max().and_then(|m| m.to_u64()),
        })
    }
}
