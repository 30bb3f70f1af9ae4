//! Maker strategies and the round bounds of the strip constructions.

mod bichrom;
mod common;
mod mono;

pub use bichrom::{pairs_needed, BichromStripMaker};
pub use common::LevelLog;
pub use mono::{Layout, MonoStripMaker};

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::board::Owner;
use crate::game::{GameState, Strategy, StrategyError};
use crate::geom::{int, orient_hom, rat, Coord, HomPoint, Orientation, Point};
use crate::sample::random_point;

/// Maker rounds the strip construction needs for `t` parallel `k`-strips
/// against speed `s`. Exact, possibly fractional.
pub fn round_bound(k: usize, t: usize, s: &Coord) -> Coord {
    let t = Coord::from_integer(t.into());
    let one = Coord::one();
    if k <= 1 {
        return t / (s + &one);
    }
    let q = int(4) * s;
    let mut p = one.clone();
    for _ in 0..k - 2 {
        p *= &q;
    }
    let tail = if q == one { Coord::zero() } else { (&p - &one) / (&q - &one) };
    (p / (s + &one) + tail) * int(2) * t
}

/// Closed form for speed 1:1: `(5/3 * 4^(k-2) - 2/3) t`.
pub fn round_bound_one_to_one(k: usize, t: usize) -> Coord {
    let t = Coord::from_integer(t.into());
    if k <= 1 {
        return t / int(2);
    }
    let p = Coord::from_integer(4u64.pow((k - 2) as u32).into());
    (rat(5, 3) * p - rat(2, 3)) * t
}

/// Uniformly random legal points in a fixed box.
pub struct RandomMaker {
    rng: ChaCha8Rng,
}

impl RandomMaker {
    pub fn new(seed: u64) -> Self {
        RandomMaker {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }
}

impl Strategy for RandomMaker {
    fn name(&self) -> String {
        "random".into()
    }

    fn respond(&mut self, state: &GameState, count: usize) -> Result<Vec<Point>, StrategyError> {
        let mut scratch = crate::board::CollinearityIndex::new(state.points());
        let mut out = Vec::new();
        while out.len() < count {
            let p = random_point(&mut self.rng, 1000, 10);
            if scratch.fits(&p) {
                scratch.insert(p.clone());
                out.push(p);
            }
        }
        Ok(out)
    }
}

/// Picks, among a few random candidates near its own points, the one that
/// spans the most empty triangles with earlier Maker points.
pub struct GreedyHullMaker {
    rng: ChaCha8Rng,
    candidates: usize,
}

impl GreedyHullMaker {
    pub fn new(seed: u64) -> Self {
        GreedyHullMaker {
            rng: ChaCha8Rng::seed_from_u64(seed),
            candidates: 8,
        }
    }

    fn score(state: &GameState, p: &Point) -> usize {
        let all: Vec<HomPoint> = state.points().iter().map(HomPoint::from).collect();
        let makers: Vec<usize> = (0..all.len())
            .filter(|&i| state.board().owner(i) == Owner::Maker)
            .collect();
        let hp = HomPoint::from(p);
        let mut n = 0;
        for (x, &i) in makers.iter().enumerate() {
            for &j in &makers[x + 1..] {
                let (a, b) = match orient_hom(&hp, &all[i], &all[j]) {
                    Orientation::Ccw => (i, j),
                    Orientation::Cw => (j, i),
                    Orientation::Collinear => continue,
                };
                let blocked = (0..all.len()).any(|q| {
                    q != a
                        && q != b
                        && orient_hom(&hp, &all[a], &all[q]) == Orientation::Ccw
                        && orient_hom(&all[a], &all[b], &all[q]) == Orientation::Ccw
                        && orient_hom(&all[b], &hp, &all[q]) == Orientation::Ccw
                });
                if !blocked {
                    n += 1;
                }
            }
        }
        n
    }
}

impl Strategy for GreedyHullMaker {
    fn name(&self) -> String {
        "greedy-hull".into()
    }

    fn respond(&mut self, state: &GameState, count: usize) -> Result<Vec<Point>, StrategyError> {
        let mut out = Vec::new();
        let mut scratch = crate::board::CollinearityIndex::new(state.points());
        let makers = state.maker_points();
        while out.len() < count {
            let mut best: Option<(usize, Point)> = None;
            let mut tries = 0;
            while tries < self.candidates {
                let p = if makers.is_empty() {
                    random_point(&mut self.rng, 1000, 10)
                } else {
                    let c = &makers[self.rng.gen_range(0..makers.len())];
                    let d = random_point(&mut self.rng, 300, 10);
                    Point::new(&c.x + &d.x, &c.y + &d.y)
                };
                if !scratch.fits(&p) {
                    continue;
                }
                tries += 1;
                let s = Self::score(state, &p);
                if best.as_ref().is_none_or(|(b, _)| s > *b) {
                    best = Some((s, p));
                }
            }
            let p = best.expect("at least one candidate").1;
            scratch.insert(p.clone());
            out.push(p);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn round_bound_examples() {
        assert_eq!(round_bound(3, 1, &int(1)), int(6));
        assert_eq!(round_bound(1, 4, &int(1)), int(2));
        assert_eq!(round_bound(3, 1, &int(2)), rat(22, 3));
        assert_eq!(round_bound(4, 1, &int(1)), int(26));
        assert_eq!(round_bound_one_to_one(4, 1), int(26));
        assert_eq!(round_bound_one_to_one(1, 4), int(2));
    }

    /// Rounds by the recursion: `2t/(s+1)` at `k = 2`, then
    /// `r(k, t) = r(k - 1, 4 s t) + 2 t`.
    fn recursive(k: usize, t: Coord, s: &Coord) -> Coord {
        if k == 2 {
            return t * int(2) / (s + Coord::one());
        }
        let two_t = &t * int(2);
        recursive(k - 1, t * int(4) * s, s) + two_t
    }

    proptest! {
        #[test]
        fn closed_forms_match_the_recursion(k in 2usize..=8, t in 1usize..=8, s in 1i64..=6) {
            let tc = Coord::from_integer(t.into());
            prop_assert_eq!(round_bound(k, t, &int(s)), recursive(k, tc.clone(), &int(s)));
            prop_assert_eq!(round_bound(k, t, &int(1)), round_bound_one_to_one(k, t));
        }
    }
}
