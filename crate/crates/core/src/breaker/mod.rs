//! Breaker strategies: the one-round doubling response, the perturbed
//! polygon strategy, and simple baselines.

mod one_round;
mod perturbed;

pub use one_round::{one_round_breaker, OneRoundBreaker, OneRoundError};
pub use perturbed::{
    angle_count_bound, check_guards, check_guards_incremental, choose_radii, circle_radius,
    place_perturbed_polygon, ring_ok, small_angle_count, unblocked_hole, wide_gaps, DiskEntry,
    DiskRegistry, PerturbationBudget, PerturbedPolygonBreaker, PlacementError, RadiusChoice,
    GuardViolation,
};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::board::CollinearityIndex;
use crate::game::{GameState, Strategy, StrategyError};
use crate::geom::{int, orientation, rat, Coord, Orientation, Point};

fn bounding_box(points: &[Point]) -> (Coord, Coord, Coord, Coord) {
    if points.is_empty() {
        return (int(-10), int(10), int(-10), int(10));
    }
    let xs = points.iter().map(|p| &p.x);
    let ys = points.iter().map(|p| &p.y);
    let (x0, x1) = (xs.clone().min().unwrap().clone(), xs.max().unwrap().clone());
    let (y0, y1) = (ys.clone().min().unwrap().clone(), ys.max().unwrap().clone());
    (x0 - int(1), x1 + int(1), y0 - int(1), y1 + int(1))
}

fn lerp(a: &Coord, b: &Coord, num: i64, den: i64) -> Coord {
    a + (b - a) * rat(num, den)
}

/// Uniformly random legal points in the bounding box of the board.
pub struct RandomBreaker {
    rng: ChaCha8Rng,
}

impl RandomBreaker {
    pub fn new(seed: u64) -> Self {
        RandomBreaker {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }
}

impl Strategy for RandomBreaker {
    fn name(&self) -> String {
        "random".into()
    }

    fn respond(&mut self, state: &GameState, count: usize) -> Result<Vec<Point>, StrategyError> {
        let (x0, x1, y0, y1) = bounding_box(state.points());
        let mut idx = CollinearityIndex::new(state.points());
        let mut out = Vec::new();
        while out.len() < count {
            let p = Point::new(
                lerp(&x0, &x1, self.rng.gen_range(0..=997), 997),
                lerp(&y0, &y1, self.rng.gen_range(0..=991), 991),
            );
            if idx.fits(&p) {
                idx.insert(p.clone());
                out.push(p);
            }
        }
        Ok(out)
    }
}

/// Drops points into empty triangles spanned by Maker's newest point and two
/// other Maker points, falling back to random spots inside Maker's hull.
pub struct InsideHullBreaker {
    rng: ChaCha8Rng,
}

impl InsideHullBreaker {
    pub fn new(seed: u64) -> Self {
        InsideHullBreaker {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    fn triangle_empty(pts: &[Point], a: &Point, b: &Point, c: &Point) -> bool {
        let (b, c) = if orientation(a, b, c) == Orientation::Ccw { (b, c) } else { (c, b) };
        !pts.iter().any(|q| {
            q != a
                && q != b
                && q != c
                && orientation(a, b, q) == Orientation::Ccw
                && orientation(b, c, q) == Orientation::Ccw
                && orientation(c, a, q) == Orientation::Ccw
        })
    }

    fn inside(&mut self, a: &Point, b: &Point, c: &Point) -> Point {
        // random interior barycentric weights
        let u = self.rng.gen_range(1..=97);
        let v = self.rng.gen_range(1..=(98 - u));
        let w = 99 - u - v;
        Point::new(
            (&a.x * int(u) + &b.x * int(v) + &c.x * int(w)) / int(99),
            (&a.y * int(u) + &b.y * int(v) + &c.y * int(w)) / int(99),
        )
    }
}

impl Strategy for InsideHullBreaker {
    fn name(&self) -> String {
        "inside-hull".into()
    }

    fn respond(&mut self, state: &GameState, count: usize) -> Result<Vec<Point>, StrategyError> {
        let makers = state.maker_points();
        let mut all = state.points().to_vec();
        let mut idx = CollinearityIndex::new(state.points());
        let mut out = Vec::new();
        let mut attempts = 0;
        while out.len() < count {
            attempts += 1;
            let p = if makers.len() >= 3 {
                let newest = makers.last().unwrap();
                let i = self.rng.gen_range(0..makers.len() - 1);
                let j = self.rng.gen_range(0..makers.len() - 1);
                let (a, b) = (&makers[i], &makers[j]);
                if i == j || orientation(newest, a, b) == Orientation::Collinear {
                    continue;
                }
                if attempts < 200 && !Self::triangle_empty(&all, newest, a, b) {
                    continue;
                }
                self.inside(newest, a, b)
            } else {
                let (x0, x1, y0, y1) = bounding_box(&all);
                Point::new(
                    lerp(&x0, &x1, self.rng.gen_range(0..=997), 997),
                    lerp(&y0, &y1, self.rng.gen_range(0..=991), 991),
                )
            };
            if idx.fits(&p) {
                idx.insert(p.clone());
                all.push(p.clone());
                out.push(p);
                attempts = 0;
            }
        }
        Ok(out)
    }
}

/// Scripted pressure on the strip constructions: each point goes straight
/// below one of Maker's most recent points, newest first.
pub struct AdversarialBreaker;

impl Strategy for AdversarialBreaker {
    fn name(&self) -> String {
        "adversarial".into()
    }

    fn respond(&mut self, state: &GameState, count: usize) -> Result<Vec<Point>, StrategyError> {
        let makers = state.maker_points();
        let mut idx = CollinearityIndex::new(state.points());
        let mut out = Vec::new();
        let mut target = makers.len();
        let mut spare = 0i64;
        while out.len() < count {
            let anchor = if target > 0 {
                target -= 1;
                makers[target].clone()
            } else {
                spare += 1;
                Point::from_ints(7 * spare - 50, -50 - spare * spare % 13)
            };
            let mut d = Coord::from_integer(1.into());
            for _ in 0..60 {
                let p = Point::new(anchor.x.clone(), &anchor.y - &d);
                if idx.fits(&p) {
                    idx.insert(p.clone());
                    out.push(p);
                    break;
                }
                d /= int(2);
            }
            if spare > 10_000 {
                return Err(StrategyError::Stuck("no legal spot found".into()));
            }
        }
        Ok(out)
    }
}
