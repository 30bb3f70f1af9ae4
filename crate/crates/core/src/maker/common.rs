//! Geometry shared by the strip-building Maker strategies. Everything here
//! works in frame coordinates, where the strip direction is `(0, -1)`, the
//! lateral coordinate is `x` and the height is `y`.

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::game::{GameState, StrategyError};
use crate::geom::{int, rat, Coord, Direction, Point};
use crate::strips::{first_hit, Frame, Strip, Sweep};

pub(crate) fn frame_points(state: &GameState, frame: &Frame) -> Vec<Point> {
    state.points().iter().map(|p| frame.to_frame(p)).collect()
}

/// A tilt `delta` such that, for the direction `(delta, -1)`, the given
/// points have pairwise distinct lateral coordinates and no point of `all`
/// lies on the downward ray of any of them. Prefers `delta = 0`.
pub(crate) fn generic_tilt(apexes: &[Point], all: &[Point]) -> Coord {
    let mut bad: BTreeSet<Coord> = BTreeSet::new();
    for (i, a) in apexes.iter().enumerate() {
        for b in &apexes[i + 1..] {
            let d = b.sub(a);
            if !d.dy.is_zero() {
                bad.insert(-(&d.dx / &d.dy));
            }
        }
        for q in all {
            let d = q.sub(a);
            if d.dy.is_negative() {
                bad.insert(-(&d.dx / &d.dy));
            }
        }
    }
    let mut delta = Coord::zero();
    let mut step = rat(1, 2);
    while bad.contains(&delta) || lateral_collision(apexes, &delta) {
        delta = step.clone();
        step /= int(2);
    }
    delta
}

fn lateral_collision(apexes: &[Point], delta: &Coord) -> bool {
    let mut seen = BTreeSet::new();
    apexes
        .iter()
        .any(|p| !seen.insert(delta * &p.y + &p.x))
}

/// Height at `x` of the ray from `apex` in direction `w` (`w.dx != 0`).
pub(crate) fn ray_height_at(apex: &Point, w: &Direction, x: &Coord) -> Coord {
    &apex.y + &w.dy * (x - &apex.x) / &w.dx
}

/// Height at `x` of the stopping ray of the cone swept from straight down
/// toward `limit`.
pub(crate) fn cone_top(apex: &Point, limit: &Direction, sweep: Sweep, pts: &[Point], x: &Coord) -> Coord {
    let stop = match first_hit(apex, &Direction::down(), limit, sweep, pts, |_| true) {
        Some(i) => pts[i].sub(apex),
        None => limit.clone(),
    };
    ray_height_at(apex, &stop, x)
}

/// The cone at the right end of `s` opens counterclockwise from down; for a
/// single point the limit is the direction to `toward`.
pub(crate) fn right_cone_top(s: &Strip, toward: &Point, pts: &[Point], x: &Coord) -> Coord {
    let apex = s.last();
    let limit = if s.k() >= 2 {
        apex.sub(&s.points[s.k() - 2])
    } else {
        toward.sub(apex)
    };
    cone_top(apex, &limit, Sweep::Counterclockwise, pts, x)
}

pub(crate) fn left_cone_top(s: &Strip, toward: &Point, pts: &[Point], x: &Coord) -> Coord {
    let apex = s.first();
    let limit = if s.k() >= 2 {
        apex.sub(&s.points[1])
    } else {
        toward.sub(apex)
    };
    cone_top(apex, &limit, Sweep::Clockwise, pts, x)
}

/// An `x` strictly between `lo` and `hi` that no point uses: the midpoint if
/// free, otherwise the midpoint of the widest free sub-interval.
pub(crate) fn pick_sigma(lo: &Coord, hi: &Coord, pts: &[Point]) -> Coord {
    let mid = (lo + hi) / int(2);
    if pts.iter().all(|p| p.x != mid) {
        return mid;
    }
    let mut xs: Vec<Coord> = pts
        .iter()
        .filter(|p| &p.x > lo && &p.x < hi)
        .map(|p| p.x.clone())
        .collect();
    xs.push(lo.clone());
    xs.push(hi.clone());
    xs.sort();
    xs.dedup();
    let (a, b) = xs
        .windows(2)
        .map(|w| (w[0].clone(), w[1].clone()))
        .max_by(|x, y| (&x.1 - &x.0).cmp(&(&y.1 - &y.0)))
        .expect("interval has two endpoints");
    (a + b) / int(2)
}

/// Walks down the vertical line `x = sigma` from `top - 1` by doubling
/// steps until the board accepts the point.
pub(crate) fn place_below(
    state: &GameState,
    frame: &Frame,
    sigma: &Coord,
    top: &Coord,
) -> Result<Point, StrategyError> {
    let mut depth = Coord::one();
    for _ in 0..400 {
        let q = Point::new(sigma.clone(), top - &depth);
        if state.fits(&frame.from_frame(&q)) {
            return Ok(q);
        }
        depth *= int(2);
    }
    Err(StrategyError::Stuck(format!("no legal point below height {top} on x = {sigma}")))
}

/// The lowest point of `pts` on the vertical line through `p` at or below
/// it (`p` itself if there is none lower).
pub(crate) fn lowest_below(pts: &[Point], p: &Point) -> Point {
    pts.iter()
        .filter(|q| q.x == p.x && q.y <= p.y)
        .min_by(|a, b| a.y.cmp(&b.y))
        .cloned()
        .unwrap_or_else(|| p.clone())
}

/// A legal point near `(x, y)`, nudging `y` upward by shrinking steps.
pub(crate) fn legal_near(state: &GameState, frame: &Frame, x: Coord, y: Coord) -> Result<Point, StrategyError> {
    for j in 0..400i64 {
        let q = Point::new(x.clone(), &y + rat(j, 7));
        let b = frame.from_frame(&q);
        if state.fits(&b) {
            return Ok(b);
        }
    }
    Err(StrategyError::Stuck("no legal point near the requested spot".into()))
}

/// One row of a strategy's per-level log.
#[derive(Clone, Debug, Default, Serialize)]
pub struct LevelLog {
    pub size: usize,
    pub input_strips: usize,
    pub maker_points: usize,
    pub breaker_points: usize,
    pub survivors: usize,
    pub needed: usize,
    /// Largest number of candidate regions any single Breaker point of the
    /// level fell into (bichromatic only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_regions_per_breaker_point: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tilt: Option<String>,
}

pub(crate) fn strips_to_board(strips: &[Strip], frame: &Frame) -> Vec<Strip> {
    let v = frame.board_down();
    strips
        .iter()
        .map(|s| Strip {
            points: s.points.iter().map(|p| frame.from_frame(p)).collect(),
            direction: v.clone(),
            generation: s.generation,
        })
        .collect()
}
