//! Breaker's answer to a one-round Maker set at bias 1:2: two points next to
//! each Maker point, one straight below and one up and slightly to the right,
//! so that every triangle spanned by Maker holds one of them.

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::board::CollinearityIndex;
use crate::game::{GameState, Strategy, StrategyError};
use crate::geom::surd::sqrt_lower_rel;
use crate::geom::{dist2_point_line, general_position_witness, int, rat, Coord, Point};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OneRoundError {
    #[error("need at least 3 Maker points, got {0}")]
    TooFew(usize),
    #[error("Maker points are not in general position")]
    Degenerate,
    #[error("no perturbation scale kept the board in general position")]
    NoScale,
}

/// Shear `x -> x + c y` that gives the points pairwise distinct abscissae.
fn separating_shear(m: &[Point]) -> Coord {
    let mut c = Coord::zero();
    let mut n = 1;
    loop {
        let mut xs: Vec<Coord> = m.iter().map(|p| &p.x + &c * &p.y).collect();
        xs.sort();
        if xs.windows(2).all(|w| w[0] != w[1]) {
            return c;
        }
        n += 1;
        c = rat(1, n);
    }
}

fn shear(p: &Point, c: &Coord) -> Point {
    Point::new(&p.x + c * &p.y, p.y.clone())
}

/// Smallest squared distance from a point of `m` to a line through two
/// others.
fn min_dist2(m: &[Point]) -> Coord {
    let mut best: Option<Coord> = None;
    for (i, a) in m.iter().enumerate() {
        for (j, b) in m.iter().enumerate().skip(i + 1) {
            for (l, p) in m.iter().enumerate() {
                if l == i || l == j {
                    continue;
                }
                let d = dist2_point_line(p, a, b);
                if best.as_ref().is_none_or(|x| &d < x) {
                    best = Some(d);
                }
            }
        }
    }
    best.expect("at least three points")
}

/// Upper bound on twice the largest absolute slope, at least 2. A slope
/// bound this loose keeps the upper point steeper than any spanned line.
fn slope_bound(m: &[Point]) -> Coord {
    let mut l = int(2);
    for (i, a) in m.iter().enumerate() {
        for b in &m[i + 1..] {
            let d = b.sub(a);
            let s = (&d.dy / &d.dx).abs() * int(2) + Coord::one();
            if s > l {
                l = s;
            }
        }
    }
    l
}

/// The `2|M|` Breaker points for a Maker set in general position.
pub fn one_round_breaker(m: &[Point]) -> Result<Vec<Point>, OneRoundError> {
    if m.len() < 3 {
        return Err(OneRoundError::TooFew(m.len()));
    }
    if general_position_witness(m).is_some() {
        return Err(OneRoundError::Degenerate);
    }
    let c = separating_shear(m);
    let sheared: Vec<Point> = m.iter().map(|p| shear(p, &c)).collect();
    let l = slope_bound(&sheared);
    // strictly below the minimum distance
    let mut delta = sqrt_lower_rel(&min_dist2(&sheared), 16) * rat(1, 2);
    for _ in 0..64 {
        let mut idx = CollinearityIndex::new(m);
        let mut out = Vec::with_capacity(2 * m.len());
        let mut ok = true;
        for p in &sheared {
            let below = Point::new(p.x.clone(), &p.y - &delta);
            let above = Point::new(&p.x + &delta / &l, &p.y + &delta / int(2));
            for q in [below, above] {
                let q = shear(&q, &-&c);
                if !idx.fits(&q) {
                    ok = false;
                    break;
                }
                idx.insert(q.clone());
                out.push(q);
            }
            if !ok {
                break;
            }
        }
        if ok {
            return Ok(out);
        }
        delta /= int(3);
    }
    Err(OneRoundError::NoScale)
}

/// Plays the one-round answer as a strategy: on each turn it answers every
/// Maker point it has not answered yet, recomputing the scale from all Maker
/// points so far.
#[derive(Default)]
pub struct OneRoundBreaker {
    answered: usize,
}

impl OneRoundBreaker {
    pub fn new() -> Self {
        Self::default()
    }
}

impl Strategy for OneRoundBreaker {
    fn name(&self) -> String {
        "one-round-double".into()
    }

    fn respond(&mut self, state: &GameState, count: usize) -> Result<Vec<Point>, StrategyError> {
        let makers = state.maker_points();
        if makers.len() < 3 || count == 0 {
            return Ok(Vec::new());
        }
        // answer as if Maker's whole set were the one round, on top of the board
        let all = one_round_breaker(&makers).map_err(|e| StrategyError::Stuck(e.to_string()))?;
        let mut idx = CollinearityIndex::new(state.points());
        let mut out = Vec::new();
        for q in all.into_iter().skip(2 * self.answered) {
            if out.len() == count {
                break;
            }
            if idx.fits(&q) {
                idx.insert(q.clone());
                out.push(q);
            }
        }
        self.answered = makers.len().min(self.answered + count.div_ceil(2));
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{convex_hull, polygon_contains_open};

    fn blocks_all(m: &[Point], b: &[Point]) -> bool {
        for i in 0..m.len() {
            for j in i + 1..m.len() {
                for l in j + 1..m.len() {
                    let tri = convex_hull(&[m[i].clone(), m[j].clone(), m[l].clone()]);
                    if !b.iter().any(|q| polygon_contains_open(&tri, q)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    #[test]
    fn single_triangle() {
        let m = [Point::from_ints(0, 0), Point::from_ints(4, 0), Point::from_ints(2, 4)];
        let b = one_round_breaker(&m).unwrap();
        assert_eq!(b.len(), 6);
        assert!(blocks_all(&m, &b));
        // the point below is closer than the smallest point-line distance, 16/sqrt(20)
        assert_eq!(b[0].x, m[0].x);
        assert!(b[0].y < m[0].y && m[0].dist2(&b[0]) < rat(64, 5));
    }

    #[test]
    fn shared_abscissae_are_sheared_apart() {
        let m = [
            Point::from_ints(0, 0),
            Point::from_ints(0, 5),
            Point::from_ints(3, 1),
            Point::from_ints(3, 7),
        ];
        let b = one_round_breaker(&m).unwrap();
        assert!(blocks_all(&m, &b));
    }

    #[test]
    fn steep_right_edge() {
        // b below ac with bc as steep as the steepest spanned line
        let m = [Point::from_ints(0, 10), Point::from_ints(1, 0), Point::from_ints(2, 9)];
        let b = one_round_breaker(&m).unwrap();
        assert!(blocks_all(&m, &b));
    }

    #[test]
    fn rejects_degenerate() {
        let m = [Point::from_ints(0, 0), Point::from_ints(1, 1), Point::from_ints(2, 2)];
        assert_eq!(one_round_breaker(&m), Err(OneRoundError::Degenerate));
        assert_eq!(one_round_breaker(&m[..2]), Err(OneRoundError::TooFew(2)));
    }

    #[test]
    fn random_sets() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for n in [3, 8, 15] {
            let m = crate::sample::random_general_position(&mut rng, n, 100);
            let b = one_round_breaker(&m).unwrap();
            assert!(blocks_all(&m, &b), "n = {n}");
            let mut all = m.clone();
            all.extend(b);
            assert!(crate::geom::is_general_position(&all));
        }
    }
}
