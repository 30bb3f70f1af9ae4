//! k-strips: caps whose convex hull, swept along a ray direction, is empty.
//!
//! For a direction `v` every point `q` gets a lateral coordinate
//! `s(q) = cross(v, q)` and a height `h(q) = -dot(v, q)`; moving along `v`
//! lowers the height. A strip's vertices have distinct lateral coordinates
//! and, sorted by them, turn clockwise at every inner vertex.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom::{int, orientation, Cone, Coord, Direction, HomPoint, Orientation, Point};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StripError {
    #[error("a strip needs at least one point")]
    Empty,
    #[error("strip vertices must have distinct lateral coordinates")]
    RepeatedLateral,
    #[error("points are not a cap with respect to the direction")]
    NotCap,
    #[error("adjacent cones need a strip with at least two points")]
    TooShort,
    #[error("point is not in the closure of an adjacent cone")]
    NotInCone,
    #[error("extended set fails the strip test")]
    NotAStrip,
    #[error("strip regions overlap in a way the rotation cannot preserve")]
    OverlappingRegions,
    #[error("no admissible rotation found")]
    NoMargin,
}

pub fn lateral(v: &Direction, q: &Point) -> Coord {
    &v.dx * &q.y - &v.dy * &q.x
}

pub fn height(v: &Direction, q: &Point) -> Coord {
    -(&v.dx * &q.x + &v.dy * &q.y)
}

/// The direction `(delta, -1)`.
pub fn tilted_down(delta: &Coord) -> Direction {
    Direction::raw(delta.clone(), int(-1))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Strip {
    /// Vertices sorted by increasing lateral coordinate.
    pub points: Vec<Point>,
    pub direction: Direction,
    /// Recursion depth that produced the strip (its size, for the Maker
    /// constructions).
    pub generation: u32,
}

impl Strip {
    /// Sorts the points and checks the cap shape. Emptiness is not checked;
    /// use [`Strip::is_valid`] against a point set for that.
    pub fn new(points: Vec<Point>, direction: Direction, generation: u32) -> Result<Self, StripError> {
        let points = sort_cap(points, &direction)?;
        Ok(Strip {
            points,
            direction,
            generation,
        })
    }

    pub fn k(&self) -> usize {
        self.points.len()
    }

    pub fn first(&self) -> &Point {
        &self.points[0]
    }

    pub fn last(&self) -> &Point {
        &self.points[self.points.len() - 1]
    }

    pub fn lateral_range(&self) -> (Coord, Coord) {
        (
            lateral(&self.direction, self.first()),
            lateral(&self.direction, self.last()),
        )
    }

    /// Closed membership in `conv(points) + ray(direction)`.
    pub fn region_contains(&self, q: &Point) -> bool {
        region_contains_sorted(&self.points, &self.direction, q)
    }

    pub fn is_valid(&self, set: &[Point]) -> bool {
        set.iter()
            .all(|q| self.points.contains(q) || !self.region_contains(q))
    }

    /// [`Strip::is_valid`] against an index built for this strip's direction.
    pub fn is_valid_in(&self, index: &LateralIndex) -> bool {
        debug_assert!(index.direction == self.direction);
        index
            .in_region(&self.points)
            .all(|i| self.points.contains(&index.points[i]))
    }
}

fn sort_cap(mut points: Vec<Point>, v: &Direction) -> Result<Vec<Point>, StripError> {
    if points.is_empty() {
        return Err(StripError::Empty);
    }
    points.sort_by_cached_key(|p| lateral(v, p));
    for w in points.windows(2) {
        if lateral(v, &w[0]) == lateral(v, &w[1]) {
            return Err(StripError::RepeatedLateral);
        }
    }
    for w in points.windows(3) {
        if orientation(&w[0], &w[1], &w[2]) != Orientation::Cw {
            return Err(StripError::NotCap);
        }
    }
    Ok(points)
}

/// Closed membership of `q` in the region below a cap sorted by lateral
/// coordinate: inside the lateral slab and on or below every cap edge.
pub fn region_contains_sorted(cap: &[Point], v: &Direction, q: &Point) -> bool {
    let sq = lateral(v, q);
    let lo = lateral(v, &cap[0]);
    let hi = lateral(v, &cap[cap.len() - 1]);
    if sq < lo || sq > hi {
        return false;
    }
    if cap.len() == 1 {
        return !height(v, q).gt(&height(v, &cap[0]));
    }
    cap.windows(2)
        .all(|w| orientation(&w[0], &w[1], q) != Orientation::Ccw)
}

/// The strip test: `p` is a cap w.r.t. `v` and no point of `set` other than
/// the vertices lies in the closed region `conv(p) + ray(v)`.
pub fn is_k_strip(p: &[Point], v: &Direction, set: &[Point]) -> bool {
    match sort_cap(p.to_vec(), v) {
        Ok(cap) => set
            .iter()
            .all(|q| cap.contains(q) || !region_contains_sorted(&cap, v, q)),
        Err(_) => false,
    }
}

/// Points of a set sorted by lateral coordinate for one direction, so that
/// strip tests only look at the points inside a strip's lateral slab.
pub struct LateralIndex<'a> {
    direction: Direction,
    keyed: Vec<(Coord, usize)>,
    points: &'a [Point],
}

impl<'a> LateralIndex<'a> {
    pub fn new(direction: &Direction, points: &'a [Point]) -> Self {
        let mut keyed: Vec<(Coord, usize)> = points
            .iter()
            .enumerate()
            .map(|(i, q)| (lateral(direction, q), i))
            .collect();
        keyed.sort();
        LateralIndex {
            direction: direction.clone(),
            keyed,
            points,
        }
    }

    /// Indices of the points in the closed region below the sorted cap.
    pub fn in_region<'b>(&'b self, cap: &'b [Point]) -> impl Iterator<Item = usize> + 'b {
        let lo = lateral(&self.direction, &cap[0]);
        let hi = lateral(&self.direction, &cap[cap.len() - 1]);
        let v = &self.direction;
        let start = self.keyed.partition_point(|(s, _)| s < &lo);
        self.keyed[start..]
            .iter()
            .take_while(move |(s, _)| s <= &hi)
            .map(|(_, i)| *i)
            .filter(move |&i| region_contains_sorted(cap, v, &self.points[i]))
    }

    /// [`is_k_strip`] against the indexed set.
    pub fn is_k_strip(&self, p: &[Point]) -> bool {
        match sort_cap(p.to_vec(), &self.direction) {
            Ok(cap) => self.in_region(&cap).all(|i| cap.contains(&self.points[i])),
            Err(_) => false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sweep {
    Clockwise,
    Counterclockwise,
}

/// Rotates the ray from `apex` in direction `start` toward `limit` and
/// returns the index of the first point of `points` it passes through, if
/// any lies strictly inside the swept cone. `filter` restricts the
/// candidates.
pub fn first_hit(
    apex: &Point,
    start: &Direction,
    limit: &Direction,
    sweep: Sweep,
    points: &[Point],
    filter: impl Fn(&Point) -> bool,
) -> Option<usize> {
    let mut best: Option<(usize, Direction)> = None;
    for (i, q) in points.iter().enumerate() {
        if q == apex || !filter(q) {
            continue;
        }
        let d = q.sub(apex);
        let inside = match sweep {
            Sweep::Counterclockwise => start.cross(&d).is_positive() && d.cross(limit).is_positive(),
            Sweep::Clockwise => limit.cross(&d).is_positive() && d.cross(start).is_positive(),
        };
        if !inside {
            continue;
        }
        let better = match &best {
            None => true,
            Some((_, bd)) => match sweep {
                Sweep::Counterclockwise => d.cross(bd).is_positive(),
                Sweep::Clockwise => bd.cross(&d).is_positive(),
            },
        };
        if better {
            best = Some((i, d));
        }
    }
    best.map(|(i, _)| i)
}

/// The cone swept from `start` toward `limit`, stopped at the first point.
pub fn swept_cone(
    apex: &Point,
    start: &Direction,
    limit: &Direction,
    sweep: Sweep,
    points: &[Point],
    filter: impl Fn(&Point) -> bool,
) -> Cone {
    let stop = match first_hit(apex, start, limit, sweep, points, filter) {
        Some(i) => points[i].sub(apex),
        None => limit.clone(),
    };
    let (from, to) = match sweep {
        Sweep::Counterclockwise => (start.clone(), stop),
        Sweep::Clockwise => (stop, start.clone()),
    };
    Cone { apex: apex.clone(), from, to }
}

/// The cones at the two extreme vertices: the first is at the vertex with
/// the smallest lateral coordinate (swept clockwise), the second at the
/// largest (swept counterclockwise).
pub fn adjacent_cones(strip: &Strip, set: &[Point]) -> Result<(Cone, Cone), StripError> {
    let k = strip.k();
    if k < 2 {
        return Err(StripError::TooShort);
    }
    let v = &strip.direction;
    let p = &strip.points;
    let minus = swept_cone(&p[0], v, &p[0].sub(&p[1]), Sweep::Clockwise, set, |_| true);
    let plus = swept_cone(
        &p[k - 1],
        v,
        &p[k - 1].sub(&p[k - 2]),
        Sweep::Counterclockwise,
        set,
        |_| true,
    );
    Ok((minus, plus))
}

/// Adds `p` to the strip if it lies in the closure of an adjacent cone
/// computed against `set` without `p`.
pub fn extend_strip(strip: &Strip, p: &Point, set: &[Point]) -> Result<Strip, StripError> {
    let others: Vec<Point> = set.iter().filter(|q| *q != p).cloned().collect();
    let (minus, plus) = adjacent_cones(strip, &others)?;
    let closed = crate::geom::Boundary::Closed;
    if !minus.contains(p, closed) && !plus.contains(p, closed) {
        return Err(StripError::NotInCone);
    }
    let mut pts = strip.points.clone();
    pts.push(p.clone());
    let mut with_p = others;
    with_p.push(p.clone());
    if !is_k_strip(&pts, &strip.direction, &with_p) {
        return Err(StripError::NotAStrip);
    }
    Strip::new(pts, strip.direction.clone(), strip.generation + 1)
}

/// Strips sharing a direction, ordered by lateral position, with pairwise
/// disjoint lateral ranges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StripFamily {
    pub direction: Direction,
    pub strips: Vec<Strip>,
}

impl StripFamily {
    pub fn new(direction: Direction, mut strips: Vec<Strip>) -> Result<Self, StripError> {
        strips.sort_by_cached_key(|s| s.lateral_range().0);
        for w in strips.windows(2) {
            if w[0].lateral_range().1 >= w[1].lateral_range().0 {
                return Err(StripError::OverlappingRegions);
            }
        }
        Ok(StripFamily { direction, strips })
    }

    pub fn len(&self) -> usize {
        self.strips.len()
    }

    pub fn is_empty(&self) -> bool {
        self.strips.is_empty()
    }

    pub fn all_valid(&self, set: &[Point]) -> bool {
        self.strips.iter().all(|s| s.is_valid(set))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Relation {
    Left,
    TouchLeft,
}

fn relation(a: &Strip, b: &Strip, v: &Direction) -> Option<Relation> {
    let a_hi = lateral(v, a.last());
    let b_lo = lateral(v, b.first());
    match a_hi.cmp(&b_lo) {
        Ordering::Less => Some(Relation::Left),
        Ordering::Equal if a.last() == b.first() => Some(Relation::TouchLeft),
        _ => None,
    }
}

/// Chooses `delta != 0` such that, for the direction `(delta, -1)`:
/// every strip (given w.r.t. `(0, -1)`) is still a strip against
/// `reference`; strips with disjoint lateral ranges stay disjoint and strips
/// sharing an extreme vertex still meet only along its ray; and no point of
/// `extra` lies on a line through an apex in the new direction.
///
/// The starting value is half the smallest nonzero slope ratio between any
/// strip vertex and any other point, which bounds every critical value
/// away from zero; it is then halved until all exact re-checks pass.
pub fn rotation_margin(
    strips: &[Strip],
    reference: &[Point],
    extra: &[Point],
    apexes: &[Point],
) -> Result<Coord, StripError> {
    let down = Direction::down();
    let mut ordered: Vec<&Strip> = strips.iter().collect();
    ordered.sort_by_cached_key(|s| lateral(&down, s.first()));
    // regions are lateral intervals, so neighbours in lateral order decide
    // every pairwise relation
    let mut relations = Vec::new();
    for i in 1..ordered.len() {
        match relation(ordered[i - 1], ordered[i], &down) {
            Some(r) => relations.push((i - 1, i, r)),
            None => return Err(StripError::OverlappingRegions),
        }
    }

    // delta = 2^-m with 2 |dy| <= 2^m |dx| for every vertex-to-point offset
    // (dx, dy) with both parts nonzero; a power of two keeps the composed
    // frames small
    let hom = |p: &Point| HomPoint::from(p);
    let vertices: Vec<HomPoint> = strips
        .iter()
        .flat_map(|s| s.points.iter())
        .chain(apexes.iter())
        .map(hom)
        .collect();
    let others: Vec<HomPoint> = reference.iter().chain(extra.iter()).map(hom).collect();
    let mut m = 1usize;
    for a in &vertices {
        for q in &others {
            let dx = (&q.x * &a.w - &a.x * &q.w).abs();
            let dy = (&q.y * &a.w - &a.y * &q.w).abs();
            if dx.is_zero() || dy.is_zero() {
                continue;
            }
            let lhs = dy << 1usize;
            while lhs > (&dx << m) {
                m += 1;
            }
        }
    }
    let mut delta = Coord::new(BigInt::one(), BigInt::one() << m);

    for _ in 0..256 {
        let v = tilted_down(&delta);
        let index = LateralIndex::new(&v, reference);
        let ok_strips = strips.iter().all(|s| index.is_k_strip(&s.points));
        let ok_rel = relations.iter().all(|(i, j, r)| {
            let rotated_i = Strip {
                points: ordered[*i].points.clone(),
                direction: v.clone(),
                generation: 0,
            };
            let rotated_j = Strip {
                points: ordered[*j].points.clone(),
                direction: v.clone(),
                generation: 0,
            };
            // a shared vertex must stay extreme on both sides
            sort_cap(rotated_i.points.clone(), &v).is_ok_and(|pi| {
                sort_cap(rotated_j.points.clone(), &v).is_ok_and(|pj| {
                    let a = Strip { points: pi, ..rotated_i.clone() };
                    let b = Strip { points: pj, ..rotated_j.clone() };
                    relation(&a, &b, &v) == Some(*r)
                })
            })
        });
        let ok_lines = apexes.iter().all(|a| {
            extra
                .iter()
                .all(|q| q == a || !v.cross(&q.sub(a)).is_zero())
        });
        if ok_strips && ok_rel && ok_lines {
            return Ok(delta);
        }
        delta /= int(2);
    }
    Err(StripError::NoMargin)
}

/// An orientation-preserving linear change of coordinates that maps a chosen
/// strip direction to `(0, -1)`. Strategies keep their bookkeeping in frame
/// coordinates and map points back before placing them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frame {
    fwd: [[Coord; 2]; 2],
    inv: [[Coord; 2]; 2],
}

impl Default for Frame {
    fn default() -> Self {
        Frame::identity()
    }
}

fn mat_mul(a: &[[Coord; 2]; 2], b: &[[Coord; 2]; 2]) -> [[Coord; 2]; 2] {
    let e = |i: usize, j: usize| &a[i][0] * &b[0][j] + &a[i][1] * &b[1][j];
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

fn apply(m: &[[Coord; 2]; 2], p: &Point) -> Point {
    Point::new(
        &m[0][0] * &p.x + &m[0][1] * &p.y,
        &m[1][0] * &p.x + &m[1][1] * &p.y,
    )
}

impl Frame {
    pub fn identity() -> Self {
        let (o, z) = (Coord::one(), Coord::zero());
        Frame {
            fwd: [[o.clone(), z.clone()], [z.clone(), o.clone()]],
            inv: [[o.clone(), z.clone()], [z, o]],
        }
    }

    /// The frame in which `v` (given in the current frame's coordinates)
    /// points straight down: `q -> (s(q), h(q)) / |v|`-style scaling with the
    /// factor `1/|v|^2` folded into the inverse.
    pub fn then_direction(&self, v: &Direction) -> Frame {
        let n = v.norm2();
        let t = [
            [-v.dy.clone(), v.dx.clone()],
            [-v.dx.clone(), -v.dy.clone()],
        ];
        let t_inv = [
            [-&v.dy / &n, -&v.dx / &n],
            [&v.dx / &n, -&v.dy / &n],
        ];
        Frame {
            fwd: mat_mul(&t, &self.fwd),
            inv: mat_mul(&self.inv, &t_inv),
        }
    }

    pub fn to_frame(&self, p: &Point) -> Point {
        apply(&self.fwd, p)
    }

    pub fn from_frame(&self, p: &Point) -> Point {
        apply(&self.inv, p)
    }

    /// The board direction corresponding to straight down in the frame.
    pub fn board_down(&self) -> Direction {
        let p = self.from_frame(&Point::new(Coord::zero(), int(-1)));
        Direction::raw(p.x, p.y)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{rat, Boundary};

    fn p(x: i64, y: i64) -> Point {
        Point::from_ints(x, y)
    }

    #[test]
    fn cap_examples() {
        let cap = vec![p(0, 2), p(1, 3), p(2, 2)];
        let down = Direction::down();
        assert!(is_k_strip(&cap, &down, &cap));
        let mut s = cap.clone();
        s.push(p(1, 0));
        assert!(!is_k_strip(&cap, &down, &s));
        // a cup is a strip with respect to the upward direction
        let cup = vec![p(0, 2), p(1, 1), p(2, 2)];
        assert!(is_k_strip(&cup, &down.neg(), &cup));
        assert!(!is_k_strip(&cup, &down, &cup));
    }

    #[test]
    fn cones_without_blockers() {
        let s = Strip::new(vec![p(0, 0), p(1, 1)], Direction::down(), 2).unwrap();
        let (minus, plus) = adjacent_cones(&s, &s.points).unwrap();
        assert_eq!(minus.apex, p(0, 0));
        assert!(minus.from.same_ray(&Direction::raw(int(-1), int(-1))));
        assert!(minus.to.same_ray(&Direction::down()));
        assert_eq!(plus.apex, p(1, 1));
        assert!(plus.from.same_ray(&Direction::down()));
        assert!(plus.to.same_ray(&Direction::raw(int(1), int(1))));
    }

    #[test]
    fn cone_stops_at_blocker() {
        let s = Strip::new(vec![p(0, 0), p(1, 1)], Direction::down(), 2).unwrap();
        let mut set = s.points.clone();
        set.push(p(-1, -2));
        let (minus, _) = adjacent_cones(&s, &set).unwrap();
        assert!(minus.from.same_ray(&Direction::raw(int(-1), int(-2))));
        assert!(minus.from.cross(&minus.to).is_positive());
    }

    #[test]
    fn extend_examples() {
        let s = Strip::new(vec![p(0, 0), p(2, 0)], Direction::down(), 2).unwrap();
        let q = p(-1, -1);
        let mut set = s.points.clone();
        set.push(q.clone());
        let e = extend_strip(&s, &q, &set).unwrap();
        assert_eq!(e.points, vec![p(-1, -1), p(0, 0), p(2, 0)]);
        assert!(is_k_strip(&e.points, &e.direction, &set));
        let far = p(1, 5);
        let mut set2 = s.points.clone();
        set2.push(far.clone());
        assert_eq!(extend_strip(&s, &far, &set2), Err(StripError::NotInCone));
    }

    #[test]
    fn one_point_strip_is_a_ray() {
        let down = Direction::down();
        assert!(is_k_strip(&[p(0, 0)], &down, &[p(0, 0), p(1, -5)]));
        assert!(!is_k_strip(&[p(0, 0)], &down, &[p(0, 0), p(0, -5)]));
        assert!(is_k_strip(&[p(0, 0)], &down, &[p(0, 0), p(0, 5)]));
    }

    #[test]
    fn rotation_margin_examples() {
        let a = Strip::new(vec![p(0, 0), p(1, 1)], Direction::down(), 2).unwrap();
        let b = Strip::new(vec![p(5, 1), p(6, 0)], Direction::down(), 2).unwrap();
        let reference: Vec<Point> = a.points.iter().chain(b.points.iter()).cloned().collect();
        let d = rotation_margin(&[a.clone(), b.clone()], &reference, &[], &[]).unwrap();
        assert!(!d.is_zero());
        let v = tilted_down(&d);
        assert!(is_k_strip(&a.points, &v, &reference));
        assert!(is_k_strip(&b.points, &v, &reference));

        // a point straight below an apex forces a nonzero tilt
        let extra = vec![p(1, -3)];
        let d = rotation_margin(std::slice::from_ref(&a), &a.points, &extra, &[p(1, 1)]).unwrap();
        assert!(!d.is_zero());
        assert!(!tilted_down(&d).cross(&extra[0].sub(&p(1, 1))).is_zero());

        // mirror image: the negated tilt is admissible for the mirrored strip
        let mirror = |q: &Point| Point::new(-q.x.clone(), q.y.clone());
        let am = Strip::new(a.points.iter().map(mirror).collect(), Direction::down(), 2).unwrap();
        let v = tilted_down(&-d);
        assert!(is_k_strip(&am.points, &v, &am.points));
    }

    #[test]
    fn touching_strips_keep_touching() {
        let a = Strip::new(vec![p(0, 0), p(2, -3)], Direction::down(), 2).unwrap();
        let b = Strip::new(vec![p(2, -3), p(4, 0)], Direction::down(), 2).unwrap();
        let refs = vec![p(0, 0), p(2, -3), p(4, 0)];
        let d = rotation_margin(&[a, b], &refs, &[], &[p(2, -3)]).unwrap();
        assert!(d.is_positive());
    }

    #[test]
    fn frame_round_trip() {
        let f = Frame::identity().then_direction(&Direction::raw(rat(1, 3), int(-1)));
        let q = Point::from_rats((7, 2), (-5, 9));
        assert_eq!(f.from_frame(&f.to_frame(&q)), q);
        let d = f.board_down();
        assert!(d.same_ray(&Direction::raw(rat(1, 3), int(-1))));
        let g = f.then_direction(&Direction::raw(rat(-1, 5), int(-1)));
        assert_eq!(g.from_frame(&g.to_frame(&q)), q);
        // orientation is preserved
        let (a, b, c) = (p(0, 0), p(3, 1), p(1, 4));
        assert_eq!(
            orientation(&g.to_frame(&a), &g.to_frame(&b), &g.to_frame(&c)),
            orientation(&a, &b, &c)
        );
    }

    #[test]
    fn region_membership_closed() {
        let s = Strip::new(vec![p(0, 0), p(2, 2), p(4, 0)], Direction::down(), 3).unwrap();
        assert!(s.region_contains(&p(2, 1)));
        assert!(s.region_contains(&p(0, -10)));
        assert!(!s.region_contains(&p(5, -1)));
        assert!(!s.region_contains(&p(2, 3)));
        let c = Cone::new(p(0, 0), Direction::down(), Direction::raw(int(1), int(-1))).unwrap();
        assert!(c.contains(&p(1, -2), Boundary::Open));
    }
}
