//! Breaker's perturbed-polygon strategy for the bichromatic game at bias
//! 1:2λ.
//!
//! Every Maker point gets a disk, pairwise disjoint across Maker points, and
//! inside it a small circle carrying `λ` guards near the vertices of a
//! regular `λ`-gon. When Maker plays into an existing disk, that disk shrinks
//! and its circle is re-guarded. Radii and guard positions are rational;
//! every property the argument relies on is re-checked exactly.

use std::f64::consts::{PI, TAU};

use num_traits::{One, Signed};
use serde::Serialize;
use serde_json::json;

use crate::board::{CollinearityIndex, PointSet};
use crate::game::{GameState, Overlay, Strategy, StrategyError};
use crate::geom::surd::{sqrt_lower_rel, sqrt_upper};
use crate::geom::{
    angle_compare, angle_exceeds, ccw_angle_compare, coord_serde, dist2_point_line, from_f64, int,
    point_in_angular_domain, rat, rotate_by_half_tangent, to_f64, AngleThreshold, ClosedDisk, Coord,
    Direction, Point,
};
use crate::oracle::{find_k_hole, HoleCertificate, HoleRule};

/// Disk, circle and guards around one Maker point.
#[derive(Clone, Debug, Serialize)]
pub struct DiskEntry {
    pub disk: ClosedDisk,
    /// Rational circle radius, so guards on the circle stay rational.
    #[serde(with = "coord_serde")]
    pub circle_radius: Coord,
    pub guards: Vec<Point>,
    /// Maker indices `a` whose antipodal point on the disk boundary constrained
    /// the circle radius. Stored symbolically: the point itself is irrational.
    pub antipodal_witnesses: Vec<usize>,
    pub replacements: u32,
}

impl DiskEntry {
    pub fn center(&self) -> &Point {
        &self.disk.center
    }

    pub fn circle_radius_squared(&self) -> Coord {
        &self.circle_radius * &self.circle_radius
    }
}

/// Disks indexed by Maker's placement order.
#[derive(Clone, Debug, Default, Serialize)]
pub struct DiskRegistry {
    entries: Vec<DiskEntry>,
}

impl DiskRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn entries(&self) -> &[DiskEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// The disk containing `p`, if any. Disks are disjoint, so it is unique.
    pub fn containing(&self, p: &Point) -> Option<usize> {
        self.entries.iter().position(|e| e.disk.contains(p))
    }

    pub fn disks_disjoint(&self) -> bool {
        self.entries.iter().enumerate().all(|(i, a)| {
            self.entries[i + 1..]
                .iter()
                .all(|b| a.disk.disjoint(&b.disk))
        })
    }

    /// Guards lie exactly on their circle and the circle inside its disk.
    pub fn guards_on_circles(&self) -> bool {
        self.entries.iter().all(|e| {
            let r2 = e.circle_radius_squared();
            e.circle_radius.is_positive()
                && r2 < e.disk.radius_squared
                && e.guards.iter().all(|g| g.dist2(e.center()) == r2)
        })
    }
}

/// Radii picked for a new Maker point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadiusChoice {
    pub disk_radius_squared: Coord,
    pub circle_radius: Coord,
    /// Earlier disk that holds the new point, with its shrunken squared
    /// radius `|p_i p_j|^2 / 4`.
    pub shrink: Option<(usize, Coord)>,
}

const SQRT_BITS: u32 = 48;

/// Rational lower bound on `|pq| - R` for a disk of squared radius `r2`
/// around `q`, refined until positive whenever the true value is.
fn clearance(p: &Point, q: &Point, r2: &Coord) -> Coord {
    let d2 = p.dist2(q);
    let mut bits = SQRT_BITS;
    loop {
        let c = sqrt_lower_rel(&d2, bits) - sqrt_upper(r2, bits + 16);
        if c.is_positive() || bits > 4096 {
            return c;
        }
        bits *= 2;
    }
}

/// Largest squared radius `<= 1` (in halves of the clearances) keeping a disk
/// at `p` disjoint from `others`.
fn disk_radius_squared(p: &Point, others: &[(Point, Coord)]) -> Coord {
    let mut r = Coord::one();
    for (q, r2) in others {
        let half = clearance(p, q, r2) / int(2);
        if half < r {
            r = half;
        }
    }
    &r * &r
}

/// Circle radius at `center` for a disk of squared radius `disk_r2`: at most
/// a quarter of the disk radius and under half the distance to every line
/// `ab` and `b c(a)` over the `prior` points, where `c(a)` is the point of the
/// disk boundary diametrically away from `a`.
pub fn circle_radius(center: &Point, disk_r2: &Coord, prior: &[Point]) -> (Coord, Vec<usize>) {
    let mut bound = disk_r2 / int(16);
    let mut witnesses = Vec::new();
    let disk_r_up = sqrt_upper(disk_r2, SQRT_BITS);
    for (i, a) in prior.iter().enumerate() {
        for b in &prior[i + 1..] {
            let d2 = dist2_point_line(center, a, b) / int(4);
            if d2 < bound {
                bound = d2;
            }
        }
    }
    for (ia, a) in prior.iter().enumerate() {
        let d = a.sub(center);
        let mut used = false;
        for (ib, b) in prior.iter().enumerate() {
            if ia == ib {
                continue;
            }
            // dist(center, line b c(a)) = R |w x u| / |w + R u| with u = d/|d|
            // and w = b - center; |w + R u| <= |w| + R.
            let w = b.sub(center);
            let cr = w.cross(&d);
            let num = disk_r2 * &cr * &cr / d.norm2();
            let den = sqrt_upper(&w.norm2(), SQRT_BITS) + &disk_r_up;
            let d2 = num / (&den * &den) / int(4);
            if d2 < bound {
                bound = d2;
                used = true;
            }
        }
        if used {
            witnesses.push(ia);
        }
    }
    let mut r = sqrt_lower_rel(&bound, 24);
    if !r.is_positive() {
        r = rat(1, 1 << 20);
    }
    // keep the denominator small when the bound is loose
    let coarse = Coord::new(r.numer() * 1024i64 / r.denom(), 1024.into());
    if coarse.is_positive() {
        r = coarse;
    }
    (r, witnesses)
}

/// Radii for Maker's newest point `p` given the disks so far and the earlier
/// Maker points.
pub fn choose_radii(registry: &DiskRegistry, p: &Point, prior: &[Point]) -> RadiusChoice {
    let shrink = registry.containing(p).map(|j| {
        let q = registry.entries[j].center();
        (j, p.dist2(q) / int(4))
    });
    let others: Vec<(Point, Coord)> = registry
        .entries
        .iter()
        .enumerate()
        .map(|(j, e)| {
            let r2 = match &shrink {
                Some((s, r2)) if *s == j => r2.clone(),
                _ => e.disk.radius_squared.clone(),
            };
            (e.center().clone(), r2)
        })
        .collect();
    let disk_radius_squared = disk_radius_squared(p, &others);
    let (circle_radius, _) = circle_radius(p, &disk_radius_squared, prior);
    RadiusChoice {
        disk_radius_squared,
        circle_radius,
        shrink,
    }
}

/// Angular slack for one guard ring, in radians, and its rational
/// half-angle tangent.
#[derive(Clone, Debug, Serialize)]
pub struct PerturbationBudget {
    pub lambda: u32,
    pub epsilon: f64,
    #[serde(with = "coord_serde")]
    pub tangent: Coord,
}

fn direction_angle(d: &Direction) -> f64 {
    let (x, y) = d.to_f64();
    y.atan2(x).rem_euclid(TAU)
}

impl PerturbationBudget {
    /// Below `pi / (10 lambda)` and below half of every nonzero angle between
    /// the directions to `prior`, taken modulo `2 pi / lambda`.
    pub fn new(center: &Point, prior: &[Point], lambda: u32) -> Self {
        let sector = TAU / lambda as f64;
        let angles: Vec<f64> = prior.iter().map(|q| direction_angle(&q.sub(center))).collect();
        let mut eps = PI / (10.0 * lambda as f64) * 0.9;
        let mut all = angles.clone();
        all.push(0.0);
        for (i, a) in all.iter().enumerate() {
            for b in &all[i + 1..] {
                let m = (a - b).abs().rem_euclid(sector);
                let m = m.min(sector - m);
                if m > 1e-13 && m / 2.0 * 0.9 < eps {
                    eps = m / 2.0 * 0.9;
                }
            }
        }
        PerturbationBudget::with_epsilon(lambda, eps)
    }

    fn with_epsilon(lambda: u32, epsilon: f64) -> Self {
        PerturbationBudget {
            lambda,
            epsilon,
            tangent: from_f64((epsilon / 2.0).tan(), 62),
        }
    }

    fn halved(&self) -> Self {
        PerturbationBudget::with_epsilon(self.lambda, self.epsilon / 2.0)
    }
}

/// Rational point on the circle of radius `r` around `center` at roughly
/// angle `theta`, nudged by `nudge` units of `2^-56` in the half-angle
/// tangent.
fn circle_point(center: &Point, r: &Coord, theta: f64, nudge: i64) -> Point {
    let quarter = (theta / (PI / 2.0)).round();
    let residual = theta - quarter * PI / 2.0;
    let base = match (quarter as i64).rem_euclid(4) {
        0 => Direction::raw(int(1), int(0)),
        1 => Direction::raw(int(0), int(1)),
        2 => Direction::raw(int(-1), int(0)),
        _ => Direction::raw(int(0), int(-1)),
    };
    let t = from_f64((residual / 2.0).tan(), 60) + rat(nudge, 1) * Coord::new(1.into(), num_bigint::BigInt::one() << 56);
    let d = rotate_by_half_tangent(&base, &t);
    center.offset(&d, r)
}

/// Rotation offset for the unperturbed polygon that keeps every vertex more
/// than `epsilon` away from the directions to `prior`: the middle of the
/// widest free arc modulo `2 pi / lambda`.
fn polygon_rotation(center: &Point, prior: &[Point], lambda: u32) -> (f64, f64) {
    let sector = TAU / lambda as f64;
    let mut offs: Vec<f64> = prior
        .iter()
        .map(|q| direction_angle(&q.sub(center)).rem_euclid(sector))
        .collect();
    if offs.is_empty() {
        return (sector / 3.0, sector / 2.0);
    }
    offs.sort_by(f64::total_cmp);
    let mut best = (offs[0] + sector - offs[offs.len() - 1], offs[offs.len() - 1]);
    for w in offs.windows(2) {
        if w[1] - w[0] > best.0 {
            best = (w[1] - w[0], w[0]);
        }
    }
    ((best.1 + best.0 / 2.0).rem_euclid(sector), best.0 / 2.0)
}

/// True iff direction `d` lies strictly inside the counterclockwise arc
/// from `a` to `b`.
fn strictly_between(a: &Direction, d: &Direction, b: &Direction) -> bool {
    let ab = a.cross(b);
    let ad = a.cross(d).is_positive();
    let db = d.cross(b).is_positive();
    if ab.is_positive() {
        ad && db
    } else if ab.is_negative() {
        ad || db
    } else if a.same_ray(b) {
        !a.same_ray(d)
    } else {
        ad
    }
}

/// Exact check of the ring around `center`. Every open arc of directions
/// longer than `2 pi / lambda` with an endpoint toward a `prior` point must
/// hold a guard: equivalently, every prior direction that falls in a gap
/// wider than `2 pi / lambda` is within `2 pi / lambda` of both gap ends.
/// Guards must be in counterclockwise order.
pub fn ring_ok(center: &Point, guards: &[Point], prior: &[Point], th: &AngleThreshold) -> bool {
    use std::cmp::Ordering::Greater;
    let n = guards.len();
    let dirs: Vec<Direction> = guards.iter().map(|g| g.sub(center)).collect();
    for j in 0..n {
        let (a, b) = (&dirs[j], &dirs[(j + 1) % n]);
        if dirs.iter().any(|d| strictly_between(a, d, b)) {
            return false;
        }
        if ccw_angle_compare(a, b, th) != Greater {
            continue;
        }
        for q in prior {
            let d = q.sub(center);
            if !strictly_between(a, &d, b) {
                continue;
            }
            if ccw_angle_compare(a, &d, th) == Greater || ccw_angle_compare(&d, b, th) == Greater {
                return false;
            }
        }
    }
    true
}

/// Consecutive central angles of the ring that exceed `2 pi / lambda`.
pub fn wide_gaps(center: &Point, guards: &[Point], lambda: u32) -> Vec<usize> {
    let th = AngleThreshold::two_pi_over(lambda).expect("supported lambda");
    let n = guards.len();
    (0..n)
        .filter(|&j| {
            ccw_angle_compare(&guards[j].sub(center), &guards[(j + 1) % n].sub(center), &th)
                == std::cmp::Ordering::Greater
        })
        .collect()
}

#[derive(Debug, thiserror::Error)]
pub enum PlacementError {
    #[error("unsupported lambda {0}")]
    Lambda(u32),
    #[error("no guard ring passed the exact checks")]
    RetryExhausted,
}

/// `lambda` guards on the circle of radius `r` around `center`, in
/// counterclockwise order, legal on top of `board`.
pub fn place_perturbed_polygon(
    center: &Point,
    r: &Coord,
    budget: &PerturbationBudget,
    prior: &[Point],
    board: &CollinearityIndex,
) -> Result<Vec<Point>, PlacementError> {
    let lambda = budget.lambda;
    let th = AngleThreshold::two_pi_over(lambda).map_err(|_| PlacementError::Lambda(lambda))?;
    let sector = TAU / lambda as f64;
    let (rho, room) = polygon_rotation(center, prior, lambda);
    let mut budget = budget.clone();
    while budget.epsilon >= room {
        budget = budget.halved();
    }
    let even = lambda.is_multiple_of(2);
    for _ in 0..40 {
        let mut idx = board.clone();
        let mut guards = Vec::with_capacity(lambda as usize);
        for j in 1..=lambda {
            let shift = if even { budget.epsilon / j as f64 } else { 0.0 };
            let theta = rho + sector * (j - 1) as f64 + shift;
            let g = (0..64)
                .map(|m| circle_point(center, r, theta, if m % 2 == 0 { m / 2 } else { -(m + 1) / 2 }))
                .find(|g| idx.fits(g));
            let Some(g) = g else { break };
            idx.insert(g.clone());
            guards.push(g);
        }
        if guards.len() == lambda as usize && ring_ok(center, &guards, prior, &th) {
            return Ok(guards);
        }
        budget = budget.halved();
    }
    Err(PlacementError::RetryExhausted)
}

/// A triple breaking the guard property: the angle at Maker point `center`
/// between the earlier point `earlier` and `other` exceeds `2 pi / lambda`
/// but no guard of `center` lies strictly inside it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GuardViolation {
    pub center: usize,
    pub earlier: usize,
    pub other: usize,
}

/// Exact check of the guard property for the triples whose center is in
/// `centers` or whose third point is in `others` (Maker indices).
pub fn check_guards(
    registry: &DiskRegistry,
    makers: &[Point],
    lambda: u32,
    centers: Option<&[usize]>,
) -> Result<(), GuardViolation> {
    let th = AngleThreshold::two_pi_over(lambda).expect("supported lambda");
    let all: Vec<usize> = (0..makers.len().min(registry.len())).collect();
    let centers = centers.unwrap_or(&all);
    for &i in centers {
        let p = &makers[i];
        let guards = &registry.entries[i].guards;
        for x in 0..i {
            for y in 0..makers.len() {
                if y == i || y == x {
                    continue;
                }
                if !angle_exceeds(p, &makers[x], &makers[y], &th).unwrap_or(false) {
                    continue;
                }
                let hit = guards
                    .iter()
                    .any(|g| point_in_angular_domain(p, &makers[x], &makers[y], g).unwrap_or(false));
                if !hit {
                    return Err(GuardViolation {
                        center: i,
                        earlier: x,
                        other: y,
                    });
                }
            }
        }
    }
    Ok(())
}

/// The guard property for triples involving Maker point `newest`, either as
/// the third point or as the center, plus full checks for `rebuilt` centers.
pub fn check_guards_incremental(
    registry: &DiskRegistry,
    makers: &[Point],
    lambda: u32,
    newest: usize,
    rebuilt: &[usize],
) -> Result<(), GuardViolation> {
    let th = AngleThreshold::two_pi_over(lambda).expect("supported lambda");
    for i in 0..newest {
        let p = &makers[i];
        let guards = &registry.entries[i].guards;
        for x in 0..i {
            if !angle_exceeds(p, &makers[x], &makers[newest], &th).unwrap_or(false) {
                continue;
            }
            if !guards
                .iter()
                .any(|g| point_in_angular_domain(p, &makers[x], &makers[newest], g).unwrap_or(false))
            {
                return Err(GuardViolation {
                    center: i,
                    earlier: x,
                    other: newest,
                });
            }
        }
    }
    let mut centers = rebuilt.to_vec();
    centers.push(newest);
    check_guards(registry, &makers[..=newest], lambda, Some(&centers))
}

/// `ceil(2 lambda / (lambda - 2)) - 1`: the most interior angles below
/// `2 pi / lambda` a convex polygon can have.
pub fn angle_count_bound(lambda: u32) -> usize {
    let l = lambda as usize;
    (2 * l).div_ceil(l - 2) - 1
}

/// Interior angles of the convex polygon (vertices in order) smaller than
/// `2 pi / lambda`.
pub fn small_angle_count(polygon: &[Point], lambda: u32) -> usize {
    let th = AngleThreshold::two_pi_over(lambda).expect("supported lambda");
    let n = polygon.len();
    (0..n)
        .filter(|&i| {
            let prev = &polygon[(i + n - 1) % n];
            let next = &polygon[(i + 1) % n];
            angle_compare(&polygon[i], prev, next, &th) == Ok(std::cmp::Ordering::Less)
        })
        .count()
}

/// A `(k-1)`-hole of Maker's points with no Breaker point in its hull, if
/// one exists.
pub fn unblocked_hole(board: &PointSet, k: usize) -> Option<HoleCertificate> {
    find_k_hole(board, k - 1, HoleRule::Bichromatic)
}

/// Breaker at bias 1:2λ: guards every new Maker point and re-guards the disk
/// it landed in.
pub struct PerturbedPolygonBreaker {
    lambda: u32,
    registry: DiskRegistry,
    handled: usize,
    last_rebuilt: Vec<usize>,
    budgets: Vec<f64>,
}

impl PerturbedPolygonBreaker {
    pub fn new(lambda: u32) -> Self {
        PerturbedPolygonBreaker {
            lambda,
            registry: DiskRegistry::new(),
            handled: 0,
            last_rebuilt: Vec::new(),
            budgets: Vec::new(),
        }
    }

    pub fn lambda(&self) -> u32 {
        self.lambda
    }

    pub fn registry(&self) -> &DiskRegistry {
        &self.registry
    }

    /// Disks re-guarded during the last turn.
    pub fn last_rebuilt(&self) -> &[usize] {
        &self.last_rebuilt
    }

    fn guard(
        &mut self,
        center: &Point,
        r: &Coord,
        prior: &[Point],
        idx: &CollinearityIndex,
    ) -> Result<Vec<Point>, StrategyError> {
        let budget = PerturbationBudget::new(center, prior, self.lambda);
        self.budgets.push(budget.epsilon);
        place_perturbed_polygon(center, r, &budget, prior, idx)
            .map_err(|e| StrategyError::Stuck(e.to_string()))
    }
}

impl Strategy for PerturbedPolygonBreaker {
    fn name(&self) -> String {
        format!("perturbed-polygon:lambda={}", self.lambda)
    }

    fn respond(&mut self, state: &GameState, count: usize) -> Result<Vec<Point>, StrategyError> {
        if state.config.variant != HoleRule::Bichromatic {
            return Err(StrategyError::Unsupported("needs the bichromatic game".into()));
        }
        AngleThreshold::two_pi_over(self.lambda)
            .map_err(|_| StrategyError::Unsupported(format!("lambda = {}", self.lambda)))?;
        let makers = state.maker_points();
        let mut idx = CollinearityIndex::new(state.points());
        let mut out = Vec::new();
        self.last_rebuilt.clear();
        while self.handled < makers.len() {
            let i = self.handled;
            let p = &makers[i];
            let prior = &makers[..i];
            let choice = choose_radii(&self.registry, p, prior);
            let mut fresh = Vec::new();
            if let Some((j, r2)) = choice.shrink.clone() {
                let q = makers[j].clone();
                // earlier points only for the radius, every other Maker point for the ring
                let (r, wit) = circle_radius(&q, &r2, &makers[..j]);
                let others: Vec<Point> = makers.iter().enumerate().filter(|(x, _)| *x != j).map(|(_, m)| m.clone()).collect();
                let guards = self.guard(&q, &r, &others, &idx)?;
                for g in &guards {
                    idx.insert(g.clone());
                }
                fresh.extend(guards.iter().cloned());
                let e = &mut self.registry.entries[j];
                e.disk = ClosedDisk::new(q, r2);
                e.circle_radius = r;
                e.guards = guards;
                e.antipodal_witnesses = wit;
                e.replacements += 1;
                self.last_rebuilt.push(j);
            }
            let (r, wit) = circle_radius(p, &choice.disk_radius_squared, prior);
            let guards = self.guard(p, &r, prior, &idx)?;
            for g in &guards {
                idx.insert(g.clone());
            }
            fresh.extend(guards.iter().cloned());
            self.registry.entries.push(DiskEntry {
                disk: ClosedDisk::new(p.clone(), choice.disk_radius_squared),
                circle_radius: r,
                guards,
                antipodal_witnesses: wit,
                replacements: 0,
            });
            if !self.registry.disks_disjoint() {
                return Err(StrategyError::InvariantBroken(format!("disks overlap after Maker point {i}")));
            }
            self.handled += 1;
            out.extend(fresh);
        }
        if out.len() > count {
            return Err(StrategyError::Unsupported(format!(
                "needs {} points this turn but the bias allows {count}",
                out.len()
            )));
        }
        Ok(out)
    }

    fn overlays(&self) -> Vec<Overlay> {
        let mut v = Vec::new();
        for e in &self.registry.entries {
            v.push(Overlay::Disk {
                center: e.center().clone(),
                radius_squared: e.disk.radius_squared.clone(),
            });
            v.push(Overlay::Circle {
                center: e.center().clone(),
                radius_squared: e.circle_radius_squared(),
                guards: e.guards.clone(),
            });
        }
        v
    }

    fn report(&self) -> serde_json::Value {
        let min_eps = self.budgets.iter().copied().fold(f64::INFINITY, f64::min);
        json!({
            "lambda": self.lambda,
            "disks": self.registry.len(),
            "replacements": self.registry.entries.iter().map(|e| e.replacements).sum::<u32>(),
            "disks_disjoint": self.registry.disks_disjoint(),
            "guards_on_circles": self.registry.guards_on_circles(),
            "min_epsilon": if min_eps.is_finite() { Some(min_eps) } else { None },
            "min_circle_radius": self.registry.entries.iter().map(|e| to_f64(&e.circle_radius)).fold(None, |a: Option<f64>, r| Some(a.map_or(r, |a| a.min(r)))),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: i64, y: i64) -> Point {
        Point::from_ints(x, y)
    }

    #[test]
    fn count_bound_values() {
        assert_eq!(angle_count_bound(6), 2);
        assert_eq!(angle_count_bound(3), 5);
        assert_eq!(angle_count_bound(4), 3);
        assert_eq!(angle_count_bound(5), 3);
    }

    #[test]
    fn first_point_radii() {
        let reg = DiskRegistry::new();
        let c = choose_radii(&reg, &p(0, 0), &[]);
        assert_eq!(c.disk_radius_squared, int(1));
        assert_eq!(c.circle_radius, rat(1, 4));
        assert!(c.shrink.is_none());
    }

    fn registry_with(center: Point) -> DiskRegistry {
        DiskRegistry {
            entries: vec![DiskEntry {
                disk: ClosedDisk::new(center, int(1)),
                circle_radius: rat(1, 4),
                guards: Vec::new(),
                antipodal_witnesses: Vec::new(),
                replacements: 0,
            }],
        }
    }

    #[test]
    fn second_point_outside() {
        let reg = registry_with(p(0, 0));
        let c = choose_radii(&reg, &p(2, 0), &[p(0, 0)]);
        assert!(c.shrink.is_none());
        assert!(c.disk_radius_squared <= rat(1, 4));
        assert!(c.disk_radius_squared.is_positive());
    }

    #[test]
    fn second_point_inside_shrinks() {
        let reg = registry_with(p(0, 0));
        let q = Point::from_rats((1, 2), (0, 1));
        let c = choose_radii(&reg, &q, &[p(0, 0)]);
        assert_eq!(c.shrink, Some((0, rat(1, 16))));
        let d1 = ClosedDisk::new(p(0, 0), rat(1, 16));
        let d2 = ClosedDisk::new(q, c.disk_radius_squared);
        assert!(d1.disjoint(&d2));
    }

    #[test]
    fn hexagon_without_prior_points() {
        let center = p(3, 4);
        let budget = PerturbationBudget::new(&center, &[], 6);
        let idx = CollinearityIndex::new(std::slice::from_ref(&center));
        let g = place_perturbed_polygon(&center, &rat(1, 2), &budget, &[], &idx).unwrap();
        assert_eq!(g.len(), 6);
        assert!(g.iter().all(|q| q.dist2(&center) == rat(1, 4)));
        assert_eq!(wide_gaps(&center, &g, 6).len(), 1);
    }

    #[test]
    fn odd_ring_avoids_prior_lines() {
        let center = p(0, 0);
        let prior = [p(5, 0)];
        let budget = PerturbationBudget::new(&center, &prior, 5);
        let mut pts = prior.to_vec();
        pts.push(center.clone());
        let idx = CollinearityIndex::new(&pts);
        let g = place_perturbed_polygon(&center, &rat(1, 4), &budget, &prior, &idx).unwrap();
        assert_eq!(g.len(), 5);
        for q in &g {
            assert_ne!(crate::geom::orientation(&center, &prior[0], q), crate::geom::Orientation::Collinear);
        }
    }

    #[test]
    fn guard_property_instance() {
        // earlier point due east, later one at 100 degrees: some guard between
        let center = p(0, 0);
        let earlier = p(10, 0);
        let budget = PerturbationBudget::new(&center, std::slice::from_ref(&earlier), 6);
        let idx = CollinearityIndex::new(&[earlier.clone(), center.clone()]);
        let g = place_perturbed_polygon(&center, &rat(1, 4), &budget, std::slice::from_ref(&earlier), &idx).unwrap();
        let later = p(-2, 11);
        let th = AngleThreshold::pi_over_3();
        assert!(angle_exceeds(&center, &earlier, &later, &th).unwrap());
        assert!(g.iter().any(|q| point_in_angular_domain(&center, &earlier, &later, q).unwrap()));
    }

    #[test]
    fn small_angles_of_a_square_and_a_sliver() {
        let sq = [p(0, 0), p(1, 0), p(1, 1), p(0, 1)];
        assert_eq!(small_angle_count(&sq, 6), 0);
        assert_eq!(small_angle_count(&sq, 3), 4);
        let sliver = [p(0, 0), p(100, 1), p(0, 2)];
        assert_eq!(small_angle_count(&sliver, 6), 1);
    }
}
