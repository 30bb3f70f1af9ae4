//! Exhaustive exact checks of a built grid.

use num_integer::Integer;
use serde::Serialize;

use super::{crossings, GridPointSet, LineCoeffs};
use crate::board::{Owner, PointSet};
use crate::geom::{coord_to_string, convex_hull, convex_intersection, int, orient_hom, HomPoint, Orientation, Point};
use crate::oracle::{verify_hole, HoleRule};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GridReport {
    pub t: usize,
    pub d: usize,
    pub points: usize,
    pub lines: usize,
    pub sibling_lines: [usize; 3],
    pub crossings: usize,
    pub alpha2: String,
    pub beta2: String,
    pub gamma: String,
    pub injective: bool,
    pub general_position: bool,
    /// Two lattice lines meet at a lattice point or not at all.
    pub lattice_lines_meet_on_grid: bool,
    pub bent_points_in_strips: bool,
    pub sibling_lines_are_holes: bool,
    /// Any point outside the disks around the flat points lies in at most
    /// two strips.
    pub at_most_two_strips: bool,
    pub no_colorful_triple: bool,
}

impl GridReport {
    pub fn all_ok(&self) -> bool {
        self.injective
            && self.general_position
            && self.lattice_lines_meet_on_grid
            && self.bent_points_in_strips
            && self.sibling_lines_are_holes
            && self.at_most_two_strips
            && self.no_colorful_triple
    }
}

pub fn verify_grid(g: &GridPointSet) -> GridReport {
    let homs: Vec<HomPoint> = g.points.iter().map(HomPoint::from).collect();
    let mut sorted = g.points.clone();
    sorted.sort();
    sorted.dedup();
    GridReport {
        t: g.config.t,
        d: g.config.d,
        points: g.len(),
        lines: g.lines.len(),
        sibling_lines: [0, 1, 2].map(|j| g.sibling_lines[j].len()),
        crossings: 0,
        alpha2: coord_to_string(&g.alpha2),
        beta2: coord_to_string(&g.beta2),
        gamma: coord_to_string(g.gamma()),
        injective: sorted.len() == g.len(),
        general_position: general_position(&homs),
        lattice_lines_meet_on_grid: lattice_lines_meet_on_grid(g),
        bent_points_in_strips: g.bent_points_in_strips(),
        sibling_lines_are_holes: sibling_lines_are_holes(g),
        at_most_two_strips: false,
        no_colorful_triple: verify_no_colorful_triple(g),
    }
    .with_strips(g)
}

impl GridReport {
    fn with_strips(mut self, g: &GridPointSet) -> Self {
        let (count, ok) = at_most_two_strips(g);
        self.crossings = count;
        self.at_most_two_strips = ok;
        self
    }
}

fn general_position(h: &[HomPoint]) -> bool {
    let n = h.len();
    (0..n).all(|i| {
        (i + 1..n).all(|j| (j + 1..n).all(|l| orient_hom(&h[i], &h[j], &h[l]) != Orientation::Collinear))
    })
}

/// `den` times the point `first + (num/den) (last - first)`.
fn param_point(first: &[u8], last: &[u8], num: i64, den: i64) -> Vec<i64> {
    first
        .iter()
        .zip(last)
        .map(|(a, b)| *a as i64 * den + (*b as i64 - *a as i64) * num)
        .collect()
}

fn lattice_lines_meet_on_grid(g: &GridPointSet) -> bool {
    let t = g.config.t;
    let ends: Vec<(&[u8], &[u8])> = g
        .lines
        .iter()
        .map(|l| (&g.lattice[l.members[0]][..], &g.lattice[l.members[t - 1]][..]))
        .collect();
    for (i, (a0, a1)) in ends.iter().enumerate() {
        for (b0, b1) in &ends[i + 1..] {
            if let Some((num, den)) = meet_param(a0, a1, b0, b1) {
                // the meeting point must have integer coordinates in 1..=t
                let p = param_point(a0, a1, num, den);
                if p.iter().any(|c| c % den != 0 || !(1..=t as i64).contains(&(c / den))) {
                    return false;
                }
            }
        }
    }
    true
}

/// Parameter `num/den` along `a0 -> a1` where the two lattice lines meet.
fn meet_param(a0: &[u8], a1: &[u8], b0: &[u8], b1: &[u8]) -> Option<(i64, i64)> {
    // a0 + s u = b0 + r v
    let u: Vec<i64> = a0.iter().zip(a1).map(|(x, y)| *y as i64 - *x as i64).collect();
    let v: Vec<i64> = b0.iter().zip(b1).map(|(x, y)| *y as i64 - *x as i64).collect();
    let w: Vec<i64> = a0.iter().zip(b0).map(|(x, y)| *y as i64 - *x as i64).collect();
    let d = u.len();
    // pick two coordinates where (u, -v) has a nonzero minor
    for i in 0..d {
        for j in i + 1..d {
            let det = -u[i] * v[j] + u[j] * v[i];
            if det == 0 {
                continue;
            }
            let s_num = -w[i] * v[j] + w[j] * v[i];
            let r_num = u[i] * w[j] - u[j] * w[i];
            let consistent = (0..d).all(|c| u[c] * s_num - v[c] * r_num == w[c] * det);
            if !consistent {
                return None;
            }
            let g = s_num.gcd(&det) * det.signum();
            return Some((s_num / g, det / g));
        }
    }
    // parallel
    None
}

fn sibling_lines_are_holes(g: &GridPointSet) -> bool {
    let set = PointSet::from_points(g.points.clone(), Owner::Maker);
    let t = g.config.t;
    g.sibling_lines
        .iter()
        .flatten()
        .all(|&l| verify_hole(&set, &g.line_points(l), t, HoleRule::Monochromatic).unwrap_or(false))
}

/// Certificate that every point off the disks around flat points lies in at
/// most two strips. Two strips of parallel lines never meet; two strips of
/// crossing lines meet inside the disk of radius `alpha/3` around the
/// crossing; a third line misses that disk by more than `beta` unless it
/// passes through the crossing, which only happens at flat points.
fn at_most_two_strips(g: &GridPointSet) -> (usize, bool) {
    let flat: Vec<HomPoint> = g.flat.iter().map(HomPoint::from).collect();
    let coeffs: Vec<LineCoeffs> = (0..g.lines.len()).map(|i| g.coeffs(i).clone()).collect();
    let c = crossings(&coeffs, &flat);
    let disk2 = &g.alpha2 / int(9);
    let beta2 = &g.beta2;
    let mut ok = c.alpha2 == g.alpha2 && c.max_offgrid_incidence <= 2 && beta2 < &disk2;
    // strips of parallel lines are disjoint
    if let Some(gap2) = &c.min_parallel_gap2 {
        ok &= gap2 >= &(beta2 * int(4));
    }
    // the parallelogram of two crossing strips reaches at most 2 beta / sin
    // from the crossing
    ok &= beta2 * int(4) <= &disk2 * &c.min_sin2;
    // a strip around a line missing the crossing stays clear of its disk:
    // alpha - alpha/3 > beta
    ok &= beta2 * int(9) < &g.alpha2 * int(4);
    (c.count, ok)
}

fn bbox(pts: &[Point]) -> (Point, Point) {
    let (mut lo, mut hi) = (pts[0].clone(), pts[0].clone());
    for p in pts {
        if p.x < lo.x {
            lo.x = p.x.clone();
        }
        if p.y < lo.y {
            lo.y = p.y.clone();
        }
        if p.x > hi.x {
            hi.x = p.x.clone();
        }
        if p.y > hi.y {
            hi.y = p.y.clone();
        }
    }
    (lo, hi)
}

fn boxes_meet(a: &(Point, Point), b: &(Point, Point)) -> bool {
    a.0.x <= b.1.x && b.0.x <= a.1.x && a.0.y <= b.1.y && b.0.y <= a.1.y
}

/// A sibling line's members, hull and bounding box.
type SiblingHull = (Vec<usize>, Vec<Point>, (Point, Point));

/// For one sibling hole from each block, the closed hulls share at most a
/// single point, and that point is a common vertex.
pub fn verify_no_colorful_triple(g: &GridPointSet) -> bool {
    let hulls: Vec<Vec<SiblingHull>> = g
        .sibling_lines
        .iter()
        .map(|ids| {
            ids.iter()
                .map(|&l| {
                    let pts = g.line_points(l);
                    let b = bbox(&pts);
                    (g.lines[l].members.clone(), convex_hull(&pts), b)
                })
                .collect()
        })
        .collect();
    for (m0, h0, b0) in &hulls[0] {
        for (m1, h1, b1) in &hulls[1] {
            if !boxes_meet(b0, b1) {
                continue;
            }
            let pair = convex_intersection(h0, h1);
            if pair.is_empty() {
                continue;
            }
            let bp = bbox(&pair);
            for (m2, h2, b2) in &hulls[2] {
                if !boxes_meet(&bp, b2) {
                    continue;
                }
                let triple = convex_intersection(&pair, h2);
                match triple.len() {
                    0 => {}
                    1 => {
                        let shared = m0
                            .iter()
                            .any(|s| m1.contains(s) && m2.contains(s) && g.points[*s] == triple[0]);
                        if !shared {
                            return false;
                        }
                    }
                    _ => return false,
                }
            }
        }
    }
    true
}
