//! Finding Maker's `k`-hole after Breaker's single move.
//!
//! Breaker points are sorted into those inside a disk of radius `alpha/3`
//! around a flat point and the rest. Sibling holes holding two or more of
//! the rest get a stand-in point inside a disk. A flat point is crowded when
//! its disk holds two marks. Every other point survives in some block, and a
//! sibling line of survivors holds at most one Breaker point, which the first
//! or last `k` of its points avoid.

use std::collections::HashMap;

use serde::Serialize;

use super::{GridError, GridPointSet};
use crate::board::{CollinearityIndex, PointSet};
use crate::geom::{convex_hull, coord_to_string, int, polygon_contains_closed, polygon_contains_open, rat, Coord, Point};
use crate::oracle::{verify_hole, HoleCertificate, HoleRule};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChosenLine {
    pub block: usize,
    /// Index into the grid's lines.
    pub line: usize,
    /// Breaker points in the closed hull of the whole line.
    pub breaker_inside: usize,
    /// Whether the last `k` points were taken rather than the first `k`.
    pub took_last: bool,
}

/// The counts from the extraction. Each `*_ok` flag is one of the
/// inequalities the argument relies on.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AccountingReport {
    pub n: usize,
    pub breaker: usize,
    /// Breaker points inside a disk around a flat point.
    pub in_disks: usize,
    /// The remaining Breaker points.
    pub off_disks: usize,
    /// Sibling holes holding at least two off-disk points.
    pub crowded_holes: usize,
    /// Stand-ins, one per crowded hole.
    pub stand_ins: usize,
    /// Flat points whose disk holds at least two marks.
    pub crowded_points: usize,
    /// Surviving points per block.
    pub survivors: [usize; 3],
    pub most_strips_per_off_disk_point: usize,
    /// `2 - |B|/n`.
    pub epsilon: String,
    /// `epsilon / 6`, the density a dense-lines theorem would be asked for.
    pub density: String,
    pub crowded_holes_ok: bool,
    pub stand_ins_ok: bool,
    pub marks_ok: bool,
    pub crowded_points_ok: bool,
    pub strips_ok: bool,
    /// Every uncrowded point survives in some block.
    pub cover_ok: bool,
    /// Sibling lines made only of survivors, per block.
    pub surviving_lines: [usize; 3],
    pub chosen: Option<ChosenLine>,
}

impl AccountingReport {
    pub fn inequalities_hold(&self) -> bool {
        self.crowded_holes_ok
            && self.stand_ins_ok
            && self.marks_ok
            && self.crowded_points_ok
            && self.strips_ok
            && self.cover_ok
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum Extraction {
    Hole {
        certificate: HoleCertificate,
        report: AccountingReport,
    },
    Report {
        report: AccountingReport,
    },
}

impl Extraction {
    pub fn report(&self) -> &AccountingReport {
        match self {
            Extraction::Hole { report, .. } | Extraction::Report { report } => report,
        }
    }

    pub fn certificate(&self) -> Option<&HoleCertificate> {
        match self {
            Extraction::Hole { certificate, .. } => Some(certificate),
            Extraction::Report { .. } => None,
        }
    }
}

/// A point strictly inside the hull of `members`, within the disk of the
/// first member's flat point.
fn stand_in(g: &GridPointSet, members: &[usize], disk2: &Coord) -> Point {
    let s = members[0];
    let n = int(members.len() as i64);
    let (mut cx, mut cy) = (Coord::from_integer(0.into()), Coord::from_integer(0.into()));
    for &m in members {
        cx += &g.points[m].x;
        cy += &g.points[m].y;
    }
    let centroid = Point::new(cx / &n, cy / &n);
    let toward = centroid.sub(&g.points[s]);
    let mut lambda = rat(1, 2);
    loop {
        let p = g.points[s].offset(&toward, &lambda);
        if &p.dist2(&g.flat[s]) < disk2 {
            return p;
        }
        lambda /= int(2);
    }
}

pub fn extract_k_hole(g: &GridPointSet, breaker: &[Point], k: usize) -> Result<Extraction, GridError> {
    let t = g.config.t;
    if k < 3 {
        return Err(GridError::Precondition(format!("holes have at least 3 vertices, asked for k = {k}")));
    }
    if t != 2 * k - 1 {
        return Err(GridError::Precondition(format!("t = {t} is not 2k - 1 for k = {k}")));
    }
    let mut index = CollinearityIndex::new(&g.points);
    for b in breaker {
        if !index.fits(b) {
            return Err(GridError::Precondition(format!("{b} breaks general position")));
        }
        index.insert(b.clone());
    }
    let n = g.len();
    let disk2 = &g.alpha2 / int(9);

    // marks[s]: Breaker points and stand-ins inside the disk around s
    let mut marks: HashMap<usize, Vec<Point>> = HashMap::new();
    let mut off_disk = Vec::new();
    for b in breaker {
        match g.disk_of(b) {
            Some(s) => marks.entry(s).or_default().push(b.clone()),
            None => off_disk.push(b.clone()),
        }
    }
    let in_disks = breaker.len() - off_disk.len();
    let most_strips = off_disk.iter().map(|b| g.strip_count(b)).max().unwrap_or(0);

    let holes: Vec<(usize, usize, Vec<Point>)> = (0..3)
        .flat_map(|j| {
            g.sibling_lines[j]
                .iter()
                .map(move |&l| (j, l, convex_hull(&g.line_points(l))))
        })
        .collect();
    let mut crowded_holes = 0;
    for (_, l, hull) in &holes {
        let inside = off_disk.iter().filter(|b| polygon_contains_open(hull, b)).count();
        if inside >= 2 {
            crowded_holes += 1;
            let members = &g.lines[*l].members;
            let p = stand_in(g, members, &disk2);
            marks.entry(members[0]).or_default().push(p);
        }
    }
    let total_marks: usize = marks.values().map(Vec::len).sum();
    let crowded_points = marks.values().filter(|m| m.len() >= 2).count();

    let mut survives = vec![[false; 3]; n];
    for (s, row) in survives.iter_mut().enumerate() {
        let m = marks.get(&s).map(Vec::as_slice).unwrap_or(&[]);
        if m.len() >= 2 {
            continue;
        }
        for (j, flag) in row.iter_mut().enumerate() {
            *flag = m.iter().all(|b| {
                holes
                    .iter()
                    .filter(|(hj, _, _)| *hj == j)
                    .all(|(_, _, hull)| !polygon_contains_closed(hull, b))
            });
        }
    }
    let survivors = [0, 1, 2].map(|j| survives.iter().filter(|r| r[j]).count());
    let cover_ok = (0..n).all(|s| marks.get(&s).is_some_and(|m| m.len() >= 2) || survives[s].iter().any(|&f| f));

    let s_used = Coord::new((breaker.len() as i64).into(), (n as i64).into());
    let epsilon = int(2) - s_used;
    let density = &epsilon / int(6);
    let mut report = AccountingReport {
        n,
        breaker: breaker.len(),
        in_disks,
        off_disks: off_disk.len(),
        crowded_holes,
        stand_ins: crowded_holes,
        crowded_points,
        survivors,
        most_strips_per_off_disk_point: most_strips,
        epsilon: coord_to_string(&epsilon),
        density: coord_to_string(&density),
        crowded_holes_ok: crowded_holes <= off_disk.len(),
        stand_ins_ok: in_disks + crowded_holes <= breaker.len(),
        marks_ok: total_marks <= breaker.len(),
        crowded_points_ok: 2 * crowded_points <= breaker.len(),
        strips_ok: most_strips <= 2,
        cover_ok,
        surviving_lines: [0; 3],
        chosen: None,
    };

    let set = PointSet::from_labeled(&g.points, breaker);
    let mut found = None;
    for (j, ids) in g.sibling_lines.iter().enumerate() {
        for &l in ids {
            let members = &g.lines[l].members;
            if !members.iter().all(|&s| survives[s][j]) {
                continue;
            }
            report.surviving_lines[j] += 1;
            if found.is_some() {
                continue;
            }
            let pts = g.line_points(l);
            let hull = convex_hull(&pts);
            let inside = breaker.iter().filter(|b| polygon_contains_closed(&hull, b)).count();
            for took_last in [false, true] {
                let part = if took_last { &pts[t - k..] } else { &pts[..k] };
                if verify_hole(&set, part, k, HoleRule::Bichromatic).unwrap_or(false) {
                    let vertices = convex_hull(part);
                    let indices = vertices.iter().map(|v| set.index_of(v).expect("on the board")).collect();
                    found = Some((
                        HoleCertificate {
                            vertices,
                            indices,
                            rule: HoleRule::Bichromatic,
                            snapshot_len: set.len(),
                        },
                        ChosenLine {
                            block: j,
                            line: l,
                            breaker_inside: inside,
                            took_last,
                        },
                    ));
                    break;
                }
            }
        }
    }
    Ok(match found {
        Some((certificate, chosen)) => {
            report.chosen = Some(chosen);
            Extraction::Hole { certificate, report }
        }
        None => Extraction::Report { report },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::build_sampled;

    #[test]
    fn empty_breaker_gives_a_hole() {
        let g = build_sampled(3, 3, 0, 8).unwrap();
        for k in [2, 3] {
            assert!(matches!(extract_k_hole(&g, &[], k), Err(GridError::Precondition(_))));
        }
        let g5 = build_sampled(5, 3, 0, 8).unwrap();
        let out = extract_k_hole(&g5, &[], 3).unwrap();
        let cert = out.certificate().expect("no Breaker points");
        assert_eq!(cert.k(), 3);
        assert!(cert.verify(&PointSet::from_labeled(&g5.points, &[])));
        let r = out.report();
        assert!(r.inequalities_hold());
        assert_eq!(r.survivors, [125; 3]);
        assert_eq!(r.epsilon, "2/1");
        assert_eq!(r.density, "1/3");
    }

    /// A point in general position with the grid and everything in `extra`.
    fn general(g: &GridPointSet, extra: &[Point], candidates: impl IntoIterator<Item = Point>) -> Option<Point> {
        let mut index = CollinearityIndex::new(&g.points);
        for b in extra {
            index.insert(b.clone());
        }
        candidates.into_iter().find(|p| index.fits(p))
    }

    #[test]
    fn breaker_in_the_first_triangle_pushes_to_the_last_points() {
        let g = build_sampled(5, 3, 0, 8).unwrap();
        let l = g.sibling_lines[0][0];
        let pts = g.line_points(l);
        let mid = pts[0].midpoint(&pts[1]);
        let toward = pts[2].sub(&mid);
        let b = general(&g, &[], (1..50).map(|i| mid.offset(&toward, &rat(i, 1000)))).unwrap();
        assert!(g.disk_of(&b).is_none());
        let out = extract_k_hole(&g, std::slice::from_ref(&b), 3).unwrap();
        let chosen = out.report().chosen.clone().unwrap();
        assert_eq!((chosen.block, chosen.line), (0, l));
        assert_eq!(chosen.breaker_inside, 1);
        assert!(chosen.took_last);
        let cert = out.certificate().unwrap();
        assert!(cert.verify(&PointSet::from_labeled(&g.points, &[b])));
        assert!(out.report().inequalities_hold());
    }

    #[test]
    fn adversarial_breaker_keeps_the_accounting() {
        let g = build_sampled(5, 3, 0, 8).unwrap();
        let small = crate::geom::surd::sqrt_lower(&g.alpha2, 64) / int(12);
        let mut breaker: Vec<Point> = Vec::new();
        // two points in the disks of the first few flat points
        for s in (0..g.len()).step_by(7) {
            for dir in [(1, 2), (-3, 1)] {
                let d = crate::geom::Direction::new(int(dir.0), int(dir.1)).unwrap();
                let cands = (1..40).map(|i| g.flat[s].offset(&d, &(&small * rat(1, i))));
                if let Some(p) = general(&g, &breaker, cands) {
                    breaker.push(p);
                }
            }
        }
        // off-disk points near the middle of segments of sibling lines
        for &l in g.sibling_lines[0].iter().chain(&g.sibling_lines[1]).take(40) {
            let pts = g.line_points(l);
            let mid = pts[0].midpoint(&pts[1]);
            let toward = pts[2].sub(&mid);
            let cands = (1..40).map(|i| mid.offset(&toward, &rat(i, 997)));
            if let Some(p) = general(&g, &breaker, cands) {
                breaker.push(p);
            }
        }
        assert!(breaker.len() >= 60);
        let out = extract_k_hole(&g, &breaker, 3).unwrap();
        let r = out.report();
        assert!(r.inequalities_hold(), "{r:?}");
        assert!(r.in_disks >= 30 && r.off_disks >= 30);
        assert!(r.crowded_points >= 15);
        let cert = out.certificate().unwrap_or_else(|| panic!("{r:?}"));
        assert!(cert.verify(&PointSet::from_labeled(&g.points, &breaker)));
    }
}
