//! Seeded random point sets in general position.

use rand::Rng;

use crate::geom::{is_general_position, orientation, rat, Orientation, Point};

/// A random point with coordinates `a / den` for integers `|a| <= bound`.
pub fn random_point<R: Rng + ?Sized>(rng: &mut R, bound: i64, den: i64) -> Point {
    Point::new(
        rat(rng.gen_range(-bound..=bound), den),
        rat(rng.gen_range(-bound..=bound), den),
    )
}

/// True iff `p` can be added to `pts` without breaking general position.
pub fn keeps_general_position(pts: &[Point], p: &Point) -> bool {
    if pts.contains(p) {
        return false;
    }
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            if orientation(&pts[i], &pts[j], p) == Orientation::Collinear {
                return false;
            }
        }
    }
    true
}

/// `n` points in general position with integer coordinates in
/// `[-bound, bound]^2`, built by rejection.
pub fn random_general_position<R: Rng + ?Sized>(rng: &mut R, n: usize, bound: i64) -> Vec<Point> {
    let mut pts: Vec<Point> = Vec::with_capacity(n);
    while pts.len() < n {
        let p = random_point(rng, bound, 1);
        if keeps_general_position(&pts, &p) {
            pts.push(p);
        }
    }
    debug_assert!(is_general_position(&pts));
    pts
}

/// Extends `base` by `n` random points keeping general position.
pub fn extend_general_position<R: Rng + ?Sized>(
    rng: &mut R,
    base: &[Point],
    n: usize,
    bound: i64,
    den: i64,
) -> Vec<Point> {
    let mut all = base.to_vec();
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let p = random_point(rng, bound, den);
        if keeps_general_position(&all, &p) {
            all.push(p.clone());
            out.push(p);
        }
    }
    out
}
