use num_traits::Signed;

use super::{check_general_position, orientation, Coord, Direction, GeomError, Orientation, Point};

/// Vertices of the convex hull in counterclockwise order, starting from the
/// lexicographically smallest point. Points in the relative interior of hull
/// edges are dropped.
pub fn convex_hull(points: &[Point]) -> Vec<Point> {
    let mut pts: Vec<Point> = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let mut lower: Vec<Point> = Vec::new();
    for p in &pts {
        while lower.len() >= 2
            && orientation(&lower[lower.len() - 2], &lower[lower.len() - 1], p) != Orientation::Ccw
        {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<Point> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2
            && orientation(&upper[upper.len() - 2], &upper[upper.len() - 1], p) != Orientation::Ccw
        {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// True iff every point is a vertex of the convex hull.
pub fn in_convex_position(points: &[Point]) -> Result<bool, GeomError> {
    check_general_position(points)?;
    Ok(convex_hull(points).len() == points.len())
}

/// Closed containment of `p` in the convex polygon with CCW vertices `poly`
/// (at least three vertices).
pub fn polygon_contains_closed(poly: &[Point], p: &Point) -> bool {
    let n = poly.len();
    (0..n).all(|i| orientation(&poly[i], &poly[(i + 1) % n], p) != Orientation::Cw)
}

/// Strict interior containment for a CCW convex polygon.
pub fn polygon_contains_open(poly: &[Point], p: &Point) -> bool {
    let n = poly.len();
    (0..n).all(|i| orientation(&poly[i], &poly[(i + 1) % n], p) == Orientation::Ccw)
}

/// Closed intersection of two convex sets given by their CCW hull vertices.
/// Either input may be degenerate (a point or a segment); so may the output.
/// A proper polygon comes back in cyclic order, a point or segment as its
/// distinct endpoints.
pub fn convex_intersection(a: &[Point], b: &[Point]) -> Vec<Point> {
    let mut cur: Vec<Point> = a.to_vec();
    cur.dedup();
    // each constraint keeps the points v with normal . (v - origin) >= 0
    let n = b.len();
    let constraints: Vec<(&Point, Direction)> = match n {
        0 => return Vec::new(),
        1 => return if polygon_contains_closed_degenerate(a, &b[0]) { vec![b[0].clone()] } else { Vec::new() },
        2 => {
            let e = b[1].sub(&b[0]);
            vec![(&b[0], e.perp()), (&b[0], e.perp().neg()), (&b[0], e.clone()), (&b[1], e.neg())]
        }
        _ => (0..n).map(|i| (&b[i], b[(i + 1) % n].sub(&b[i]).perp())).collect(),
    };
    for (p, normal) in constraints {
        if cur.is_empty() {
            break;
        }
        let side: Vec<Coord> = cur.iter().map(|v| normal.dot(&v.sub(p))).collect();
        let m = cur.len();
        let mut next = Vec::with_capacity(m + 1);
        for i in 0..m {
            let j = (i + 1) % m;
            let (si, sj) = (&side[i], &side[j]);
            if !si.is_negative() {
                next.push(cur[i].clone());
            }
            if (si.is_positive() && sj.is_negative()) || (si.is_negative() && sj.is_positive()) {
                let t = si / (si - sj);
                next.push(cur[i].offset(&cur[j].sub(&cur[i]), &t));
            }
        }
        next.dedup();
        while next.len() > 1 && next.first() == next.last() {
            next.pop();
        }
        cur = next;
    }
    let mut distinct = cur.clone();
    distinct.sort();
    distinct.dedup();
    if distinct.len() <= 2 {
        distinct
    } else {
        cur
    }
}

/// Closed containment for a possibly degenerate convex set.
fn polygon_contains_closed_degenerate(poly: &[Point], p: &Point) -> bool {
    match poly.len() {
        0 => false,
        1 => &poly[0] == p,
        2 => {
            orientation(&poly[0], &poly[1], p) == Orientation::Collinear
                && !poly[0].sub(p).dot(&poly[1].sub(p)).is_positive()
        }
        _ => polygon_contains_closed(poly, p),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{rat, Point};
    use proptest::prelude::*;

    fn p(x: i64, y: i64) -> Point {
        Point::from_ints(x, y)
    }

    #[test]
    fn square_hull() {
        let h = convex_hull(&[p(1, 1), p(0, 0), p(1, 0), p(0, 1)]);
        assert_eq!(h, vec![p(0, 0), p(1, 0), p(1, 1), p(0, 1)]);
    }

    #[test]
    fn interior_point_dropped() {
        let s = [p(0, 0), p(2, 0), p(1, 3), p(1, 1)];
        let h = convex_hull(&s);
        assert_eq!(h, vec![p(0, 0), p(2, 0), p(1, 3)]);
        // (1,1) lies strictly inside all three edges
        assert!(polygon_contains_open(&h, &p(1, 1)));
        assert!(!in_convex_position(&s).unwrap());
        assert!(in_convex_position(&[p(0, 0), p(1, 0), p(1, 1), p(0, 1)]).unwrap());
        assert!(in_convex_position(&[p(0, 0), p(5, 1), p(2, 7)]).unwrap());
    }

    #[test]
    fn single_and_collinear() {
        assert_eq!(convex_hull(&[p(3, 4)]), vec![p(3, 4)]);
        assert_eq!(convex_hull(&[p(0, 0), p(1, 1), p(2, 2)]), vec![p(0, 0), p(2, 2)]);
        assert!(in_convex_position(&[p(0, 0), p(1, 1), p(2, 2)]).is_err());
    }

    fn arb_point() -> impl Strategy<Value = Point> {
        (-50i64..50, 1i64..7, -50i64..50, 1i64..7)
            .prop_map(|(a, b, c, d)| Point::new(rat(a, b), rat(c, d)))
    }

    #[test]
    fn intersections_of_triangles() {
        let a = convex_hull(&[p(0, 0), p(4, 0), p(0, 4)]);
        let b = convex_hull(&[p(1, 1), p(5, 1), p(1, 5)]);
        let c = convex_intersection(&a, &b);
        assert_eq!(convex_hull(&c), convex_hull(&[p(1, 1), p(3, 1), p(1, 3)]));
        // touching in a single corner
        let d = convex_hull(&[p(4, 0), p(6, 0), p(5, -3)]);
        assert_eq!(convex_intersection(&a, &d), vec![p(4, 0)]);
        // separated by a line
        let e = convex_hull(&[p(3, 3), p(6, 3), p(3, 6)]);
        assert!(convex_intersection(&a, &e).is_empty());
        // sharing an edge
        let f = convex_hull(&[p(4, 0), p(0, 4), p(4, 4)]);
        assert_eq!(convex_intersection(&a, &f), vec![p(0, 4), p(4, 0)]);
        // against a segment, clipped at its ends
        assert_eq!(
            convex_intersection(&a, &[p(-2, 1), p(1, 1)]),
            vec![p(0, 1), p(1, 1)]
        );
    }

    proptest! {
        #[test]
        fn hull_is_convex_and_covers(pts in prop::collection::vec(arb_point(), 1..25)) {
            let h = convex_hull(&pts);
            let n = h.len();
            if n >= 3 {
                for i in 0..n {
                    prop_assert_eq!(
                        orientation(&h[i], &h[(i + 1) % n], &h[(i + 2) % n]),
                        Orientation::Ccw
                    );
                }
                for q in &pts {
                    prop_assert!(polygon_contains_closed(&h, q));
                }
            }
            for v in &h {
                prop_assert!(pts.contains(v));
            }
        }

        #[test]
        fn intersection_matches_membership(
            a in prop::collection::vec(arb_point(), 3..8),
            b in prop::collection::vec(arb_point(), 3..8),
            q in arb_point(),
        ) {
            let (ha, hb) = (convex_hull(&a), convex_hull(&b));
            prop_assume!(ha.len() >= 3 && hb.len() >= 3);
            let c = convex_intersection(&ha, &hb);
            for v in &c {
                prop_assert!(polygon_contains_closed(&ha, v) && polygon_contains_closed(&hb, v));
            }
            let inside = polygon_contains_closed(&ha, &q) && polygon_contains_closed(&hb, &q);
            if c.len() >= 3 {
                prop_assert_eq!(inside, polygon_contains_closed(&convex_hull(&c), &q));
            } else if inside {
                prop_assert!(polygon_contains_closed_degenerate(&c, &q));
            }
        }

        #[test]
        fn orientation_antisymmetric(a in arb_point(), b in arb_point(), c in arb_point()) {
            let o = orientation(&a, &b, &c);
            prop_assert_eq!(orientation(&b, &a, &c), o.reversed());
            prop_assert_eq!(orientation(&a, &c, &b), o.reversed());
            prop_assert_eq!(orientation(&c, &b, &a), o.reversed());
            prop_assert_eq!(orientation(&b, &c, &a), o);
        }
    }
}
