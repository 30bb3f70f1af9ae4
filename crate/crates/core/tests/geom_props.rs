//! Randomized checks of the exact predicates against independent oracles.

use num_bigint::{BigInt, Sign};
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use holegames::geom::{
    angle_exceeds, convex_hull, in_convex_position, int, orientation, point_in_angular_domain,
    point_in_cone, rat, AngleThreshold, Boundary, Cone, Coord, Direction, Orientation, Point,
};
use holegames::sample::{keeps_general_position, random_point};
use holegames::strips::{adjacent_cones, extend_strip, is_k_strip, rotation_margin, tilted_down, Strip};

fn point() -> impl Strategy<Value = Point> {
    (-60i64..=60, 1i64..=7, -60i64..=60, 1i64..=7).prop_map(|(a, b, c, d)| Point::from_rats((a, b), (c, d)))
}

proptest! {
    #[test]
    fn orientation_flips_under_swaps(p in point(), q in point(), r in point()) {
        let o = orientation(&p, &q, &r);
        prop_assert_eq!(orientation(&q, &p, &r), o.reversed());
        prop_assert_eq!(orientation(&p, &r, &q), o.reversed());
        prop_assert_eq!(orientation(&r, &q, &p), o.reversed());
        prop_assert_eq!(orientation(&q, &r, &p), o);
    }

    #[test]
    fn hull_is_convex_and_covers(pts in proptest::collection::vec(point(), 1..30)) {
        let hull = convex_hull(&pts);
        let n = hull.len();
        if n >= 3 {
            for i in 0..n {
                prop_assert_eq!(orientation(&hull[i], &hull[(i + 1) % n], &hull[(i + 2) % n]), Orientation::Ccw);
            }
            for p in &pts {
                for i in 0..n {
                    prop_assert_ne!(orientation(&hull[i], &hull[(i + 1) % n], p), Orientation::Cw);
                }
            }
        }
        for v in &hull {
            prop_assert!(pts.contains(v));
        }
    }
}

#[test]
fn cone_agrees_with_angular_domain() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut inside = 0;
    let mut cases = 0;
    while cases < 10_000 {
        let apex = random_point(&mut rng, 30, 1);
        let a = random_point(&mut rng, 30, 1);
        let b = random_point(&mut rng, 30, 1);
        let p = random_point(&mut rng, 30, 1);
        if a == apex || b == apex || p == apex {
            continue;
        }
        let (from, to) = match orientation(&apex, &a, &b) {
            Orientation::Collinear => continue,
            Orientation::Ccw => (a.sub(&apex), b.sub(&apex)),
            Orientation::Cw => (b.sub(&apex), a.sub(&apex)),
        };
        let cone = Cone::new(apex.clone(), from, to).unwrap();
        let by_cone = point_in_cone(&cone, &p, Boundary::Open);
        assert_eq!(by_cone, point_in_angular_domain(&apex, &a, &b, &p).unwrap(), "{apex} {a} {b} {p}");
        inside += by_cone as usize;
        cases += 1;
    }
    assert!(inside > 1000);
}

const BITS: u32 = 200;

/// Bracket of `sqrt(r)` with denominators `2^BITS`, from the integer square
/// root.
fn sqrt_bracket(r: &Coord) -> (Coord, Coord) {
    assert!(!r.is_negative());
    let scale = BigInt::from(1) << (2 * BITS);
    // sqrt(n/d) = sqrt(n d) / d
    let nd = r.numer() * r.denom() * &scale;
    let s = nd.sqrt();
    let den = r.denom() * (BigInt::from(1) << BITS);
    (Coord::new(s.clone(), den.clone()), Coord::new(s + 1, den))
}

fn scale_interval(c: &Coord, (lo, hi): &(Coord, Coord)) -> (Coord, Coord) {
    if c.is_negative() {
        (c * hi, c * lo)
    } else {
        (c * lo, c * hi)
    }
}

/// `Some(angle > threshold)` when the 200-bit brackets separate.
fn angle_exceeds_oracle(u: &Direction, v: &Direction, cos_a: &Coord, cos_b: &Coord, m: &Coord) -> Option<bool> {
    let dot = u.dot(v);
    let (n_lo, n_hi) = sqrt_bracket(&(u.norm2() * v.norm2()));
    let cos = if dot.is_negative() {
        (&dot / &n_lo, &dot / &n_hi)
    } else {
        (&dot / &n_hi, &dot / &n_lo)
    };
    let (r_lo, r_hi) = scale_interval(cos_b, &sqrt_bracket(m));
    let th = (cos_a + r_lo, cos_a + r_hi);
    if cos.1 < th.0 {
        Some(true)
    } else if cos.0 > th.1 {
        Some(false)
    } else if dot.is_zero() && cos_a.is_zero() && cos_b.is_zero() {
        // exactly a right angle against pi/2
        Some(false)
    } else {
        None
    }
}

#[test]
fn angle_exceeds_matches_high_precision() {
    // (lambda, cos 2pi/lambda as a + b sqrt(m))
    let thresholds = [
        (3, rat(-1, 2), int(0), int(1)),
        (4, int(0), int(0), int(1)),
        (5, rat(-1, 4), rat(1, 4), int(5)),
        (6, rat(1, 2), int(0), int(1)),
        (8, int(0), rat(1, 2), int(2)),
        (10, rat(1, 4), rat(1, 4), int(5)),
        (12, int(0), rat(1, 2), int(3)),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut decided = 0;
    let mut cases = 0;
    while cases < 10_000 {
        let apex = random_point(&mut rng, 40, 3);
        let a = random_point(&mut rng, 40, 3);
        let b = random_point(&mut rng, 40, 3);
        if a == apex || b == apex {
            continue;
        }
        cases += 1;
        let (lambda, ca, cb, m) = &thresholds[rng.gen_range(0..thresholds.len())];
        let th = AngleThreshold::two_pi_over(*lambda).unwrap();
        let got = angle_exceeds(&apex, &a, &b, &th).unwrap();
        if let Some(want) = angle_exceeds_oracle(&a.sub(&apex), &b.sub(&apex), ca, cb, m) {
            assert_eq!(got, want, "2pi/{lambda} at {apex}: {a} {b}");
            decided += 1;
        }
    }
    assert!(decided >= 9_900, "only {decided} decided");
}

/// `k` points on the parabola `y = -x^2` with distinct integer abscissas:
/// a cap with respect to the downward direction.
fn random_cap(rng: &mut ChaCha8Rng, k: usize, lo: i64, hi: i64) -> Vec<Point> {
    let mut xs: Vec<i64> = Vec::new();
    while xs.len() < k {
        let x = rng.gen_range(lo..=hi);
        if !xs.contains(&x) {
            xs.push(x);
        }
    }
    xs.sort();
    xs.iter().map(|&x| Point::from_ints(x, -x * x)).collect()
}

/// Random points outside every strip region, keeping general position.
fn scatter(rng: &mut ChaCha8Rng, strips: &[Strip], base: &mut Vec<Point>, n: usize, bound: i64) {
    let mut added = 0;
    let mut tries = 0;
    while added < n && tries < 50 * n {
        tries += 1;
        let p = random_point(rng, bound, 3);
        if strips.iter().any(|s| s.region_contains(&p)) || !keeps_general_position(base, &p) {
            continue;
        }
        base.push(p);
        added += 1;
    }
}

/// A point strictly inside the cone, in general position with `set`.
fn point_in(rng: &mut ChaCha8Rng, cone: &Cone, set: &[Point]) -> Option<Point> {
    for _ in 0..50 {
        let s = rat(rng.gen_range(1..=40), rng.gen_range(1..=8));
        let t = rat(rng.gen_range(1..=40), rng.gen_range(1..=8));
        let p = cone.apex.translate(&cone.from.scale(&s)).translate(&cone.to.scale(&t));
        if keeps_general_position(set, &p) {
            return Some(p);
        }
    }
    None
}

#[test]
fn extended_strips_are_strips() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let down = Direction::down();
    let mut built = 0;
    while built < 1000 {
        let k = rng.gen_range(2..=5);
        let cap = random_cap(&mut rng, k, -6, 6);
        let strip = Strip::new(cap.clone(), down.clone(), k as u32).unwrap();
        let mut set = cap;
        scatter(&mut rng, std::slice::from_ref(&strip), &mut set, 8, 60);
        assert!(is_k_strip(&strip.points, &down, &set));
        let (minus, plus) = adjacent_cones(&strip, &set).unwrap();
        let cone = if rng.gen_bool(0.5) { minus } else { plus };
        let Some(p) = point_in(&mut rng, &cone, &set) else {
            continue;
        };
        set.push(p.clone());
        let longer = extend_strip(&strip, &p, &set).expect("point in an adjacent cone");
        assert_eq!(longer.k(), k + 1);
        assert!(is_k_strip(&longer.points, &down, &set));
        built += 1;
    }
}

#[test]
fn extension_outside_both_cones_is_refused() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let down = Direction::down();
    let mut refused = 0;
    for _ in 0..500 {
        let cap = random_cap(&mut rng, 3, -5, 5);
        let strip = Strip::new(cap.clone(), down.clone(), 3).unwrap();
        let mut set = cap;
        scatter(&mut rng, std::slice::from_ref(&strip), &mut set, 6, 40);
        let (minus, plus) = adjacent_cones(&strip, &set).unwrap();
        let p = random_point(&mut rng, 40, 3);
        if !keeps_general_position(&set, &p)
            || minus.contains(&p, Boundary::Closed)
            || plus.contains(&p, Boundary::Closed)
        {
            continue;
        }
        set.push(p.clone());
        assert!(extend_strip(&strip, &p, &set).is_err());
        refused += 1;
    }
    assert!(refused > 100);
}

#[test]
fn strips_are_holes_with_a_point_at_infinity() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let down = Direction::down();
    for _ in 0..300 {
        let k = rng.gen_range(2..=6);
        let cap = random_cap(&mut rng, k, -9, 9);
        let strip = Strip::new(cap.clone(), down.clone(), k as u32).unwrap();
        let mid = strip.first().midpoint(strip.last());
        let mut depth = int(1);
        let mut found = false;
        for _ in 0..64 {
            let far = mid.offset(&down, &depth);
            let mut pts = cap.clone();
            pts.push(far);
            if in_convex_position(&pts).unwrap_or(false) {
                found = true;
                break;
            }
            depth *= int(2);
        }
        assert!(found, "{:?}", strip.points);
    }
}

#[test]
fn rotated_families_revalidate() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let down = Direction::down();
    for _ in 0..200 {
        // strips over disjoint x ranges, shifted apart
        let count = rng.gen_range(1..=4);
        let mut strips = Vec::new();
        let mut set = Vec::new();
        for i in 0..count {
            let k = rng.gen_range(2..=4);
            let shift = 40 * i as i64;
            let lift = int(rng.gen_range(-3..=3));
            let pts: Vec<Point> = random_cap(&mut rng, k, -4, 4)
                .into_iter()
                .map(|p| Point::new(&p.x + int(shift), &p.y + &lift))
                .collect();
            if pts.iter().any(|p| !keeps_general_position(&set, p)) {
                continue;
            }
            set.extend(pts.iter().cloned());
            strips.push(Strip::new(pts, down.clone(), k as u32).unwrap());
        }
        if strips.is_empty() {
            continue;
        }
        scatter(&mut rng, &strips, &mut set, 10, 150);
        let mut extra = set.clone();
        let before = extra.len();
        scatter(&mut rng, &[], &mut extra, 5, 150);
        let extra = extra.split_off(before);
        let apexes: Vec<Point> = strips.iter().map(|s| s.first().clone()).collect();
        assert!(strips.iter().all(|s| s.is_valid(&set)));
        let delta = rotation_margin(&strips, &set, &extra, &apexes).unwrap();
        assert!(!delta.is_zero());
        let v = tilted_down(&delta);
        for s in &strips {
            assert!(is_k_strip(&s.points, &v, &set), "delta {delta}");
        }
        for a in &apexes {
            for q in &extra {
                assert!(!v.cross(&q.sub(a)).is_zero());
            }
        }
        let mirrored = tilted_down(&-delta.clone());
        let flip = |p: &Point| Point::new(-p.x.clone(), p.y.clone());
        for s in &strips {
            let pts: Vec<Point> = s.points.iter().map(flip).collect();
            let all: Vec<Point> = set.iter().map(flip).collect();
            assert!(is_k_strip(&pts, &mirrored, &all));
        }
    }
}

#[test]
fn bigint_sqrt_bracket_is_tight() {
    let (lo, hi) = sqrt_bracket(&int(2));
    assert!(&lo * &lo < int(2) && &hi * &hi > int(2));
    assert_eq!(lo.numer().sign(), Sign::Plus);
}
