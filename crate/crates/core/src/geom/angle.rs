//! Exact comparisons of angles against a small family of constructible
//! thresholds.

use std::cmp::Ordering;

use num_traits::{One, Signed, Zero};

use super::surd::sign_of_sum;
use super::{int, rat, Coord, Direction, GeomError, Point};

/// An angle in `(0, pi)` given by its cosine `a + b * sqrt(m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AngleThreshold {
    a: Coord,
    b: Coord,
    m: Coord,
    label: String,
}

impl AngleThreshold {
    /// The central angle `2 pi / lambda` of a regular `lambda`-gon.
    pub fn two_pi_over(lambda: u32) -> Result<Self, GeomError> {
        let (a, b, m) = match lambda {
            3 => (rat(-1, 2), Coord::zero(), int(1)),
            4 => (Coord::zero(), Coord::zero(), int(1)),
            5 => (rat(-1, 4), rat(1, 4), int(5)),
            6 => (rat(1, 2), Coord::zero(), int(1)),
            8 => (Coord::zero(), rat(1, 2), int(2)),
            10 => (rat(1, 4), rat(1, 4), int(5)),
            12 => (Coord::zero(), rat(1, 2), int(3)),
            _ => return Err(GeomError::UnsupportedThreshold(format!("2pi/{lambda}"))),
        };
        Ok(AngleThreshold {
            a,
            b,
            m,
            label: format!("2pi/{lambda}"),
        })
    }

    pub fn pi_over_3() -> Self {
        Self::two_pi_over(6).map(|t| t.relabel("pi/3")).unwrap()
    }

    pub fn pi_over_2() -> Self {
        Self::two_pi_over(4).map(|t| t.relabel("pi/2")).unwrap()
    }

    /// Threshold whose cosine is the rational `c`, with `-1 < c < 1`.
    pub fn from_cos_rational(c: Coord) -> Result<Self, GeomError> {
        if c <= -Coord::one() || c >= Coord::one() {
            return Err(GeomError::UnsupportedThreshold(format!("cos = {c}")));
        }
        let label = format!("acos({c})");
        Ok(AngleThreshold {
            a: c,
            b: Coord::zero(),
            m: int(1),
            label,
        })
    }

    fn relabel(mut self, l: &str) -> Self {
        self.label = l.to_string();
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn cos_f64(&self) -> f64 {
        super::to_f64(&self.a) + super::to_f64(&self.b) * super::to_f64(&self.m).sqrt()
    }

    pub fn radians(&self) -> f64 {
        self.cos_f64().clamp(-1.0, 1.0).acos()
    }
}

/// Compares the unsigned angle between `u` and `v` (in `[0, pi]`) with the
/// threshold.
pub fn vector_angle_compare(u: &Direction, v: &Direction, th: &AngleThreshold) -> Ordering {
    // angle > th  <=>  cos < cos th  <=>  dot - a sqrt(n2) - b sqrt(m n2) < 0
    let dot = u.dot(v);
    let n2 = u.norm2() * v.norm2();
    let s = sign_of_sum(&[
        (dot, Coord::one()),
        (-th.a.clone(), n2.clone()),
        (-th.b.clone(), &th.m * &n2),
    ]);
    s.reverse()
}

/// Compares the counterclockwise angle from `u` to `v` (in `[0, 2 pi)`) with
/// the threshold.
pub fn ccw_angle_compare(u: &Direction, v: &Direction, th: &AngleThreshold) -> Ordering {
    if u.cross(v).is_negative() {
        Ordering::Greater
    } else {
        vector_angle_compare(u, v, th)
    }
}

/// Compares the angle at `apex` between `a` and `b` with the threshold.
pub fn angle_compare(
    apex: &Point,
    a: &Point,
    b: &Point,
    th: &AngleThreshold,
) -> Result<Ordering, GeomError> {
    if a == apex || b == apex {
        return Err(GeomError::DegenerateAngle);
    }
    Ok(vector_angle_compare(&a.sub(apex), &b.sub(apex), th))
}

/// True iff the angle at `apex` between `a` and `b` strictly exceeds `th`.
pub fn angle_exceeds(
    apex: &Point,
    a: &Point,
    b: &Point,
    th: &AngleThreshold,
) -> Result<bool, GeomError> {
    Ok(angle_compare(apex, a, b, th)? == Ordering::Greater)
}

/// Rotation by the angle whose half-angle tangent is `t`:
/// `cos = (1 - t^2) / (1 + t^2)`, `sin = 2t / (1 + t^2)`.
pub fn rotate_by_half_tangent(v: &Direction, t: &Coord) -> Direction {
    let t2 = t * t;
    let den = Coord::one() + &t2;
    let c = (Coord::one() - &t2) / &den;
    let s = (int(2) * t) / &den;
    Direction::raw(&c * &v.dx - &s * &v.dy, &s * &v.dx + &c * &v.dy)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: i64, y: i64) -> Point {
        Point::from_ints(x, y)
    }

    #[test]
    fn spec_examples() {
        let o = p(0, 0);
        let t = AngleThreshold::pi_over_3();
        assert!(angle_exceeds(&o, &p(1, 0), &p(0, 1), &t).unwrap());
        assert!(!angle_exceeds(&o, &p(1, 0), &p(1, 1), &t).unwrap());
        assert!(angle_exceeds(&o, &p(1, 0), &p(1, 2), &t).unwrap());
    }

    #[test]
    fn boundary_equalities() {
        let o = p(0, 0);
        assert_eq!(
            angle_compare(&o, &p(1, 0), &p(0, 1), &AngleThreshold::pi_over_2()).unwrap(),
            Ordering::Equal
        );
        assert_eq!(
            angle_compare(&o, &p(1, 0), &p(1, 1), &AngleThreshold::two_pi_over(8).unwrap())
                .unwrap(),
            Ordering::Equal
        );
        assert!(AngleThreshold::two_pi_over(7).is_err());
    }

    #[test]
    fn all_thresholds_match_float() {
        for lambda in [3, 4, 5, 6, 8, 10, 12] {
            let th = AngleThreshold::two_pi_over(lambda).unwrap();
            assert!((th.radians() - 2.0 * std::f64::consts::PI / lambda as f64).abs() < 1e-12);
        }
    }

    #[test]
    fn half_tangent_rotation() {
        // t = 1 is a quarter turn
        let r = rotate_by_half_tangent(&Direction::raw(int(1), int(0)), &int(1));
        assert_eq!(r, Direction::raw(int(0), int(1)));
    }
}
