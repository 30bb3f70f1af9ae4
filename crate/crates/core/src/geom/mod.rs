//! Exact planar geometry over arbitrary-precision rationals.
//!
//! Every predicate here is exact. Irrational quantities (lengths, angles) are
//! never materialized; comparisons go through squared quantities or through
//! the surd sign routines in [`surd`].

mod angle;
mod hull;
pub mod surd;

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

pub use angle::{
    angle_compare, angle_exceeds, ccw_angle_compare, rotate_by_half_tangent, vector_angle_compare,
    AngleThreshold,
};
pub use hull::{
    convex_hull, convex_intersection, in_convex_position, polygon_contains_closed, polygon_contains_open,
};

/// Exact rational coordinate. `BigRational` keeps values reduced with a
/// positive denominator, so equality is structural.
pub type Coord = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeomError {
    #[error("point set is not in general position: {0} {1} {2} are collinear")]
    GeneralPositionViolation(Point, Point, Point),
    #[error("point set contains a repeated point {0}")]
    DuplicatePoint(Point),
    #[error("apex and the two rays are collinear")]
    DegenerateAngle,
    #[error("cone aperture must be strictly between 0 and pi")]
    DegenerateCone,
    #[error("zero direction vector")]
    ZeroDirection,
    #[error("unsupported angle threshold: {0}")]
    UnsupportedThreshold(String),
    #[error("cannot parse rational {0:?}")]
    Parse(String),
}

pub fn rat(n: i64, d: i64) -> Coord {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Coord {
    BigRational::from_integer(BigInt::from(n))
}

/// Formats a coordinate as `num/den` (always with a denominator).
pub fn coord_to_string(c: &Coord) -> String {
    format!("{}/{}", c.numer(), c.denom())
}

/// Parses `num/den`, a bare integer, or a finite decimal such as `-0.125`.
pub fn parse_coord(s: &str) -> Result<Coord, GeomError> {
    let s = s.trim();
    let err = || GeomError::Parse(s.to_string());
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| err())?;
        let d: BigInt = d.trim().parse().map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((ip, fp)) = s.split_once('.') {
        if fp.is_empty() || !fp.chars().all(|c| c.is_ascii_digit()) {
            return Err(err());
        }
        let negative = ip.starts_with('-');
        let ip_val: BigInt = if ip.is_empty() || ip == "-" || ip == "+" {
            BigInt::zero()
        } else {
            ip.parse().map_err(|_| err())?
        };
        let scale = BigInt::from(10u32).pow(fp.len() as u32);
        let frac: BigInt = fp.parse().map_err(|_| err())?;
        let mag = ip_val.abs() * &scale + frac;
        let n = if negative { -mag } else { mag };
        return Ok(BigRational::new(n, scale));
    }
    let n: BigInt = s.parse().map_err(|_| err())?;
    Ok(BigRational::from_integer(n))
}

/// Lossy conversion for diagnostics and rendering only.
pub fn to_f64(c: &Coord) -> f64 {
    use num_traits::ToPrimitive;
    match (c.numer().to_f64(), c.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            // Huge numerator/denominator: shift both down before dividing.
            let bits = c.numer().bits().max(c.denom().bits());
            let shift = bits.saturating_sub(900) as usize;
            let n = (c.numer() >> shift).to_f64().unwrap_or(0.0);
            let d = (c.denom() >> shift).to_f64().unwrap_or(1.0);
            if d == 0.0 {
                f64::INFINITY * n.signum()
            } else {
                n / d
            }
        }
    }
}

/// Closest rational with denominator `2^bits` (rounded toward zero).
pub fn from_f64(v: f64, bits: u32) -> Coord {
    let scale = (1u64 << bits.min(62)) as f64;
    let n = (v * scale).trunc();
    let n = BigInt::from(n as i128);
    BigRational::new(n, BigInt::one() << bits.min(62))
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: Coord,
    pub y: Coord,
}

impl Point {
    pub fn new(x: Coord, y: Coord) -> Self {
        Point { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Point::new(int(x), int(y))
    }

    pub fn from_rats(x: (i64, i64), y: (i64, i64)) -> Self {
        Point::new(rat(x.0, x.1), rat(y.0, y.1))
    }

    pub fn sub(&self, other: &Point) -> Direction {
        Direction::raw(&self.x - &other.x, &self.y - &other.y)
    }

    pub fn offset(&self, d: &Direction, t: &Coord) -> Point {
        Point::new(&self.x + &d.dx * t, &self.y + &d.dy * t)
    }

    pub fn translate(&self, d: &Direction) -> Point {
        Point::new(&self.x + &d.dx, &self.y + &d.dy)
    }

    pub fn midpoint(&self, other: &Point) -> Point {
        let two = int(2);
        Point::new((&self.x + &other.x) / &two, (&self.y + &other.y) / &two)
    }

    pub fn dist2(&self, other: &Point) -> Coord {
        let dx = &self.x - &other.x;
        let dy = &self.y - &other.y;
        &dx * &dx + &dy * &dy
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (to_f64(&self.x), to_f64(&self.y))
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl Serialize for Point {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [coord_to_string(&self.x), coord_to_string(&self.y)].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Point {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let [x, y] = <[String; 2]>::deserialize(d)?;
        let x = parse_coord(&x).map_err(serde::de::Error::custom)?;
        let y = parse_coord(&y).map_err(serde::de::Error::custom)?;
        Ok(Point::new(x, y))
    }
}

/// A nonzero vector. Two directions are equivalent when one is a positive
/// multiple of the other; `PartialEq` is structural, use [`Direction::same_ray`]
/// for equivalence.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Direction {
    pub dx: Coord,
    pub dy: Coord,
}

impl Direction {
    pub fn new(dx: Coord, dy: Coord) -> Result<Self, GeomError> {
        if dx.is_zero() && dy.is_zero() {
            return Err(GeomError::ZeroDirection);
        }
        Ok(Direction { dx, dy })
    }

    /// Unchecked constructor for vectors that may be zero (differences).
    pub(crate) fn raw(dx: Coord, dy: Coord) -> Self {
        Direction { dx, dy }
    }

    pub fn down() -> Self {
        Direction::raw(Coord::zero(), int(-1))
    }

    pub fn is_zero(&self) -> bool {
        self.dx.is_zero() && self.dy.is_zero()
    }

    pub fn cross(&self, other: &Direction) -> Coord {
        &self.dx * &other.dy - &self.dy * &other.dx
    }

    pub fn dot(&self, other: &Direction) -> Coord {
        &self.dx * &other.dx + &self.dy * &other.dy
    }

    pub fn norm2(&self) -> Coord {
        self.dot(self)
    }

    pub fn neg(&self) -> Direction {
        Direction::raw(-&self.dx, -&self.dy)
    }

    pub fn scale(&self, t: &Coord) -> Direction {
        Direction::raw(&self.dx * t, &self.dy * t)
    }

    pub fn add(&self, other: &Direction) -> Direction {
        Direction::raw(&self.dx + &other.dx, &self.dy + &other.dy)
    }

    /// Counterclockwise quarter turn.
    pub fn perp(&self) -> Direction {
        Direction::raw(-&self.dy, self.dx.clone())
    }

    pub fn same_ray(&self, other: &Direction) -> bool {
        self.cross(other).is_zero() && self.dot(other).is_positive()
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (to_f64(&self.dx), to_f64(&self.dy))
    }
}

impl fmt::Debug for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}, {}>", self.dx, self.dy)
    }
}

impl Serialize for Direction {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [coord_to_string(&self.dx), coord_to_string(&self.dy)].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Direction {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let [x, y] = <[String; 2]>::deserialize(d)?;
        let x = parse_coord(&x).map_err(serde::de::Error::custom)?;
        let y = parse_coord(&y).map_err(serde::de::Error::custom)?;
        Direction::new(x, y).map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Orientation {
    Ccw,
    Cw,
    Collinear,
}

impl Orientation {
    pub fn from_sign(c: &Coord) -> Self {
        match c.cmp(&Coord::zero()) {
            Ordering::Greater => Orientation::Ccw,
            Ordering::Less => Orientation::Cw,
            Ordering::Equal => Orientation::Collinear,
        }
    }

    pub fn reversed(self) -> Self {
        match self {
            Orientation::Ccw => Orientation::Cw,
            Orientation::Cw => Orientation::Ccw,
            Orientation::Collinear => Orientation::Collinear,
        }
    }
}

/// Sign of the determinant of `(q - p, r - p)`.
pub fn orientation(p: &Point, q: &Point, r: &Point) -> Orientation {
    let det = (&q.x - &p.x) * (&r.y - &p.y) - (&q.y - &p.y) * (&r.x - &p.x);
    Orientation::from_sign(&det)
}

/// A point in homogeneous integer form `(x/w, y/w)` with `w > 0`.
///
/// Orientation tests on this form need no gcd reductions, which is what makes
/// the exhaustive hole enumeration affordable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomPoint {
    pub x: BigInt,
    pub y: BigInt,
    pub w: BigInt,
}

impl From<&Point> for HomPoint {
    fn from(p: &Point) -> Self {
        let w = p.x.denom().lcm(p.y.denom());
        let x = p.x.numer() * (&w / p.x.denom());
        let y = p.y.numer() * (&w / p.y.denom());
        HomPoint { x, y, w }
    }
}

pub fn orient_hom(a: &HomPoint, b: &HomPoint, c: &HomPoint) -> Orientation {
    let m1 = &b.y * &c.w - &c.y * &b.w;
    let m2 = &b.x * &c.w - &c.x * &b.w;
    let m3 = &b.x * &c.y - &c.x * &b.y;
    let det = &a.x * m1 - &a.y * m2 + &a.w * m3;
    match det.sign() {
        num_bigint::Sign::Plus => Orientation::Ccw,
        num_bigint::Sign::Minus => Orientation::Cw,
        num_bigint::Sign::NoSign => Orientation::Collinear,
    }
}

/// True iff all points are distinct and no three are collinear.
pub fn is_general_position(points: &[Point]) -> bool {
    general_position_witness(points).is_none()
}

/// Returns a violating triple (or a duplicated point, reported as a triple
/// with a repeated entry) if the set is not in general position.
pub fn general_position_witness(points: &[Point]) -> Option<(usize, usize, usize)> {
    let n = points.len();
    let hom: Vec<HomPoint> = points.iter().map(HomPoint::from).collect();
    for i in 0..n {
        for j in i + 1..n {
            if points[i] == points[j] {
                return Some((i, j, j));
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if orient_hom(&hom[i], &hom[j], &hom[k]) == Orientation::Collinear {
                    return Some((i, j, k));
                }
            }
        }
    }
    None
}

pub fn check_general_position(points: &[Point]) -> Result<(), GeomError> {
    match general_position_witness(points) {
        None => Ok(()),
        Some((i, j, k)) if j == k => Err(GeomError::DuplicatePoint(points[i].clone())),
        Some((i, j, k)) => Err(GeomError::GeneralPositionViolation(
            points[i].clone(),
            points[j].clone(),
            points[k].clone(),
        )),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Boundary {
    Open,
    Closed,
}

/// Convex cone swept counterclockwise from `from` to `to` around `apex`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cone {
    pub apex: Point,
    pub from: Direction,
    pub to: Direction,
}

impl Cone {
    pub fn new(apex: Point, from: Direction, to: Direction) -> Result<Self, GeomError> {
        if from.is_zero() || to.is_zero() {
            return Err(GeomError::ZeroDirection);
        }
        if !from.cross(&to).is_positive() {
            return Err(GeomError::DegenerateCone);
        }
        Ok(Cone { apex, from, to })
    }

    pub fn contains(&self, p: &Point, boundary: Boundary) -> bool {
        point_in_cone(self, p, boundary)
    }
}

/// Membership of `p` in the cone. The cone aperture is below pi, so two
/// half-plane tests decide it.
pub fn point_in_cone(c: &Cone, p: &Point, boundary: Boundary) -> bool {
    let d = p.sub(&c.apex);
    let a = c.from.cross(&d);
    let b = d.cross(&c.to);
    match boundary {
        Boundary::Closed => !a.is_negative() && !b.is_negative(),
        Boundary::Open => a.is_positive() && b.is_positive(),
    }
}

/// True iff `p` lies strictly inside the convex angular domain at `apex`
/// spanned by the rays toward `a` and `b`.
pub fn point_in_angular_domain(
    apex: &Point,
    a: &Point,
    b: &Point,
    p: &Point,
) -> Result<bool, GeomError> {
    let (a, b) = match orientation(apex, a, b) {
        Orientation::Collinear => return Err(GeomError::DegenerateAngle),
        Orientation::Ccw => (a, b),
        Orientation::Cw => (b, a),
    };
    Ok(orientation(apex, a, p) == Orientation::Ccw && orientation(apex, p, b) == Orientation::Ccw)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosedDisk {
    pub center: Point,
    /// Squared radius, so that radii such as `|pq|/2` stay rational.
    #[serde(with = "coord_serde")]
    pub radius_squared: Coord,
}

impl ClosedDisk {
    pub fn new(center: Point, radius_squared: Coord) -> Self {
        debug_assert!(radius_squared.is_positive());
        ClosedDisk {
            center,
            radius_squared,
        }
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.center.dist2(p) <= self.radius_squared
    }

    /// Exact test that two closed disks share no point:
    /// `r1 + r2 < |c1 c2|`.
    pub fn disjoint(&self, other: &ClosedDisk) -> bool {
        let d2 = self.center.dist2(&other.center);
        let rhs = &d2 - &self.radius_squared - &other.radius_squared;
        if !rhs.is_positive() {
            return false;
        }
        // 2 r1 r2 < rhs  <=>  4 r1^2 r2^2 < rhs^2
        int(4) * &self.radius_squared * &other.radius_squared < &rhs * &rhs
    }
}

/// Serde adapter for a bare coordinate as a `num/den` string.
pub mod coord_serde {
    use super::{coord_to_string, parse_coord, Coord};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(c: &Coord, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&coord_to_string(c))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Coord, D::Error> {
        let s = String::deserialize(d)?;
        parse_coord(&s).map_err(serde::de::Error::custom)
    }
}

/// Squared distance from `p` to the line through `a` and `b`.
pub fn dist2_point_line(p: &Point, a: &Point, b: &Point) -> Coord {
    let ab = b.sub(a);
    let ap = p.sub(a);
    let c = ab.cross(&ap);
    &c * &c / ab.norm2()
}

/// Intersection of the lines `a + s u` and `b + t v`, if not parallel.
pub fn line_intersection(a: &Point, u: &Direction, b: &Point, v: &Direction) -> Option<Point> {
    let den = u.cross(v);
    if den.is_zero() {
        return None;
    }
    let s = b.sub(a).cross(v) / den;
    Some(a.offset(u, &s))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: i64, y: i64) -> Point {
        Point::from_ints(x, y)
    }

    #[test]
    fn orientation_basic() {
        assert_eq!(orientation(&p(0, 0), &p(1, 0), &p(0, 1)), Orientation::Ccw);
        assert_eq!(orientation(&p(0, 0), &p(1, 1), &p(2, 2)), Orientation::Collinear);
        assert_eq!(orientation(&p(0, 0), &p(0, 1), &p(1, 0)), Orientation::Cw);
    }

    #[test]
    fn homogeneous_orientation_matches() {
        let a = Point::from_rats((1, 3), (2, 7));
        let b = Point::from_rats((-5, 2), (1, 9));
        let c = Point::from_rats((4, 5), (-3, 11));
        let h: Vec<HomPoint> = [&a, &b, &c].iter().map(|q| HomPoint::from(*q)).collect();
        assert_eq!(orient_hom(&h[0], &h[1], &h[2]), orientation(&a, &b, &c));
    }

    #[test]
    fn general_position_examples() {
        assert!(is_general_position(&[p(0, 0), p(1, 0), p(0, 1)]));
        assert!(!is_general_position(&[p(0, 0), p(1, 1), p(2, 2)]));
        let s = vec![
            p(0, 0),
            p(1, 0),
            p(0, 1),
            p(1, 1),
            Point::from_rats((1, 2), (1, 2)),
        ];
        assert!(!is_general_position(&s));
        assert!(!is_general_position(&[p(0, 0), p(0, 0), p(1, 3)]));
    }

    #[test]
    fn cone_membership() {
        let c = Cone::new(p(0, 0), Direction::down(), Direction::new(int(1), int(-1)).unwrap())
            .unwrap();
        assert!(c.contains(&p(1, -2), Boundary::Open));
        assert!(c.contains(&p(0, -3), Boundary::Closed));
        assert!(!c.contains(&p(0, -3), Boundary::Open));
        assert!(c.contains(&p(2, -2), Boundary::Closed));
        assert!(!c.contains(&p(2, -2), Boundary::Open));
        // opposite of an interior direction
        assert!(!c.contains(&p(-1, 2), Boundary::Closed));
        assert_eq!(
            Cone::new(p(0, 0), Direction::down(), Direction::down().neg()),
            Err(GeomError::DegenerateCone)
        );
    }

    #[test]
    fn angular_domain() {
        let o = p(0, 0);
        assert!(point_in_angular_domain(&o, &p(1, 0), &p(0, 1), &p(1, 1)).unwrap());
        assert!(!point_in_angular_domain(&o, &p(1, 0), &p(0, 1), &p(-1, 0)).unwrap());
        let q = Point::new(int(1), rat(1, 1000));
        assert!(point_in_angular_domain(&o, &p(1, 0), &p(0, 1), &q).unwrap());
        assert!(point_in_angular_domain(&o, &p(0, 1), &p(1, 0), &q).unwrap());
        assert_eq!(
            point_in_angular_domain(&o, &p(1, 0), &p(-1, 0), &q),
            Err(GeomError::DegenerateAngle)
        );
    }

    #[test]
    fn disk_disjointness() {
        let a = ClosedDisk::new(p(0, 0), int(1));
        let b = ClosedDisk::new(p(3, 0), int(1));
        let c = ClosedDisk::new(p(2, 0), int(1));
        assert!(a.disjoint(&b));
        assert!(!a.disjoint(&c)); // tangent disks touch
        let d = ClosedDisk::new(p(2, 0), rat(1, 4));
        assert!(a.disjoint(&d));
    }

    #[test]
    fn parse_and_print() {
        assert_eq!(parse_coord("3/6").unwrap(), rat(1, 2));
        assert_eq!(parse_coord("-0.125").unwrap(), rat(-1, 8));
        assert_eq!(parse_coord("-.5").unwrap(), rat(-1, 2));
        assert_eq!(parse_coord("7").unwrap(), int(7));
        assert!(parse_coord("1/0").is_err());
        assert!(parse_coord("abc").is_err());
        assert_eq!(coord_to_string(&rat(-2, 4)), "-1/2");
        let q = Point::from_rats((1, 3), (-4, 1));
        let s = serde_json::to_string(&q).unwrap();
        assert_eq!(s, r#"["1/3","-4/1"]"#);
        assert_eq!(serde_json::from_str::<Point>(&s).unwrap(), q);
    }

    #[test]
    fn distances() {
        assert_eq!(dist2_point_line(&p(0, 2), &p(-1, 0), &p(1, 0)), int(4));
        let x = line_intersection(
            &p(0, 0),
            &Direction::new(int(1), int(1)).unwrap(),
            &p(2, 0),
            &Direction::new(int(0), int(1)).unwrap(),
        )
        .unwrap();
        assert_eq!(x, p(2, 2));
    }
}
