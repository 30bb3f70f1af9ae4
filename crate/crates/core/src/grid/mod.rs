//! Maker's one-round construction: the cube `[t]^d` sent to the plane by
//! three copies of a flat projection, turned by roughly a third of a turn
//! each and bent by a small parabolic shear, so that the images of sibling
//! lines become long thin `t`-holes.
//!
//! Coordinates of the cube are split into three blocks of `d/3`. Block `j`
//! is projected by `pi_map`, bent by [`tau`] and mapped by the `j`-th power of
//! `omega_approx`. Two lattice points are siblings in block `j` when they
//! differ only in that block.

mod extract;
mod verify;

pub use extract::{extract_k_hole, AccountingReport, ChosenLine, Extraction};
pub use verify::{verify_grid, verify_no_colorful_triple, GridReport};

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::geom::surd::sign_of_sum;
use crate::geom::{coord_to_string, int, orient_hom, parse_coord, rat, Coord, Direction, HomPoint, Orientation, Point};

pub type Mat2 = [[Coord; 2]; 2];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GridError {
    #[error("invalid grid config: {0}")]
    InvalidConfig(String),
    #[error("projection is not generic: {0}")]
    GenericityFailure(String),
    #[error("bending condition fails: {0}")]
    Condition(String),
    #[error("{0}")]
    Precondition(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridConfig {
    /// Side of the cube, odd.
    pub t: usize,
    /// Dimension of the cube, a multiple of 3.
    pub d: usize,
    pub seed: u64,
    /// Images of the basis vectors of one block, each within a small angle
    /// of `(1, 0)`.
    pub pi_map: Vec<Direction>,
    /// Bending; chosen by the build when absent.
    #[serde(default, with = "opt_coord")]
    pub gamma: Option<Coord>,
    /// Rational stand-in for the rotation by `2 pi / 3`.
    #[serde(with = "mat_serde")]
    pub omega_approx: Mat2,
}

mod opt_coord {
    use super::*;

    pub fn serialize<S: Serializer>(c: &Option<Coord>, s: S) -> Result<S::Ok, S::Error> {
        c.as_ref().map(coord_to_string).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Coord>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|s| parse_coord(&s).map_err(serde::de::Error::custom))
            .transpose()
    }
}

mod mat_serde {
    use super::*;

    pub fn serialize<S: Serializer>(m: &Mat2, s: S) -> Result<S::Ok, S::Error> {
        let rows: [[String; 2]; 2] = [
            [coord_to_string(&m[0][0]), coord_to_string(&m[0][1])],
            [coord_to_string(&m[1][0]), coord_to_string(&m[1][1])],
        ];
        rows.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Mat2, D::Error> {
        let rows = <[[String; 2]; 2]>::deserialize(d)?;
        let p = |s: &String| parse_coord(s).map_err(serde::de::Error::custom);
        Ok([[p(&rows[0][0])?, p(&rows[0][1])?], [p(&rows[1][0])?, p(&rows[1][1])?]])
    }
}

fn identity() -> Mat2 {
    [[int(1), int(0)], [int(0), int(1)]]
}

fn mat_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let e = |i: usize, j: usize| &a[i][0] * &b[0][j] + &a[i][1] * &b[1][j];
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

fn apply(m: &Mat2, v: &Direction) -> Direction {
    Direction {
        dx: &m[0][0] * &v.dx + &m[0][1] * &v.dy,
        dy: &m[1][0] * &v.dx + &m[1][1] * &v.dy,
    }
}

/// The parabolic shear `(x, y) -> (x, y + gamma x^2)`.
pub fn tau(p: &Point, gamma: &Coord) -> Point {
    Point::new(p.x.clone(), &p.y + gamma * &p.x * &p.x)
}

/// Exact test that `m` moves every vector by less than `pi/200` in angle
/// compared with the rotation by `2 pi / 3`. Uses `|m - R|_F < sin(pi/200)`.
pub fn omega_within_tolerance(m: &Mat2) -> bool {
    let half = rat(1, 2);
    let (a, b, c, d) = (&m[0][0], &m[0][1], &m[1][0], &m[1][1]);
    // |m - R|_F^2 = p + q sqrt(3)
    let p = (a + &half) * (a + &half) + (d + &half) * (d + &half) + b * b + c * c + rat(3, 2);
    let q = b - c;
    // sin x >= x - x^3/6 and pi > 333/106
    let x = rat(333, 106 * 200);
    let s = &x - &x * &x * &x / int(6);
    sign_of_sum(&[(p - &s * &s, int(1)), (q, int(3))]) == std::cmp::Ordering::Less
}

/// Angle of `v` with `(1, 0)` is at most `atan(1/7)`, below `pi/20`.
fn flat_enough(v: &Direction) -> bool {
    v.dx.is_positive() && v.dy.abs() * int(7) <= v.dx
}

impl GridConfig {
    /// Seeded random projection and rotation; gamma is left to the build.
    pub fn sample(t: usize, d: usize, seed: u64) -> Result<Self, GridError> {
        check_shape(t, d)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pi_map = (0..d / 3)
            .map(|_| Direction {
                dx: rat(101 + rng.gen_range(0..=100), 101),
                dy: rat(rng.gen_range(-101..=101), 707),
            })
            .collect();
        // entries of the exact rotation rounded to a prime denominator, then
        // nudged so that no small integer relation survives
        let q = 997i64;
        let s = 863i64; // round(q sqrt(3) / 2)
        let mut nudge = || {
            let e = rng.gen_range(2..=4);
            if rng.gen_bool(0.5) {
                e
            } else {
                -e
            }
        };
        let h = (q - 1) / 2;
        let omega_approx = [
            [rat(-h + nudge(), q), rat(-s + nudge(), q)],
            [rat(s + nudge(), q), rat(-h + nudge(), q)],
        ];
        let cfg = GridConfig {
            t,
            d,
            seed,
            pi_map,
            gamma: None,
            omega_approx,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn d0(&self) -> usize {
        self.d / 3
    }

    pub fn k(&self) -> usize {
        self.t.div_ceil(2)
    }

    pub fn validate(&self) -> Result<(), GridError> {
        check_shape(self.t, self.d)?;
        if self.pi_map.len() != self.d0() {
            return Err(GridError::InvalidConfig(format!(
                "pi_map has {} rows, expected {}",
                self.pi_map.len(),
                self.d0()
            )));
        }
        if let Some(i) = self.pi_map.iter().position(|v| !flat_enough(v)) {
            return Err(GridError::InvalidConfig(format!("pi_map row {i} is not close to (1, 0)")));
        }
        if !omega_within_tolerance(&self.omega_approx) {
            return Err(GridError::InvalidConfig("omega_approx is not within pi/200 of the rotation".into()));
        }
        if let Some(g) = &self.gamma {
            if !g.is_positive() {
                return Err(GridError::InvalidConfig("gamma must be positive".into()));
            }
        }
        Ok(())
    }
}

fn check_shape(t: usize, d: usize) -> Result<(), GridError> {
    if t < 3 || t.is_multiple_of(2) {
        return Err(GridError::InvalidConfig(format!("t = {t} must be odd and at least 3")));
    }
    if d == 0 || !d.is_multiple_of(3) {
        return Err(GridError::InvalidConfig(format!("d = {d} must be a positive multiple of 3")));
    }
    Ok(())
}

/// A line of `[t]^d` holding `t` lattice points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridLine {
    /// Lattice indices in order along the line.
    pub members: Vec<usize>,
    /// The block of the moving coordinates, when they all share one.
    pub block: Option<usize>,
    /// No coordinate decreases along the line.
    pub combinatorial: bool,
    coeffs: LineCoeffs,
}

/// `a x + b y + c w = 0` for homogeneous points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct LineCoeffs {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
}

impl LineCoeffs {
    fn through(p: &HomPoint, q: &HomPoint) -> Self {
        let a = &p.y * &q.w - &p.w * &q.y;
        let b = &p.w * &q.x - &p.x * &q.w;
        let c = &p.x * &q.y - &p.y * &q.x;
        let g = a.gcd(&b).gcd(&c);
        LineCoeffs {
            a: a / &g,
            b: b / &g,
            c: c / &g,
        }
    }

    pub fn eval(&self, p: &HomPoint) -> BigInt {
        &self.a * &p.x + &self.b * &p.y + &self.c * &p.w
    }

    pub fn norm2(&self) -> BigInt {
        &self.a * &self.a + &self.b * &self.b
    }

    pub fn cross(&self, other: &LineCoeffs) -> BigInt {
        &self.a * &other.b - &self.b * &other.a
    }

    /// Squared distance of a homogeneous point.
    pub fn dist2(&self, p: &HomPoint) -> Coord {
        let e = self.eval(p);
        Coord::new(&e * &e, self.norm2() * &p.w * &p.w)
    }

    pub fn dist2_point(&self, p: &Point) -> Coord {
        self.dist2(&HomPoint::from(p))
    }

    fn meet(&self, other: &LineCoeffs) -> Option<HomPoint> {
        let w = self.cross(other);
        if w.is_zero() {
            return None;
        }
        let x = &self.b * &other.c - &other.b * &self.c;
        let y = &self.c * &other.a - &other.c * &self.a;
        Some(normalize_hom(x, y, w))
    }
}

fn normalize_hom(x: BigInt, y: BigInt, w: BigInt) -> HomPoint {
    let g = x.gcd(&y).gcd(&w);
    let s = if w.is_negative() { -g } else { g };
    HomPoint {
        x: x / &s,
        y: y / &s,
        w: w / &s,
    }
}

fn hom_key(p: &HomPoint) -> (BigInt, BigInt, BigInt) {
    (p.x.clone(), p.y.clone(), p.w.clone())
}

/// The built point set with the rational quantities the construction uses.
#[derive(Clone, Debug)]
pub struct GridPointSet {
    pub config: GridConfig,
    /// Lattice points of `[t]^d`, coordinates in `1..=t`, in lexicographic
    /// order.
    pub lattice: Vec<Vec<u8>>,
    /// Unbent images.
    pub flat: Vec<Point>,
    /// Bent images; what Maker places.
    pub points: Vec<Point>,
    /// Every line of `[t]^d` with `t` lattice points.
    pub lines: Vec<GridLine>,
    /// Per block, indices into `lines` of the combinatorial sibling lines.
    pub sibling_lines: [Vec<usize>; 3],
    /// Squared minimum distance from a crossing of two lines to a third line
    /// missing it.
    pub alpha2: Coord,
    /// Squared half-width of the strips around the lines.
    pub beta2: Coord,
}

impl GridPointSet {
    pub fn gamma(&self) -> &Coord {
        self.config.gamma.as_ref().expect("built sets carry gamma")
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Representative of the block-`j` sibling class of a lattice point: the
    /// index of the point with that block reset to all ones.
    pub fn sibling_class(&self, point: usize, block: usize) -> usize {
        let d0 = self.config.d0();
        let mut z = self.lattice[point].clone();
        for c in &mut z[block * d0..(block + 1) * d0] {
            *c = 1;
        }
        lattice_index(&z, self.config.t)
    }

    /// Number of strips `dist(p, line) < beta` containing `p`.
    pub fn strip_count(&self, p: &Point) -> usize {
        let h = HomPoint::from(p);
        self.lines.iter().filter(|l| l.coeffs.dist2(&h) < self.beta2).count()
    }

    /// The flat point whose disk of radius `alpha/3` holds `p`, if any.
    pub fn disk_of(&self, p: &Point) -> Option<usize> {
        let r2 = &self.alpha2 / int(9);
        self.flat.iter().position(|s| s.dist2(p) < r2)
    }

    pub(crate) fn coeffs(&self, line: usize) -> &LineCoeffs {
        &self.lines[line].coeffs
    }

    /// Bent images of a line's members, in order.
    pub fn line_points(&self, line: usize) -> Vec<Point> {
        self.lines[line].members.iter().map(|&i| self.points[i].clone()).collect()
    }
}

fn lattice_index(z: &[u8], t: usize) -> usize {
    z.iter().fold(0, |acc, &c| acc * t + (c as usize - 1))
}

fn enumerate_lattice(t: usize, d: usize) -> Vec<Vec<u8>> {
    let n = t.pow(d as u32);
    (0..n)
        .map(|mut i| {
            let mut z = vec![0u8; d];
            for c in z.iter_mut().rev() {
                *c = (i % t) as u8 + 1;
                i /= t;
            }
            z
        })
        .collect()
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Slot {
    Fixed(u8),
    Up,
    Down,
}

fn enumerate_lines(t: usize, d: usize, d0: usize) -> Vec<(Vec<usize>, Option<usize>, bool)> {
    let options = t + 2;
    let total = options.pow(d as u32);
    let mut out = Vec::new();
    for mut code in 0..total {
        let mut slots = vec![Slot::Fixed(1); d];
        for s in slots.iter_mut().rev() {
            let c = code % options;
            code /= options;
            *s = match c {
                c if c < t => Slot::Fixed(c as u8 + 1),
                c if c == t => Slot::Up,
                _ => Slot::Down,
            };
        }
        // each line once: the first moving coordinate goes up
        match slots.iter().find(|s| !matches!(s, Slot::Fixed(_))) {
            Some(Slot::Up) => {}
            _ => continue,
        }
        let members = (1..=t as u8)
            .map(|l| {
                let z: Vec<u8> = slots
                    .iter()
                    .map(|s| match s {
                        Slot::Fixed(c) => *c,
                        Slot::Up => l,
                        Slot::Down => t as u8 + 1 - l,
                    })
                    .collect();
                lattice_index(&z, t)
            })
            .collect();
        let blocks: HashSet<usize> = slots
            .iter()
            .enumerate()
            .filter(|(_, s)| !matches!(s, Slot::Fixed(_)))
            .map(|(i, _)| i / d0)
            .collect();
        let block = (blocks.len() == 1).then(|| *blocks.iter().next().unwrap());
        let combinatorial = !slots.contains(&Slot::Down);
        out.push((members, block, combinatorial));
    }
    out
}

/// Crossings of the flat lines and the quantities derived from them.
pub(crate) struct Crossings {
    pub count: usize,
    pub alpha2: Coord,
    /// Most lines through one crossing that is not a flat point.
    pub max_offgrid_incidence: usize,
    /// Smallest squared sine of the angle between two nonparallel lines.
    pub min_sin2: Coord,
    /// Smallest squared gap between two parallel lines.
    pub min_parallel_gap2: Option<Coord>,
}

pub(crate) fn crossings(lines: &[LineCoeffs], flat: &[HomPoint]) -> Crossings {
    let on_grid: HashSet<_> = flat.iter().map(hom_key).collect();
    let mut xs: HashMap<(BigInt, BigInt, BigInt), HomPoint> = HashMap::new();
    let mut min_sin2: Option<Coord> = None;
    let mut min_gap2: Option<Coord> = None;
    for (i, l1) in lines.iter().enumerate() {
        for l2 in &lines[i + 1..] {
            match l1.meet(l2) {
                Some(x) => {
                    let c = l1.cross(l2);
                    let s2 = Coord::new(&c * &c, l1.norm2() * l2.norm2());
                    if min_sin2.as_ref().is_none_or(|m| &s2 < m) {
                        min_sin2 = Some(s2);
                    }
                    xs.entry(hom_key(&x)).or_insert(x);
                }
                None => {
                    // any point of l1: its foot from the origin direction
                    let p = point_on(l1);
                    let g = l2.dist2(&p);
                    if min_gap2.as_ref().is_none_or(|m| &g < m) {
                        min_gap2 = Some(g);
                    }
                }
            }
        }
    }
    let mut alpha2: Option<Coord> = None;
    let mut max_offgrid = 0;
    for (key, x) in &xs {
        let mut incident = 0;
        for l in lines {
            let e = l.eval(x);
            if e.is_zero() {
                incident += 1;
            } else {
                let d2 = Coord::new(&e * &e, l.norm2() * &x.w * &x.w);
                if alpha2.as_ref().is_none_or(|m| &d2 < m) {
                    alpha2 = Some(d2);
                }
            }
        }
        if !on_grid.contains(key) {
            max_offgrid = max_offgrid.max(incident);
        }
    }
    Crossings {
        count: xs.len(),
        alpha2: alpha2.unwrap_or_else(Coord::one),
        max_offgrid_incidence: max_offgrid,
        min_sin2: min_sin2.unwrap_or_else(Coord::one),
        min_parallel_gap2: min_gap2,
    }
}

/// A point on the line, as a homogeneous point.
fn point_on(l: &LineCoeffs) -> HomPoint {
    // the foot of the perpendicular from the origin: -c (a, b) / (a^2 + b^2)
    normalize_hom(-&l.c * &l.a, -&l.c * &l.b, l.norm2())
}

/// Flat image `phi(z)`.
fn flat_image(z: &[u8], pi: &[Direction], powers: &[Mat2; 3]) -> Point {
    let d0 = pi.len();
    let mut acc = Direction {
        dx: Coord::zero(),
        dy: Coord::zero(),
    };
    for (j, power) in powers.iter().enumerate() {
        acc = acc.add(&apply(power, &block_projection(&z[j * d0..(j + 1) * d0], pi)));
    }
    Point::new(acc.dx, acc.dy)
}

fn block_projection(block: &[u8], pi: &[Direction]) -> Direction {
    let mut v = Direction {
        dx: Coord::zero(),
        dy: Coord::zero(),
    };
    for (c, e) in block.iter().zip(pi) {
        v = v.add(&e.scale(&int(*c as i64)));
    }
    v
}

/// Displacement per unit of gamma: `phi^tau(z) = phi(z) + gamma * bend(z)`.
fn bend(z: &[u8], pi: &[Direction], powers: &[Mat2; 3]) -> Direction {
    let d0 = pi.len();
    let mut acc = Direction {
        dx: Coord::zero(),
        dy: Coord::zero(),
    };
    for (j, power) in powers.iter().enumerate() {
        let x = block_projection(&z[j * d0..(j + 1) * d0], pi).dx;
        let up = Direction {
            dx: Coord::zero(),
            dy: &x * &x,
        };
        acc = acc.add(&apply(power, &up));
    }
    acc
}

/// Every collinear triple of flat points comes from a collinear lattice
/// triple, and no two lattice points share an image.
fn check_flat_generic(lattice: &[Vec<u8>], flat: &[HomPoint]) -> Result<(), GridError> {
    let n = flat.len();
    let mut seen = HashSet::new();
    for p in flat {
        if !seen.insert(hom_key(p)) {
            return Err(GridError::GenericityFailure("two lattice points share an image".into()));
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            for l in j + 1..n {
                if orient_hom(&flat[i], &flat[j], &flat[l]) == Orientation::Collinear
                    && !lattice_collinear(&lattice[i], &lattice[j], &lattice[l])
                {
                    return Err(GridError::GenericityFailure(format!(
                        "images of {:?}, {:?}, {:?} are collinear",
                        lattice[i], lattice[j], lattice[l]
                    )));
                }
            }
        }
    }
    Ok(())
}

fn lattice_collinear(a: &[u8], b: &[u8], c: &[u8]) -> bool {
    let u: Vec<i64> = a.iter().zip(b).map(|(x, y)| *y as i64 - *x as i64).collect();
    let v: Vec<i64> = a.iter().zip(c).map(|(x, y)| *y as i64 - *x as i64).collect();
    (0..u.len()).all(|i| (i + 1..u.len()).all(|j| u[i] * v[j] == u[j] * v[i]))
}

/// Tangent of the bent sibling line at each member stays within `atan(1/7)`
/// of the line.
fn tangents_ok(
    lattice: &[Vec<u8>],
    lines: &[GridLine],
    sibling: &[Vec<usize>; 3],
    pi: &[Direction],
    powers: &[Mat2; 3],
    gamma: &Coord,
) -> bool {
    let d0 = pi.len();
    for (j, ids) in sibling.iter().enumerate() {
        for &li in ids {
            let m = &lines[li].members;
            let (z0, z1) = (&lattice[m[0]], &lattice[m[1]]);
            let step: Vec<u8> = (j * d0..(j + 1) * d0).map(|i| z1[i] - z0[i]).collect();
            let dir = block_projection(&step, pi);
            let line_dir = apply(&powers[j], &dir);
            for &s in m {
                let x = block_projection(&lattice[s][j * d0..(j + 1) * d0], pi).dx;
                let tangent = Direction {
                    dx: dir.dx.clone(),
                    dy: &dir.dy + int(2) * gamma * &x * &dir.dx,
                };
                let tangent = apply(&powers[j], &tangent);
                let dot = line_dir.dot(&tangent);
                let cross = line_dir.cross(&tangent);
                if !dot.is_positive() || &cross * &cross * int(49) > &dot * &dot {
                    return false;
                }
            }
        }
    }
    true
}

/// Builds `phi^tau([t]^d)` and chooses the strip width and the bending.
pub fn build_grid_pointset(cfg: &GridConfig) -> Result<GridPointSet, GridError> {
    cfg.validate()?;
    let (t, d, d0) = (cfg.t, cfg.d, cfg.d0());
    let pi = &cfg.pi_map;
    let omega2 = mat_mul(&cfg.omega_approx, &cfg.omega_approx);
    let powers = [identity(), cfg.omega_approx.clone(), omega2];
    let lattice = enumerate_lattice(t, d);
    let flat: Vec<Point> = lattice.iter().map(|z| flat_image(z, pi, &powers)).collect();
    let flat_h: Vec<HomPoint> = flat.iter().map(HomPoint::from).collect();
    check_flat_generic(&lattice, &flat_h)?;

    let mut lines = Vec::new();
    let mut sibling_lines: [Vec<usize>; 3] = Default::default();
    for (members, block, combinatorial) in enumerate_lines(t, d, d0) {
        let coeffs = LineCoeffs::through(&flat_h[members[0]], &flat_h[members[t - 1]]);
        if let (Some(j), true) = (block, combinatorial) {
            sibling_lines[j].push(lines.len());
        }
        lines.push(GridLine {
            members,
            block,
            combinatorial,
            coeffs,
        });
    }
    let coeffs: Vec<LineCoeffs> = lines.iter().map(|l| l.coeffs.clone()).collect();
    let cross = crossings(&coeffs, &flat_h);
    if cross.max_offgrid_incidence > 2 {
        return Err(GridError::GenericityFailure(format!(
            "{} lines through a point off the grid",
            cross.max_offgrid_incidence
        )));
    }
    let alpha2 = cross.alpha2;
    let by_alpha = &alpha2 / int(9);
    let by_angle = &alpha2 * &cross.min_sin2 / int(36);
    let beta2 = by_alpha.min(by_angle) / int(4);

    let bends: Vec<Direction> = lattice.iter().map(|z| bend(z, pi, &powers)).collect();
    let gamma = match &cfg.gamma {
        Some(g) => g.clone(),
        None => {
            // gamma^2 (a w_x + b w_y)^2 / (a^2 + b^2) < beta^2 for s on the line
            let mut cap: Option<Coord> = None;
            for l in &lines {
                let c = &l.coeffs;
                for &s in &l.members {
                    let e = Coord::from_integer(c.a.clone()) * &bends[s].dx
                        + Coord::from_integer(c.b.clone()) * &bends[s].dy;
                    if e.is_zero() {
                        continue;
                    }
                    let g2 = &beta2 * Coord::from_integer(c.norm2()) / (&e * &e);
                    if cap.as_ref().is_none_or(|m| &g2 < m) {
                        cap = Some(g2);
                    }
                }
            }
            let cap = cap.unwrap_or_else(Coord::one);
            let mut g = Coord::one();
            while &g * &g >= cap {
                g /= int(2);
            }
            while !tangents_ok(&lattice, &lines, &sibling_lines, pi, &powers, &g) {
                g /= int(2);
            }
            g
        }
    };
    let points: Vec<Point> = flat
        .iter()
        .zip(&bends)
        .map(|(p, w)| p.offset(w, &gamma))
        .collect();
    let mut config = cfg.clone();
    config.gamma = Some(gamma.clone());
    let g = GridPointSet {
        config,
        lattice,
        flat,
        points,
        lines,
        sibling_lines,
        alpha2,
        beta2,
    };
    if !g.bent_points_in_strips() {
        return Err(GridError::Condition("a bent point leaves the strip of its line".into()));
    }
    if !tangents_ok(&g.lattice, &g.lines, &g.sibling_lines, pi, &powers, &gamma) {
        return Err(GridError::Condition("a tangent turns too far from its line".into()));
    }
    Ok(g)
}

impl GridPointSet {
    /// Every bent point stays within `beta` of every line through its flat
    /// point.
    pub fn bent_points_in_strips(&self) -> bool {
        self.lines.iter().all(|l| {
            l.members
                .iter()
                .all(|&s| l.coeffs.dist2_point(&self.points[s]) < self.beta2)
        })
    }
}

/// Samples configs from `seed` on until one passes the genericity checks.
pub fn build_sampled(t: usize, d: usize, seed: u64, attempts: usize) -> Result<GridPointSet, GridError> {
    let mut last = None;
    for i in 0..attempts.max(1) as u64 {
        let cfg = GridConfig::sample(t, d, seed.wrapping_add(i))?;
        match build_grid_pointset(&cfg) {
            Ok(g) => return Ok(g),
            Err(e @ GridError::GenericityFailure(_)) => last = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last.expect("at least one attempt"))
}
