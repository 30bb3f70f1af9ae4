//! Labeled point sets shared by the oracle, the strategies and the referee.

use std::fmt;

use num_bigint::{BigInt, Sign};
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::geom::{HomPoint, Point};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Owner {
    Maker,
    Breaker,
}

impl Owner {
    pub fn other(self) -> Owner {
        match self {
            Owner::Maker => Owner::Breaker,
            Owner::Breaker => Owner::Maker,
        }
    }
}

impl fmt::Display for Owner {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Owner::Maker => "maker",
            Owner::Breaker => "breaker",
        })
    }
}

/// An append-only list of points with owners. Indices are placement order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointSet {
    points: Vec<Point>,
    owners: Vec<Owner>,
}

impl PointSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_points(points: Vec<Point>, owner: Owner) -> Self {
        let owners = vec![owner; points.len()];
        PointSet { points, owners }
    }

    pub fn from_labeled(maker: &[Point], breaker: &[Point]) -> Self {
        let mut s = PointSet::from_points(maker.to_vec(), Owner::Maker);
        for b in breaker {
            s.push(b.clone(), Owner::Breaker);
        }
        s
    }

    pub fn push(&mut self, p: Point, owner: Owner) -> usize {
        self.points.push(p);
        self.owners.push(owner);
        self.points.len() - 1
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn owners(&self) -> &[Owner] {
        &self.owners
    }

    pub fn point(&self, i: usize) -> &Point {
        &self.points[i]
    }

    pub fn owner(&self, i: usize) -> Owner {
        self.owners[i]
    }

    pub fn index_of(&self, p: &Point) -> Option<usize> {
        self.points.iter().position(|q| q == p)
    }

    pub fn owned_by(&self, owner: Owner) -> Vec<Point> {
        self.iter()
            .filter(|(_, o)| *o == owner)
            .map(|(p, _)| p.clone())
            .collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Point, Owner)> {
        self.points.iter().zip(self.owners.iter().copied())
    }

    /// The first `n` placements.
    pub fn prefix(&self, n: usize) -> PointSet {
        PointSet {
            points: self.points[..n].to_vec(),
            owners: self.owners[..n].to_vec(),
        }
    }
}

/// Why a point cannot be added in general position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Obstruction {
    Duplicate(usize),
    Collinear(usize, usize),
}

/// Direction from `p` to `q` scaled to integers, flipped into the upper
/// half-plane so that collinear directions coincide up to a positive factor.
fn half_plane_direction(p: &HomPoint, q: &HomPoint) -> (BigInt, BigInt) {
    let dx = &q.x * &p.w - &p.x * &q.w;
    let dy = &q.y * &p.w - &p.y * &q.w;
    if dy.is_negative() || (dy.is_zero() && dx.is_negative()) {
        (-dx, -dy)
    } else {
        (dx, dy)
    }
}

fn cross(a: &(BigInt, BigInt), b: &(BigInt, BigInt)) -> BigInt {
    &a.0 * &b.1 - &a.1 * &b.0
}

/// A growing point list that answers "does `p` keep general position" by
/// sorting the directions from `p` to every placed point.
#[derive(Clone, Debug, Default)]
pub struct CollinearityIndex {
    points: Vec<Point>,
    homs: Vec<HomPoint>,
}

impl CollinearityIndex {
    pub fn new(points: &[Point]) -> Self {
        CollinearityIndex {
            points: points.to_vec(),
            homs: points.iter().map(HomPoint::from).collect(),
        }
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn obstruction(&self, p: &Point) -> Option<Obstruction> {
        let hp = HomPoint::from(p);
        let mut dirs = Vec::with_capacity(self.homs.len());
        for (i, q) in self.homs.iter().enumerate() {
            let d = half_plane_direction(&hp, q);
            if d.0.is_zero() && d.1.is_zero() {
                return Some(Obstruction::Duplicate(i));
            }
            dirs.push((d, i));
        }
        dirs.sort_by(|a, b| cross(&b.0, &a.0).sign().cmp(&Sign::NoSign));
        dirs.windows(2)
            .find(|w| cross(&w[0].0, &w[1].0).is_zero())
            .map(|w| Obstruction::Collinear(w[0].1.min(w[1].1), w[0].1.max(w[1].1)))
    }

    pub fn fits(&self, p: &Point) -> bool {
        self.obstruction(p).is_none()
    }

    pub fn insert(&mut self, p: Point) {
        self.homs.push(HomPoint::from(&p));
        self.points.push(p);
    }
}
