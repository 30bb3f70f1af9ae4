//! Brute-force k-hole enumeration and verification.
//!
//! This module only depends on the primitives in [`crate::geom`], so that it
//! can serve as an independent referee for every strategy in the crate.
//!
//! Enumeration fixes the lowest-indexed vertex of a hole as a pivot and grows
//! convex chains around it in angular order. A chain `pivot, v1, ..., vj` is
//! kept only while every fan triangle `(pivot, v_i, v_{i+1})` is empty, so the
//! search never explores a polygon that already contains a point.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::board::{Owner, PointSet};
use crate::geom::{convex_hull, orient_hom, polygon_contains_closed, HomPoint, Orientation, Point};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HoleRule {
    /// Any points of the set may serve as vertices.
    Monochromatic,
    /// Every vertex must belong to Maker.
    Bichromatic,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("candidate vertex {0} is not in the point set")]
    NotSubset(Point),
    #[error("expected {expected} distinct vertices, got {got}")]
    WrongCardinality { expected: usize, got: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HoleCertificate {
    /// Vertices in counterclockwise order.
    pub vertices: Vec<Point>,
    /// Placement indices of the vertices, parallel to `vertices`.
    pub indices: Vec<usize>,
    pub rule: HoleRule,
    /// Number of placements in the point set the certificate was issued for.
    pub snapshot_len: usize,
}

impl HoleCertificate {
    pub fn k(&self) -> usize {
        self.vertices.len()
    }

    /// Re-checks the certificate against the given set.
    pub fn verify(&self, set: &PointSet) -> bool {
        verify_hole(set, &self.vertices, self.vertices.len(), self.rule).unwrap_or(false)
    }
}

/// Exhaustive test: `hole` is in convex position and its closed hull meets
/// the set only in its own vertices.
pub fn verify_hole(
    set: &PointSet,
    hole: &[Point],
    k: usize,
    rule: HoleRule,
) -> Result<bool, OracleError> {
    let mut idx = Vec::with_capacity(hole.len());
    for p in hole {
        match set.index_of(p) {
            Some(i) => idx.push(i),
            None => return Err(OracleError::NotSubset(p.clone())),
        }
    }
    let mut distinct = idx.clone();
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.len() != k || hole.len() != k {
        return Err(OracleError::WrongCardinality {
            expected: k,
            got: distinct.len(),
        });
    }
    if k < 3 {
        return Ok(false);
    }
    if rule == HoleRule::Bichromatic && idx.iter().any(|&i| set.owner(i) != Owner::Maker) {
        return Ok(false);
    }
    let hull = convex_hull(hole);
    if hull.len() != k {
        return Ok(false);
    }
    for (i, p) in set.points().iter().enumerate() {
        if distinct.binary_search(&i).is_ok() {
            continue;
        }
        if polygon_contains_closed(&hull, p) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// First hole in enumeration order: by pivot index, then by the index of the
/// second vertex, then angularly.
pub fn find_k_hole(set: &PointSet, k: usize, rule: HoleRule) -> Option<HoleCertificate> {
    let search = HoleSearch::new(set, rule);
    let mut found = None;
    search.for_each_hole(k, None, &mut |verts| {
        found = Some(search.certificate(verts, k));
        false
    });
    found
}

/// First hole having the point at `vertex` among its vertices.
pub fn find_k_hole_through(
    set: &PointSet,
    k: usize,
    rule: HoleRule,
    vertex: usize,
) -> Option<HoleCertificate> {
    let search = HoleSearch::new(set, rule);
    let mut found = None;
    search.for_each_hole(k, Some(vertex), &mut |verts| {
        found = Some(search.certificate(verts, k));
        false
    });
    found
}

pub fn count_k_holes(set: &PointSet, k: usize, rule: HoleRule) -> u64 {
    let search = HoleSearch::new(set, rule);
    let mut n = 0u64;
    search.for_each_hole(k, None, &mut |_| {
        n += 1;
        true
    });
    n
}

/// All holes, as index lists in counterclockwise order.
pub fn all_k_holes(set: &PointSet, k: usize, rule: HoleRule) -> Vec<Vec<usize>> {
    let search = HoleSearch::new(set, rule);
    let mut out = Vec::new();
    search.for_each_hole(k, None, &mut |v| {
        out.push(v.to_vec());
        true
    });
    out
}

struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }
}

struct HoleSearch<'a> {
    set: &'a PointSet,
    hom: Vec<HomPoint>,
    eligible: Vec<bool>,
    rule: HoleRule,
}

/// Per-pivot caches: which points lie to the left of the ray pivot->c, and
/// which fan triangles are empty.
struct PivotCache {
    left: Vec<Option<Bits>>,
    empty: std::collections::HashMap<(usize, usize), bool>,
}

impl<'a> HoleSearch<'a> {
    fn new(set: &'a PointSet, rule: HoleRule) -> Self {
        let hom = set.points().iter().map(HomPoint::from).collect();
        let eligible = set
            .owners()
            .iter()
            .map(|o| rule == HoleRule::Monochromatic || *o == Owner::Maker)
            .collect();
        HoleSearch {
            set,
            hom,
            eligible,
            rule,
        }
    }

    fn certificate(&self, verts: &[usize], k: usize) -> HoleCertificate {
        debug_assert_eq!(verts.len(), k);
        HoleCertificate {
            vertices: verts.iter().map(|&i| self.set.point(i).clone()).collect(),
            indices: verts.to_vec(),
            rule: self.rule,
            snapshot_len: self.set.len(),
        }
    }

    fn orient(&self, a: usize, b: usize, c: usize) -> Orientation {
        orient_hom(&self.hom[a], &self.hom[b], &self.hom[c])
    }

    fn left_row(&self, cache: &mut PivotCache, pivot: usize, c: usize) {
        if cache.left[c].is_some() {
            return;
        }
        let n = self.hom.len();
        let mut bits = Bits::new(n);
        for x in 0..n {
            if x != pivot && x != c && self.orient(pivot, c, x) == Orientation::Ccw {
                bits.set(x);
            }
        }
        cache.left[c] = Some(bits);
    }

    /// Open emptiness of the triangle `(pivot, a, b)`, where `b` is
    /// counterclockwise from `a` around the pivot.
    fn fan_empty(&self, cache: &mut PivotCache, pivot: usize, a: usize, b: usize) -> bool {
        if let Some(&e) = cache.empty.get(&(a, b)) {
            return e;
        }
        self.left_row(cache, pivot, a);
        self.left_row(cache, pivot, b);
        let la = cache.left[a].as_ref().unwrap();
        let lb = cache.left[b].as_ref().unwrap();
        let n = self.hom.len();
        let mut empty = true;
        for w in 0..la.0.len() {
            let mut word = la.0[w] & !lb.0[w];
            while word != 0 {
                let bit = word.trailing_zeros() as usize;
                word &= word - 1;
                let x = w * 64 + bit;
                if x >= n || x == b {
                    continue;
                }
                if self.orient(a, b, x) == Orientation::Ccw {
                    empty = false;
                    break;
                }
            }
            if !empty {
                break;
            }
        }
        cache.empty.insert((a, b), empty);
        empty
    }

    /// Calls `visit` with each hole (pivot first, CCW) until it returns false.
    fn for_each_hole(
        &self,
        k: usize,
        through: Option<usize>,
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) {
        let n = self.set.len();
        if k < 3 || n < k {
            return;
        }
        let pivots: Vec<usize> = match through {
            Some(v) => {
                if !self.eligible[v] {
                    return;
                }
                vec![v]
            }
            None => (0..n).filter(|&i| self.eligible[i]).collect(),
        };
        for pivot in pivots {
            let cands: Vec<usize> = (0..n)
                .filter(|&i| {
                    self.eligible[i]
                        && i != pivot
                        && (through.is_some() || i > pivot)
                })
                .collect();
            if cands.len() < k - 1 {
                continue;
            }
            let mut cache = PivotCache {
                left: (0..n).map(|_| None).collect(),
                empty: Default::default(),
            };
            for &v1 in &cands {
                self.left_row(&mut cache, pivot, v1);
                let row = cache.left[v1].as_ref().unwrap();
                let mut others: Vec<usize> = cands.iter().copied().filter(|&c| row.get(c)).collect();
                if others.len() < k - 2 {
                    continue;
                }
                others.sort_by(|&a, &b| match self.orient(pivot, a, b) {
                    Orientation::Ccw => std::cmp::Ordering::Less,
                    Orientation::Cw => std::cmp::Ordering::Greater,
                    Orientation::Collinear => a.cmp(&b),
                });
                let mut chain = vec![pivot, v1];
                if !self.extend(&mut cache, k, &others, 0, &mut chain, visit) {
                    return;
                }
            }
        }
    }

    fn extend(
        &self,
        cache: &mut PivotCache,
        k: usize,
        others: &[usize],
        start: usize,
        chain: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if chain.len() == k {
            return visit(chain);
        }
        let need = k - chain.len();
        let pivot = chain[0];
        for pos in start..others.len() {
            if others.len() - pos < need {
                break;
            }
            let next = others[pos];
            let last = chain[chain.len() - 1];
            if chain.len() >= 3 {
                let prev = chain[chain.len() - 2];
                if self.orient(prev, last, next) != Orientation::Ccw {
                    continue;
                }
            }
            if !self.fan_empty(cache, pivot, last, next) {
                continue;
            }
            chain.push(next);
            let go_on = self.extend(cache, k, others, pos + 1, chain, visit);
            chain.pop();
            if !go_on {
                return false;
            }
        }
        true
    }
}
