//! Signs of short sums of square roots of rationals, and rational bounds on
//! square roots.
//!
//! A term `c * sqrt(r)` is stored as `(c, r)` with `r >= 0`. The sign of a sum
//! is decided by repeated squaring, which stays finite for up to three
//! distinct radicands after merging.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::Coord;

pub type Term = (Coord, Coord);

/// Exact square root of a nonnegative rational, if it is a perfect square.
pub fn exact_sqrt(r: &Coord) -> Option<Coord> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

/// A rational lower bound on `sqrt(r)` within `2^-bits` relative to the
/// denominator scale. Returns zero for `r <= 0`.
pub fn sqrt_lower(r: &Coord, bits: u32) -> Coord {
    if !r.is_positive() {
        return Coord::zero();
    }
    let scale = BigInt::one() << (2 * bits as usize);
    let radicand = r.numer() * r.denom() * scale;
    let root = radicand.sqrt();
    BigRational::new(root, r.denom() * (BigInt::one() << bits as usize))
}

/// A rational upper bound on `sqrt(r)`, the counterpart of [`sqrt_lower`].
pub fn sqrt_upper(r: &Coord, bits: u32) -> Coord {
    if !r.is_positive() {
        return Coord::zero();
    }
    let scale = BigInt::one() << (2 * bits as usize);
    let radicand = r.numer() * r.denom() * scale;
    let mut root = radicand.sqrt();
    if &root * &root != radicand {
        root += 1;
    }
    BigRational::new(root, r.denom() * (BigInt::one() << bits as usize))
}

/// Rational `q` with `q <= sqrt(r)` and `sqrt(r) - q <= sqrt(r) / 2^bits`
/// for any positive `r`, independent of the magnitude of `r`.
pub fn sqrt_lower_rel(r: &Coord, bits: u32) -> Coord {
    if !r.is_positive() {
        return Coord::zero();
    }
    // choose absolute precision from the size of r
    let mag = r.numer().bits() as i64 - r.denom().bits() as i64;
    let extra = if mag < 0 { (-mag) as u32 / 2 + 2 } else { 2 };
    sqrt_lower(r, bits + extra)
}

fn merge(terms: Vec<Term>) -> Vec<Term> {
    let mut out: Vec<Term> = Vec::new();
    for (c, r) in terms {
        if c.is_zero() || r.is_zero() {
            continue;
        }
        assert!(!r.is_negative(), "negative radicand in surd sum");
        let (c, r) = match exact_sqrt(&r) {
            Some(s) => (c * s, Coord::one()),
            None => (c, r),
        };
        // fold into an existing term whose radicand differs by a square factor
        let mut placed = false;
        for (oc, or) in out.iter_mut() {
            if let Some(f) = exact_sqrt(&(&r / &*or)) {
                *oc += &c * f;
                placed = true;
                break;
            }
        }
        if !placed {
            out.push((c, r));
        }
    }
    out.retain(|(c, _)| !c.is_zero());
    out
}

fn square(terms: &[Term]) -> Vec<Term> {
    let mut out = Vec::new();
    for (i, (ci, ri)) in terms.iter().enumerate() {
        out.push((ci * ci * ri, Coord::one()));
        for (cj, rj) in &terms[i + 1..] {
            out.push((Coord::from_integer(BigInt::from(2)) * ci * cj, ri * rj));
        }
    }
    out
}

fn sign_of(c: &Coord) -> Ordering {
    c.cmp(&Coord::zero())
}

/// Sign of `sum c_i * sqrt(r_i)`. Supports up to three distinct radicands
/// after merging (a rational term counts as radicand 1).
pub fn sign_of_sum(terms: &[Term]) -> Ordering {
    let terms = merge(terms.to_vec());
    match terms.len() {
        0 => Ordering::Equal,
        1 => sign_of(&terms[0].0),
        n if n <= 3 => {
            let (x, y) = terms.split_at(n - 1);
            let sx = sign_of_sum(x);
            let sy = sign_of(&y[0].0);
            if sx == Ordering::Equal {
                return sy;
            }
            if sy == Ordering::Equal || sx == sy {
                return sx;
            }
            let mut diff = square(x);
            diff.push((-(&y[0].0 * &y[0].0 * &y[0].1), Coord::one()));
            match sign_of_sum(&diff) {
                Ordering::Equal => Ordering::Equal,
                Ordering::Greater => sx,
                Ordering::Less => sy,
            }
        }
        n => panic!("sign_of_sum supports at most three radicands, got {n}"),
    }
}
