//! Exact-arithmetic engine for Maker-Breaker games whose target is an empty
//! convex polygon (a k-hole) in a planar point set.
//!
//! All geometry is carried out over arbitrary-precision rationals. The crate
//! provides a brute-force hole oracle, the strip machinery used by Maker's
//! multi-round strategies, Breaker strategies with exact guarantees, the
//! one-round grid construction, and a referee that records verifiable traces.

// exact points make move errors large; they are rare and short-lived
#![allow(clippy::result_large_err, clippy::large_enum_variant)]

pub mod board;
pub mod breaker;
pub mod game;
pub mod geom;
pub mod grid;
pub mod maker;
pub mod oracle;
pub mod players;
pub mod sample;
pub mod schedule;
pub mod strips;
pub mod svg;
