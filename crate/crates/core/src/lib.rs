//! Construction and exact certification of acute point sets.
//!
//! A set is acute when every triangle it spans has three acute angles, i.e.
//! `<y - x, z - x> > 0` for all pairwise distinct `x, y, z`. The crate
//! provides:
//!
//! - [`verifier`]: exhaustive exact (or fast float) acuteness checks,
//! - [`doubling`]: the lift from `n` points in `R^d` to `2n` points in
//!   `R^(d+2)`, with a carried certificate,
//! - [`basecases`]: shipped acute sets for `d <= 5` and the search that
//!   finds them,
//! - [`ef`]: random hypercube vertices with right-angle deletion, for
//!   comparison.

pub mod basecases;
pub mod doubling;
pub mod ef;
pub mod error;
pub mod geometry;
pub mod io;
pub mod rational;
pub mod verifier;

pub use error::{Error, Result};
pub use geometry::{apex_dot, Meta, Point, PointSet, Source};
pub use rational::Rational;
pub use verifier::{min_apex_dot, verify_acute, Mode, Verdict, VerificationReport};
