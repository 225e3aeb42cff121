//! Computational kernel for oscillatory boundary integrals on strictly convex
//! planar domains: support-function geometry, an exact Leibniz-type operator
//! calculus, stationary-phase expansions, plane-wave boundary integrals with
//! admissibility gating, and a Method-of-Particular-Solutions Helmholtz
//! eigensolver with overdetermined-condition deviation metrics.
//!
//! The crate is `no_std` (with `alloc`); all IO, file formats and the CLI live
//! in the companion `oscint` crate.

#![no_std]
#![allow(clippy::needless_range_loop)]
// frozen oracle constants keep every digit of their 30-digit sources
#![allow(clippy::excessive_precision)]
// negated comparisons like !(x > 0.0) reject NaN, which x <= 0.0 would admit
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod curve;
pub mod helmholtz;
pub mod jets;
mod linalg;
pub mod opcalc;
pub mod planewave;
pub mod quad;
pub mod specfun;
pub mod stphase;
mod vec2;

pub use curve::SupportCurve;
pub use jets::Jet1D;
pub use planewave::PlaneWaveParams;
pub use vec2::Vec2;
