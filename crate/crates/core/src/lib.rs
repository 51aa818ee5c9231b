//! Summation-by-parts discrete transforms.
//!
//! This crate rewrites the linear-transform sum `X[k] = Σ x[n]·ker[n,k]` via
//! summation by parts, so the transform operates on the accumulated (prefix
//! summed) input against the forward-differenced kernel. For null-mean input
//! the differenced system shrinks to (N−1)×(N−1), and for the 8-point DCT the
//! resulting 7×7 matrix admits a sparse factorization that reaches the
//! theoretical minimum of 11 multiplications for the exact spectrum (5 for a
//! scaled spectrum).
//!
//! Modules:
//!
//! * [`numerics`]: trig constants, small dense matrices, and the counting
//!   scalar used for empirical operation tallies.
//! * [`reference`]: ground-truth transforms evaluated straight from the
//!   defining sums (the oracles everything else is checked against).
//! * [`sbp`]: accumulation, DC removal, the difference system, the generic
//!   summation-by-parts transform, and the general-N SBP DCT.
//! * [`fast8`]: the factored 8-point scaled DCT and its scenario pipelines.
//! * [`rivals`]: Loeffler and Arai baselines plus the naive matrix product.
//! * [`metrics`]: measured/cited operation-count comparison table.
//! * [`image2d`]: separable 8×8 block transform, quantization absorption,
//!   and an image round-trip pipeline.
//!
//! The crate is `no_std` (alloc required); all transcendentals go through
//! `libm` so results are identical in hosted and freestanding builds.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod error;
pub mod fast8;
pub mod image2d;
pub mod metrics;
pub mod numerics;
pub mod reference;
pub mod rivals;
pub mod sbp;

pub use error::{Error, Result};
