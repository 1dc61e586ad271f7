//! Complexity of spherical p-spin glass energy landscapes.
//!
//! The crate computes, for the Gaussian p-spin model on the sphere:
//!
//! * the asymptotic complexity functions and the energy thresholds they
//!   define, including the ground-state energy by three independent routes
//!   ([`complexity`]);
//! * the exact finite-N mean number of critical points via the GOE one-point
//!   density and Hermite-function quadrature ([`specfun`]);
//! * GOE sampling, eigenvalue statistics and the Monte Carlo side of the same
//!   identity, plus the large-deviation rate function for edge eigenvalues
//!   ([`goe`]);
//! * sampled landscapes with exact sphere-restricted derivatives and full
//!   critical-point enumeration at desk scale ([`landscape`]);
//! * the TAP functional machinery ([`tap`]) and sharp sub-exponential
//!   asymptotics of the mean counts ([`sharp`]).
//!
//! The three routes to the same counts (quadrature, GOE Monte Carlo, direct
//! enumeration) cross-validate each other; the acceptance suite in the CLI
//! crate drives those comparisons end to end.
//!
//! The crate is `no_std` (with `alloc`); everything random is driven by
//! counter-based streams so results are reproducible regardless of how work
//! is split across threads.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod complexity;
pub mod goe;
pub mod interval;
pub mod landscape;
pub mod linalg;
pub mod logspace;
pub mod quad;
pub mod rng;
pub mod sharp;
pub mod specfun;
pub mod tap;

pub use interval::{Interval, IntervalUnion};
pub use logspace::LogScaledReal;
