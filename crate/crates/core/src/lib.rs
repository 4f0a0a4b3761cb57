//! Numerical core for benchmarking how legible robot motion trajectories are.
//!
//! The crate models end-effector trajectories sampled in time, scores them
//! under a family of published legibility measures, estimates an empirical
//! human baseline from forced-choice goal guesses, and compares the two with
//! rank statistics. A small generator produces synthetic datasets with
//! configurable observer models so the whole pipeline can be exercised
//! without collecting human data.
//!
//! Everything here is pure computation over `alloc` collections; file
//! formats, configuration, and the command-line interface live in the
//! companion `legibench` crate. The crate is `no_std`.
//!
//! Determinism is a design goal throughout: every randomized routine takes
//! an explicit seed, derives per-item streams with [`seed::derive_seed`],
//! and iterates collections in a canonical order, so identical inputs yield
//! bit-identical outputs.

#![no_std]

#[macro_use]
extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod baseline;
pub mod camera;
pub mod dataset;
pub mod error;
pub mod frameworks;
pub mod seed;
pub mod stats;
pub mod synthgen;
pub mod trajectory;

pub use error::Error;
