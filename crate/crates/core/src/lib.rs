//! Power as a fluid flowing through a signed, weighted network of agents.
//!
//! A [`PowerStructure`] pairs agent sizes with a tactic matrix whose column `j`
//! is agent `j`'s allocation of its power: positive entries are constructive,
//! negative entries destructive, and the diagonal is what an agent keeps. The
//! law of motion ([`step`], [`simulate`]) moves power along those allocations,
//! and [`princerank`] values a structure for each agent as the discounted sum of
//! future utility while every tactic is held fixed.
//!
//! The [`tactics`] module searches discrete tactic spaces (positive, negative or
//! neutral per counterpart) for best responses, ideal structures, latent
//! tension and edge sustainability.
//!
//! The crate is `no_std` and only needs `alloc`.
#![no_std]
#![forbid(unsafe_code)]
// `!(x < 1.0)` is meant to catch NaN too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;
#[cfg(test)]
extern crate std;

mod error;
pub mod motion;
pub mod params;
pub mod structure;
pub mod tactics;
pub mod valuation;

pub use error::Error;
pub use motion::{simulate, step, Trajectory};
pub use params::{ModelParams, ParamViolation, ParamWarning};
pub use structure::{validate_structure, PowerStructure, ValidationReport, Violation};
pub use valuation::{
    color_for, princerank, rank_structures, utility, PrinceRank, RankReport, Rgb,
    DEFAULT_TOLERANCE, HORIZON_CAP,
};

/// Tolerance on the per-column absolute sum of a tactic matrix.
pub const NORM_TOLERANCE: f64 = 1e-9;

/// Convenience alias used across the crate.
pub type Result<T, E = Error> = core::result::Result<T, E>;
