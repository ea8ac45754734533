//! Online convex optimization under relative Lipschitz continuity and
//! relative strong convexity.
//!
//! The crate provides FTRL and its relatives (FTL, dual averaging,
//! regularized dual averaging), dual-stabilized online mirror descent with
//! optional composite terms, and a harness that replays loss streams,
//! accounts regret and checks the analytical bounds round by round.

pub mod algorithms;
pub mod error;
pub mod experiment;
pub mod geometry;
pub mod harness;
pub mod losses;
pub mod solvers;
pub mod vector;

pub use error::{OcoError, Result};
pub use vector::Vector;
