//! Exact construction and certification of cut-generating functions for the
//! one-row Gomory-Johnson group problem.
//!
//! The central operation is [`fillins::injective_2_slope_fill_in`]: given a
//! continuous piecewise-linear minimal valid function with rational data, it
//! builds a two-slope extreme function that agrees with the input on a
//! refinement grid and stays within a prescribed sup-norm distance. Every
//! property of the output is checked with exact rational arithmetic before it
//! is returned.

pub mod catalog;
pub mod error;
pub mod fillins;
pub mod groups;
pub mod io;
pub mod linalg;
pub mod minimality;
pub mod pipeline;
pub mod plot;
pub mod pwl;
pub mod rational;
pub mod scan;
pub mod slack;

pub use error::{Error, Result};
pub use groups::{ExtremalityCertificate, FiniteGroupFunction};
pub use minimality::{MinimalityVerdict, Witness};
pub use pwl::{GridPoint, PwlPeriodic};
pub use rational::Rational;
