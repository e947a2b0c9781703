//! Directed polymers with many non-intersecting paths, the stochastic
//! interfaces they induce, and the deterministic limit shapes that govern
//! both.

pub mod environment;
pub mod interface;
pub mod error;
pub mod lattice;
pub mod limit_shapes;
pub mod special;

pub use error::{Error, Result};
pub mod numeric;
pub mod polymer;
pub mod stats;
pub mod szego;
pub mod validation;
