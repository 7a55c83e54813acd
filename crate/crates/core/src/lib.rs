//! Public goods games on graphs defined by best-response patterns.
//!
//! The crate covers equilibrium checking and search, the gadgets used in
//! hardness reductions together with an exhaustive checker for their
//! contracts, compilers from ONE-IN-THREE 3SAT and between pattern classes, and
//! a classifier that explains the complexity of any finite pattern as a
//! checkable chain of reductions.

pub mod error;
pub mod experiments;
pub mod game;
pub mod graph;
pub mod pattern;
pub mod reductions;
pub mod gadgets;
pub mod solve;

pub use error::{Error, Result};
pub use game::{productive_neighbors, PggInstance};
pub use graph::{Graph, Profile};
pub use pattern::{Pattern, ShapeFlags};
