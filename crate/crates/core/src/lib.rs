pub mod cli;
pub mod ehrhart;
pub mod error;
pub mod g21;
pub mod graph;
pub mod lattice;
pub mod polytope;

pub use error::{Error, Result};
