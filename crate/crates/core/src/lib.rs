pub mod cli;
pub mod error;
pub mod experiments;
pub mod graph;
pub mod jost;
pub mod operator;
pub mod propagate;
pub mod reduction;
pub mod svg;

pub use error::{Error, Result};
