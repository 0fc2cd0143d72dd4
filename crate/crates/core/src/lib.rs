pub mod algebra;
pub mod cli;
pub mod domain_shape;
pub mod error;
pub mod flat_metric;
pub mod numfmt;
pub mod spectral;
pub mod triangle_group;

pub use error::{Error, Result};
