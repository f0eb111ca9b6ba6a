pub mod adele_idele;
pub mod as_pairing;
pub mod cyclic_cohomology;
pub mod error;
pub mod finite_field;
pub mod function_field;
pub mod laurent_series;
pub mod lattice;
pub mod parse;
pub mod poly;
pub mod reciprocity;
pub mod verify;

pub use error::{Error, Result};
