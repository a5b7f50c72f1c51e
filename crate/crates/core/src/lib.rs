//! S-minimal unary functions on infinite sets: exact cardinal arithmetic,
//! kernel profiles, the minimality criterion and clone classifier,
//! composition bounds, and an executable model on the natural numbers.

pub mod cli;
pub mod composition_calculus;
pub mod countable_model;
pub mod error;
pub mod kernel_sequence;
pub mod minimality;
pub mod ordinal_cardinal;

pub use error::{Error, Result};
