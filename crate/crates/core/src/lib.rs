//! Mac Lane valuations on K(x) over a discretely valued field K, regular
//! models of the projective line, and minimal embedded resolutions of
//! horizontal divisors.

pub mod error;
pub mod cli;
pub mod embedded;
pub mod finite_field;
pub mod hash;
pub mod maclane;
pub mod models;
pub mod npath;
pub mod output;
pub mod parse;
pub mod poly;
pub mod rat;
pub mod valued_field;

pub use error::{Error, Result};
