pub mod arith;
pub mod casebook;
pub mod cli;
pub mod error;
pub mod knots;
pub mod quaternion;
pub mod star;

pub use error::{Error, Result};
