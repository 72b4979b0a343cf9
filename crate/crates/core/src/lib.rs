//! Balancing, Lucas-balancing and Pell-family sequences computed exactly,
//! with executable identity checks and bounded Diophantine searches.

pub mod bigmath;
pub mod cli;
pub mod decimal;
pub mod diophantine;
pub mod error;
pub mod modular;
pub mod quadring;
pub mod sequences;
pub mod suites;

pub use error::{Error, Result};
pub use num_bigint::{BigInt, BigUint};
