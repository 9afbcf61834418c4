//! Exact and asymptotic counts of monic polynomials over finite fields by
//! number of distinct irreducible factors, globally, in arithmetic
//! progressions and in short intervals.

pub mod algebra;
pub mod apinterval;
pub mod asym;
pub mod budget;
pub mod characters;
pub mod error;
pub mod exactcount;

pub use budget::Budget;
pub use error::{Error, Result};
