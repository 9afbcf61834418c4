//! Finite fields, polynomials over them, irreducibility and factorization.

mod factor;
mod field;
mod irreducible;
mod poly;

pub use factor::{factor_stats, unit_group_order, FactorStats, Factorizer};
pub use field::{FieldSpec, MAX_EXTENSION, MAX_EXTENSION_ORDER};
pub use irreducible::{
    divisors, enumerate_irreducibles, enumerate_monics, irreducible_count, irreducible_counts, is_irreducible,
    is_irreducible_ben_or, is_irreducible_trial, mobius, Monics,
};
pub use poly::{Degree, Poly};
