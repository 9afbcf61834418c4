//! Dirichlet characters modulo `d`, their L-polynomials and twisted counts.

mod cyclo;
mod dirichlet;
mod group;
mod lfunc;
mod roots;
mod twisted;

pub use cyclo::{cyclotomic_polynomial, root_of_unity, CycloSum};
pub use dirichlet::{characters, DirichletChar};
pub use group::UnitGroup;
pub use lfunc::{
    character_sum, l_polynomial, weil_check, weil_classify, LPolynomial, WeilClass, WeilReport, ROOT_RESIDUAL,
};
pub use roots::{find_roots, RootResult};
pub use twisted::{
    twisted_count, twisted_count_enumeration, twisted_count_euler, twisted_dz, twisted_dz_bound, twisted_tables,
    TWISTED_TOLERANCE,
};
