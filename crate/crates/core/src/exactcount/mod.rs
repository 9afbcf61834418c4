//! Exact counts `Π_k(n)` and `ρ_k(n)` from truncated Euler products, with
//! brute-force oracles, the `D_z(n)` polynomials and Cauchy extraction.

mod brute;
mod cauchy;
mod dz;
mod moments;
mod series;
mod zpoly;

pub use brute::{brute_force_count, brute_force_table, BruteTable, CountMode};
pub use cauchy::{cauchy_extract, cauchy_extract_series, default_radius};
pub use dz::{
    bz_series, convolve_with_zeta_power, dz_eval, dz_eval_scaled, dz_polynomial, falling_binomial, rising_binomial,
};
pub use moments::{mean_closed_form, omega_moments, OmegaMoments};
pub use series::{euler_product_allfactors, euler_product_squarefree, BiSeries};
pub use zpoly::{ComplexRational, ZPoly};
