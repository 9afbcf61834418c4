//! Analytic side: log-space magnitudes, Γ, the Euler product `F(1/q, z)`,
//! `G`, `G_d`, `H`, the main terms of the three counting theorems and the
//! large-`q` formulas.

mod euler;
mod gamma;
mod magnitude;
mod main_terms;
mod qlimit;

pub use euler::{big_g, big_gd, big_h, euler_f, euler_f_with_degree, euler_tail_bound, AnalyticConfig};
pub use gamma::{gamma_complex, gamma_real, ln_gamma, recip_gamma_complex};
pub use magnitude::{big_ratio_f64, ln_biguint, Magnitude};
pub use main_terms::{
    admissible_range, dz_asymptotic_ratio, global_normalized_error, interval_admissible, interval_normalized_error,
    k_admissible, main_term_global, main_term_interval, main_term_progression, normalized_ratio_error,
    progression_admissible, progression_density_forms, progression_normalized_error, Admissible, IntervalMainTerm,
    RangeMode, RangePolicy,
};
pub use qlimit::{qlimit_count, qlimit_relative_gap, qlimit_sum};
