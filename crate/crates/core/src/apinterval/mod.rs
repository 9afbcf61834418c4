//! Counts in arithmetic progressions and short intervals.

mod classes;
mod query;
mod series;

pub use classes::{class_counts, class_counts_enumeration, ClassCounts};
pub use query::{
    interval_representatives, pi_k_ap_brute, pi_k_ap_chars, pi_k_ap_exact, pi_k_interval_brute, pi_k_interval_chars,
    pi_k_interval_exact, pi_k_interval_with, APQuery, CharacterPath, IntervalQuery, IMAGINARY_TOLERANCE,
    ROUNDING_TOLERANCE,
};
pub use series::{ap_series, ap_series_from_classes, GroupSeries};
