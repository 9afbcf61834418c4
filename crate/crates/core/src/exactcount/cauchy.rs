use std::f64::consts::TAU;

use num_bigint::BigUint;
use num_complex::Complex64;
use num_traits::ToPrimitive;

use super::series::BiSeries;
use crate::error::{Error, Result};

/// Trapezoid rule for `(1/2πi) ∮_{|z|=r} P(z) z^{-k-1} dz` with `m` nodes, where
/// `P(z) = sum_j row[j] z^j`. Returns the real part.
pub fn cauchy_extract(row: &[BigUint], k: usize, r: f64, m: usize) -> Result<f64> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "contour radius must be positive, got {r}"
        )));
    }
    if m < 64 {
        return Err(Error::InvalidArgument(format!(
            "at least 64 quadrature nodes required, got {m}"
        )));
    }
    let coeffs: Vec<f64> = row.iter().map(|c| c.to_f64().unwrap_or(f64::INFINITY)).collect();
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..m {
        let theta = TAU * j as f64 / m as f64;
        let z = Complex64::from_polar(r, theta);
        let value = coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |a, &c| a * z + c);
        acc += value * Complex64::from_polar(r.powi(-(k as i32)), -(k as f64) * theta);
    }
    Ok(acc.re / m as f64)
}

/// [`cauchy_extract`] applied to row `n` of a series.
pub fn cauchy_extract_series(series: &BiSeries, n: usize, k: usize, r: f64, m: usize) -> Result<f64> {
    cauchy_extract(series.row(n)?, k, r, m)
}

/// The radius `(k - 1) / log n`, falling back to `1 / log n` for `k <= 1`.
pub fn default_radius(n: usize, k: usize) -> f64 {
    let ln = (n as f64).ln();
    (k.max(2) - 1) as f64 / ln
}
