use num_bigint::BigUint;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::gamma::{gamma_real, recip_gamma_complex};
use super::magnitude::ln_biguint;
use crate::algebra::{factor_stats, irreducible_count, Poly};
use crate::error::{Error, Result};

/// Degrees beyond this are never summed; the tail bound must be met before it.
const MAX_EULER_DEGREE: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AnalyticConfig {
    /// Uniformity parameter: every evaluation point satisfies `|z| <= a`.
    pub a: f64,
    /// Minimum number of degree classes in the Euler product.
    pub degree: usize,
    /// Certified bound on the discarded tail of the log-product.
    pub tail_tol: f64,
}

impl Default for AnalyticConfig {
    fn default() -> Self {
        AnalyticConfig {
            a: 2.0,
            degree: 60,
            tail_tol: 1e-12,
        }
    }
}

impl AnalyticConfig {
    pub fn with_a(a: f64) -> Self {
        AnalyticConfig {
            a,
            ..AnalyticConfig::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.a > 1.0) || !self.a.is_finite() {
            return Err(Error::InvalidArgument(format!("A must exceed 1, got {}", self.a)));
        }
        if self.degree < 1 {
            return Err(Error::InvalidArgument(
                "Euler truncation degree must be at least 1".into(),
            ));
        }
        if !(self.tail_tol > 0.0) {
            return Err(Error::InvalidArgument("tail tolerance must be positive".into()));
        }
        Ok(())
    }

    fn check_point(&self, z: Complex64) -> Result<()> {
        self.validate()?;
        if z.norm() > self.a * (1.0 + 1e-12) {
            return Err(Error::OutOfRange(format!("|z| = {} exceeds A = {}", z.norm(), self.a)));
        }
        Ok(())
    }
}

/// Bound on `sum_{d > D} Π(d) |log(1 + z q^-d) + z log(1 - q^-d)|`.
///
/// With `b = max(|z|, 1)` and `x = q^-d`, each term is at most
/// `Π(d) (b x)^2 / (1 - b x) <= b^2 x / (d (1 - b x))`.
pub fn euler_tail_bound(q: u64, z: Complex64, degree: usize) -> f64 {
    let b = z.norm().max(1.0);
    let x = (q as f64).powi(-(degree as i32 + 1));
    if b * x >= 1.0 {
        return f64::INFINITY;
    }
    b * b * x / ((degree + 1) as f64 * (1.0 - b * x) * (1.0 - 1.0 / q as f64))
}

/// `Π(d) q^-d` as a double.
fn density(pi: &BigUint, q: u64, d: usize) -> f64 {
    (ln_biguint(pi) - d as f64 * (q as f64).ln()).exp()
}

/// `Π(d) [log(1 + z x) + z log(1 - x)]` with `x = q^-d`.
fn local_log(pi: &BigUint, q: u64, d: usize, z: Complex64) -> Result<Complex64> {
    let x = (q as f64).powi(-(d as i32));
    let w = z * x;
    let scaled = density(pi, q, d);
    if w.norm() > 0.25 {
        let one_plus = 1.0 + w;
        if one_plus.norm() < 1e-300 {
            return Err(Error::Pole(format!("z = -{q}^{d}")));
        }
        let pi_f = scaled / x;
        return Ok(pi_f * (one_plus.ln() + z * (-x).ln_1p()));
    }
    // sum_{m>=2} [(-1)^{m+1} z^m - z] x^{m-1} / m, multiplied by Π(d) x
    let mut acc = Complex64::new(0.0, 0.0);
    let mut zm = z;
    let mut xm = 1.0;
    for m in 2..200 {
        zm *= z;
        xm *= x;
        let sign = if m % 2 == 0 { -1.0 } else { 1.0 };
        let term = (sign * zm - z) * (xm / m as f64);
        acc += term;
        let bound = (zm.norm() + z.norm()) * xm / m as f64;
        if bound <= 1e-18 * acc.norm().max(1e-300) {
            break;
        }
    }
    Ok(scaled * acc)
}

/// Evaluation of `F(1/q, z) = prod_p (1 + z q^-deg p)(1 - q^-deg p)^z` with the
/// truncation degree returned alongside.
pub fn euler_f_with_degree(q: u64, z: Complex64, cfg: &AnalyticConfig) -> Result<(Complex64, usize)> {
    cfg.check_point(z)?;
    let mut degree = cfg.degree;
    while euler_tail_bound(q, z, degree) > cfg.tail_tol {
        degree += 1;
        if degree > MAX_EULER_DEGREE {
            return Err(Error::NoConvergence {
                residual: euler_tail_bound(q, z, MAX_EULER_DEGREE),
            });
        }
    }
    let mut log_sum = Complex64::new(0.0, 0.0);
    for d in 1..=degree {
        let pi = irreducible_count(q, d)?;
        log_sum += local_log(&pi, q, d, z)?;
    }
    Ok((log_sum.exp(), degree))
}

pub fn euler_f(q: u64, z: Complex64, cfg: &AnalyticConfig) -> Result<Complex64> {
    Ok(euler_f_with_degree(q, z, cfg)?.0)
}

/// `G(z) = F(1/q, z) / Γ(1 + z)`.
pub fn big_g(q: u64, z: Complex64, cfg: &AnalyticConfig) -> Result<Complex64> {
    let f = euler_f(q, z, cfg)?;
    if z.im == 0.0 && z.re > -1.0 {
        Ok(f / gamma_real(1.0 + z.re)?)
    } else {
        Ok(f * recip_gamma_complex(1.0 + z))
    }
}

/// `G(z) prod_{p | d} (1 + z q^-deg p)^-1` over distinct irreducible divisors of `d`.
pub fn big_gd(q: u64, z: Complex64, d: &Poly, cfg: &AnalyticConfig) -> Result<Complex64> {
    if d.field().order() != q {
        return Err(Error::FieldMismatch);
    }
    if d.deg().unwrap_or(0) == 0 {
        return Err(Error::ConstantPolynomial);
    }
    let stats = factor_stats(d)?;
    let mut g = big_g(q, z, cfg)?;
    for (p, _) in &stats.factors {
        let deg = p.deg().expect("irreducible of positive degree");
        let factor = 1.0 + z * (q as f64).powi(-(deg as i32));
        if factor.norm() < 1e-300 {
            return Err(Error::Pole(format!("z = -{q}^{deg}")));
        }
        g /= factor;
    }
    Ok(g)
}

/// `H(z) = q / (q + z) G(z)`.
pub fn big_h(q: u64, z: Complex64, cfg: &AnalyticConfig) -> Result<Complex64> {
    let denom = q as f64 + z;
    if denom.norm() < 1e-300 {
        return Err(Error::Pole(format!("z = -{q}")));
    }
    Ok(big_g(q, z, cfg)? * (q as f64 / denom))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn closed_forms() {
        let cfg = AnalyticConfig::default();
        for q in [2u64, 3, 5, 9] {
            let f1 = euler_f(q, c(1.0), &cfg).unwrap();
            assert!((f1.re - (1.0 - 1.0 / q as f64)).abs() < 1e-12, "q={q} got {f1}");
            assert!((euler_f(q, c(0.0), &cfg).unwrap() - 1.0).norm() < 1e-15);
        }
    }

    #[test]
    fn range_and_config_errors() {
        let cfg = AnalyticConfig::default();
        assert!(matches!(euler_f(2, c(2.5), &cfg), Err(Error::OutOfRange(_))));
        let bad = AnalyticConfig { a: 0.5, ..cfg };
        assert!(euler_f(2, c(0.1), &bad).is_err());
        // z = -q is a pole of the first local factor
        let wide = AnalyticConfig::with_a(3.0);
        assert!(matches!(euler_f(2, c(-2.0), &wide), Err(Error::Pole(_))));
    }
}
