use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::euler::{big_g, big_gd, big_h, AnalyticConfig};
use super::gamma::{gamma_complex, ln_gamma};
use super::magnitude::{big_ratio_f64, Magnitude};
use crate::algebra::{factor_stats, unit_group_order, Poly};
use crate::error::{Error, Result};
use crate::exactcount::dz_eval_scaled;

/// Whether main terms may be evaluated outside the proven parameter range.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RangePolicy {
    Enforce,
    Override,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RangeMode {
    /// Largest admissible modulus degree `m` for progressions.
    ProgressionDegree,
    /// Smallest admissible interval parameter `h`.
    IntervalLength,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Admissible {
    Bound(usize),
    NotAdmissible,
}

fn range_slack(q: u64, a: f64) -> f64 {
    (1.0 + (1.0 + a / 2.0).ln()) / (q as f64).ln()
}

/// `m <= (1/2 - (1 + log(1 + A/2)) / log q) n` for progressions, or
/// `h >= (1/2 + (1 + log(1 + A/2)) / log q)(n + 1)` for intervals.
pub fn admissible_range(q: u64, n: usize, a: f64, mode: RangeMode) -> Admissible {
    let slack = range_slack(q, a);
    match mode {
        RangeMode::ProgressionDegree => {
            let coef = 0.5 - slack;
            if coef <= 0.0 {
                return Admissible::NotAdmissible;
            }
            match (coef * n as f64).floor() as usize {
                0 => Admissible::NotAdmissible,
                m => Admissible::Bound(m),
            }
        }
        RangeMode::IntervalLength => {
            let h = ((0.5 + slack) * (n + 1) as f64).ceil();
            if n < 1 || h > (n - 1) as f64 {
                Admissible::NotAdmissible
            } else {
                Admissible::Bound(h as usize)
            }
        }
    }
}

/// Short-interval admissibility; the full interval `h = n - 1` is always allowed.
pub fn interval_admissible(q: u64, n: usize, h: usize, a: f64) -> bool {
    if n >= 1 && h == n - 1 {
        return true;
    }
    matches!(admissible_range(q, n, a, RangeMode::IntervalLength), Admissible::Bound(b) if h >= b && h < n)
}

pub fn progression_admissible(q: u64, n: usize, m: usize, a: f64) -> bool {
    matches!(admissible_range(q, n, a, RangeMode::ProgressionDegree), Admissible::Bound(b) if m <= b)
}

/// `1 <= k <= A log n` and `n >= 2`.
pub fn k_admissible(n: usize, k: usize, a: f64) -> bool {
    n >= 2 && k >= 1 && k as f64 <= a * (n as f64).ln()
}

fn check_nk(n: usize, k: usize, cfg: &AnalyticConfig, policy: RangePolicy) -> Result<()> {
    cfg.validate()?;
    if n < 2 || k < 1 {
        return Err(Error::InvalidArgument(format!(
            "main terms need n >= 2 and k >= 1, got n={n}, k={k}"
        )));
    }
    if policy == RangePolicy::Enforce && !k_admissible(n, k, cfg.a) {
        return Err(Error::OutOfRange(format!(
            "k = {k} exceeds A log n = {:.4}",
            cfg.a * (n as f64).ln()
        )));
    }
    Ok(())
}

/// `(log n)^{k-1} / (k-1)!`
fn log_power(n: usize, k: usize) -> Magnitude {
    let ln_ln = (n as f64).ln().ln();
    let lg = ln_gamma(k as f64).expect("k >= 1");
    Magnitude::from_ln(1, (k - 1) as f64 * ln_ln - lg)
}

/// The point `(k - 1) / log n` where the analytic factor is evaluated.
fn eval_point(n: usize, k: usize) -> f64 {
    (k - 1) as f64 / (n as f64).ln()
}

/// Overridden `k` may push the evaluation point past `A`.
fn widened(cfg: &AnalyticConfig, z: f64) -> AnalyticConfig {
    AnalyticConfig {
        a: cfg.a.max(z.abs() * (1.0 + 1e-9)),
        ..*cfg
    }
}

fn real_part(v: Complex64) -> f64 {
    debug_assert!(v.im.abs() <= 1e-12 * v.re.abs().max(1.0));
    v.re
}

/// `(q^n / n) (log n)^{k-1} / (k-1)! · G((k-1)/log n)`
pub fn main_term_global(q: u64, n: usize, k: usize, cfg: &AnalyticConfig, policy: RangePolicy) -> Result<Magnitude> {
    check_nk(n, k, cfg, policy)?;
    let z = eval_point(n, k);
    let g = real_part(big_g(q, Complex64::new(z, 0.0), &widened(cfg, z))?);
    Ok(Magnitude::power(q as f64, n)
        .div(Magnitude::from_f64(n as f64))
        .mul(log_power(n, k))
        .mul_f64(g))
}

/// The two equal forms of the progression density, `q^n / Φ(d)` and
/// `prod_{p|d} (1 - q^{-deg p})^{-1} q^{n-m}`.
pub fn progression_density_forms(n: usize, d: &Poly) -> Result<(BigRational, BigRational)> {
    let m = d.deg().filter(|&m| m >= 1).ok_or(Error::ConstantPolynomial)?;
    let q = BigInt::from(d.field().order());
    let phi = BigInt::from(unit_group_order(d)?);
    let first = BigRational::new(q.pow(n as u32), phi);
    let mut second = if n >= m {
        BigRational::from_integer(q.pow((n - m) as u32))
    } else {
        BigRational::new(BigInt::one(), q.pow((m - n) as u32))
    };
    for (p, _) in factor_stats(&d.monic())?.factors {
        let qd = q.pow(p.deg().expect("positive degree") as u32);
        // (1 - q^-deg p)^-1 = q^deg p / (q^deg p - 1)
        second *= BigRational::new(qd.clone(), qd - 1);
    }
    Ok((first, second))
}

/// `(1/Φ(d)) (q^n / n) (log n)^{k-1} / (k-1)! · G_d((k-1)/log n)`
pub fn main_term_progression(
    n: usize,
    k: usize,
    d: &Poly,
    cfg: &AnalyticConfig,
    policy: RangePolicy,
) -> Result<Magnitude> {
    check_nk(n, k, cfg, policy)?;
    let m = d.deg().filter(|&m| m >= 1).ok_or(Error::ConstantPolynomial)?;
    let q = d.field().order();
    if policy == RangePolicy::Enforce && !progression_admissible(q, n, m, cfg.a) {
        return Err(Error::OutOfRange(format!(
            "modulus degree {m} outside the proven range for n = {n}, q = {q}"
        )));
    }
    let z = eval_point(n, k);
    let gd = real_part(big_gd(q, Complex64::new(z, 0.0), d, &widened(cfg, z))?);
    let phi = Magnitude::from_biguint(&unit_group_order(d)?);
    Ok(Magnitude::power(q as f64, n)
        .div(phi)
        .div(Magnitude::from_f64(n as f64))
        .mul(log_power(n, k))
        .mul_f64(gd))
}

/// The two parts of the short-interval main term.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntervalMainTerm {
    /// `(q^{h+1}/n) (log n)^{k-1}/(k-1)! · H((k-1)/log n)`: polynomials with `f(0) != 0`.
    pub nonzero_constant: Magnitude,
    /// `(q^{h+1}/n) (log n)^{k-1}/(k-1)! · (k-1)/(q log n) · H((k-2)/log(n-1))`: `f(0) = 0`.
    pub zero_constant: Magnitude,
}

impl IntervalMainTerm {
    pub fn total(&self) -> Magnitude {
        self.nonzero_constant.add(self.zero_constant)
    }
}

pub fn main_term_interval(
    q: u64,
    n: usize,
    k: usize,
    h: usize,
    cfg: &AnalyticConfig,
    policy: RangePolicy,
) -> Result<IntervalMainTerm> {
    check_nk(n, k, cfg, policy)?;
    if h >= n {
        return Err(Error::InvalidArgument(format!(
            "interval parameter h = {h} must be below n = {n}"
        )));
    }
    if policy == RangePolicy::Enforce && !interval_admissible(q, n, h, cfg.a) {
        return Err(Error::OutOfRange(format!(
            "h = {h} outside the proven range for n = {n}, q = {q}"
        )));
    }
    let base = Magnitude::power(q as f64, h + 1)
        .div(Magnitude::from_f64(n as f64))
        .mul(log_power(n, k));
    let z1 = eval_point(n, k);
    let h1 = real_part(big_h(q, Complex64::new(z1, 0.0), &widened(cfg, z1))?);
    let nonzero_constant = base.mul_f64(h1);
    // coefficient (k-1)/(q log n) vanishes at k = 1, so H is not evaluated there
    let zero_constant = if k == 1 {
        Magnitude::ZERO
    } else {
        let z2 = if k == 2 {
            0.0
        } else if n >= 3 {
            (k - 2) as f64 / ((n - 1) as f64).ln()
        } else {
            return Err(Error::InvalidArgument(
                "second interval term needs n >= 3 when k >= 3".into(),
            ));
        };
        let h2 = real_part(big_h(q, Complex64::new(z2, 0.0), &widened(cfg, z2))?);
        base.mul_f64((k - 1) as f64 / (q as f64 * (n as f64).ln()) * h2)
    };
    Ok(IntervalMainTerm {
        nonzero_constant,
        zero_constant,
    })
}

/// `|R - G((k-1)/log n)| (log n)^2 / k` with
/// `R = Π_k(n) n (k-1)! / (q^n (log n)^{k-1})`; exact rational arithmetic at `k = 1`.
pub fn global_normalized_error(q: u64, n: usize, k: usize, exact: &BigUint, cfg: &AnalyticConfig) -> Result<f64> {
    check_nk(n, k, cfg, RangePolicy::Override)?;
    let ln = (n as f64).ln();
    let qn = BigInt::from(q).pow(n as u32);
    let scaled = BigInt::from(exact.clone()) * BigInt::from(n) * factorial(k - 1);
    let diff = if k == 1 {
        big_ratio_f64(&(scaled - &qn), &qn)
    } else {
        let z = eval_point(n, k);
        let g = real_part(big_g(q, Complex64::new(z, 0.0), &widened(cfg, z))?);
        big_ratio_f64(&scaled, &qn) / ln.powi(k as i32 - 1) - g
    };
    Ok(diff.abs() * ln * ln / k as f64)
}

/// `|exact / main - 1| (log n)^2 / k`.
pub fn normalized_ratio_error(exact: &BigUint, main: &Magnitude, n: usize, k: usize) -> f64 {
    let ln = (n as f64).ln();
    let ratio = Magnitude::from_biguint(exact).ratio(main);
    (ratio - 1.0).abs() * ln * ln / k as f64
}

/// Progression normalized error; at `k = 1` the main term `q^n / (Φ(d) n)` is used exactly.
pub fn progression_normalized_error(
    n: usize,
    k: usize,
    d: &Poly,
    exact: &BigUint,
    cfg: &AnalyticConfig,
) -> Result<f64> {
    if k == 1 {
        check_nk(n, k, cfg, RangePolicy::Override)?;
        let (density, _) = progression_density_forms(n, d)?;
        let main = density / BigRational::from_integer(BigInt::from(n));
        return Ok(exact_k1_error(exact, &main, n));
    }
    let main = main_term_progression(n, k, d, cfg, RangePolicy::Override)?;
    Ok(normalized_ratio_error(exact, &main, n, k))
}

/// Short-interval normalized error; at `k = 1` the main term `q^{h+1} / n` is used exactly.
pub fn interval_normalized_error(
    q: u64,
    n: usize,
    k: usize,
    h: usize,
    exact: &BigUint,
    cfg: &AnalyticConfig,
) -> Result<f64> {
    let main = main_term_interval(q, n, k, h, cfg, RangePolicy::Override)?;
    if k == 1 {
        let main = BigRational::new(BigInt::from(q).pow(h as u32 + 1), BigInt::from(n));
        return Ok(exact_k1_error(exact, &main, n));
    }
    Ok(normalized_ratio_error(exact, &main.total(), n, k))
}

fn exact_k1_error(exact: &BigUint, main: &BigRational, n: usize) -> f64 {
    let ratio = BigRational::from_integer(BigInt::from(exact.clone())) / main - BigRational::one();
    let ln = (n as f64).ln();
    big_ratio_f64(ratio.numer(), ratio.denom()).abs() * ln * ln
}

pub(crate) fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// `D_z(n) Γ(z) / (q^n n^{z-1})`, which tends to 1 as `n` grows.
pub fn dz_asymptotic_ratio(n: usize, z: Complex64) -> Result<Complex64> {
    if n == 0 {
        return Err(Error::InvalidArgument("asymptotic ratio needs n >= 1".into()));
    }
    let gamma = gamma_complex(z)?;
    let n_pow = ((z - 1.0) * (n as f64).ln()).exp();
    Ok(dz_eval_scaled(n, z) * gamma / n_pow)
}
