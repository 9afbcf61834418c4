use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::gamma::ln_gamma;
use super::magnitude::{big_ratio_f64, Magnitude};
use super::main_terms::factorial;
use crate::error::{Error, Result};

/// `S = sum_{n_1 + ... + n_{k-1} <= n-1} 1/(n_1 ... n_{k-1})` over positive `n_i`.
///
/// Computed as `S_{k-1}(n-1)` with `S_0(r) = 1` and
/// `S_j(r) = sum_{m=1}^{r} S_{j-1}(r-m) / m`.
pub fn qlimit_sum(n: usize, k: usize) -> Result<BigRational> {
    if k < 1 || n < k {
        return Err(Error::InvalidArgument(format!(
            "q-limit sum needs 1 <= k <= n, got n={n}, k={k}"
        )));
    }
    let r_max = n - 1;
    let mut prev = vec![BigRational::one(); r_max + 1];
    for _ in 1..k {
        let mut cur = vec![BigRational::zero(); r_max + 1];
        for r in 1..=r_max {
            let mut acc = BigRational::zero();
            for m in 1..=r {
                acc += &prev[r - m] / BigInt::from(m);
            }
            cur[r] = acc;
        }
        prev = cur;
    }
    Ok(prev[r_max].clone())
}

/// `(q^n / n) S / (k-1)!` in log space.
pub fn qlimit_count(q: u64, n: usize, k: usize) -> Result<Magnitude> {
    let s = qlimit_sum(n, k)?;
    let s = big_ratio_f64(s.numer(), s.denom());
    let ln = n as f64 * (q as f64).ln() - (n as f64).ln() - ln_gamma(k as f64)? + s.ln();
    Ok(Magnitude::from_ln(1, ln))
}

/// `|Π_k(n) n (k-1)! / (q^n S) - 1|`, evaluated exactly before rounding.
pub fn qlimit_relative_gap(q: u64, n: usize, k: usize, exact: &BigUint) -> Result<f64> {
    let s = qlimit_sum(n, k)?;
    let num = BigRational::from_integer(BigInt::from(exact.clone()) * BigInt::from(n) * factorial(k - 1));
    let den = BigRational::from_integer(BigInt::from(q).pow(n as u32)) * s;
    let gap = num / den - BigRational::one();
    Ok(big_ratio_f64(gap.numer(), gap.denom()).abs())
}
