use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::series::BiSeries;
use crate::algebra::irreducible_count;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct OmegaMoments {
    pub q: u64,
    pub n: usize,
    pub mean: BigRational,
    pub variance: BigRational,
    /// `k -> ρ_k(n)` for every `k` with a nonzero count.
    pub histogram: BTreeMap<usize, BigUint>,
}

impl OmegaMoments {
    pub fn mean_f64(&self) -> f64 {
        self.mean.to_f64().unwrap_or(f64::NAN)
    }

    pub fn variance_f64(&self) -> f64 {
        self.variance.to_f64().unwrap_or(f64::NAN)
    }
}

/// Mean and variance of `ω` over `M_n` from an all-factors series.
pub fn omega_moments(all: &BiSeries, n: usize) -> Result<OmegaMoments> {
    let row = all.row(n)?;
    let total = BigUint::from(all.q()).pow(n as u32);
    let sum: BigUint = row.iter().sum();
    if sum != total {
        return Err(Error::budget(
            "series z-truncation below n",
            n as u128,
            all.k_max() as u128,
        ));
    }
    let total = BigInt::from(total);
    let mut s1 = BigInt::zero();
    let mut s2 = BigInt::zero();
    let mut histogram = BTreeMap::new();
    for (k, c) in row.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let c = BigInt::from(c.clone());
        s1 += BigInt::from(k) * &c;
        s2 += BigInt::from(k * k) * &c;
        histogram.insert(k, row[k].clone());
    }
    let mean = BigRational::new(s1, total.clone());
    let variance = BigRational::new(s2, total) - &mean * &mean;
    Ok(OmegaMoments {
        q: all.q(),
        n,
        mean,
        variance,
        histogram,
    })
}

/// `sum_{d<=n} Π(d) q^{-d}`: each irreducible of degree `d` divides `q^{n-d}` members of `M_n`.
pub fn mean_closed_form(q: u64, n: usize) -> BigRational {
    let qb = BigInt::from(q);
    (1..=n).fold(BigRational::zero(), |acc, d| {
        let pi = BigInt::from(irreducible_count(q, d).expect("positive degree"));
        acc + BigRational::new(pi, qb.pow(d as u32))
    })
}
