use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use serde_json::json;

use super::zpoly::ZPoly;
use crate::algebra::irreducible_counts;
use crate::budget::Budget;
use crate::error::{Error, Result};

/// Truncated bivariate series `sum coeff[n][k] z^k T^n`, `0 <= n <= N`, `0 <= k <= K`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiSeries {
    q: u64,
    n_max: usize,
    k_max: usize,
    rows: Vec<Vec<BigUint>>,
}

impl BiSeries {
    fn zeros(q: u64, n_max: usize, k_max: usize) -> Self {
        BiSeries {
            q,
            n_max,
            k_max,
            rows: vec![vec![BigUint::zero(); k_max + 1]; n_max + 1],
        }
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Truncation degree in `T`.
    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// Truncation degree in `z`.
    pub fn k_max(&self) -> usize {
        self.k_max
    }

    /// Zero outside the stored rectangle.
    pub fn coeff(&self, n: usize, k: usize) -> BigUint {
        self.rows.get(n).and_then(|r| r.get(k)).cloned().unwrap_or_default()
    }

    pub fn row(&self, n: usize) -> Result<&[BigUint]> {
        self.rows
            .get(n)
            .map(|r| r.as_slice())
            .ok_or_else(|| Error::budget("series row beyond truncation", n as u128, self.n_max as u128))
    }

    pub fn row_sum(&self, n: usize) -> Result<BigUint> {
        Ok(self.row(n)?.iter().sum())
    }

    /// Row `n` as a polynomial in `z`.
    pub fn row_zpoly(&self, n: usize) -> Result<ZPoly> {
        Ok(ZPoly::from_integers(self.row(n)?))
    }

    /// `{"q":2,"n":10,"counts":{"1":"...",...}}`, big integers as decimal strings.
    pub fn row_json(&self, n: usize) -> Result<serde_json::Value> {
        let counts: BTreeMap<String, String> = self
            .row(n)?
            .iter()
            .enumerate()
            .filter(|&(k, _)| k <= n && (k >= 1 || n == 0))
            .map(|(k, c)| (k.to_string(), c.to_string()))
            .collect();
        Ok(json!({ "q": self.q, "n": n, "counts": counts }))
    }

    /// Copy restricted to `z`-degree `k_max`.
    pub fn truncate_k(&self, k_max: usize) -> BiSeries {
        let k_max = k_max.min(self.k_max);
        BiSeries {
            q: self.q,
            n_max: self.n_max,
            k_max,
            rows: self.rows.iter().map(|r| r[..=k_max].to_vec()).collect(),
        }
    }
}

fn check_dims(q: u64, n_max: usize, k_max: usize, budget: &Budget) -> Result<()> {
    if q < 2 {
        return Err(Error::InvalidArgument(format!("field size {q} is not a prime power")));
    }
    if n_max < 1 || k_max < 1 {
        return Err(Error::InvalidArgument(
            "series truncations need N >= 1 and K >= 1".into(),
        ));
    }
    let cap = budget.series_degree_cap(q);
    if n_max > cap {
        return Err(Error::budget("series truncation degree", n_max as u128, cap as u128));
    }
    let bits_per_coeff = (n_max as f64 * (q as f64).log2()).ceil() as u128 + 64;
    let cells = (n_max as u128 + 1) * (k_max.min(n_max) as u128 + 1);
    budget.check_bytes("series coefficient storage", cells * (bits_per_coeff / 8 + 32))
}

/// `prod_{d<=N} (1 + z T^d)^{Π(d)}` truncated to `(N, K)`; entry `[n][k]` is `Π_k(n)`.
pub fn euler_product_squarefree(q: u64, n_max: usize, k_max: usize, budget: &Budget) -> Result<BiSeries> {
    check_dims(q, n_max, k_max, budget)?;
    let counts = irreducible_counts(q, n_max);
    let mut s = BiSeries::zeros(q, n_max, k_max);
    s.rows[0][0] = BigUint::one();
    // top[n]: largest k with a nonzero entry in row n
    let mut top: Vec<Option<usize>> = vec![None; n_max + 1];
    top[0] = Some(0);

    for d in 1..=n_max {
        let jmax = (n_max / d).min(k_max);
        let pi_d = &counts[d];
        let mut binom = Vec::with_capacity(jmax + 1);
        binom.push(BigUint::one());
        for j in 1..=jmax {
            if pi_d < &BigUint::from(j) {
                break;
            }
            let next = &binom[j - 1] * (pi_d - BigUint::from(j - 1)) / BigUint::from(j);
            binom.push(next);
        }
        let jmax = binom.len() - 1;
        if jmax == 0 {
            continue;
        }
        for n in (d..=n_max).rev() {
            let mut new_top = top[n];
            for j in 1..=jmax.min(n / d) {
                let src = n - d * j;
                let Some(src_top) = top[src] else { continue };
                let kmax_here = (src_top + j).min(k_max);
                for k in (j..=kmax_here).rev() {
                    let from = &s.rows[src][k - j];
                    if from.is_zero() {
                        continue;
                    }
                    let add = from * &binom[j];
                    s.rows[n][k] += add;
                    new_top = Some(new_top.map_or(k, |t| t.max(k)));
                }
            }
            top[n] = new_top;
        }
    }
    Ok(s)
}

/// Entry `[n][k]` is `ρ_k(n)`, the number of monic `f` of degree `n` with `ω(f) = k`.
///
/// Uses `Σ z^{ω(f)} T^{deg f} = ζ(T) · A(T, z - 1)`, which needs the full
/// squarefree series in `z`.
pub fn euler_product_allfactors(q: u64, n_max: usize, k_max: usize, budget: &Budget) -> Result<BiSeries> {
    let a = euler_product_squarefree(q, n_max, n_max, budget)?;
    let mut out = BiSeries::zeros(q, n_max, k_max);
    let qb = BigInt::from(q);
    let mut prev: Vec<BigInt> = Vec::new();
    for n in 0..=n_max {
        let row = &a.rows[n];
        let top = row.iter().rposition(|c| !c.is_zero()).unwrap_or(0);
        // numerator of A(T, z - 1) in row n, restricted to z^j with j <= k_max
        let jmax = top.min(k_max);
        let mut cur: Vec<BigInt> = vec![BigInt::zero(); k_max + 1];
        for k in 0..=top {
            if row[k].is_zero() {
                continue;
            }
            let ak = BigInt::from(row[k].clone());
            let mut binom = BigInt::one();
            for j in 0..=k.min(jmax) {
                if j > 0 {
                    binom = binom * BigInt::from(k - j + 1) / BigInt::from(j);
                }
                let term = &ak * &binom;
                if (k - j) % 2 == 0 {
                    cur[j] += term;
                } else {
                    cur[j] -= term;
                }
            }
        }
        for (j, p) in prev.iter().enumerate() {
            cur[j] += &qb * p;
        }
        for (j, c) in cur.iter().enumerate() {
            if c.is_negative() {
                return Err(Error::Consistency(format!("negative ρ_{j}({n})")));
            }
            out.rows[n][j] = c.to_biguint().expect("nonnegative");
        }
        prev = cur;
    }
    Ok(out)
}
