//! Resource limits shared by every enumeration and series construction.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Environment variable capping the estimated memory of a single series build.
pub const BUDGET_BYTES_ENV: &str = "FFCOUNT_BUDGET_BYTES";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    /// Largest number of polynomials a brute-force enumeration may visit.
    pub enumeration: u64,
    /// Largest unit-group order.
    pub unit_group: u64,
    /// Largest number of irreducibles that may be listed explicitly.
    pub irreducibles: u64,
    /// Truncation degree cap for q = 2; scaled by `log 2 / log q` for other fields.
    pub series_degree_q2: usize,
    /// Estimated memory cap for series coefficient storage.
    pub bytes: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            enumeration: 2_000_000,
            unit_group: 100_000,
            irreducibles: 2_000_000,
            series_degree_q2: 600,
            bytes: 4 << 30,
        }
    }
}

impl Budget {
    /// Defaults, with the byte cap taken from `FFCOUNT_BUDGET_BYTES` when set.
    pub fn from_env() -> Result<Self> {
        let mut budget = Budget::default();
        if let Ok(raw) = std::env::var(BUDGET_BYTES_ENV) {
            budget.bytes = raw
                .trim()
                .parse()
                .map_err(|_| Error::parse(raw.clone(), format!("{BUDGET_BYTES_ENV} must be a byte count")))?;
        }
        Ok(budget)
    }

    pub fn series_degree_cap(&self, q: u64) -> usize {
        let scaled = self.series_degree_q2 as f64 * 2f64.ln() / (q as f64).ln();
        (scaled.floor() as usize).max(1)
    }

    pub fn check_enumeration(&self, q: u64, n: usize) -> Result<u64> {
        let count = checked_pow(q, n).filter(|&c| c <= self.enumeration);
        count.ok_or_else(|| {
            Error::budget(
                "enumeration of monic polynomials",
                checked_pow(q, n).map_or(u128::MAX, u128::from),
                self.enumeration,
            )
        })
    }

    pub fn check_bytes(&self, what: &'static str, bytes: u128) -> Result<()> {
        if bytes > self.bytes as u128 {
            return Err(Error::budget(what, bytes, self.bytes));
        }
        Ok(())
    }
}

pub(crate) fn checked_pow(base: u64, exp: usize) -> Option<u64> {
    let mut acc: u64 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}
