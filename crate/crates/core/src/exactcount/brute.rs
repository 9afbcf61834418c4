use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::algebra::{enumerate_monics, Factorizer, FieldSpec};
use crate::budget::Budget;
use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CountMode {
    /// `Π_k(n)`: squarefree with exactly `k` irreducible factors.
    Squarefree,
    /// `ρ_k(n)`: exactly `k` distinct irreducible factors.
    All,
}

/// Counts by `ω` over every monic polynomial of degree `n`, indexed by `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BruteTable {
    pub squarefree: Vec<u64>,
    pub all: Vec<u64>,
}

pub fn brute_force_table(field: FieldSpec, n: usize, budget: &Budget) -> Result<BruteTable> {
    let monics = enumerate_monics(field, n, budget)?;
    let fz = Factorizer::for_degree(field, n);
    let mut table = BruteTable {
        squarefree: vec![0; n + 1],
        all: vec![0; n + 1],
    };
    for f in monics {
        let s = fz.factor(&f)?;
        table.all[s.omega] += 1;
        if s.squarefree {
            table.squarefree[s.omega] += 1;
        }
    }
    Ok(table)
}

pub fn brute_force_count(field: FieldSpec, n: usize, k: usize, mode: CountMode, budget: &Budget) -> Result<BigUint> {
    let table = brute_force_table(field, n, budget)?;
    let row = match mode {
        CountMode::Squarefree => &table.squarefree,
        CountMode::All => &table.all,
    };
    Ok(BigUint::from(row.get(k).copied().unwrap_or(0)))
}
