use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::classes::{class_counts, ClassCounts};
use crate::algebra::Poly;
use crate::budget::Budget;
use crate::characters::UnitGroup;
use crate::error::{Error, Result};

/// `coeff(g, n, k)`: squarefree `f in M_n` coprime to `d` with `ω(f) = k` and `f ≡ g mod d`.
#[derive(Debug, Clone)]
pub struct GroupSeries {
    group: Arc<UnitGroup>,
    n_max: usize,
    k_max: usize,
    /// `[n][k][class]`
    coeffs: Vec<Vec<Vec<BigUint>>>,
}

impl GroupSeries {
    pub fn group(&self) -> &Arc<UnitGroup> {
        &self.group
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn k_max(&self) -> usize {
        self.k_max
    }

    fn check(&self, n: usize, k: usize) -> Result<()> {
        if n > self.n_max || k > self.k_max {
            return Err(Error::OutOfRange(format!(
                "(n, k) = ({n}, {k}) outside the series truncation ({}, {})",
                self.n_max, self.k_max
            )));
        }
        Ok(())
    }

    /// Count for the unit class with index `class`.
    pub fn coeff(&self, class: usize, n: usize, k: usize) -> Result<&BigUint> {
        self.check(n, k)?;
        Ok(&self.coeffs[n][k][class])
    }

    /// Count in the progression `f ≡ g mod d`; `g` must be coprime to `d`.
    pub fn count(&self, g: &Poly, n: usize, k: usize) -> Result<BigUint> {
        if g.field() != self.group.field() {
            return Err(Error::FieldMismatch);
        }
        let class = self
            .group
            .index_of(g)
            .ok_or_else(|| Error::NotCoprime(format!("{g} mod {}", self.group.modulus())))?;
        Ok(self.coeff(class, n, k)?.clone())
    }

    /// Sum over all coprime classes.
    pub fn total(&self, n: usize, k: usize) -> Result<BigUint> {
        self.check(n, k)?;
        Ok(self.coeffs[n][k].iter().sum())
    }
}

fn binomial(n: &BigUint, j: usize) -> BigUint {
    let mut acc = BigUint::one();
    for i in 0..j {
        if *n < BigUint::from(i + 1) {
            return BigUint::zero();
        }
        acc = acc * (n - BigUint::from(i)) / BigUint::from(i + 1);
    }
    acc
}

/// `prod_{p ∤ d} (1 + z T^deg p [p])` in the group ring, truncated at `T^N` and `z^K`.
///
/// Irreducibles sharing a degree and a class are multiplied in together:
/// `(1 + z T^e [c])^P = sum_j binomial(P, j) z^j T^{je} [c^j]`.
pub fn ap_series(group: &Arc<UnitGroup>, n_max: usize, k_max: usize, budget: &Budget) -> Result<GroupSeries> {
    let classes = class_counts(group, n_max, budget)?;
    ap_series_from_classes(&classes, k_max, budget)
}

pub fn ap_series_from_classes(classes: &ClassCounts, k_max: usize, budget: &Budget) -> Result<GroupSeries> {
    let group = classes.group().clone();
    let n_max = classes.n_max();
    let phi = group.order() as usize;
    let q = group.field().order();
    let entry_bytes = 32 + (n_max as f64 * (q as f64).log2() / 8.0).ceil() as u128;
    budget.check_bytes(
        "group-ring series",
        phi as u128 * (n_max as u128 + 1) * (k_max as u128 + 1) * entry_bytes,
    )?;

    let mut coeffs = vec![vec![vec![BigUint::zero(); phi]; k_max + 1]; n_max + 1];
    coeffs[0][0][0] = BigUint::one();
    for e in 1..=n_max {
        for (c, count) in classes.row(e).iter().enumerate() {
            if count.is_zero() {
                continue;
            }
            let j_max = k_max.min(n_max / e);
            let weights: Vec<BigUint> = (0..=j_max).map(|j| binomial(count, j)).collect();
            let shifts: Vec<Vec<usize>> = (0..=j_max)
                .map(|j| {
                    let cj = group.pow_index(c, j as u64);
                    (0..phi).map(|i| group.mul_index(i, cj)).collect()
                })
                .collect();
            for n in (e..=n_max).rev() {
                for k in (1..=k_max).rev() {
                    for j in 1..=j_max.min(k).min(n / e) {
                        let (lo, hi) = coeffs.split_at_mut(n);
                        let src = &lo[n - j * e][k - j];
                        let dst = &mut hi[0][k];
                        for (i, v) in src.iter().enumerate() {
                            if !v.is_zero() {
                                dst[shifts[j][i]] += v * &weights[j];
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(GroupSeries {
        group,
        n_max,
        k_max,
        coeffs,
    })
}
