use std::sync::Arc;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::algebra::{divisors, enumerate_irreducibles, Poly};
use crate::budget::Budget;
use crate::characters::UnitGroup;
use crate::error::{Error, Result};

/// `counts[e][c]`: monic irreducibles of degree `e`, coprime to `d`, in the
/// unit class with index `c`. Row 0 is empty.
#[derive(Debug, Clone)]
pub struct ClassCounts {
    group: Arc<UnitGroup>,
    counts: Vec<Vec<BigUint>>,
}

impl ClassCounts {
    pub fn group(&self) -> &Arc<UnitGroup> {
        &self.group
    }

    pub fn n_max(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn row(&self, e: usize) -> &[BigUint] {
        &self.counts[e]
    }

    pub fn count(&self, e: usize, class: usize) -> &BigUint {
        &self.counts[e][class]
    }

    pub fn total(&self, e: usize) -> BigUint {
        self.counts[e].iter().sum()
    }
}

type Element = Vec<BigInt>;

fn convolve(group: &UnitGroup, a: &Element, b: &Element) -> Element {
    let mut out = vec![BigInt::zero(); a.len()];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[group.mul_index(i, j)] += x * y;
            }
        }
    }
    out
}

/// Irreducible counts per degree and residue class, from the logarithmic
/// derivative of `Z(T) = sum_{gcd(f, d) = 1} [f] T^deg f = prod_p (1 - [p] T^deg p)^-1`
/// in the group ring:
///
/// * `n Z_n = sum_{j=1}^{n} Ψ_j Z_{n-j}` defines `Ψ_n = sum_{e | n} e Frob_{n/e}(π_e)`;
/// * `n π_n = Ψ_n - sum_{e | n, e < n} e Frob_{n/e}(π_e)`, where `Frob_r` sends `[c]` to `[c^r]`.
///
/// `Z_n` is uniform over the units once `n >= deg d`, and by enumeration below it.
pub fn class_counts(group: &Arc<UnitGroup>, n_max: usize, budget: &Budget) -> Result<ClassCounts> {
    let phi = group.order() as usize;
    let m = group.modulus().deg().expect("nonconstant modulus");
    let q = group.field().order();
    let field = group.field();

    let z_small: Vec<Element> = (0..m.min(n_max + 1))
        .map(|n| {
            let mut z = vec![BigInt::zero(); phi];
            for idx in 0..budget.check_enumeration(q, n)? {
                let f = Poly::monic_from_index(field, n, idx);
                if let Some(c) = group.index_of_code(f.code()) {
                    z[c] += 1;
                }
            }
            Ok(z)
        })
        .collect::<Result<_>>()?;
    // for n >= m, Z_n = q^{n-m} times the all-ones element
    let z_uniform = |n: usize| BigInt::from(q).pow((n - m) as u32);

    let mut psi: Vec<Element> = vec![Vec::new()];
    let mut pi: Vec<Vec<BigInt>> = vec![Vec::new()];
    for n in 1..=n_max {
        let mut acc: Element = match z_small.get(n) {
            Some(z) => z.iter().map(|c| c * n).collect(),
            None => vec![z_uniform(n) * n; phi],
        };
        for (j, psi_j) in psi.iter().enumerate().take(n).skip(1) {
            match z_small.get(n - j) {
                Some(z) => {
                    for (a, b) in acc.iter_mut().zip(convolve(group, psi_j, z)) {
                        *a -= b;
                    }
                }
                None => {
                    let s: BigInt = psi_j.iter().sum::<BigInt>() * z_uniform(n - j);
                    for a in acc.iter_mut() {
                        *a -= &s;
                    }
                }
            }
        }
        psi.push(acc.clone());

        for e in divisors(n as u64).into_iter().map(|e| e as usize).filter(|&e| e < n) {
            let r = (n / e) as u64;
            for (c, count) in pi[e].iter().enumerate() {
                if !count.is_zero() {
                    acc[group.pow_index(c, r)] -= count * e;
                }
            }
        }
        let row = acc
            .into_iter()
            .map(|v| {
                let (quot, rem) = v.div_rem(&BigInt::from(n));
                if !rem.is_zero() || quot.sign() == Sign::Minus {
                    return Err(Error::Consistency(format!("class count recursion broke at degree {n}")));
                }
                Ok(quot)
            })
            .collect::<Result<Vec<_>>>()?;
        pi.push(row);
    }

    let counts = pi
        .into_iter()
        .map(|row| row.into_iter().map(|v| v.to_biguint().expect("nonnegative")).collect())
        .collect();
    Ok(ClassCounts {
        group: group.clone(),
        counts,
    })
}

/// The same table by listing every irreducible.
pub fn class_counts_enumeration(group: &Arc<UnitGroup>, n_max: usize, budget: &Budget) -> Result<ClassCounts> {
    let phi = group.order() as usize;
    let mut counts = vec![Vec::new()];
    for e in 1..=n_max {
        let mut row = vec![BigUint::zero(); phi];
        for p in enumerate_irreducibles(group.field(), e, budget)? {
            if let Some(c) = group.index_of(&p) {
                row[c] += BigUint::one();
            }
        }
        counts.push(row);
    }
    Ok(ClassCounts {
        group: group.clone(),
        counts,
    })
}
