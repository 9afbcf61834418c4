use std::sync::Arc;

use num_complex::Complex64;

use super::cyclo::root_of_unity;
use super::group::UnitGroup;
use crate::algebra::Poly;
use crate::error::{Error, Result};

/// A character of `(F_q[X]/(d))^×`, extended by zero to non-units.
///
/// With invariant factors `n_i` and exponent `L`, the character with
/// exponents `a_i` sends the element with exponents `e_i` to
/// `ζ_L^{sum a_i e_i L / n_i}`.
#[derive(Debug, Clone)]
pub struct DirichletChar {
    group: Arc<UnitGroup>,
    exponents: Vec<u64>,
}

impl PartialEq for DirichletChar {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.group, &other.group) && self.exponents == other.exponents
    }
}

impl DirichletChar {
    pub fn new(group: Arc<UnitGroup>, exponents: Vec<u64>) -> Result<Self> {
        let orders = group.cyclic_orders();
        if exponents.len() != orders.len() || exponents.iter().zip(orders).any(|(&a, &n)| a >= n) {
            return Err(Error::InvalidArgument(format!(
                "character exponents {exponents:?} do not fit invariant factors {orders:?}"
            )));
        }
        Ok(DirichletChar { group, exponents })
    }

    pub fn principal(group: Arc<UnitGroup>) -> Self {
        let exponents = vec![0; group.cyclic_orders().len()];
        DirichletChar { group, exponents }
    }

    pub fn group(&self) -> &Arc<UnitGroup> {
        &self.group
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    pub fn is_principal(&self) -> bool {
        self.exponents.iter().all(|&a| a == 0)
    }

    /// Root-of-unity exponent `t` (value `ζ_L^t`) at the unit with index `idx`.
    pub fn exponent_at_index(&self, idx: usize) -> u64 {
        let l = self.group.exponent();
        let e = self.group.exponents_of(idx);
        self.exponents
            .iter()
            .zip(&e)
            .zip(self.group.cyclic_orders())
            .fold(0u64, |acc, ((&a, &x), &n)| (acc + (a * x % n) * (l / n)) % l)
    }

    /// `None` when `f` shares a factor with the modulus.
    pub fn exponent_at(&self, f: &Poly) -> Option<u64> {
        self.group.index_of(f).map(|i| self.exponent_at_index(i))
    }

    pub fn value(&self, f: &Poly) -> Complex64 {
        match self.exponent_at(f) {
            Some(t) => root_of_unity(self.group.exponent(), t),
            None => Complex64::new(0.0, 0.0),
        }
    }

    pub fn value_at_index(&self, idx: usize) -> Complex64 {
        root_of_unity(self.group.exponent(), self.exponent_at_index(idx))
    }

    pub fn conjugate(&self) -> Self {
        let exponents = self
            .exponents
            .iter()
            .zip(self.group.cyclic_orders())
            .map(|(&a, &n)| (n - a) % n)
            .collect();
        DirichletChar {
            group: self.group.clone(),
            exponents,
        }
    }

    pub fn mul(&self, other: &DirichletChar) -> Result<Self> {
        if !Arc::ptr_eq(&self.group, &other.group) {
            return Err(Error::InvalidArgument("characters of different groups".into()));
        }
        let exponents = self
            .exponents
            .iter()
            .zip(&other.exponents)
            .zip(self.group.cyclic_orders())
            .map(|((&a, &b), &n)| (a + b) % n)
            .collect();
        Ok(DirichletChar {
            group: self.group.clone(),
            exponents,
        })
    }

    /// Order of the character in the dual group.
    pub fn order(&self) -> u64 {
        self.exponents
            .iter()
            .zip(self.group.cyclic_orders())
            .map(|(&a, &n)| n / num_integer::gcd(a, n))
            .fold(1, num_integer::lcm)
    }
}

/// Every character of the group, the principal one first, in mixed-radix
/// order of the exponent vectors.
pub fn characters(group: &Arc<UnitGroup>) -> Vec<DirichletChar> {
    (0..group.order() as usize)
        .map(|i| DirichletChar {
            group: group.clone(),
            exponents: group.exponents_of(i),
        })
        .collect()
}
