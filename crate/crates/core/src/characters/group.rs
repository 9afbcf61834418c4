use std::collections::{BTreeMap, HashMap};

use crate::algebra::{unit_group_order, FieldSpec, Poly};
use crate::budget::Budget;
use crate::error::{Error, Result};

/// `(F_q[X]/(d))^×` as a product of cyclic factors `Z/n_1 × ... × Z/n_r`
/// with `n_{i+1} | n_i`.
///
/// Element `i` has exponent vector given by the mixed-radix digits of `i`
/// (first factor fastest), so group operations on indices are exponent
/// additions.
#[derive(Debug, Clone)]
pub struct UnitGroup {
    modulus: Poly,
    order: u64,
    generators: Vec<Poly>,
    orders: Vec<u64>,
    elements: Vec<Poly>,
    index: HashMap<u64, usize>,
}

fn prime_factors(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

struct Residues<'a> {
    modulus: &'a Poly,
}

impl Residues<'_> {
    fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        a.mul_raw(b).divrem_raw(self.modulus).expect("nonzero modulus").1
    }

    fn pow(&self, a: &Poly, e: u64) -> Poly {
        a.powmod(e, self.modulus).expect("nonzero modulus")
    }
}

/// Basis of the Sylow subgroup `S` by greedy extraction: repeatedly take an
/// element of maximal order `l^e` modulo the span `H` so far, then correct it
/// by an element of `H` so that its own order is `l^e`.
fn sylow_basis(res: &Residues, sylow: &[Poly], l: u64) -> Result<Vec<(Poly, u64)>> {
    let one = Poly::one(res.modulus.field());
    let mut span: HashMap<u64, (Poly, Vec<u64>)> = HashMap::new();
    span.insert(one.code(), (one.clone(), Vec::new()));
    let mut basis: Vec<(Poly, u64)> = Vec::new();

    while span.len() < sylow.len() {
        let mut best: Option<(&Poly, u32)> = None;
        for y in sylow {
            let mut e = 0;
            let mut cur = y.clone();
            while !span.contains_key(&cur.code()) {
                cur = res.pow(&cur, l);
                e += 1;
            }
            if best.is_none_or(|(_, b)| e > b) {
                best = Some((y, e));
            }
        }
        let (y, e) = best.expect("nonempty Sylow subgroup");
        let le = l.pow(e);
        let target = res.pow(y, le);
        let (_, exps) = &span[&target.code()];
        // y^{l^e} = prod g_i^{a_i} with l^e | a_i; divide it out
        let mut correction = one.clone();
        for ((g, n), &a) in basis.iter().zip(exps.iter()) {
            if a % le != 0 {
                return Err(Error::Consistency("greedy basis extraction lost divisibility".into()));
            }
            let b = a / le;
            correction = res.mul(&correction, &res.pow(g, (n - b) % n));
        }
        let gen = res.mul(y, &correction);

        let mut next = HashMap::with_capacity(span.len() * le as usize);
        let mut power = one.clone();
        for j in 0..le {
            for (elem, exps) in span.values() {
                let v = res.mul(elem, &power);
                let mut ex = exps.clone();
                ex.push(j);
                next.insert(v.code(), (v, ex));
            }
            power = res.mul(&power, &gen);
        }
        if next.len() != span.len() * le as usize {
            return Err(Error::Consistency("extracted generator is not independent".into()));
        }
        span = next;
        basis.push((gen, le));
    }
    basis.sort_by(|a, b| b.1.cmp(&a.1));
    Ok(basis)
}

impl UnitGroup {
    pub fn new(modulus: &Poly, budget: &Budget) -> Result<Self> {
        let m = modulus.deg().ok_or(Error::ZeroPolynomial)?;
        if m == 0 {
            return Err(Error::ConstantPolynomial);
        }
        if !modulus.is_monic() {
            return Err(Error::NotMonic);
        }
        let field = modulus.field();
        let phi = unit_group_order(modulus)?;
        let phi: u64 = u64::try_from(&phi)
            .ok()
            .filter(|&v| v <= budget.unit_group)
            .ok_or_else(|| {
                Error::budget(
                    "unit group order",
                    u128::try_from(&phi).unwrap_or(u128::MAX),
                    budget.unit_group,
                )
            })?;
        let residues = budget.check_enumeration(field.order(), m)?;

        let res = Residues { modulus };
        let units: Vec<Poly> = (0..residues)
            .map(|c| Poly::from_code(field, c))
            .filter(|r| !r.is_zero() && r.gcd(modulus).is_ok_and(|g| g.is_one()))
            .collect();
        if units.len() as u64 != phi {
            return Err(Error::Consistency(format!(
                "found {} units, expected {phi}",
                units.len()
            )));
        }

        let mut per_prime: Vec<Vec<(Poly, u64)>> = Vec::new();
        for (l, a) in prime_factors(phi) {
            let cofactor = phi / l.pow(a);
            let sylow: BTreeMap<u64, Poly> = units
                .iter()
                .map(|u| {
                    let v = res.pow(u, cofactor);
                    (v.code(), v)
                })
                .collect();
            let sylow: Vec<Poly> = sylow.into_values().collect();
            per_prime.push(sylow_basis(&res, &sylow, l)?);
        }

        // invariant factor i multiplies the i-th largest cyclic factor of every Sylow subgroup
        let rank = per_prime.iter().map(|b| b.len()).max().unwrap_or(0);
        let mut generators = Vec::with_capacity(rank);
        let mut orders = Vec::with_capacity(rank);
        for i in 0..rank {
            let mut g = Poly::one(field);
            let mut n = 1;
            for basis in &per_prime {
                if let Some((gi, ni)) = basis.get(i) {
                    g = res.mul(&g, gi);
                    n *= ni;
                }
            }
            generators.push(g);
            orders.push(n);
        }

        let mut elements = vec![Poly::one(field).rem(modulus)?];
        for (g, &n) in generators.iter().zip(&orders) {
            let mut next = Vec::with_capacity(elements.len() * n as usize);
            let mut power = Poly::one(field);
            for _ in 0..n {
                next.extend(elements.iter().map(|e| res.mul(e, &power)));
                power = res.mul(&power, g);
            }
            elements = next;
        }
        let index: HashMap<u64, usize> = elements.iter().enumerate().map(|(i, e)| (e.code(), i)).collect();
        if index.len() as u64 != phi || elements.len() as u64 != phi {
            return Err(Error::Consistency("basis does not regenerate the unit group".into()));
        }
        for (g, &n) in generators.iter().zip(&orders) {
            if !res.pow(g, n).is_one() {
                return Err(Error::Consistency(format!("generator {g} does not have order {n}")));
            }
            for (l, _) in prime_factors(n) {
                if res.pow(g, n / l).is_one() {
                    return Err(Error::Consistency(format!("generator {g} has order below {n}")));
                }
            }
        }

        Ok(UnitGroup {
            modulus: modulus.clone(),
            order: phi,
            generators,
            orders,
            elements,
            index,
        })
    }

    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    pub fn field(&self) -> FieldSpec {
        self.modulus.field()
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// Invariant factors `n_1, n_2, ...`, each divisible by the next.
    pub fn cyclic_orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn generators(&self) -> &[Poly] {
        &self.generators
    }

    /// `(generator, order)` pairs whose direct product is the group.
    pub fn structure(&self) -> Vec<(Poly, u64)> {
        self.generators
            .iter()
            .cloned()
            .zip(self.orders.iter().copied())
            .collect()
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> u64 {
        self.orders.first().copied().unwrap_or(1)
    }

    pub fn elements(&self) -> &[Poly] {
        &self.elements
    }

    /// Index of the residue class of `f`, or `None` when `gcd(f, d) != 1`.
    pub fn index_of(&self, f: &Poly) -> Option<usize> {
        if f.field() != self.field() {
            return None;
        }
        let r = if f.deg().is_some_and(|d| d < self.modulus.deg().unwrap_or(0)) {
            f.clone()
        } else {
            f.divrem_raw(&self.modulus).ok()?.1
        };
        self.index.get(&r.code()).copied()
    }

    /// Index of a residue given by its base-q code (degree below `deg d`).
    pub fn index_of_code(&self, code: u64) -> Option<usize> {
        self.index.get(&code).copied()
    }

    pub fn exponents_of(&self, mut idx: usize) -> Vec<u64> {
        self.orders
            .iter()
            .map(|&n| {
                let e = idx as u64 % n;
                idx /= n as usize;
                e
            })
            .collect()
    }

    pub fn index_from_exponents(&self, exps: &[u64]) -> usize {
        let mut idx = 0u64;
        for (&e, &n) in exps.iter().zip(&self.orders).rev() {
            idx = idx * n + e % n;
        }
        idx as usize
    }

    pub fn mul_index(&self, mut a: usize, mut b: usize) -> usize {
        let (mut idx, mut stride) = (0, 1);
        for &n in &self.orders {
            let n = n as usize;
            idx += (a % n + b % n) % n * stride;
            a /= n;
            b /= n;
            stride *= n;
        }
        idx
    }

    /// Index of the `r`-th power of the element with index `a`.
    pub fn pow_index(&self, mut a: usize, r: u64) -> usize {
        let (mut idx, mut stride) = (0, 1);
        for &n in &self.orders {
            idx += ((a as u64 % n) * (r % n) % n) as usize * stride;
            a /= n as usize;
            stride *= n as usize;
        }
        idx
    }

    pub fn inverse_index(&self, a: usize) -> usize {
        let inv: Vec<u64> = self
            .exponents_of(a)
            .iter()
            .zip(&self.orders)
            .map(|(&e, &n)| (n - e) % n)
            .collect();
        self.index_from_exponents(&inv)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorization() {
        assert_eq!(prime_factors(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(prime_factors(1), vec![]);
        assert_eq!(prime_factors(97), vec![(97, 1)]);
    }
}
