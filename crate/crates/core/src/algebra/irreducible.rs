use num_bigint::{BigInt, BigUint};
use num_traits::Zero;

use super::field::FieldSpec;
use super::poly::Poly;
use crate::budget::Budget;
use crate::error::{Error, Result};

/// Trial division is used while it visits at most this many candidate divisors.
const TRIAL_DIVISION_LIMIT: u64 = 4096;

pub fn mobius(n: u64) -> i8 {
    assert!(n >= 1);
    let mut n = n;
    let mut sign = 1i8;
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

fn check_testable(f: &Poly) -> Result<usize> {
    let n = f.deg().ok_or(Error::ZeroPolynomial)?;
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    if n == 0 {
        return Err(Error::ConstantPolynomial);
    }
    Ok(n)
}

fn trial_candidates(q: u64, n: usize) -> Option<u64> {
    let mut total = 0u64;
    for d in 1..=n / 2 {
        total = total.checked_add(crate::budget::checked_pow(q, d)?)?;
    }
    Some(total)
}

/// Irreducibility of a monic polynomial of positive degree.
pub fn is_irreducible(f: &Poly) -> Result<bool> {
    let n = check_testable(f)?;
    let cheap = trial_candidates(f.field().order(), n).is_some_and(|c| c <= TRIAL_DIVISION_LIMIT);
    if cheap {
        is_irreducible_trial(f)
    } else {
        is_irreducible_ben_or(f)
    }
}

/// Divides by every monic polynomial of degree at most `deg f / 2`.
pub fn is_irreducible_trial(f: &Poly) -> Result<bool> {
    let n = check_testable(f)?;
    let field = f.field();
    let q = field.order();
    for d in 1..=n / 2 {
        let count = crate::budget::checked_pow(q, d)
            .ok_or_else(|| Error::budget("trial division candidates", u128::MAX, u64::MAX))?;
        for idx in 0..count {
            if f.divisible_by(&Poly::monic_from_index(field, d, idx)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Ben-Or: `f` is irreducible iff `gcd(X^{q^i} - X, f) = 1` for every `i <= deg f / 2`.
pub fn is_irreducible_ben_or(f: &Poly) -> Result<bool> {
    let n = check_testable(f)?;
    let field = f.field();
    let q = field.order();
    let x = Poly::x(field);
    let mut frob = x.rem(f)?;
    for _ in 1..=n / 2 {
        frob = frob.powmod(q, f)?;
        let g = frob.sub(&x)?.gcd(f)?;
        if !g.is_one() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Number of monic irreducibles of degree `n` over F_q.
pub fn irreducible_count(q: u64, n: usize) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::InvalidArgument("irreducible count needs degree n >= 1".into()));
    }
    let qb = BigInt::from(q);
    let mut acc = BigInt::zero();
    for e in divisors(n as u64) {
        let mu = mobius(n as u64 / e);
        if mu != 0 {
            acc += BigInt::from(mu) * qb.pow(e as u32);
        }
    }
    let (quot, rem) = (&acc / BigInt::from(n), &acc % BigInt::from(n));
    debug_assert!(rem.is_zero());
    Ok(quot.to_biguint().expect("irreducible count is nonnegative"))
}

/// `Π(1), ..., Π(n)` as a vector indexed by degree (entry 0 is zero).
pub fn irreducible_counts(q: u64, n: usize) -> Vec<BigUint> {
    let mut out = vec![BigUint::zero()];
    for d in 1..=n {
        out.push(irreducible_count(q, d).expect("positive degree"));
    }
    out
}

/// Monic polynomials of a fixed degree, constant coefficient varying fastest.
#[derive(Debug, Clone)]
pub struct Monics {
    field: FieldSpec,
    degree: usize,
    next: u64,
    total: u64,
}

impl Iterator for Monics {
    type Item = Poly;

    fn next(&mut self) -> Option<Poly> {
        if self.next >= self.total {
            return None;
        }
        let p = Poly::monic_from_index(self.field, self.degree, self.next);
        self.next += 1;
        Some(p)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.total - self.next) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for Monics {}

pub fn enumerate_monics(field: FieldSpec, n: usize, budget: &Budget) -> Result<Monics> {
    let total = budget.check_enumeration(field.order(), n)?;
    Ok(Monics {
        field,
        degree: n,
        next: 0,
        total,
    })
}

pub fn enumerate_irreducibles(field: FieldSpec, n: usize, budget: &Budget) -> Result<Vec<Poly>> {
    if n == 0 {
        return Err(Error::InvalidArgument("irreducibles have degree n >= 1".into()));
    }
    let expected = irreducible_count(field.order(), n)?;
    if expected > BigUint::from(budget.irreducibles) {
        return Err(Error::budget(
            "irreducible enumeration",
            u128::try_from(&expected).unwrap_or(u128::MAX),
            budget.irreducibles,
        ));
    }
    let mut out = Vec::new();
    for f in enumerate_monics(field, n, budget)? {
        if n == 1 || (f.coeff(0) != 0 && is_irreducible(&f)?) {
            out.push(f);
        }
    }
    if BigUint::from(out.len()) != expected {
        return Err(Error::Consistency(format!(
            "found {} irreducibles of degree {n}, expected {expected}",
            out.len()
        )));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64) -> FieldSpec {
        FieldSpec::prime(p).unwrap()
    }

    #[test]
    fn small_irreducibility() {
        let f2 = f(2);
        assert!(is_irreducible(&Poly::new(f2, vec![1, 1, 1]).unwrap()).unwrap());
        assert!(!is_irreducible(&Poly::new(f2, vec![1, 0, 1]).unwrap()).unwrap());
        for p in [2, 3, 7] {
            assert!(is_irreducible(&Poly::x(f(p))).unwrap());
        }
        assert_eq!(is_irreducible(&Poly::one(f2)), Err(Error::ConstantPolynomial));
        assert_eq!(
            is_irreducible(&Poly::new(f(3), vec![1, 2]).unwrap()),
            Err(Error::NotMonic)
        );
    }

    #[test]
    fn trial_and_ben_or_agree() {
        let budget = Budget::default();
        for (p, max) in [(2u64, 9usize), (3, 6), (5, 4)] {
            for n in 1..=max {
                for g in enumerate_monics(f(p), n, &budget).unwrap() {
                    assert_eq!(
                        is_irreducible_trial(&g).unwrap(),
                        is_irreducible_ben_or(&g).unwrap(),
                        "{g}"
                    );
                }
            }
        }
    }

    #[test]
    fn counts() {
        assert_eq!(irreducible_count(2, 1).unwrap(), BigUint::from(2u32));
        assert_eq!(irreducible_count(2, 4).unwrap(), BigUint::from(3u32));
        assert_eq!(irreducible_count(3, 2).unwrap(), BigUint::from(3u32));
        assert!(irreducible_count(2, 0).is_err());
    }

    #[test]
    fn gauss_identity() {
        for q in [2u64, 3, 5] {
            for n in 1..=30usize {
                let total: BigUint = divisors(n as u64)
                    .into_iter()
                    .map(|d| BigUint::from(d) * irreducible_count(q, d as usize).unwrap())
                    .sum();
                assert_eq!(total, BigUint::from(q).pow(n as u32), "q={q} n={n}");
            }
        }
    }

    #[test]
    fn enumeration() {
        let budget = Budget::default();
        assert_eq!(enumerate_monics(f(2), 2, &budget).unwrap().count(), 4);
        let zero: Vec<_> = enumerate_monics(f(3), 0, &budget).unwrap().collect();
        assert_eq!(zero, vec![Poly::one(f(3))]);
        let cubics: std::collections::BTreeSet<_> = enumerate_monics(f(2), 3, &budget).unwrap().collect();
        assert_eq!(cubics.len(), 8);

        let quad = enumerate_irreducibles(f(2), 2, &budget).unwrap();
        assert_eq!(quad, vec![Poly::new(f(2), vec![1, 1, 1]).unwrap()]);
        assert_eq!(enumerate_irreducibles(f(2), 1, &budget).unwrap().len(), 2);
        assert_eq!(enumerate_irreducibles(f(3), 1, &budget).unwrap().len(), 3);
        for n in 1..=10 {
            let list = enumerate_irreducibles(f(2), n, &budget).unwrap();
            assert_eq!(BigUint::from(list.len()), irreducible_count(2, n).unwrap());
        }
    }

    #[test]
    fn mobius_and_divisors() {
        let mu: Vec<i8> = (1..=10).map(mobius).collect();
        assert_eq!(mu, vec![1, -1, -1, 0, -1, 1, -1, 0, 0, 1]);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(1), vec![1]);
    }
}
