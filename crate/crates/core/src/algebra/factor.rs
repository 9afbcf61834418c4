use num_bigint::BigUint;
use num_traits::One;

use super::field::FieldSpec;
use super::irreducible::is_irreducible;
use super::poly::Poly;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorStats {
    pub omega: usize,
    pub mu: i8,
    pub squarefree: bool,
    /// Monic irreducible factors with multiplicities, sorted by degree then coefficients.
    pub factors: Vec<(Poly, u32)>,
}

impl FactorStats {
    fn from_factors(factors: Vec<(Poly, u32)>) -> Self {
        let omega = factors.len();
        let squarefree = factors.iter().all(|&(_, e)| e == 1);
        let mu = match (squarefree, omega % 2) {
            (false, _) => 0,
            (true, 0) => 1,
            (true, _) => -1,
        };
        FactorStats {
            omega,
            mu,
            squarefree,
            factors,
        }
    }
}

/// Trial-division factoring against precomputed irreducible tables.
#[derive(Debug, Clone)]
pub struct Factorizer {
    field: FieldSpec,
    tables: Vec<Vec<Poly>>,
}

impl Factorizer {
    /// Default table bound: degree 20 for q = 2, scaled by `log 2 / log q`.
    pub fn default_bound(q: u64) -> usize {
        ((20.0 * 2f64.ln() / (q as f64).ln()).floor() as usize).max(1)
    }

    /// Tables of all monic irreducibles of degree `1..=bound`.
    pub fn new(field: FieldSpec, bound: usize) -> Self {
        let mut tables: Vec<Vec<Poly>> = vec![Vec::new()];
        for d in 1..=bound {
            let count = crate::budget::checked_pow(field.order(), d).expect("table bound too large");
            let mut list = Vec::new();
            for idx in 0..count {
                let g = Poly::monic_from_index(field, d, idx);
                let composite = tables[1..=d / 2].iter().flatten().any(|p| g.divisible_by(p));
                if !composite {
                    list.push(g);
                }
            }
            tables.push(list);
        }
        Factorizer { field, tables }
    }

    /// Tables just large enough to factor anything of degree `<= max_degree` by trial division.
    pub fn for_degree(field: FieldSpec, max_degree: usize) -> Self {
        Factorizer::new(field, max_degree / 2)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn bound(&self) -> usize {
        self.tables.len() - 1
    }

    pub fn irreducibles(&self, degree: usize) -> &[Poly] {
        self.tables.get(degree).map_or(&[], |t| t.as_slice())
    }

    pub fn factor(&self, f: &Poly) -> Result<FactorStats> {
        if f.field() != self.field {
            return Err(Error::FieldMismatch);
        }
        if !f.is_monic() {
            return Err(if f.is_zero() {
                Error::ZeroPolynomial
            } else {
                Error::NotMonic
            });
        }
        let mut rest = f.clone();
        let mut factors = Vec::new();
        'outer: for table in self.tables.iter().skip(1) {
            for p in table {
                let rd = rest.deg().unwrap_or(0);
                let pd = p.deg().unwrap_or(0);
                if 2 * pd > rd {
                    break 'outer;
                }
                let mut mult = 0;
                loop {
                    let (quot, rem) = rest.divrem_raw(p)?;
                    if !rem.is_zero() {
                        break;
                    }
                    rest = quot;
                    mult += 1;
                }
                if mult > 0 {
                    factors.push((p.clone(), mult));
                }
            }
        }
        if let Some(rd) = rest.deg().filter(|&d| d > 0) {
            // every divisor of degree <= bound is gone, so a small cofactor is prime
            if rd > 2 * self.bound() + 1 && !is_irreducible(&rest)? {
                return Err(Error::budget(
                    "factor table degree",
                    (rd / 2) as u128,
                    self.bound() as u128,
                ));
            }
            factors.push((rest, 1));
        }
        factors.sort();
        Ok(FactorStats::from_factors(factors))
    }
}

/// `|(F_q[X]/(d))^×| = prod_{p^e || d} q^{(e-1) deg p} (q^{deg p} - 1)`.
pub fn unit_group_order(d: &Poly) -> Result<BigUint> {
    let stats = factor_stats(&d.monic())?;
    let q = BigUint::from(d.field().order());
    Ok(stats.factors.iter().fold(BigUint::one(), |acc, (p, e)| {
        let deg = p.deg().expect("positive degree") as u32;
        acc * q.pow((e - 1) * deg) * (q.pow(deg) - 1u32)
    }))
}

/// Factor a single monic polynomial, building tables as needed.
pub fn factor_stats(f: &Poly) -> Result<FactorStats> {
    let n = f.deg().ok_or(Error::ZeroPolynomial)?;
    Factorizer::for_degree(f.field(), n).factor(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::enumerate_monics;
    use crate::budget::Budget;

    fn f2() -> FieldSpec {
        FieldSpec::prime(2).unwrap()
    }

    #[test]
    fn examples() {
        let s = factor_stats(&Poly::new(f2(), vec![0, 1, 1]).unwrap()).unwrap();
        assert_eq!((s.omega, s.mu, s.squarefree), (2, 1, true));
        assert_eq!(
            s.factors,
            vec![
                (Poly::new(f2(), vec![0, 1]).unwrap(), 1),
                (Poly::new(f2(), vec![1, 1]).unwrap(), 1)
            ]
        );
        let s = factor_stats(&Poly::monomial(f2(), 1, 2)).unwrap();
        assert_eq!((s.omega, s.mu, s.squarefree), (1, 0, false));
        let s = factor_stats(&Poly::one(f2())).unwrap();
        assert_eq!((s.omega, s.mu, s.factors.len()), (0, 1, 0));
        let f3 = FieldSpec::prime(3).unwrap();
        assert_eq!(factor_stats(&Poly::new(f3, vec![1, 2]).unwrap()), Err(Error::NotMonic));
    }

    #[test]
    fn product_of_factors_recovers_input() {
        let budget = Budget::default();
        for p in [2u64, 3] {
            let field = FieldSpec::prime(p).unwrap();
            let fz = Factorizer::for_degree(field, 6);
            for n in 0..=6 {
                for g in enumerate_monics(field, n, &budget).unwrap() {
                    let s = fz.factor(&g).unwrap();
                    let mut prod = Poly::one(field);
                    for (p, e) in &s.factors {
                        for _ in 0..*e {
                            prod = prod.mul(p).unwrap();
                        }
                    }
                    assert_eq!(prod, g);
                    let expected_mu = if s.squarefree {
                        if s.omega.is_multiple_of(2) {
                            1
                        } else {
                            -1
                        }
                    } else {
                        0
                    };
                    assert_eq!(s.mu, expected_mu);
                }
            }
        }
    }

    #[test]
    fn unit_group_orders() {
        let f3 = FieldSpec::prime(3).unwrap();
        let order = |c: &[u32]| unit_group_order(&Poly::new(f3, c.to_vec()).unwrap()).unwrap();
        assert_eq!(order(&[0, 1]), BigUint::from(2u32));
        assert_eq!(order(&[0, 0, 1]), BigUint::from(6u32));
        assert_eq!(order(&[1, 0, 1]), BigUint::from(8u32));
        assert_eq!(order(&[0, 1, 1]), BigUint::from(4u32));
    }

    #[test]
    fn default_bounds() {
        assert_eq!(Factorizer::default_bound(2), 20);
        assert_eq!(Factorizer::default_bound(4), 10);
        assert_eq!(Factorizer::new(f2(), 4).irreducibles(4).len(), 3);
    }
}
