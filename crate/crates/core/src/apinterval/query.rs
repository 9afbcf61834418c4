use std::sync::Arc;

use num_bigint::BigUint;
use num_complex::Complex64;
use num_traits::Zero;

use super::series::{ap_series, GroupSeries};
use crate::algebra::{enumerate_monics, Factorizer, FieldSpec, Poly};
use crate::budget::Budget;
use crate::characters::{characters, twisted_tables, DirichletChar, UnitGroup};
use crate::error::{Error, Result};

/// Largest allowed distance of the character path from an integer.
pub const ROUNDING_TOLERANCE: f64 = 1e-6;
/// Largest allowed imaginary part of the character path.
pub const IMAGINARY_TOLERANCE: f64 = 1e-8;

/// `#{f in M_n : f ≡ g mod d, μ²(f) = 1, ω(f) = k}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct APQuery {
    pub n: usize,
    pub k: usize,
    pub g: Poly,
    pub d: Poly,
}

impl APQuery {
    pub fn validate(&self) -> Result<()> {
        if self.g.field() != self.d.field() {
            return Err(Error::FieldMismatch);
        }
        if !self.d.is_monic() {
            return Err(if self.d.is_zero() {
                Error::ZeroPolynomial
            } else {
                Error::NotMonic
            });
        }
        if self.d.deg() == Some(0) {
            return Err(Error::ConstantPolynomial);
        }
        if self.g.is_zero() || !self.g.gcd(&self.d)?.is_one() {
            return Err(Error::NotCoprime(format!("{} mod {}", self.g, self.d)));
        }
        Ok(())
    }
}

/// `#{f in M_n : deg(f - g) <= h, μ²(f) = 1, ω(f) = k}` for monic `g` of degree `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalQuery {
    pub n: usize,
    pub k: usize,
    pub g: Poly,
    pub h: usize,
}

impl IntervalQuery {
    pub fn validate(&self) -> Result<()> {
        if !self.g.is_monic() || self.g.deg() != Some(self.n) {
            return Err(Error::InvalidArgument(format!(
                "interval centre {} must be monic of degree {}",
                self.g, self.n
            )));
        }
        if self.h >= self.n {
            return Err(Error::InvalidArgument(format!(
                "need h < n, got h = {} and n = {}",
                self.h, self.n
            )));
        }
        Ok(())
    }

    /// The modulus `X^{n-h}` of the equivalent progressions.
    pub fn modulus(&self) -> Poly {
        Poly::monomial(self.g.field(), 1, self.n - self.h)
    }
}

/// Group-ring path.
pub fn pi_k_ap_exact(qy: &APQuery, budget: &Budget) -> Result<BigUint> {
    qy.validate()?;
    let group = Arc::new(UnitGroup::new(&qy.d, budget)?);
    let series = ap_series(&group, qy.n, qy.k, budget)?;
    series.count(&qy.g, qy.n, qy.k)
}

/// Character tables `Π_k(n, χ)` for every character of a group, queried by
/// orthogonality `(1/Φ(d)) sum_χ conj(χ(g)) Π_k(n, χ)`.
#[derive(Debug, Clone)]
pub struct CharacterPath {
    group: Arc<UnitGroup>,
    chars: Vec<DirichletChar>,
    tables: Vec<Vec<Vec<Complex64>>>,
}

impl CharacterPath {
    pub fn new(group: &Arc<UnitGroup>, n_max: usize, k_max: usize, budget: &Budget) -> Result<Self> {
        let chars = characters(group);
        let tables = twisted_tables(&chars, n_max, k_max, budget)?;
        Ok(CharacterPath {
            group: group.clone(),
            chars,
            tables,
        })
    }

    /// The unrounded orthogonality sum.
    pub fn raw(&self, g: &Poly, n: usize, k: usize) -> Result<Complex64> {
        let class = self
            .group
            .index_of(g)
            .ok_or_else(|| Error::NotCoprime(format!("{g} mod {}", self.group.modulus())))?;
        let (n_max, k_max) = (self.tables[0].len() - 1, self.tables[0][0].len() - 1);
        if n > n_max || k > k_max {
            return Err(Error::OutOfRange(format!(
                "(n, k) = ({n}, {k}) beyond the character tables"
            )));
        }
        let sum: Complex64 = self
            .chars
            .iter()
            .zip(&self.tables)
            .map(|(chi, t)| chi.value_at_index(class).conj() * t[n][k])
            .sum();
        Ok(sum / self.group.order() as f64)
    }

    /// Only the principal character's term.
    pub fn principal_term(&self, n: usize, k: usize) -> Complex64 {
        self.tables[0][n][k] / self.group.order() as f64
    }

    /// The orthogonality sum rounded to the nearest integer.
    pub fn count(&self, g: &Poly, n: usize, k: usize) -> Result<f64> {
        let v = self.raw(g, n, k)?;
        let rounded = v.re.round() + 0.0;
        if v.im.abs() > IMAGINARY_TOLERANCE || (v.re - rounded).abs() > ROUNDING_TOLERANCE {
            return Err(Error::Consistency(format!("character path gave {v}, not an integer")));
        }
        Ok(rounded)
    }
}

pub fn pi_k_ap_chars(qy: &APQuery, budget: &Budget) -> Result<f64> {
    qy.validate()?;
    let group = Arc::new(UnitGroup::new(&qy.d, budget)?);
    CharacterPath::new(&group, qy.n, qy.k, budget)?.count(&qy.g, qy.n, qy.k)
}

fn counts_toward(factorizer: &Factorizer, f: &Poly, k: usize) -> Result<bool> {
    let s = factorizer.factor(f)?;
    Ok(s.squarefree && s.omega == k)
}

/// Enumeration oracle for progressions.
pub fn pi_k_ap_brute(qy: &APQuery, budget: &Budget) -> Result<BigUint> {
    qy.validate()?;
    let target = qy.g.rem(&qy.d)?;
    let factorizer = Factorizer::for_degree(qy.d.field(), qy.n);
    let mut count = BigUint::zero();
    for f in enumerate_monics(qy.d.field(), qy.n, budget)? {
        if f.rem(&qy.d)? == target && counts_toward(&factorizer, &f, qy.k)? {
            count += 1u32;
        }
    }
    Ok(count)
}

/// `sum_a P(n; a^-1 g*) + sum_a P'(n-1; a^-1 g*)` over `a in F_q^*`, where
/// `P = Π_k(·, X^{n-h})` and `P' = Π_{k-1}(·, X^{n-h})` come from `count`.
fn involution_sum<T>(
    qy: &IntervalQuery,
    modulus: &Poly,
    zero: T,
    mut count: impl FnMut(&Poly, usize, usize) -> Result<T>,
) -> Result<T>
where
    T: std::ops::AddAssign,
{
    qy.validate()?;
    if modulus != &qy.modulus() {
        return Err(Error::InvalidArgument(format!(
            "tables are for modulus {modulus}, interval needs {}",
            qy.modulus()
        )));
    }
    let field = qy.g.field();
    let g_star = qy.g.involute()?.truncate(qy.n - qy.h);
    let mut total = zero;
    for a in 1..field.order() as u32 {
        let residue = g_star.scale(field.inv(a).expect("nonzero scalar"));
        // f(0) != 0: f* has degree n and leading coefficient f(0)
        total += count(&residue, qy.n, qy.k)?;
        // f = X f_1 with f_1(0) != 0: f* = f_1* has degree n - 1 and ω drops by one
        if qy.k >= 1 {
            total += count(&residue, qy.n - 1, qy.k - 1)?;
        }
    }
    Ok(total)
}

/// Involution path on a prebuilt series for the modulus `X^{n-h}`.
pub fn pi_k_interval_with(series: &GroupSeries, qy: &IntervalQuery) -> Result<BigUint> {
    involution_sum(qy, series.group().modulus(), BigUint::zero(), |g, n, k| {
        series.count(g, n, k)
    })
}

/// Involution path with each progression count taken from character sums.
pub fn pi_k_interval_chars(path: &CharacterPath, qy: &IntervalQuery) -> Result<f64> {
    involution_sum(qy, path.group.modulus(), 0.0, |g, n, k| path.count(g, n, k))
}

pub fn pi_k_interval_exact(qy: &IntervalQuery, budget: &Budget) -> Result<BigUint> {
    qy.validate()?;
    let group = Arc::new(UnitGroup::new(&qy.modulus(), budget)?);
    let series = ap_series(&group, qy.n, qy.k, budget)?;
    pi_k_interval_with(&series, qy)
}

/// Enumeration oracle over the `q^{h+1}` polynomials `g + r`, `deg r <= h`.
pub fn pi_k_interval_brute(qy: &IntervalQuery, budget: &Budget) -> Result<BigUint> {
    qy.validate()?;
    let field = qy.g.field();
    let size = budget.check_enumeration(field.order(), qy.h + 1)?;
    let factorizer = Factorizer::for_degree(field, qy.n);
    let mut count = BigUint::zero();
    for code in 0..size {
        let f = qy.g.add(&Poly::from_code(field, code))?;
        if counts_toward(&factorizer, &f, qy.k)? {
            count += 1u32;
        }
    }
    Ok(count)
}

/// The `q^{n-h-1}` monic centres of degree `n` whose coefficients of `X^j`,
/// `j <= h`, vanish; their intervals partition `M_n`.
pub fn interval_representatives(field: FieldSpec, n: usize, h: usize, budget: &Budget) -> Result<Vec<Poly>> {
    if h >= n {
        return Err(Error::InvalidArgument(format!("need h < n, got h = {h} and n = {n}")));
    }
    let free = n - h - 1;
    let count = budget.check_enumeration(field.order(), free)?;
    Ok((0..count)
        .map(|idx| {
            let top = Poly::monic_from_index(field, free, idx);
            let mut coeffs = vec![0u32; h + 1];
            coeffs.extend_from_slice(top.coeffs());
            Poly::new(field, coeffs).expect("valid digits")
        })
        .collect())
}
