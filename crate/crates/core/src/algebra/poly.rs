use std::cmp::Ordering;
use std::fmt;

use super::field::FieldSpec;
use crate::error::{Error, Result};

/// Degree of a polynomial; the zero polynomial has degree `NegInfinity`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }

    /// `deg <= bound`, with `-inf <= anything`.
    pub fn at_most(self, bound: usize) -> bool {
        self <= Degree::Finite(bound)
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => f.write_str("-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// A polynomial over F_q with coefficients ascending in degree and no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    field: FieldSpec,
    coeffs: Vec<u32>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]({:?})", self, self.field)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.coeffs.iter().map(|&c| self.field.format_elem(c)).collect();
        f.write_str(&parts.join(","))
    }
}

fn trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

impl Poly {
    pub fn new(field: FieldSpec, mut coeffs: Vec<u32>) -> Result<Self> {
        if let Some(&bad) = coeffs.iter().find(|&&c| !field.contains(c)) {
            return Err(Error::InvalidArgument(format!("{bad} is not an element of {field:?}")));
        }
        trim(&mut coeffs);
        Ok(Poly { field, coeffs })
    }

    pub(crate) fn from_raw(field: FieldSpec, mut coeffs: Vec<u32>) -> Self {
        trim(&mut coeffs);
        Poly { field, coeffs }
    }

    pub fn zero(field: FieldSpec) -> Self {
        Poly {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: FieldSpec) -> Self {
        Poly { field, coeffs: vec![1] }
    }

    pub fn constant(field: FieldSpec, c: u32) -> Self {
        Poly::from_raw(field, vec![c])
    }

    pub fn x(field: FieldSpec) -> Self {
        Poly {
            field,
            coeffs: vec![0, 1],
        }
    }

    /// `c * X^n`
    pub fn monomial(field: FieldSpec, c: u32, n: usize) -> Self {
        let mut coeffs = vec![0; n + 1];
        coeffs[n] = c;
        Poly::from_raw(field, coeffs)
    }

    /// Parse the comma-separated ascending coefficient format, e.g. `1,0,1,1`.
    pub fn parse(field: FieldSpec, text: &str) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() {
            return Err(Error::parse(text, "empty polynomial"));
        }
        let coeffs = text
            .split(',')
            .map(|tok| field.parse_elem(tok))
            .collect::<Result<Vec<_>>>()?;
        Ok(Poly::from_raw(field, coeffs))
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u32 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::NegInfinity,
            n => Degree::Finite(n - 1),
        }
    }

    /// Degree of a nonzero polynomial.
    pub fn deg(&self) -> Option<usize> {
        self.degree().finite()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn leading(&self) -> Option<u32> {
        self.coeffs.last().copied()
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == Some(1)
    }

    fn same_field(&self, other: &Poly) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Poly) -> Result<Poly> {
        self.same_field(other)?;
        Ok(self.add_raw(other))
    }

    pub fn sub(&self, other: &Poly) -> Result<Poly> {
        self.same_field(other)?;
        Ok(self.add_raw(&other.neg()))
    }

    pub fn mul(&self, other: &Poly) -> Result<Poly> {
        self.same_field(other)?;
        Ok(self.mul_raw(other))
    }

    /// Quotient and remainder with `self = quot * divisor + rem`, `deg rem < deg divisor`.
    pub fn divrem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        self.same_field(divisor)?;
        self.divrem_raw(divisor)
    }

    pub fn rem(&self, divisor: &Poly) -> Result<Poly> {
        Ok(self.divrem(divisor)?.1)
    }

    pub fn neg(&self) -> Poly {
        let f = self.field;
        Poly {
            field: f,
            coeffs: self.coeffs.iter().map(|&c| f.neg(c)).collect(),
        }
    }

    pub fn scale(&self, c: u32) -> Poly {
        let f = self.field;
        Poly::from_raw(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    /// Divide by the leading coefficient; the zero polynomial stays zero.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            None | Some(1) => self.clone(),
            Some(lc) => self.scale(self.field.inv(lc).expect("nonzero leading coefficient")),
        }
    }

    pub fn derivative(&self) -> Poly {
        let f = self.field;
        let p = f.characteristic();
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| {
                // i * c computed as repeated addition modulo the characteristic
                let times = (i as u64 % p) as u32;
                let mut acc = 0;
                for _ in 0..times {
                    acc = f.add(acc, c);
                }
                acc
            })
            .collect();
        Poly::from_raw(f, coeffs)
    }

    pub fn eval(&self, x: u32) -> u32 {
        let f = self.field;
        self.coeffs.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        self.same_field(other)?;
        if self.is_zero() && other.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.divrem_raw(&b)?.1;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    pub fn mulmod(&self, other: &Poly, modulus: &Poly) -> Result<Poly> {
        self.mul(other)?.rem(modulus)
    }

    pub fn powmod(&self, mut exp: u64, modulus: &Poly) -> Result<Poly> {
        self.same_field(modulus)?;
        let mut base = self.rem(modulus)?;
        let mut acc = Poly::one(self.field).rem(modulus)?;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul_raw(&base).divrem_raw(modulus)?.1;
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul_raw(&base).divrem_raw(modulus)?.1;
            }
        }
        Ok(acc)
    }

    /// `X^deg f * f(1/X)`: the coefficient vector reversed, then trimmed.
    pub fn involute(&self) -> Result<Poly> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Ok(Poly::from_raw(self.field, coeffs))
    }

    /// Residue modulo `X^n`.
    pub fn truncate(&self, n: usize) -> Poly {
        let mut coeffs = self.coeffs.clone();
        coeffs.truncate(n);
        Poly::from_raw(self.field, coeffs)
    }

    /// Base-q integer code of a polynomial of degree < `len` (coefficient of X^i is digit i).
    pub fn code(&self) -> u64 {
        let q = self.field.order();
        self.coeffs.iter().rev().fold(0, |acc, &c| acc * q + c as u64)
    }

    pub fn from_code(field: FieldSpec, mut code: u64) -> Poly {
        let q = field.order();
        let mut coeffs = Vec::new();
        while code > 0 {
            coeffs.push((code % q) as u32);
            code /= q;
        }
        Poly::from_raw(field, coeffs)
    }

    /// Monic polynomial of degree `n` whose lower coefficients are the base-q digits of `index`.
    pub fn monic_from_index(field: FieldSpec, n: usize, mut index: u64) -> Poly {
        let q = field.order();
        let mut coeffs = Vec::with_capacity(n + 1);
        for _ in 0..n {
            coeffs.push((index % q) as u32);
            index /= q;
        }
        coeffs.push(1);
        Poly { field, coeffs }
    }

    pub(crate) fn add_raw(&self, other: &Poly) -> Poly {
        let f = self.field;
        let (long, short) = if self.coeffs.len() >= other.coeffs.len() {
            (&self.coeffs, &other.coeffs)
        } else {
            (&other.coeffs, &self.coeffs)
        };
        let mut coeffs = long.clone();
        for (c, &s) in coeffs.iter_mut().zip(short.iter()) {
            *c = f.add(*c, s);
        }
        Poly::from_raw(f, coeffs)
    }

    pub(crate) fn mul_raw(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.field);
        }
        let f = self.field;
        let mut coeffs = vec![0u32; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = f.add(coeffs[i + j], f.mul(a, b));
            }
        }
        Poly::from_raw(f, coeffs)
    }

    pub(crate) fn divrem_raw(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        let f = self.field;
        let dlead = divisor.leading().ok_or(Error::DivisionByZero)?;
        let dn = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= dn {
            return Ok((Poly::zero(f), self.clone()));
        }
        let inv = f.inv(dlead).expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u32; rem.len() - dn];
        for i in (0..quot.len()).rev() {
            let t = rem[i + dn];
            if t == 0 {
                continue;
            }
            let c = if inv == 1 { t } else { f.mul(t, inv) };
            quot[i] = c;
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                if d != 0 {
                    rem[i + j] = f.sub(rem[i + j], f.mul(c, d));
                }
            }
        }
        rem.truncate(dn);
        Ok((Poly::from_raw(f, quot), Poly::from_raw(f, rem)))
    }

    /// `true` iff `divisor | self`.
    pub(crate) fn divisible_by(&self, divisor: &Poly) -> bool {
        self.divrem_raw(divisor).map(|(_, r)| r.is_zero()).unwrap_or(false)
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Degree first, then coefficients from the top down.
impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64) -> FieldSpec {
        FieldSpec::prime(p).unwrap()
    }

    fn poly(field: FieldSpec, c: &[u32]) -> Poly {
        Poly::new(field, c.to_vec()).unwrap()
    }

    #[test]
    fn square_in_characteristic_two() {
        let f2 = f(2);
        let x1 = poly(f2, &[1, 1]);
        assert_eq!(x1.mul(&x1).unwrap(), poly(f2, &[1, 0, 1]));
    }

    #[test]
    fn divrem_examples() {
        let f2 = f(2);
        let (q, r) = poly(f2, &[0, 0, 0, 1]).divrem(&poly(f2, &[0, 0, 1])).unwrap();
        assert_eq!(q, poly(f2, &[0, 1]));
        assert!(r.is_zero());

        // X^2 + 1 = (X + 2)(X + 1) + 2 over F_3
        let f3 = f(3);
        let (q, r) = poly(f3, &[1, 0, 1]).divrem(&poly(f3, &[1, 1])).unwrap();
        assert_eq!(q, poly(f3, &[2, 1]));
        assert_eq!(r, poly(f3, &[2]));
    }

    #[test]
    fn divrem_errors() {
        let a = poly(f(2), &[1, 1]);
        assert_eq!(a.divrem(&Poly::zero(f(2))), Err(Error::DivisionByZero));
        assert_eq!(a.add(&poly(f(3), &[1])), Err(Error::FieldMismatch));
    }

    #[test]
    fn gcd_examples() {
        let f2 = f(2);
        let g = poly(f2, &[0, 1, 1]).gcd(&poly(f2, &[0, 1])).unwrap();
        assert_eq!(g, poly(f2, &[0, 1]));
        let g = poly(f2, &[1, 0, 1]).gcd(&poly(f2, &[1, 1])).unwrap();
        assert_eq!(g, poly(f2, &[1, 1]));

        let f5 = f(5);
        let a = poly(f5, &[2, 4]);
        assert_eq!(a.gcd(&Poly::zero(f5)).unwrap(), a.monic());
        assert_eq!(Poly::zero(f5).gcd(&Poly::zero(f5)), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn degree_sentinel() {
        let z = Poly::zero(f(3));
        assert_eq!(z.degree(), Degree::NegInfinity);
        assert!(z.degree() < Degree::Finite(0));
        assert!(z.degree().at_most(0));
        assert_eq!(Poly::one(f(3)).degree(), Degree::Finite(0));
    }

    #[test]
    fn involution_examples() {
        let f2 = f(2);
        assert_eq!(poly(f2, &[1, 1, 0, 1]).involute().unwrap(), poly(f2, &[1, 0, 1, 1]));
        assert_eq!(Poly::x(f2).involute().unwrap(), Poly::one(f2));
        assert_eq!(Poly::zero(f2).involute(), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn text_format() {
        let f2 = f(2);
        let p = Poly::parse(f2, "1,0,1,1").unwrap();
        assert_eq!(p.to_string(), "1,0,1,1");
        assert_eq!(p.deg(), Some(3));
        assert!(Poly::parse(f2, "1,2").is_err());
        assert!(Poly::parse(f2, "1,,1").is_err());
        assert_eq!(Poly::parse(f2, "0").unwrap(), Poly::zero(f2));

        let f9 = FieldSpec::extension(3, &[1, 0, 1]).unwrap();
        let p = Poly::parse(f9, "1/2,0,1").unwrap();
        assert_eq!(p.to_string(), "1/2,0,1");
        assert_eq!(Poly::parse(f9, &p.to_string()).unwrap(), p);
    }

    #[test]
    fn derivative_vanishes_on_pth_powers() {
        let f3 = f(3);
        // X^3 + 1 has zero derivative in characteristic 3
        assert!(poly(f3, &[1, 0, 0, 1]).derivative().is_zero());
        assert_eq!(poly(f3, &[1, 1, 1]).derivative(), poly(f3, &[1, 2]));
    }

    #[test]
    fn powmod_matches_repeated_multiplication() {
        let f3 = f(3);
        let m = poly(f3, &[2, 1, 0, 1]);
        let x = Poly::x(f3);
        let mut acc = Poly::one(f3);
        for e in 0..20u64 {
            assert_eq!(x.powmod(e, &m).unwrap(), acc);
            acc = acc.mulmod(&x, &m).unwrap();
        }
    }
}
