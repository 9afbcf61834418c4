use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

/// Polynomial in `z` with exact rational coefficients, ascending.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ZPoly {
    coeffs: Vec<BigRational>,
}

impl fmt::Debug for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ZPoly[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

/// Exact complex rational `re + i im`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl ComplexRational {
    /// Exact value of a double-precision complex number.
    pub fn from_complex(z: Complex64) -> Option<Self> {
        Some(ComplexRational {
            re: BigRational::from_float(z.re)?,
            im: BigRational::from_float(z.im)?,
        })
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }
}

impl ZPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        ZPoly { coeffs }
    }

    pub fn zero() -> Self {
        ZPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: BigRational) -> Self {
        ZPoly::new(vec![c])
    }

    pub fn from_integers<'a>(coeffs: impl IntoIterator<Item = &'a BigUint>) -> Self {
        ZPoly::new(
            coeffs
                .into_iter()
                .map(|c| BigRational::from_integer(BigInt::from(c.clone())))
                .collect(),
        )
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add(&self, other: &ZPoly) -> ZPoly {
        let len = self.coeffs.len().max(other.coeffs.len());
        ZPoly::new((0..len).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &ZPoly) -> ZPoly {
        self.mul_truncated(other, usize::MAX)
    }

    /// Product with terms of `z`-degree above `max_degree` dropped.
    pub fn mul_truncated(&self, other: &ZPoly, max_degree: usize) -> ZPoly {
        if self.is_zero() || other.is_zero() {
            return ZPoly::zero();
        }
        let len = (self.coeffs.len() + other.coeffs.len() - 1).min(max_degree.saturating_add(1));
        let mut out = vec![BigRational::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate().take(len) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(len - i) {
                out[i + j] += a * b;
            }
        }
        ZPoly::new(out)
    }

    pub fn scale(&self, c: &BigRational) -> ZPoly {
        ZPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn eval(&self, z: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * z + c)
    }

    /// Exact Horner evaluation at a complex rational point.
    pub fn eval_exact_complex(&self, z: &ComplexRational) -> ComplexRational {
        let mut re = BigRational::zero();
        let mut im = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            let nre = &re * &z.re - &im * &z.im + c;
            let nim = &re * &z.im + &im * &z.re;
            re = nre;
            im = nim;
        }
        ComplexRational { re, im }
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::zero(), |acc, c| acc * z + c.to_f64().unwrap_or(f64::NAN))
    }
}
