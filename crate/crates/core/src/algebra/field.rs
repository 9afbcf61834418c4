//! Finite fields F_q with q = p^e.
//!
//! Elements are encoded as integers in `[0, q)`: for a prime field the code is
//! the residue itself, for an extension it is `sum c_i p^i` where `c_i` is the
//! coefficient of `a^i` in the power basis of the defining modulus.

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported extension degree.
pub const MAX_EXTENSION: usize = 16;

/// Extension fields are limited to this cardinality.
pub const MAX_EXTENSION_ORDER: u64 = 1 << 16;

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    p: u32,
    e: u32,
    q: u32,
    /// Monic modulus over F_p, ascending; only the first `e + 1` entries are used.
    modulus: [u32; MAX_EXTENSION + 1],
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.e == 1 {
            write!(f, "F_{}", self.p)
        } else {
            write!(f, "F_{}^{} mod {:?}", self.p, self.e, self.modulus())
        }
    }
}

pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self> {
        if !is_prime_u64(p) || p > u32::MAX as u64 / 2 {
            return Err(Error::NotPrime(p));
        }
        let mut modulus = [0; MAX_EXTENSION + 1];
        modulus[1] = 1;
        Ok(FieldSpec {
            p: p as u32,
            e: 1,
            q: p as u32,
            modulus,
        })
    }

    /// F_{p^e} defined by a monic irreducible `modulus` over F_p (ascending coefficients).
    pub fn extension(p: u64, modulus: &[u32]) -> Result<Self> {
        let base = FieldSpec::prime(p)?;
        let e = modulus.len().saturating_sub(1);
        if e == 0 {
            return Err(Error::InvalidModulus("modulus must have degree at least 1".into()));
        }
        if e == 1 {
            return Ok(base);
        }
        if e > MAX_EXTENSION {
            return Err(Error::InvalidModulus(format!("degree {e} exceeds {MAX_EXTENSION}")));
        }
        let q = crate::budget::checked_pow(p, e).filter(|&q| q <= MAX_EXTENSION_ORDER);
        let q = q.ok_or_else(|| Error::InvalidModulus(format!("{p}^{e} exceeds {MAX_EXTENSION_ORDER}")))?;
        if modulus.iter().any(|&c| c as u64 >= p) {
            return Err(Error::InvalidModulus("coefficients must lie in [0, p)".into()));
        }
        if modulus[e] != 1 {
            return Err(Error::InvalidModulus("modulus must be monic".into()));
        }
        let poly = crate::algebra::Poly::new(base, modulus.to_vec())?;
        if !crate::algebra::is_irreducible(&poly)? {
            return Err(Error::InvalidModulus(format!("{} is reducible over F_{p}", poly)));
        }
        let mut m = [0; MAX_EXTENSION + 1];
        m[..=e].copy_from_slice(modulus);
        Ok(FieldSpec {
            p: p as u32,
            e: e as u32,
            q: q as u32,
            modulus: m,
        })
    }

    pub fn characteristic(&self) -> u64 {
        self.p as u64
    }

    pub fn degree(&self) -> usize {
        self.e as usize
    }

    pub fn order(&self) -> u64 {
        self.q as u64
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus[..=self.e as usize]
    }

    pub fn is_prime_field(&self) -> bool {
        self.e == 1
    }

    #[inline]
    pub fn contains(&self, a: u32) -> bool {
        a < self.q
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.e == 1 {
            let s = a + b;
            if s >= self.p {
                s - self.p
            } else {
                s
            }
        } else {
            self.digitwise(a, b, |x, y| (x + y) % self.p)
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if self.e == 1 {
            if a == 0 {
                0
            } else {
                self.p - a
            }
        } else {
            self.digitwise(a, 0, |x, _| (self.p - x) % self.p)
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if self.e == 1 {
            ((a as u64 * b as u64) % self.p as u64) as u32
        } else {
            self.ext_mul(a, b)
        }
    }

    pub fn pow(&self, a: u32, mut exp: u64) -> u32 {
        let mut base = a;
        let mut acc = 1;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            None
        } else {
            Some(self.pow(a, self.q as u64 - 2))
        }
    }

    pub fn digits(&self, a: u32) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.e as usize);
        let mut rest = a;
        for _ in 0..self.e {
            out.push(rest % self.p);
            rest /= self.p;
        }
        out
    }

    pub fn from_digits(&self, digits: &[u32]) -> u32 {
        digits.iter().rev().fold(0, |acc, &d| acc * self.p + d)
    }

    fn digitwise(&self, a: u32, b: u32, f: impl Fn(u32, u32) -> u32) -> u32 {
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut scale = 1;
        for _ in 0..self.e {
            out += f(a % self.p, b % self.p) * scale;
            a /= self.p;
            b /= self.p;
            scale *= self.p;
        }
        out
    }

    fn ext_mul(&self, a: u32, b: u32) -> u32 {
        let e = self.e as usize;
        let p = self.p as u64;
        let (da, db) = (self.digits(a), self.digits(b));
        let mut prod = vec![0u64; 2 * e - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        for i in (e..2 * e - 1).rev() {
            let t = prod[i];
            if t == 0 {
                continue;
            }
            for j in 0..e {
                let sub = t * self.modulus[j] as u64 % p;
                prod[i - e + j] = (prod[i - e + j] + p - sub) % p;
            }
            prod[i] = 0;
        }
        let digits: Vec<u32> = prod[..e].iter().map(|&x| x as u32).collect();
        self.from_digits(&digits)
    }

    /// Parse an element: a base-10 integer below p, or a slash-separated
    /// F_p coordinate vector for extensions.
    pub fn parse_elem(&self, token: &str) -> Result<u32> {
        let token = token.trim();
        let parse_digit = |t: &str| -> Result<u32> {
            let v: u64 = t
                .trim()
                .parse()
                .map_err(|_| Error::parse(token, "expected a non-negative integer"))?;
            if v >= self.p as u64 {
                return Err(Error::parse(token, format!("coefficient must be below p = {}", self.p)));
            }
            Ok(v as u32)
        };
        if self.e == 1 {
            if token.contains('/') {
                return Err(Error::parse(token, "vector coefficient over a prime field"));
            }
            return parse_digit(token);
        }
        let parts: Vec<&str> = token.split('/').collect();
        if parts.len() > self.e as usize {
            return Err(Error::parse(token, format!("at most {} coordinates expected", self.e)));
        }
        let digits = parts.iter().map(|t| parse_digit(t)).collect::<Result<Vec<_>>>()?;
        Ok(self.from_digits(&digits))
    }

    pub fn format_elem(&self, a: u32) -> String {
        if self.e == 1 {
            return a.to_string();
        }
        let mut digits = self.digits(a);
        while digits.len() > 1 && *digits.last().unwrap() == 0 {
            digits.pop();
        }
        digits.iter().map(|d| d.to_string()).collect::<Vec<_>>().join("/")
    }
}
