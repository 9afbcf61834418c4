use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// A signed real stored as `sign * exp(ln_abs)`.
#[derive(Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Magnitude {
    sign: i8,
    ln_abs: f64,
}

impl fmt::Debug for Magnitude {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign {
            0 => f.write_str("Magnitude(0)"),
            s => write!(f, "Magnitude({}exp({}))", if s < 0 { "-" } else { "" }, self.ln_abs),
        }
    }
}

/// Natural log of a positive big integer from its top 64 bits.
pub fn ln_biguint(n: &BigUint) -> f64 {
    if n.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = n.bits();
    if bits <= 1000 {
        if let Some(v) = n.to_f64().filter(|v| v.is_finite()) {
            return v.ln();
        }
    }
    let shift = bits.saturating_sub(64);
    let top = (n >> shift).to_f64().expect("64-bit value");
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// `num / den` as a double, accurate even when both exceed the `f64` range.
pub fn big_ratio_f64(num: &BigInt, den: &BigInt) -> f64 {
    if den.is_zero() {
        return f64::NAN;
    }
    if num.is_zero() {
        return 0.0;
    }
    let sign = if (num.sign() == Sign::Minus) != (den.sign() == Sign::Minus) {
        -1.0
    } else {
        1.0
    };
    let (a, b) = (num.magnitude(), den.magnitude());
    // scale so the integer quotient carries about 60 significant bits
    let shift = b.bits() as i64 - a.bits() as i64 + 60;
    let scaled = if shift >= 0 {
        (a << shift as u64) / b
    } else {
        a / (b << (-shift) as u64)
    };
    sign * scaled.to_f64().expect("bounded quotient") * 2f64.powi(-shift as i32)
}

impl Magnitude {
    pub const ZERO: Magnitude = Magnitude {
        sign: 0,
        ln_abs: f64::NEG_INFINITY,
    };

    pub const ONE: Magnitude = Magnitude { sign: 1, ln_abs: 0.0 };

    pub fn from_ln(sign: i8, ln_abs: f64) -> Self {
        if sign == 0 {
            return Magnitude::ZERO;
        }
        Magnitude {
            sign: sign.signum(),
            ln_abs,
        }
    }

    pub fn from_f64(x: f64) -> Self {
        if x == 0.0 {
            Magnitude::ZERO
        } else {
            Magnitude::from_ln(if x < 0.0 { -1 } else { 1 }, x.abs().ln())
        }
    }

    pub fn from_biguint(n: &BigUint) -> Self {
        if n.is_zero() {
            Magnitude::ZERO
        } else {
            Magnitude::from_ln(1, ln_biguint(n))
        }
    }

    pub fn from_bigint(n: &BigInt) -> Self {
        let m = Magnitude::from_biguint(n.magnitude());
        if n.sign() == Sign::Minus {
            m.neg()
        } else {
            m
        }
    }

    /// `q^n`
    pub fn power(q: f64, n: usize) -> Self {
        Magnitude::from_ln(1, n as f64 * q.ln())
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    /// Natural log of the absolute value; `-inf` for zero.
    pub fn ln_abs(&self) -> f64 {
        self.ln_abs
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }

    pub fn neg(self) -> Self {
        Magnitude {
            sign: -self.sign,
            ln_abs: self.ln_abs,
        }
    }

    pub fn mul(self, other: Magnitude) -> Self {
        Magnitude::from_ln(self.sign * other.sign, self.ln_abs + other.ln_abs)
    }

    pub fn div(self, other: Magnitude) -> Self {
        assert!(other.sign != 0, "division by a zero magnitude");
        Magnitude::from_ln(self.sign * other.sign, self.ln_abs - other.ln_abs)
    }

    pub fn mul_f64(self, x: f64) -> Self {
        self.mul(Magnitude::from_f64(x))
    }

    pub fn add(self, other: Magnitude) -> Self {
        if self.sign == 0 {
            return other;
        }
        if other.sign == 0 {
            return self;
        }
        let (big, small) = if self.ln_abs >= other.ln_abs {
            (self, other)
        } else {
            (other, self)
        };
        let t = (small.ln_abs - big.ln_abs).exp();
        if big.sign == small.sign {
            Magnitude::from_ln(big.sign, big.ln_abs + t.ln_1p())
        } else if t == 1.0 {
            Magnitude::ZERO
        } else {
            Magnitude::from_ln(big.sign, big.ln_abs + (-t).ln_1p())
        }
    }

    /// The plain value; overflows to `±inf` outside the `f64` range.
    pub fn to_f64(&self) -> f64 {
        self.sign as f64 * self.ln_abs.exp()
    }

    /// `self / other` as a double.
    pub fn ratio(&self, other: &Magnitude) -> f64 {
        self.div(*other).to_f64()
    }
}

impl PartialOrd for Magnitude {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match self.sign.cmp(&other.sign) {
            Ordering::Equal => match self.sign {
                0 => Some(Ordering::Equal),
                1 => self.ln_abs.partial_cmp(&other.ln_abs),
                _ => other.ln_abs.partial_cmp(&self.ln_abs),
            },
            ord => Some(ord),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let a = Magnitude::from_f64(6.0);
        let b = Magnitude::from_f64(-1.5);
        assert!((a.mul(b).to_f64() + 9.0).abs() < 1e-12);
        assert!((a.div(b).to_f64() + 4.0).abs() < 1e-12);
        assert!((a.add(b).to_f64() - 4.5).abs() < 1e-12);
        assert!(a.add(a.neg()).is_zero());
        assert!(b < Magnitude::ZERO && Magnitude::ZERO < a);
        assert!(Magnitude::from_f64(-10.0) < b);
    }

    #[test]
    fn big_values() {
        let n = BigUint::from(3u32).pow(5000);
        let m = Magnitude::from_biguint(&n);
        assert!((m.ln_abs() - 5000.0 * 3f64.ln()).abs() < 1e-9);
        assert!((m.ratio(&Magnitude::power(3.0, 4999)) - 3.0).abs() < 1e-9);
        let r = big_ratio_f64(&BigInt::from(n.clone() * 7u32), &BigInt::from(n));
        assert_eq!(r, 7.0);
        assert_eq!(big_ratio_f64(&BigInt::from(-3), &BigInt::from(4)), -0.75);
    }
}
