use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::One;

use super::series::BiSeries;
use super::zpoly::ZPoly;
use crate::error::Result;

fn rat(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

/// `binomial(n + z - 1, n) = (1/n!) prod_{j<n} (z + j)` as an exact polynomial in `z`.
pub fn rising_binomial(n: usize) -> ZPoly {
    let mut p = ZPoly::constant(BigRational::one());
    for j in 0..n {
        let factor = ZPoly::new(vec![
            BigRational::new(BigInt::from(j), BigInt::from(j + 1)),
            BigRational::new(BigInt::one(), BigInt::from(j + 1)),
        ]);
        p = p.mul(&factor);
    }
    p
}

/// `binomial(z, n) = (1/n!) prod_{j<n} (z - j)`.
pub fn falling_binomial(n: usize) -> ZPoly {
    let mut p = ZPoly::constant(BigRational::one());
    for j in 0..n {
        let factor = ZPoly::new(vec![
            BigRational::new(-BigInt::from(j), BigInt::from(j + 1)),
            BigRational::new(BigInt::one(), BigInt::from(j + 1)),
        ]);
        p = p.mul(&factor);
    }
    p
}

/// `D_z(n) = q^n binomial(n + z - 1, n)`, the `T^n` coefficient of `ζ(T)^z`.
pub fn dz_polynomial(q: u64, n: usize) -> ZPoly {
    rising_binomial(n).scale(&rat(BigInt::from(q).pow(n as u32)))
}

/// `binomial(n + z - 1, n)` in floating point, by the product form.
pub fn dz_eval_scaled(n: usize, z: Complex64) -> Complex64 {
    let mut acc = Complex64::new(1.0, 0.0);
    for j in 0..n {
        acc *= (z + j as f64) / (j as f64 + 1.0);
    }
    acc
}

/// `D_z(n)` in floating point; overflows to infinity when `q^n` exceeds `f64`.
pub fn dz_eval(q: u64, n: usize, z: Complex64) -> Complex64 {
    dz_eval_scaled(n, z) * (q as f64).powi(n as i32)
}

/// Rows of `F(T, z) = A(T, z) (1 - qT)^z` as exact `z`-polynomials, truncated at `z^K`.
pub fn bz_series(a: &BiSeries) -> Result<Vec<ZPoly>> {
    let q = BigInt::from(a.q());
    let k_max = a.k_max();
    // (1 - qT)^z has T^m coefficient (-q)^m binomial(z, m)
    let zeta_inv: Vec<ZPoly> = (0..=a.n_max())
        .map(|m| {
            let sign = if m % 2 == 0 { BigInt::one() } else { -BigInt::one() };
            falling_binomial(m).scale(&rat(sign * q.pow(m as u32)))
        })
        .collect();
    let a_rows: Vec<ZPoly> = (0..=a.n_max()).map(|n| a.row_zpoly(n)).collect::<Result<_>>()?;
    let rows = (0..=a.n_max())
        .map(|n| {
            (0..=n).fold(ZPoly::zero(), |acc, j| {
                acc.add(&a_rows[j].mul_truncated(&zeta_inv[n - j], k_max))
            })
        })
        .collect();
    Ok(rows)
}

/// `sum_{a+b=n} B_z(a) D_z(b)`, truncated at `z^K`; equals `A_z(n)` when the
/// rows come from [`bz_series`].
pub fn convolve_with_zeta_power(q: u64, b_rows: &[ZPoly], n: usize, k_max: usize) -> ZPoly {
    (0..=n).fold(ZPoly::zero(), |acc, a| {
        acc.add(&b_rows[a].mul_truncated(&dz_polynomial(q, n - a), k_max))
    })
}
