use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

fn lanczos_sum(x: Complex64) -> Complex64 {
    let mut acc = Complex64::new(LANCZOS[0], 0.0);
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    acc
}

/// `ln Γ(z)` for `Re z >= 1/2` (principal branch of the Lanczos form).
fn ln_gamma_lanczos(z: Complex64) -> Complex64 {
    let x = z - 1.0;
    let t = x + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (x + 0.5) * t.ln() - t + lanczos_sum(x).ln()
}

/// `Γ(x)` for real `x > 0`.
pub fn gamma_real(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "Γ is evaluated only at positive reals, got {x}"
        )));
    }
    if x < 0.5 {
        return Ok(PI / ((PI * x).sin() * gamma_real(1.0 - x)?));
    }
    Ok(ln_gamma_lanczos(Complex64::new(x, 0.0)).re.exp())
}

/// `ln Γ(x)` for real `x > 0`.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "ln Γ is evaluated only at positive reals, got {x}"
        )));
    }
    if x < 0.5 {
        return Ok((PI / (PI * x).sin()).ln() - ln_gamma(1.0 - x)?);
    }
    Ok(ln_gamma_lanczos(Complex64::new(x, 0.0)).re)
}

/// `1/Γ(z)` on the whole complex plane; zero at the poles of Γ.
pub fn recip_gamma_complex(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        // 1/Γ(z) = sin(πz) Γ(1 - z) / π
        (PI * z).sin() * (ln_gamma_lanczos(1.0 - z)).exp() / PI
    } else {
        (-ln_gamma_lanczos(z)).exp()
    }
}

/// `Γ(z)` for complex `z` away from the nonpositive integers.
pub fn gamma_complex(z: Complex64) -> Result<Complex64> {
    if z.im == 0.0 && z.re <= 0.0 && z.re.fract() == 0.0 {
        return Err(Error::Pole(format!("Γ at {}", z.re)));
    }
    if z.re < 0.5 {
        Ok(PI / ((PI * z).sin() * ln_gamma_lanczos(1.0 - z).exp()))
    } else {
        Ok(ln_gamma_lanczos(z).exp())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classical_values() {
        assert!((gamma_real(1.0).unwrap() - 1.0).abs() < 1e-14);
        assert!((gamma_real(2.0).unwrap() - 1.0).abs() < 1e-14);
        assert!((gamma_real(0.5).unwrap() - 1.772_453_850_905_516).abs() < 1e-14);
        assert!((gamma_real(11.0).unwrap() / 3_628_800.0 - 1.0).abs() < 1e-13);
        assert!(gamma_real(0.0).is_err());
        assert!(gamma_real(-1.5).is_err());
    }

    #[test]
    fn complex_agrees_with_real_and_reflection() {
        for x in [0.1, 0.7, 2.5, 9.0] {
            let c = gamma_complex(Complex64::new(x, 0.0)).unwrap();
            assert!((c.re / gamma_real(x).unwrap() - 1.0).abs() < 1e-13);
        }
        // Γ(-1/2) = -2√π
        let v = gamma_complex(Complex64::new(-0.5, 0.0)).unwrap();
        assert!((v.re + 2.0 * PI.sqrt()).abs() < 1e-13);
        assert!(gamma_complex(Complex64::new(-2.0, 0.0)).is_err());
        assert!(recip_gamma_complex(Complex64::new(-3.0, 0.0)).norm() < 1e-12);
        // Γ(1 + i) Γ(1 - i) = π / sinh π
        let i = Complex64::new(0.0, 1.0);
        let prod = gamma_complex(1.0 + i).unwrap() * gamma_complex(1.0 - i).unwrap();
        assert!((prod.re - PI / PI.sinh()).abs() < 1e-13 && prod.im.abs() < 1e-13);
    }
}
