use num_complex::Complex64;

use crate::error::{Error, Result};

const MAX_ITERATIONS: usize = 2000;

/// Roots of a monic polynomial given by ascending coefficients (last entry 1).
#[derive(Debug, Clone)]
pub struct RootResult {
    pub roots: Vec<Complex64>,
    /// Largest `|p(r)| / sum |c_j| |r|^j` over the roots.
    pub residual: f64,
}

fn horner(coeffs: &[Complex64], x: Complex64) -> (Complex64, Complex64, f64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    let mut scale = 0.0;
    let ax = x.norm();
    for &c in coeffs.iter().rev() {
        dp = dp * x + p;
        p = p * x + c;
        scale = scale * ax + c.norm();
    }
    (p, dp, scale)
}

fn relative_residual(coeffs: &[Complex64], x: Complex64) -> f64 {
    let (p, _, scale) = horner(coeffs, x);
    p.norm() / scale.max(1e-300)
}

/// Durand–Kerner from the deterministic starts `(0.4 + 0.9i)^k` scaled to the
/// Cauchy radius, followed by Newton polishing.
pub fn find_roots(coeffs: &[Complex64], tol: f64) -> Result<RootResult> {
    let n = coeffs.len().saturating_sub(1);
    if n == 0 {
        return Ok(RootResult {
            roots: Vec::new(),
            residual: 0.0,
        });
    }
    if (coeffs[n] - 1.0).norm() > 1e-12 {
        return Err(Error::NotMonic);
    }
    if n == 1 {
        let r = -coeffs[0];
        return Ok(RootResult {
            roots: vec![r],
            residual: relative_residual(coeffs, r),
        });
    }
    let radius = 1.0 + coeffs[..n].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let seed = Complex64::new(0.4, 0.9);
    let mut roots: Vec<Complex64> = (0..n).map(|k| seed.powu(k as u32 + 1) * radius).collect();

    for _ in 0..MAX_ITERATIONS {
        let mut shift = 0.0f64;
        for i in 0..n {
            let (p, _, _) = horner(coeffs, roots[i]);
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..n {
                if j != i {
                    denom *= roots[i] - roots[j];
                }
            }
            if denom.norm() == 0.0 {
                denom = Complex64::new(1e-12, 1e-12);
            }
            let delta = p / denom;
            roots[i] -= delta;
            shift = shift.max(delta.norm() / roots[i].norm().max(1.0));
        }
        if shift < 1e-15 {
            break;
        }
    }
    for r in roots.iter_mut() {
        for _ in 0..8 {
            let (p, dp, _) = horner(coeffs, *r);
            if dp.norm() == 0.0 {
                break;
            }
            let next = *r - p / dp;
            if relative_residual(coeffs, next) <= relative_residual(coeffs, *r) {
                *r = next;
            } else {
                break;
            }
        }
    }
    let residual = roots.iter().map(|&r| relative_residual(coeffs, r)).fold(0.0, f64::max);
    if !(residual <= tol) {
        return Err(Error::NoConvergence { residual });
    }
    roots.sort_by(|a, b| a.arg().total_cmp(&b.arg()).then(a.norm().total_cmp(&b.norm())));
    Ok(RootResult { roots, residual })
}
