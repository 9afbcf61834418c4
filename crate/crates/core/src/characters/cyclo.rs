use num_complex::Complex64;

use crate::algebra::{divisors, mobius};

/// `Φ_n(x)` as ascending integer coefficients, from `prod_{e | n} (x^e - 1)^{μ(n/e)}`.
pub fn cyclotomic_polynomial(n: u64) -> Vec<i64> {
    assert!(n >= 1, "cyclotomic index must be positive");
    let mut num = vec![1i64];
    let mut den: Vec<u64> = Vec::new();
    for e in divisors(n) {
        match mobius(n / e) {
            1 => {
                let mut next = vec![0i64; num.len() + e as usize];
                for (i, &c) in num.iter().enumerate() {
                    next[i + e as usize] += c;
                    next[i] -= c;
                }
                num = next;
            }
            -1 => den.push(e),
            _ => {}
        }
    }
    // divide by each (x^e - 1) exactly: synthetic division from the top
    for e in den {
        let e = e as usize;
        let deg = num.len() - 1;
        let mut quot = vec![0i64; deg + 1 - e];
        let mut rem = num.clone();
        for i in (e..=deg).rev() {
            let c = rem[i];
            quot[i - e] = c;
            rem[i] = 0;
            rem[i - e] += c;
        }
        debug_assert!(rem.iter().all(|&c| c == 0));
        num = quot;
    }
    num
}

/// An element of `Z[ζ_L]` stored as multiplicities of the powers `ζ_L^t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycloSum {
    order: u64,
    counts: Vec<i64>,
}

impl CycloSum {
    pub fn new(order: u64) -> Self {
        assert!(order >= 1);
        CycloSum {
            order,
            counts: vec![0; order as usize],
        }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn counts(&self) -> &[i64] {
        &self.counts
    }

    /// Adds `mult · ζ_L^t`.
    pub fn add_root(&mut self, t: u64, mult: i64) {
        self.counts[(t % self.order) as usize] += mult;
    }

    pub fn add(&mut self, other: &CycloSum) {
        assert_eq!(self.order, other.order);
        for (a, b) in self.counts.iter_mut().zip(&other.counts) {
            *a += b;
        }
    }

    pub fn mul(&self, other: &CycloSum) -> CycloSum {
        assert_eq!(self.order, other.order);
        let mut out = CycloSum::new(self.order);
        for (i, &a) in self.counts.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.counts.iter().enumerate() {
                if b != 0 {
                    out.add_root((i + j) as u64, a * b);
                }
            }
        }
        out
    }

    /// Canonical form: the remainder modulo `Φ_L`, of degree below `φ(L)`.
    pub fn reduced(&self) -> Vec<i64> {
        let phi = cyclotomic_polynomial(self.order);
        let deg = phi.len() - 1;
        let support: Vec<(usize, i64)> = phi[..deg]
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (i, c))
            .collect();
        let mut rem = self.counts.clone();
        for i in (deg..rem.len()).rev() {
            let c = rem[i];
            if c == 0 {
                continue;
            }
            rem[i] = 0;
            for &(j, pj) in &support {
                rem[i - deg + j] -= c * pj;
            }
        }
        rem.truncate(deg);
        while rem.last() == Some(&0) {
            rem.pop();
        }
        rem
    }

    pub fn is_zero(&self) -> bool {
        self.reduced().is_empty()
    }

    /// The value as an integer, when it lies in `Z`.
    pub fn as_integer(&self) -> Option<i64> {
        match self.reduced().as_slice() {
            [] => Some(0),
            [c] => Some(*c),
            _ => None,
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(t, &c)| c as f64 * root_of_unity(self.order, t as u64))
            .sum()
    }
}

/// `exp(2πi t / L)`.
pub fn root_of_unity(order: u64, t: u64) -> Complex64 {
    let t = t % order;
    // exact values at the quarter turns keep small sums free of rounding
    if !(4 * t).is_multiple_of(order) {
        return Complex64::from_polar(1.0, std::f64::consts::TAU * t as f64 / order as f64);
    }
    match 4 * t / order {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(8), vec![1, 0, 0, 0, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        let c105 = cyclotomic_polynomial(105);
        assert_eq!(c105.len(), 49);
        assert_eq!(c105.iter().filter(|&&c| c == -2).count(), 2);
    }

    #[test]
    fn full_orbit_sums_vanish() {
        for l in 2..40 {
            let mut s = CycloSum::new(l);
            for t in 0..l {
                s.add_root(t, 1);
            }
            assert!(s.is_zero(), "L={l}");
            let mut one = CycloSum::new(l);
            one.add_root(0, 3);
            assert_eq!(one.as_integer(), Some(3));
        }
        let mut s = CycloSum::new(6);
        s.add_root(1, 1);
        s.add_root(5, 1);
        assert_eq!(s.as_integer(), Some(1));
    }
}
