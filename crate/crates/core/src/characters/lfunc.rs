use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::cyclo::CycloSum;
use super::dirichlet::DirichletChar;
use super::roots::find_roots;
use crate::algebra::Poly;
use crate::budget::Budget;
use crate::error::{Error, Result};

/// Residual required of every inverse root.
pub const ROOT_RESIDUAL: f64 = 1e-10;

/// `sum_{f in M_j} χ(f)` exactly.
pub fn character_sum(chi: &DirichletChar, j: usize, budget: &Budget) -> Result<CycloSum> {
    let group = chi.group();
    let field = group.field();
    let count = budget.check_enumeration(field.order(), j)?;
    let m = group.modulus().deg().expect("nonconstant modulus");
    let mut sum = CycloSum::new(group.exponent());
    for idx in 0..count {
        let f = Poly::monic_from_index(field, j, idx);
        let unit = if j < m {
            group.index_of_code(f.code())
        } else {
            group.index_of(&f)
        };
        if let Some(u) = unit {
            sum.add_root(chi.exponent_at_index(u), 1);
        }
    }
    Ok(sum)
}

/// `L(T, χ) = sum_j c_j T^j = prod_i (1 - α_i T)` for a non-principal character.
#[derive(Debug, Clone)]
pub struct LPolynomial {
    pub q: u64,
    pub modulus_degree: usize,
    /// `c_0, ..., c_{m-1}`; `c_0 = 1`.
    pub exact: Vec<CycloSum>,
    pub coeffs: Vec<Complex64>,
    /// Largest `j` with `c_j != 0`.
    pub effective_degree: usize,
    /// `α_i`, roots of `T^D L(1/T)`.
    pub inverse_roots: Vec<Complex64>,
    pub residual: f64,
}

impl LPolynomial {
    pub fn eval(&self, t: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * t + c)
    }

    /// Number of inverse roots lost to the effective-degree drop below `deg d - 1`.
    pub fn degree_deficit(&self) -> usize {
        self.modulus_degree - 1 - self.effective_degree
    }
}

pub fn l_polynomial(chi: &DirichletChar, budget: &Budget) -> Result<LPolynomial> {
    if chi.is_principal() {
        return Err(Error::PrincipalCharacter);
    }
    let group = chi.group();
    let m = group.modulus().deg().expect("nonconstant modulus");
    let exact: Vec<CycloSum> = (0..m).map(|j| character_sum(chi, j, budget)).collect::<Result<_>>()?;
    if exact[0].as_integer() != Some(1) {
        return Err(Error::Consistency("constant coefficient of L is not 1".into()));
    }
    let effective_degree = exact.iter().rposition(|c| !c.is_zero()).unwrap_or(0);
    let coeffs: Vec<Complex64> = exact
        .iter()
        .enumerate()
        .map(|(j, c)| {
            if j <= effective_degree {
                c.to_complex()
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
        .collect();
    let reversed: Vec<Complex64> = coeffs[..=effective_degree].iter().rev().copied().collect();
    let found = find_roots(&reversed, ROOT_RESIDUAL)?;
    Ok(LPolynomial {
        q: group.field().order(),
        modulus_degree: m,
        exact,
        coeffs,
        effective_degree,
        inverse_roots: found.roots,
        residual: found.residual,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum WeilClass {
    #[serde(rename = "1")]
    One,
    #[serde(rename = "sqrt_q")]
    SqrtQ,
    #[serde(rename = "0")]
    Zero,
    #[serde(rename = "unclassified")]
    Unclassified,
}

impl WeilClass {
    pub fn label(self) -> &'static str {
        match self {
            WeilClass::One => "1",
            WeilClass::SqrtQ => "sqrt_q",
            WeilClass::Zero => "0",
            WeilClass::Unclassified => "unclassified",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeilReport {
    pub q: u64,
    pub moduli: Vec<f64>,
    pub classes: Vec<WeilClass>,
    /// Missing inverse roots (the "0" class) from the effective-degree drop.
    pub zero_class: usize,
    /// Largest distance of a classified modulus from its class value.
    pub max_deviation: f64,
    /// The character sums are indexed from `j = 0`.
    pub sum_start: usize,
}

impl WeilReport {
    pub fn passed(&self) -> bool {
        !self.classes.contains(&WeilClass::Unclassified)
    }

    pub fn count(&self, class: WeilClass) -> usize {
        if class == WeilClass::Zero {
            return self.zero_class;
        }
        self.classes.iter().filter(|&&c| c == class).count()
    }
}

/// L-polynomial of `chi` and the classification of its inverse roots.
pub fn weil_check(chi: &DirichletChar, tol: f64, budget: &Budget) -> Result<(LPolynomial, WeilReport)> {
    let l = l_polynomial(chi, budget)?;
    let report = weil_classify(&l, tol);
    Ok((l, report))
}

/// Classifies each `|α_i|` as `1` or `sqrt q` within `tol`.
pub fn weil_classify(l: &LPolynomial, tol: f64) -> WeilReport {
    let sqrt_q = (l.q as f64).sqrt();
    let mut max_deviation = 0.0f64;
    let moduli: Vec<f64> = l.inverse_roots.iter().map(|a| a.norm()).collect();
    let classes = moduli
        .iter()
        .map(|&r| {
            let d1 = (r - 1.0).abs();
            let dq = (r - sqrt_q).abs();
            let (class, dev) = if d1 <= dq {
                (WeilClass::One, d1)
            } else {
                (WeilClass::SqrtQ, dq)
            };
            if dev <= tol {
                max_deviation = max_deviation.max(dev);
                class
            } else if r <= tol {
                WeilClass::Zero
            } else {
                WeilClass::Unclassified
            }
        })
        .collect();
    WeilReport {
        q: l.q,
        moduli,
        classes,
        zero_class: l.degree_deficit(),
        max_deviation,
        sum_start: 0,
    }
}
