use num_complex::Complex64;

use super::cyclo::CycloSum;
use super::dirichlet::DirichletChar;
use super::lfunc::LPolynomial;
use crate::algebra::{enumerate_irreducibles, enumerate_monics, Factorizer};
use crate::budget::Budget;
use crate::error::{Error, Result};

/// Agreement required between the two twisted-count paths, relative to `max(1, |value|)`.
pub const TWISTED_TOLERANCE: f64 = 1e-8;

/// `sum χ(f)` over squarefree `f in M_n` with `ω(f) = k`, by enumeration.
pub fn twisted_count_enumeration(n: usize, k: usize, chi: &DirichletChar, budget: &Budget) -> Result<CycloSum> {
    let group = chi.group();
    let field = group.field();
    let factorizer = Factorizer::for_degree(field, n);
    let mut sum = CycloSum::new(group.exponent());
    for f in enumerate_monics(field, n, budget)? {
        let Some(idx) = group.index_of(&f) else { continue };
        let stats = factorizer.factor(&f)?;
        if stats.squarefree && stats.omega == k {
            sum.add_root(chi.exponent_at_index(idx), 1);
        }
    }
    Ok(sum)
}

/// The same count as the `z^k T^n` coefficient of `prod_p (1 + z χ(p) T^{deg p})`,
/// multiplying one irreducible factor at a time.
pub fn twisted_count_euler(n: usize, k: usize, chi: &DirichletChar, budget: &Budget) -> Result<Complex64> {
    let tables = twisted_tables(std::slice::from_ref(chi), n, k, budget)?;
    Ok(tables[0][n][k])
}

/// `[n][k]` tables of twisted counts for several characters of one group,
/// from a single pass over the irreducibles of degree `<= n_max`.
pub fn twisted_tables(
    chars: &[DirichletChar],
    n_max: usize,
    k_max: usize,
    budget: &Budget,
) -> Result<Vec<Vec<Vec<Complex64>>>> {
    let Some(first) = chars.first() else {
        return Ok(Vec::new());
    };
    let group = first.group();
    let field = group.field();
    let zero = Complex64::new(0.0, 0.0);
    let mut empty = vec![vec![zero; k_max + 1]; n_max + 1];
    empty[0][0] = Complex64::new(1.0, 0.0);
    let mut tables = vec![empty; chars.len()];
    for d in 1..=n_max {
        for p in enumerate_irreducibles(field, d, budget)? {
            let Some(idx) = group.index_of(&p) else { continue };
            for (chi, c) in chars.iter().zip(tables.iter_mut()) {
                let v = chi.value_at_index(idx);
                for a in (d..=n_max).rev() {
                    for b in (1..=k_max).rev() {
                        let add = v * c[a - d][b - 1];
                        c[a][b] += add;
                    }
                }
            }
        }
    }
    Ok(tables)
}

/// Both paths, checked against each other whenever enumeration fits the budget.
pub fn twisted_count(n: usize, k: usize, chi: &DirichletChar, budget: &Budget) -> Result<Complex64> {
    let euler = twisted_count_euler(n, k, chi, budget)?;
    if budget.check_enumeration(chi.group().field().order(), n).is_err() {
        return Ok(euler);
    }
    let exact = twisted_count_enumeration(n, k, chi, budget)?.to_complex();
    if (exact - euler).norm() > TWISTED_TOLERANCE * exact.norm().max(1.0) {
        return Err(Error::Consistency(format!(
            "twisted count n={n} k={k}: enumeration {exact} vs Euler product {euler}"
        )));
    }
    Ok(exact)
}

/// `sum_{f in M_n} d_z(f) χ(f)`, the `T^n` coefficient of `L(T, χ)^z`, by the
/// power recurrence `j P_j = sum_{i=1}^{j} ((z + 1) i - j) c_i P_{j-i}`.
pub fn twisted_dz(l: &LPolynomial, n: usize, z: Complex64) -> Complex64 {
    let mut p = vec![Complex64::new(1.0, 0.0)];
    for j in 1..=n {
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 1..=j.min(l.effective_degree) {
            acc += ((z + 1.0) * i as f64 - j as f64) * l.coeffs[i] * p[j - i];
        }
        p.push(acc / j as f64);
    }
    p[n]
}

/// `q^{n/2} binomial(n + A m, n)`.
pub fn twisted_dz_bound(q: u64, n: usize, m: usize, a: f64) -> f64 {
    let upper = a * m as f64;
    let binom: f64 = (1..=n).map(|j| (upper + j as f64) / j as f64).product();
    (q as f64).powf(n as f64 / 2.0) * binom
}
