use std::sync::Arc;

use ffcount::algebra::{enumerate_monics, unit_group_order, FieldSpec, Poly};
use ffcount::characters::*;
use ffcount::{Budget, Error};
use num_complex::Complex64;
use proptest::prelude::*;

fn field(q: u64) -> FieldSpec {
    match q {
        4 => FieldSpec::extension(2, &[1, 1, 1]).unwrap(),
        p => FieldSpec::prime(p).unwrap(),
    }
}

fn poly(q: u64, coeffs: &[u32]) -> Poly {
    Poly::new(field(q), coeffs.to_vec()).unwrap()
}

fn group(q: u64, coeffs: &[u32]) -> Arc<UnitGroup> {
    Arc::new(UnitGroup::new(&poly(q, coeffs), &Budget::default()).unwrap())
}

fn small_moduli() -> Vec<(u64, Vec<u32>)> {
    let mut out = Vec::new();
    for q in [2u64, 3] {
        for d in [
            vec![0, 1],
            vec![0, 0, 1],
            vec![0, 0, 0, 1],
            vec![0, 1, 1],
            vec![1, 0, 1],
        ] {
            out.push((q, d));
        }
    }
    out
}

#[test]
fn unit_group_examples() {
    for q in [2u64, 3, 4, 5, 7] {
        let g = group(q, &[0, 1]);
        assert_eq!(g.order(), q - 1);
        assert!(g.cyclic_orders().len() <= 1);
        assert_eq!(g.cyclic_orders().iter().product::<u64>(), q - 1);
    }
    let g = group(2, &[0, 0, 1]);
    assert_eq!(g.order(), 2);
    let mut elems: Vec<String> = g.elements().iter().map(|e| e.to_string()).collect();
    elems.sort();
    assert_eq!(elems, vec!["1", "1,1"]);

    let g = group(3, &[1, 0, 1]);
    assert_eq!(g.structure().len(), 1);
    assert_eq!(g.cyclic_orders(), &[8]);
}

#[test]
fn unit_group_structure_is_valid() {
    let budget = Budget::default();
    for (q, d) in
        small_moduli()
            .into_iter()
            .chain([(4, vec![0, 0, 1]), (5, vec![0, 0, 0, 1]), (2, vec![0, 0, 0, 0, 0, 1])])
    {
        let d = poly(q, &d);
        let g = UnitGroup::new(&d, &budget).unwrap();
        let phi = unit_group_order(&d).unwrap();
        assert_eq!(num_bigint::BigUint::from(g.order()), phi, "d={d}");
        assert_eq!(g.elements().len() as u64, g.order());
        assert_eq!(g.cyclic_orders().iter().product::<u64>(), g.order());
        for w in g.cyclic_orders().windows(2) {
            assert_eq!(w[0] % w[1], 0, "invariant factors must divide: {:?}", g.cyclic_orders());
        }
        for (gen, n) in g.structure() {
            let mut x = Poly::one(d.field());
            for i in 1..=n {
                x = x.mulmod(&gen, &d).unwrap();
                assert_eq!(x.is_one(), i == n, "generator {gen} mod {d}");
            }
        }
        for (i, e) in g.elements().iter().enumerate() {
            assert_eq!(g.index_of(e), Some(i));
            assert!(e.gcd(&d).unwrap().is_one());
        }
    }
    // 1 + X has order 8 mod X^5 over F_2
    let g = group(2, &[0, 0, 0, 0, 0, 1]);
    assert_eq!(g.cyclic_orders(), &[8, 2]);
}

#[test]
fn unit_group_errors() {
    let budget = Budget::default();
    assert!(matches!(
        UnitGroup::new(&poly(3, &[2]), &budget),
        Err(Error::ConstantPolynomial)
    ));
    assert!(matches!(
        UnitGroup::new(&poly(3, &[1, 2]), &budget),
        Err(Error::NotMonic)
    ));
    let tight = Budget {
        unit_group: 5,
        ..budget
    };
    assert!(matches!(
        UnitGroup::new(&poly(3, &[1, 0, 1]), &tight),
        Err(Error::BudgetExceeded { .. })
    ));
}

#[test]
fn index_arithmetic_matches_polynomials() {
    for (q, d) in small_moduli() {
        let g = group(q, &d);
        let d = g.modulus().clone();
        for a in 0..g.elements().len() {
            for b in 0..g.elements().len() {
                let prod = g.elements()[a].mulmod(&g.elements()[b], &d).unwrap();
                assert_eq!(g.index_of(&prod), Some(g.mul_index(a, b)));
            }
            let inv = g.inverse_index(a);
            assert!(g.elements()[a].mulmod(&g.elements()[inv], &d).unwrap().is_one());
        }
    }
}

#[test]
fn character_counts_and_orthogonality() {
    for (q, d) in small_moduli() {
        let g = group(q, &d);
        let chars = characters(&g);
        assert_eq!(chars.len() as u64, g.order());
        assert!(chars[0].is_principal());
        assert_eq!(chars.iter().filter(|c| c.is_principal()).count(), 1);
        let l = g.exponent();

        for chi in &chars {
            let mut s = CycloSum::new(l);
            for i in 0..g.elements().len() {
                s.add_root(chi.exponent_at_index(i), 1);
            }
            let expected = if chi.is_principal() { g.order() as i64 } else { 0 };
            assert_eq!(s.as_integer(), Some(expected));
            assert!((s.to_complex() - expected as f64).norm() <= 1e-10);
        }
        for i in 0..g.elements().len() {
            let mut s = CycloSum::new(l);
            for chi in &chars {
                s.add_root(chi.exponent_at_index(i), 1);
            }
            let expected = if g.elements()[i].is_one() { g.order() as i64 } else { 0 };
            assert_eq!(s.as_integer(), Some(expected));
        }
    }
}

#[test]
fn character_table_is_scaled_unitary() {
    for (q, d) in small_moduli() {
        let g = group(q, &d);
        let chars = characters(&g);
        let l = g.exponent();
        for a in &chars {
            for b in &chars {
                let prod = a.mul(&b.conjugate()).unwrap();
                let mut s = CycloSum::new(l);
                let mut f = Complex64::new(0.0, 0.0);
                for i in 0..g.elements().len() {
                    s.add_root(prod.exponent_at_index(i), 1);
                    f += a.value_at_index(i) * b.value_at_index(i).conj();
                }
                let expected = if a == b { g.order() as f64 } else { 0.0 };
                assert_eq!(s.as_integer(), Some(expected as i64));
                assert!((f - expected).norm() <= 1e-10);
            }
        }
    }
}

#[test]
fn dual_multiplication_is_exponent_addition() {
    let g = group(3, &[0, 0, 1]);
    let chars = characters(&g);
    for a in &chars {
        for b in &chars {
            let ab = a.mul(b).unwrap();
            for (i, e) in g.elements().iter().enumerate() {
                let lhs = ab.value(e);
                let rhs = a.value_at_index(i) * b.value_at_index(i);
                assert!((lhs - rhs).norm() < 1e-12);
            }
        }
        assert!(a.mul(&a.conjugate()).unwrap().is_principal());
    }
    assert!(DirichletChar::new(g.clone(), vec![99]).is_err());
}

#[test]
fn characters_vanish_off_units() {
    let g = group(3, &[0, 1, 1]);
    for chi in characters(&g) {
        assert_eq!(chi.value(&poly(3, &[0, 1])), Complex64::new(0.0, 0.0));
        assert_eq!(chi.value(&poly(3, &[1, 1])), Complex64::new(0.0, 0.0));
        assert_eq!(chi.value(&poly(3, &[0, 2, 0, 1])), Complex64::new(0.0, 0.0));
        assert_eq!(chi.exponent_at(&poly(3, &[1])), Some(0));
    }
}

#[test]
fn l_polynomial_examples() {
    let budget = Budget::default();
    let g = group(2, &[0, 0, 1]);
    let chi = &characters(&g)[1];
    let l = l_polynomial(chi, &budget).unwrap();
    assert_eq!(l.exact[0].as_integer(), Some(1));
    assert_eq!(l.exact[1].as_integer(), Some(-1));
    assert_eq!(l.inverse_roots.len(), 1);
    assert!((l.inverse_roots[0] - 1.0).norm() < 1e-12);

    assert!(matches!(
        l_polynomial(&characters(&g)[0], &budget),
        Err(Error::PrincipalCharacter)
    ));

    let g = group(3, &[1, 0, 1]);
    let chars = characters(&g);
    let nonprincipal: Vec<_> = chars.iter().filter(|c| !c.is_principal()).collect();
    assert_eq!(nonprincipal.len(), 7);
    for chi in nonprincipal {
        let l = l_polynomial(chi, &budget).unwrap();
        assert_eq!(l.exact[0].as_integer(), Some(1));
        assert!(l.effective_degree <= 1);
    }
}

#[test]
fn character_sums_vanish_from_modulus_degree() {
    let budget = Budget::default();
    for (q, d) in small_moduli() {
        let g = group(q, &d);
        let m = g.modulus().deg().unwrap();
        for chi in characters(&g).iter().filter(|c| !c.is_principal()) {
            for j in [m, m + 1] {
                assert!(
                    character_sum(chi, j, &budget).unwrap().is_zero(),
                    "q={q} d={} j={j}",
                    g.modulus()
                );
            }
        }
    }
}

#[test]
fn weil_moduli_for_small_moduli() {
    let budget = Budget::default();
    let mut checked = 0;
    for q in [2u64, 3, 4] {
        let f = field(q);
        for m in 1..=3 {
            for d in enumerate_monics(f, m, &budget).unwrap() {
                let g = Arc::new(UnitGroup::new(&d, &budget).unwrap());
                for chi in characters(&g).iter().filter(|c| !c.is_principal()) {
                    let (l, report) = weil_check(chi, 1e-6, &budget).unwrap();
                    assert!(
                        report.passed(),
                        "q={q} d={d} chi={:?} moduli={:?}",
                        chi.exponents(),
                        report.moduli
                    );
                    assert!(l.residual <= ROOT_RESIDUAL);
                    assert_eq!(report.classes.len() + report.zero_class, m - 1);
                    for &a in &l.inverse_roots {
                        assert!(l.eval(Complex64::new(1.0, 0.0) / a).norm() < 1e-8);
                    }
                    checked += 1;
                }
            }
        }
    }
    assert!(checked > 1000);
}

#[test]
fn weil_classes_for_named_moduli() {
    let budget = Budget::default();
    let g = group(2, &[0, 0, 0, 1]);
    for chi in characters(&g).iter().filter(|c| !c.is_principal()) {
        let (_, report) = weil_check(chi, 1e-6, &budget).unwrap();
        assert!(report.passed());
    }
    let g = group(3, &[1, 0, 1]);
    let (mut one, mut sqrt_q) = (0, 0);
    for chi in characters(&g).iter().filter(|c| !c.is_principal()) {
        let (_, report) = weil_check(chi, 1e-6, &budget).unwrap();
        assert!(report.passed());
        one += report.count(WeilClass::One);
        sqrt_q += report.count(WeilClass::SqrtQ);
    }
    // characters trivial on F_3^* pick up the root 1 from the place at infinity
    assert_eq!((one, sqrt_q), (3, 4));
}

#[test]
fn twisted_counts_two_paths() {
    let budget = Budget::default();
    for (q, d, n_max) in [(2u64, vec![0, 0, 1], 8), (3, vec![1, 0, 1], 6), (3, vec![0, 1, 1], 5)] {
        let g = group(q, &d);
        for chi in characters(&g) {
            for n in 1..=n_max {
                for k in 0..=n {
                    let exact = twisted_count_enumeration(n, k, &chi, &budget).unwrap();
                    let euler = twisted_count_euler(n, k, &chi, &budget).unwrap();
                    assert!((exact.to_complex() - euler).norm() <= 1e-8, "q={q} n={n} k={k}");
                    if chi.is_principal() {
                        assert!(exact.as_integer().unwrap() >= 0);
                    }
                    let conj = twisted_count(n, k, &chi.conjugate(), &budget).unwrap();
                    assert!((conj - euler.conj()).norm() <= 1e-8);
                }
            }
        }
    }
}

#[test]
fn principal_twist_counts_coprime_squarefree() {
    let budget = Budget::default();
    let g = group(3, &[0, 1]);
    let chi0 = DirichletChar::principal(g.clone());
    for n in 1..=6 {
        for k in 1..=n {
            let direct = enumerate_monics(field(3), n, &budget)
                .unwrap()
                .filter(|f| f.coeff(0) != 0)
                .filter(|f| {
                    let s = ffcount::algebra::factor_stats(f).unwrap();
                    s.squarefree && s.omega == k
                })
                .count() as i64;
            let v = twisted_count_enumeration(n, k, &chi0, &budget).unwrap();
            assert_eq!(v.as_integer(), Some(direct));
        }
    }
}

#[test]
fn twisted_divisor_sums_respect_weil_bound() {
    let budget = Budget::default();
    let g = group(3, &[1, 0, 1]);
    for chi in characters(&g).iter().filter(|c| !c.is_principal()) {
        let l = l_polynomial(chi, &budget).unwrap();
        for z in [
            Complex64::new(1.0, 0.0),
            Complex64::new(2.0, 0.0),
            Complex64::new(1.0, 1.0),
        ] {
            for n in 0..=10 {
                let v = twisted_dz(&l, n, z);
                assert!(v.norm() <= twisted_dz_bound(3, n, 2, 2.0), "n={n} z={z}");
            }
        }
        // integer z: compare with L^2 and with enumeration of the divisor function
        for n in 0..=5 {
            let square: Complex64 = (0..=n)
                .map(|a| {
                    let ca = l.coeffs.get(a).copied().unwrap_or_default();
                    let cb = l.coeffs.get(n - a).copied().unwrap_or_default();
                    ca * cb
                })
                .sum();
            assert!((twisted_dz(&l, n, Complex64::new(2.0, 0.0)) - square).norm() < 1e-9);
            let direct: Complex64 = enumerate_monics(field(3), n, &budget)
                .unwrap()
                .map(|f| {
                    let divisors: u32 = ffcount::algebra::factor_stats(&f)
                        .unwrap()
                        .factors
                        .iter()
                        .map(|(_, e)| e + 1)
                        .product();
                    chi.value(&f) * divisors as f64
                })
                .sum();
            assert!((twisted_dz(&l, n, Complex64::new(2.0, 0.0)) - direct).norm() < 1e-9);
        }
    }
}

proptest! {
    #[test]
    fn characters_are_multiplicative(a in 0usize..80, b in 0usize..80, c in 0usize..80) {
        let g = group(3, &[0, 0, 0, 0, 1]);
        let n = g.elements().len();
        let (a, b) = (a % n, b % n);
        let chi = &characters(&g)[c % n];
        let prod = g.elements()[a].mulmod(&g.elements()[b], g.modulus()).unwrap();
        let lhs = chi.value(&prod);
        let rhs = chi.value_at_index(a) * chi.value_at_index(b);
        prop_assert!((lhs - rhs).norm() < 1e-12);
    }

    #[test]
    fn root_finder_recovers_products(re in proptest::collection::vec(-3.0f64..3.0, 1..6), im in proptest::collection::vec(-3.0f64..3.0, 6)) {
        let roots: Vec<Complex64> = re.iter().zip(&im).map(|(&r, &i)| Complex64::new(r, i)).collect();
        let mut coeffs = vec![Complex64::new(1.0, 0.0)];
        for &r in &roots {
            let mut next = vec![Complex64::new(0.0, 0.0); coeffs.len() + 1];
            for (i, &c) in coeffs.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= c * r;
            }
            coeffs = next;
        }
        let found = find_roots(&coeffs, 1e-8).unwrap();
        prop_assert_eq!(found.roots.len(), roots.len());
    }
}
