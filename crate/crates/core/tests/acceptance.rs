//! Acceptance criteria, one PASS/FAIL line each. Exits nonzero when any fails.

use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use ffcount::algebra::{enumerate_monics, Factorizer, FieldSpec, Poly};
use ffcount::apinterval::{
    ap_series, interval_representatives, pi_k_interval_brute, pi_k_interval_with, CharacterPath, IntervalQuery,
};
use ffcount::asym::{
    big_g, big_h, dz_asymptotic_ratio, euler_f, gamma_real, global_normalized_error, qlimit_relative_gap,
    AnalyticConfig,
};
use ffcount::characters::{characters, weil_check, UnitGroup, WeilClass};
use ffcount::exactcount::{
    brute_force_count, cauchy_extract_series, default_radius, euler_product_allfactors, euler_product_squarefree,
    omega_moments, CountMode,
};
use ffcount::Budget;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within_time(start: Instant, limit: Duration) -> Result<(), String> {
    let took = start.elapsed();
    ensure(took <= limit, || format!("took {took:.1?}, limit {limit:?}"))
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn prime(q: u64) -> FieldSpec {
    FieldSpec::prime(q).unwrap()
}

fn exactness() -> Outcome {
    let start = Instant::now();
    let budget = Budget::default();
    let mut checked = 0;
    for (q, n_max) in [(2u64, 8usize), (3, 8), (5, 6)] {
        let sf = ok(euler_product_squarefree(q, n_max, n_max, &budget))?;
        let all = ok(euler_product_allfactors(q, n_max, n_max, &budget))?;
        for n in 0..=n_max {
            for k in 0..=n {
                for (series, mode) in [(&sf, CountMode::Squarefree), (&all, CountMode::All)] {
                    let brute = ok(brute_force_count(prime(q), n, k, mode, &budget))?;
                    ensure(series.coeff(n, k) == brute, || format!("{mode:?} q={q} n={n} k={k}"))?;
                    checked += 1;
                }
            }
        }
    }
    within_time(start, Duration::from_secs(60))?;
    Ok(format!("{checked} coefficients, {:.1?}", start.elapsed()))
}

fn global_identities() -> Outcome {
    let start = Instant::now();
    let budget = Budget::default();
    let sf = ok(euler_product_squarefree(2, 400, 400, &budget))?;
    let all = ok(euler_product_allfactors(2, 400, 400, &budget))?;
    for n in 0..=400usize {
        let qn = BigUint::one() << n;
        let rho: BigUint = (0..=n).map(|k| all.coeff(n, k)).sum();
        ensure(rho == qn, || format!("sum of rho_k({n})"))?;
        if n >= 2 {
            let pi: BigUint = (0..=n).map(|k| sf.coeff(n, k)).sum();
            ensure(pi == &qn - (BigUint::one() << (n - 1)), || format!("sum of Pi_k({n})"))?;
        }
    }
    within_time(start, Duration::from_secs(120))?;
    Ok(format!("n <= 400, {:.1?}", start.elapsed()))
}

fn global_rate() -> Outcome {
    let cfg = AnalyticConfig::default();
    let s = ok(euler_product_squarefree(2, 400, 3, &Budget::default()))?;
    let ns = [50usize, 100, 200, 400];
    let mut failures = Vec::new();
    let mut summary = Vec::new();
    for k in 1..=3usize {
        let errors: Vec<f64> = ns
            .iter()
            .map(|&n| global_normalized_error(2, n, k, &s.coeff(n, k), &cfg))
            .collect::<Result<_, _>>()
            .map_err(|e| e.to_string())?;
        let monotone = errors.windows(2).all(|w| w[1] <= w[0]);
        let bounded = errors[3] <= 1.5 * errors[0];
        summary.push(format!("k={k}: {}", fmt_list(&errors)));
        if !(monotone && bounded) {
            failures.push(format!(
                "k={k} errors {} (non-increasing: {monotone}, within 1.5x: {bounded})",
                fmt_list(&errors)
            ));
        }
    }
    if failures.is_empty() {
        Ok(summary.join("; "))
    } else {
        Err(failures.join("; "))
    }
}

fn fmt_list(v: &[f64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| format!("{x:.4e}")).collect();
    format!("[{}]", parts.join(", "))
}

fn closed_forms() -> Outcome {
    let cfg = AnalyticConfig::default();
    let zero = Complex64::new(0.0, 0.0);
    for q in [2u64, 3, 5, 9] {
        let f = ok(euler_f(q, Complex64::new(1.0, 0.0), &cfg))?;
        ensure((f - (1.0 - 1.0 / q as f64)).norm() <= 1e-10, || {
            format!("F(1/{q}, 1) = {f}")
        })?;
        let g = ok(big_g(q, zero, &cfg))?;
        ensure((g - 1.0).norm() <= 1e-10, || format!("G(0) = {g} for q = {q}"))?;
        let h = ok(big_h(q, zero, &cfg))?;
        ensure((h - 1.0).norm() <= 1e-10, || format!("H(0) = {h} for q = {q}"))?;
    }
    let mut worst = 0.0f64;
    for i in 1..=1000 {
        let x = i as f64 / 100.0;
        let lhs = ok(gamma_real(x + 1.0))?;
        let rhs = x * ok(gamma_real(x))?;
        let rel = (lhs - rhs).abs() / rhs.abs();
        worst = worst.max(rel);
        ensure(rel <= 1e-12, || format!("Γ(x+1) = xΓ(x) off by {rel:e} at x = {x}"))?;
    }
    Ok(format!("Γ functional equation worst relative error {worst:.2e}"))
}

fn dz_grid() -> Vec<Complex64> {
    let mut grid = Vec::new();
    for r in [0.5, 1.0, 1.5, 2.0] {
        for j in 0..12 {
            let z = Complex64::from_polar(r, std::f64::consts::TAU * j as f64 / 12.0);
            let z = Complex64::new(
                if z.re.abs() < 1e-15 { 0.0 } else { z.re },
                if z.im.abs() < 1e-15 { 0.0 } else { z.im },
            );
            let nonpositive_integer = z.im == 0.0 && z.re <= 0.0 && (z.re - z.re.round()).abs() < 1e-12;
            if !nonpositive_integer {
                grid.push(z);
            }
        }
    }
    grid
}

fn dz_rate() -> Outcome {
    let grid = dz_grid();
    let err = |n: usize, z: Complex64| dz_asymptotic_ratio(n, z).map(|r| (r - 1.0).norm());
    let mut c = 0.0f64;
    for &z in &grid {
        c = c.max(ok(err(50, z))? * 50.0);
    }
    for n in 50..=500usize {
        for &z in &grid {
            let e = ok(err(n, z))?;
            ensure(e <= c / n as f64 * (1.0 + 1e-12), || {
                format!("z = {z}, n = {n}: {e:e} > C/n with C = {c:.4}")
            })?;
        }
    }
    Ok(format!("{} grid points, C = {c:.4}, n = 50..500", grid.len()))
}

fn weil_moduli() -> Outcome {
    let start = Instant::now();
    let budget = Budget::default();
    let fields = [prime(2), prime(3), FieldSpec::extension(2, &[1, 1, 1]).unwrap()];
    let mut count = 0;
    for field in fields {
        let q = field.order();
        for m in 1..=3 {
            for d in ok(enumerate_monics(field, m, &budget))? {
                let group = Arc::new(ok(UnitGroup::new(&d, &budget))?);
                for chi in characters(&group).into_iter().filter(|c| !c.is_principal()) {
                    let (l, report) = ok(weil_check(&chi, 1e-6, &budget))?;
                    let sqrt_q = (q as f64).sqrt();
                    for alpha in &l.inverse_roots {
                        let r = alpha.norm();
                        ensure((r - 1.0).abs() <= 1e-6 || (r - sqrt_q).abs() <= 1e-6, || {
                            format!("q = {q}, d = {d}, χ = {:?}: |α| = {r}", chi.exponents())
                        })?;
                    }
                    ensure(report.count(WeilClass::Unclassified) == 0, || {
                        format!("unclassified root mod {d}")
                    })?;
                    count += 1;
                }
            }
        }
    }
    within_time(start, Duration::from_secs(60))?;
    Ok(format!("{count} characters, {:.1?}", start.elapsed()))
}

/// `counts[class][k]` for squarefree monics of degree `n`, by direct enumeration.
fn tally(group: &UnitGroup, n: usize, fz: &Factorizer, budget: &Budget) -> Result<Vec<Vec<u64>>, String> {
    let mut counts = vec![vec![0u64; n + 1]; group.order() as usize];
    for f in ok(enumerate_monics(group.field(), n, budget))? {
        let residue = ok(f.rem(group.modulus()))?;
        let Some(class) = group.index_of(&residue) else {
            continue;
        };
        let s = ok(fz.factor(&f))?;
        if s.squarefree {
            counts[class][s.omega] += 1;
        }
    }
    Ok(counts)
}

fn ap_triple_path() -> Outcome {
    let budget = Budget::default();
    let mut checked = 0;
    for q in [2u64, 3] {
        let field = prime(q);
        let fz = Factorizer::for_degree(field, 8);
        for m in 1..=2 {
            for d in ok(enumerate_monics(field, m, &budget))? {
                let group = Arc::new(ok(UnitGroup::new(&d, &budget))?);
                let series = ok(ap_series(&group, 8, 8, &budget))?;
                let path = ok(CharacterPath::new(&group, 8, 8, &budget))?;
                for n in 0..=8 {
                    let brute = tally(&group, n, &fz, &budget)?;
                    for (class, g) in group.elements().iter().enumerate() {
                        for k in 0..=n {
                            let exact = ok(series.count(g, n, k))?;
                            let chars = ok(path.count(g, n, k))?;
                            let want = BigUint::from(brute[class][k]);
                            ensure(exact == want && chars == brute[class][k] as f64, || {
                                format!("q={q} d={d} g={g} n={n} k={k}: enumeration {want}, group ring {exact}, characters {chars}")
                            })?;
                            checked += 1;
                        }
                    }
                }
            }
        }
    }
    Ok(format!("{checked} (d, g, n, k) cases"))
}

fn involution() -> Outcome {
    let budget = Budget::default();
    let field = prime(2);
    let mut checked = 0;
    for n in 1..=8usize {
        let sf = ok(euler_product_squarefree(2, n, n, &budget))?;
        for h in 0..n {
            let group = Arc::new(ok(UnitGroup::new(&Poly::monomial(field, 1, n - h), &budget))?);
            let series = ok(ap_series(&group, n, n, &budget))?;
            let reps = ok(interval_representatives(field, n, h, &budget))?;
            for k in 0..=n {
                let mut total = BigUint::zero();
                for g in &reps {
                    let qy = IntervalQuery { n, k, g: g.clone(), h };
                    let exact = ok(pi_k_interval_with(&series, &qy))?;
                    let brute = ok(pi_k_interval_brute(&qy, &budget))?;
                    ensure(exact == brute, || {
                        format!("n={n} h={h} k={k} g={g}: {exact} vs {brute}")
                    })?;
                    checked += 1;
                    total += exact;
                }
                ensure(total == sf.coeff(n, k), || format!("partition n={n} h={h} k={k}"))?;
            }
        }
    }
    Ok(format!(
        "{checked} interval counts against enumeration, partitions exact"
    ))
}

fn qlimit() -> Outcome {
    let qs = [101u64, 1009, 10007];
    let (n, budget) = (5usize, Budget::default());
    let mut summary = Vec::new();
    for k in [2usize, 3] {
        let mut gaps = Vec::new();
        for &q in &qs {
            let s = ok(euler_product_squarefree(q, n, k, &budget))?;
            gaps.push(ok(qlimit_relative_gap(q, n, k, &s.coeff(n, k)))?);
        }
        ensure(gaps.windows(2).all(|w| w[1] < w[0]), || {
            format!("k={k}: gaps {gaps:?} not decreasing")
        })?;
        let c = gaps[0] * qs[0] as f64 / (k * n) as f64;
        for (&q, &gap) in qs.iter().zip(&gaps) {
            let bound = c * (k * n) as f64 / q as f64;
            ensure(gap <= bound * (1.0 + 1e-12), || {
                format!("k={k}, q={q}: gap {gap:e} > {bound:e}")
            })?;
        }
        summary.push(format!("k={k}: {}", fmt_list(&gaps)));
    }
    Ok(summary.join("; "))
}

fn cauchy() -> Outcome {
    let s = ok(euler_product_squarefree(2, 10, 10, &Budget::default()))?;
    let exact = s.coeff(10, 2).to_f64().unwrap();
    let r = default_radius(10, 2);
    let at = |m: usize| cauchy_extract_series(&s, 10, 2, r, m).map(|v| (v - exact).abs());
    let e256 = ok(at(256))?;
    ensure(e256 <= 1e-6 * exact, || format!("M = 256 error {e256:e}"))?;
    let (e64, e128) = (ok(at(64))?, ok(at(128))?);
    // Rounding scale of the trapezoid sum: unit roundoff times sum_j |c_j| r^{j-k}.
    let row = ok(s.row(10))?;
    let scale: f64 = row
        .iter()
        .enumerate()
        .map(|(j, c)| c.to_f64().unwrap() * r.powi(j as i32 - 2))
        .sum();
    let floor = 64.0 * f64::EPSILON * scale;
    let halves = e128 <= e64 / 2.0;
    let at_floor = e64 <= floor && e128 <= floor;
    ensure(halves || at_floor, || {
        format!("M 64 -> 128: {e64:e} -> {e128:e}, floor {floor:e}")
    })?;
    Ok(format!(
        "M=256 error {e256:.1e}; M 64 -> 128: {e64:.1e} -> {e128:.1e} ({})",
        if halves { "halved" } else { "both at the float floor" }
    ))
}

/// `Π(d)` from `q^n = sum_{d | n} d Π(d)`.
fn prime_counts(q: u64, n_max: usize) -> Vec<BigInt> {
    let mut pi = vec![BigInt::zero(); n_max + 1];
    for n in 1..=n_max {
        let mut rest = BigInt::from(q).pow(n as u32);
        for d in (1..n).filter(|d| n % d == 0) {
            rest -= BigInt::from(d) * &pi[d];
        }
        pi[n] = rest / BigInt::from(n);
    }
    pi
}

fn erdos_kac() -> Outcome {
    let all = ok(euler_product_allfactors(2, 200, 200, &Budget::default()))?;
    let pi = prime_counts(2, 200);
    let mut expected = BigRational::zero();
    let mut last = 0.0;
    for n in 1..=200usize {
        expected += BigRational::new(pi[n].clone(), BigInt::from(2).pow(n as u32));
        let m = ok(omega_moments(&all, n))?;
        ensure(m.mean == expected, || format!("mean at n = {n}"))?;
        last = m.mean_f64();
    }
    let ratio = last / 200f64.ln();
    ensure((ratio - 1.0).abs() <= 0.15, || {
        format!("mean / log n = {ratio:.4} at n = 200")
    })?;
    Ok(format!("exact means for n <= 200; mean / log 200 = {ratio:.4}"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("exactness of Euler products against enumeration", exactness),
        ("global identities through n = 400", global_identities),
        ("global normalized error decay", global_rate),
        ("closed-form analytics and Γ functional equation", closed_forms),
        ("D_z(n) asymptotic rate C/n", dz_rate),
        ("Weil moduli of L-polynomial inverse roots", weil_moduli),
        ("progression triple-path agreement", ap_triple_path),
        ("short-interval involution and partition", involution),
        ("large-q limit gap decay", qlimit),
        ("Cauchy quadrature extraction", cauchy),
        ("mean of ω and its growth", erdos_kac),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("PASS criterion {:>2}: {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {:>2}: {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
