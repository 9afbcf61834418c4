use std::sync::Arc;

use num_bigint::BigUint;
use num_complex::Complex64;
use serde_json::{json, Value};

use ffcount::algebra::{FieldSpec, Poly};
use ffcount::apinterval::{
    ap_series, pi_k_ap_brute, pi_k_interval_brute, pi_k_interval_chars, pi_k_interval_with, APQuery, CharacterPath,
    IntervalQuery,
};
use ffcount::asym::{
    big_g, gamma_real, global_normalized_error, interval_admissible, k_admissible, main_term_global,
    main_term_interval, main_term_progression, progression_admissible, qlimit_relative_gap, qlimit_sum, AnalyticConfig,
    Magnitude,
};
use ffcount::characters::{characters, weil_check, UnitGroup};
use ffcount::exactcount::{
    brute_force_table, euler_product_allfactors, euler_product_squarefree, mean_closed_form, omega_moments, CountMode,
};
use ffcount::{Budget, Error};

use crate::config::{Command, Mode, RunConfig};
use crate::range::IntRange;
use crate::report::{big, num, opt_num, Report, Table};
use crate::CliError;

pub fn execute(config: &RunConfig) -> Result<Report, CliError> {
    match &config.command {
        Command::Count { n, k, mode } => count(config, n, k.as_ref(), *mode),
        Command::Asym { n, k } => asym(config, n, k),
        Command::Compare { n, k } => compare(config, n, k),
        Command::Ap { d, g, n, k } => ap(config, d, g, n, k),
        Command::Interval { g, h, n, k } => interval(config, g.as_deref(), *h, n, k),
        Command::Weil { d, tol } => weil(config, d, *tol),
        Command::OmegaStats { n } => omega_stats(config, n),
        Command::Qlimit { n, k } => qlimit(config, n, k),
        Command::Selftest => Ok(selftest(config)),
    }
}

fn q_pow(q: u64, n: usize) -> Option<u64> {
    q.checked_pow(u32::try_from(n).ok()?)
}

fn within(q: u64, n: usize, limit: u64) -> bool {
    q_pow(q, n).is_some_and(|v| v <= limit)
}

fn ln_abs(m: &Option<Magnitude>) -> Value {
    opt_num(m.map(|m| m.ln_abs()))
}

/// A main term, present only in the proven range unless overridden.
fn main_term<T>(
    config: &RunConfig,
    in_range: bool,
    n: usize,
    k: usize,
    f: impl FnOnce() -> ffcount::Result<T>,
) -> Result<Option<T>, CliError> {
    if n < 2 || k < 1 || !(in_range || config.override_range) {
        return Ok(None);
    }
    Ok(Some(f()?))
}

fn count(config: &RunConfig, ns: &IntRange, ks: Option<&IntRange>, mode: Mode) -> Result<Report, CliError> {
    let field = config.field()?;
    let q = field.order();
    let n_max = ns.max();
    let k_values = ks.map_or_else(|| (0..=n_max).collect(), IntRange::values);
    let k_max = *k_values.iter().max().expect("ranges are nonempty");
    let series = match mode {
        Mode::Squarefree => euler_product_squarefree(q, n_max, k_max, &config.budget)?,
        Mode::All => euler_product_allfactors(q, n_max, k_max, &config.budget)?,
    };
    let mut report = Report::new("count", Table::new(&["q", "n", "k", "mode", "exact", "brute", "agree"]));
    let label = if mode == Mode::Squarefree { "squarefree" } else { "all" };
    for n in ns.values() {
        let table = if within(q, n, config.brute_max) {
            Some(brute_force_table(field, n, &config.budget)?)
        } else {
            None
        };
        for &k in k_values.iter().filter(|&&k| ks.is_some() || k <= n) {
            let exact = series.coeff(n, k);
            let brute = table.as_ref().map(|t| {
                let col = match CountMode::from(mode) {
                    CountMode::Squarefree => &t.squarefree,
                    CountMode::All => &t.all,
                };
                BigUint::from(col.get(k).copied().unwrap_or(0))
            });
            let agree = brute.as_ref().is_none_or(|b| *b == exact);
            if !agree {
                report.fail(format!("series and enumeration disagree at n = {n}, k = {k}"));
            }
            report.table.push(vec![
                json!(q),
                json!(n),
                json!(k),
                json!(label),
                big(&exact),
                brute.as_ref().map_or(Value::Null, big),
                json!(agree),
            ]);
        }
    }
    Ok(report)
}

fn widened(cfg: &AnalyticConfig, z: f64) -> AnalyticConfig {
    AnalyticConfig {
        a: cfg.a.max(z.abs() * (1.0 + 1e-9)),
        ..*cfg
    }
}

fn asym(config: &RunConfig, ns: &IntRange, ks: &IntRange) -> Result<Report, CliError> {
    let q = config.field()?.order();
    let cfg = config.analytic()?;
    let mut report = Report::new(
        "asym",
        Table::new(&["q", "n", "k", "z", "G", "main_term_lnAbs", "in_proven_range"]),
    );
    for n in ns.values() {
        for k in ks.values() {
            if n < 2 || k < 1 {
                return Err(CliError::Usage(format!(
                    "main terms need n >= 2 and k >= 1, got n = {n}, k = {k}"
                )));
            }
            let z = (k - 1) as f64 / (n as f64).ln();
            let g = big_g(q, Complex64::new(z, 0.0), &widened(&cfg, z))?.re;
            let in_range = k_admissible(n, k, cfg.a);
            let main = main_term(config, in_range, n, k, || {
                main_term_global(q, n, k, &cfg, config.policy())
            })?;
            report.table.push(vec![
                json!(q),
                json!(n),
                json!(k),
                num(z),
                num(g),
                ln_abs(&main),
                json!(in_range),
            ]);
        }
    }
    Ok(report)
}

fn compare(config: &RunConfig, ns: &IntRange, ks: &IntRange) -> Result<Report, CliError> {
    let q = config.field()?.order();
    let cfg = config.analytic()?;
    let series = euler_product_squarefree(q, ns.max(), ks.max(), &config.budget)?;
    let mut report = Report::new(
        "compare",
        Table::new(&[
            "q",
            "n",
            "k",
            "exact",
            "main_term_lnAbs",
            "ratio",
            "normalized_error",
            "in_proven_range",
        ]),
    );
    for n in ns.values() {
        for k in ks.values() {
            if n < 2 || k < 1 {
                return Err(CliError::Usage(format!(
                    "comparisons need n >= 2 and k >= 1, got n = {n}, k = {k}"
                )));
            }
            let exact = series.coeff(n, k);
            let in_range = k_admissible(n, k, cfg.a);
            let main = main_term(config, in_range, n, k, || {
                main_term_global(q, n, k, &cfg, config.policy())
            })?;
            let ratio = main.map(|m| Magnitude::from_biguint(&exact).ratio(&m));
            let err = global_normalized_error(q, n, k, &exact, &cfg)?;
            report.table.push(vec![
                json!(q),
                json!(n),
                json!(k),
                big(&exact),
                ln_abs(&main),
                opt_num(ratio),
                num(err),
                json!(in_range),
            ]);
        }
    }
    Ok(report)
}

/// The character path lists every irreducible of degree `<= n`, so it runs at brute-force scale.
fn char_path_feasible(config: &RunConfig, q: u64, n: usize) -> bool {
    within(q, n, config.brute_max)
}

fn char_value(x: f64) -> Value {
    Value::String(format!("{x:.0}"))
}

fn ap(config: &RunConfig, d: &str, g: &str, ns: &IntRange, ks: &IntRange) -> Result<Report, CliError> {
    let field = config.field()?;
    let q = field.order();
    let cfg = config.analytic()?;
    let d = Poly::parse(field, d)?;
    let g = Poly::parse(field, g)?;
    let n_max = ns.max();
    let k_max = ks.max();
    APQuery {
        n: n_max,
        k: k_max,
        g: g.clone(),
        d: d.clone(),
    }
    .validate()?;
    let m = d.deg().expect("validated modulus");
    let group = Arc::new(UnitGroup::new(&d, &config.budget)?);
    let series = ap_series(&group, n_max, k_max, &config.budget)?;
    let char_n = ns
        .values()
        .into_iter()
        .filter(|&n| char_path_feasible(config, q, n))
        .max();
    let path = match char_n {
        Some(n) => Some(CharacterPath::new(&group, n, k_max, &config.budget)?),
        None => None,
    };
    let mut report = Report::new(
        "ap",
        Table::new(&[
            "q",
            "d",
            "g",
            "n",
            "k",
            "exact",
            "char_path",
            "brute",
            "main_term_lnAbs",
            "in_proven_range",
            "agree",
        ]),
    );
    for n in ns.values() {
        for k in ks.values() {
            let exact = series.count(&g, n, k)?;
            let chars = match &path {
                Some(p) if char_path_feasible(config, q, n) => Some(p.count(&g, n, k)?),
                _ => None,
            };
            let brute = if within(q, n, config.brute_max) {
                let qy = APQuery {
                    n,
                    k,
                    g: g.clone(),
                    d: d.clone(),
                };
                Some(pi_k_ap_brute(&qy, &config.budget)?)
            } else {
                None
            };
            let in_range = k_admissible(n, k, cfg.a) && progression_admissible(q, n, m, cfg.a);
            let main = main_term(config, in_range, n, k, || {
                main_term_progression(n, k, &d, &cfg, config.policy())
            })?;
            let agree =
                brute.as_ref().is_none_or(|b| *b == exact) && chars.is_none_or(|c| c.to_string() == exact.to_string());
            if !agree {
                report.fail(format!("counting paths disagree at n = {n}, k = {k}"));
            }
            report.table.push(vec![
                json!(q),
                json!(d.to_string()),
                json!(g.to_string()),
                json!(n),
                json!(k),
                big(&exact),
                chars.map_or(Value::Null, char_value),
                brute.as_ref().map_or(Value::Null, big),
                ln_abs(&main),
                json!(in_range),
                json!(agree),
            ]);
        }
    }
    Ok(report)
}

fn interval(config: &RunConfig, g: Option<&str>, h: usize, ns: &IntRange, ks: &IntRange) -> Result<Report, CliError> {
    let field = config.field()?;
    let q = field.order();
    let cfg = config.analytic()?;
    let centre = g.map(|g| Poly::parse(field, g)).transpose()?;
    if let Some(c) = &centre {
        if ns.values() != vec![c.deg().unwrap_or(0)] {
            return Err(CliError::Usage(format!(
                "--g {c} fixes n = its degree; --n {ns} does not match"
            )));
        }
    }
    let k_max = ks.max();
    let mut report = Report::new(
        "interval",
        Table::new(&[
            "q",
            "g",
            "h",
            "n",
            "k",
            "exact",
            "char_path",
            "brute",
            "main_term_lnAbs",
            "in_proven_range",
            "agree",
        ]),
    );
    for n in ns.values() {
        let g = centre.clone().unwrap_or_else(|| Poly::monomial(field, 1, n));
        IntervalQuery {
            n,
            k: k_max,
            g: g.clone(),
            h,
        }
        .validate()?;
        let group = Arc::new(UnitGroup::new(&Poly::monomial(field, 1, n - h), &config.budget)?);
        let series = ap_series(&group, n, k_max, &config.budget)?;
        let path = if char_path_feasible(config, q, n) {
            Some(CharacterPath::new(&group, n, k_max, &config.budget)?)
        } else {
            None
        };
        for k in ks.values() {
            let qy = IntervalQuery { n, k, g: g.clone(), h };
            let exact = pi_k_interval_with(&series, &qy)?;
            let chars = path.as_ref().map(|p| pi_k_interval_chars(p, &qy)).transpose()?;
            let brute = if within(q, h + 1, config.brute_max) {
                Some(pi_k_interval_brute(&qy, &config.budget)?)
            } else {
                None
            };
            let in_range = k_admissible(n, k, cfg.a) && interval_admissible(q, n, h, cfg.a);
            let main = main_term(config, in_range, n, k, || {
                main_term_interval(q, n, k, h, &cfg, config.policy()).map(|m| m.total())
            })?;
            let agree =
                brute.as_ref().is_none_or(|b| *b == exact) && chars.is_none_or(|c| c.to_string() == exact.to_string());
            if !agree {
                report.fail(format!("counting paths disagree at n = {n}, k = {k}"));
            }
            report.table.push(vec![
                json!(q),
                json!(g.to_string()),
                json!(h),
                json!(n),
                json!(k),
                big(&exact),
                chars.map_or(Value::Null, char_value),
                brute.as_ref().map_or(Value::Null, big),
                ln_abs(&main),
                json!(in_range),
                json!(agree),
            ]);
        }
    }
    Ok(report)
}

fn exponents_label(e: &[u64]) -> String {
    e.iter().map(u64::to_string).collect::<Vec<_>>().join(" ")
}

fn weil(config: &RunConfig, d: &str, tol: f64) -> Result<Report, CliError> {
    let field = config.field()?;
    let q = field.order();
    let d = Poly::parse(field, d)?;
    let group = Arc::new(UnitGroup::new(&d, &config.budget)?);
    let mut report = Report::new(
        "weil",
        Table::new(&[
            "q",
            "d",
            "character",
            "exponents",
            "root",
            "re",
            "im",
            "modulus",
            "class",
        ]),
    );
    report.rows_in_json = false;
    let mut listed = Vec::new();
    let mut failures = 0usize;
    for (idx, chi) in characters(&group)
        .into_iter()
        .enumerate()
        .filter(|(_, c)| !c.is_principal())
    {
        let (l, check) = weil_check(&chi, tol, &config.budget)?;
        if !check.passed() {
            failures += 1;
        }
        let mut roots = Vec::new();
        for (j, ((alpha, modulus), class)) in l
            .inverse_roots
            .iter()
            .zip(&check.moduli)
            .zip(&check.classes)
            .enumerate()
        {
            roots.push(json!({
                "re": num(alpha.re),
                "im": num(alpha.im),
                "modulus": num(*modulus),
                "class": class.label(),
            }));
            report.table.push(vec![
                json!(q),
                json!(d.to_string()),
                json!(idx),
                json!(exponents_label(chi.exponents())),
                json!(j),
                num(alpha.re),
                num(alpha.im),
                num(*modulus),
                json!(class.label()),
            ]);
        }
        listed.push(json!({
            "exponents": chi.exponents(),
            "effective_degree": l.effective_degree,
            "zero_class": check.zero_class,
            "max_deviation": num(check.max_deviation),
            "passed": check.passed(),
            "inverse_roots": roots,
        }));
    }
    if failures > 0 {
        report.fail(format!("{failures} characters have unclassified inverse roots"));
    }
    report.extra.insert("q".into(), json!(q));
    report.extra.insert("d".into(), json!(d.to_string()));
    report.extra.insert("tol".into(), num(tol));
    report.extra.insert("sum_start".into(), json!(0));
    report.extra.insert("characters".into(), Value::Array(listed));
    report.extra.insert("failures".into(), json!(failures));
    Ok(report)
}

fn omega_stats(config: &RunConfig, ns: &IntRange) -> Result<Report, CliError> {
    let q = config.field()?.order();
    let n_max = ns.max();
    let series = euler_product_allfactors(q, n_max, n_max, &config.budget)?;
    let mut report = Report::new(
        "omega-stats",
        Table::new(&[
            "q",
            "n",
            "mean",
            "mean_exact",
            "variance",
            "variance_exact",
            "mean_closed_form",
            "agree",
        ]),
    );
    for n in ns.values() {
        let m = omega_moments(&series, n)?;
        let closed = mean_closed_form(q, n);
        let agree = closed == m.mean;
        if !agree {
            report.fail(format!("mean of ω at n = {n} differs from its closed form"));
        }
        report.table.push(vec![
            json!(q),
            json!(n),
            num(m.mean_f64()),
            json!(m.mean.to_string()),
            num(m.variance_f64()),
            json!(m.variance.to_string()),
            json!(closed.to_string()),
            json!(agree),
        ]);
    }
    Ok(report)
}

fn qlimit(config: &RunConfig, ns: &IntRange, ks: &IntRange) -> Result<Report, CliError> {
    let q = config.field()?.order();
    let series = euler_product_squarefree(q, ns.max(), ks.max(), &config.budget)?;
    let mut report = Report::new("qlimit", Table::new(&["q", "n", "k", "exact", "S", "relative_gap"]));
    for n in ns.values() {
        for k in ks.values() {
            let exact = series.coeff(n, k);
            let s = qlimit_sum(n, k)?;
            let gap = qlimit_relative_gap(q, n, k, &exact)?;
            report.table.push(vec![
                json!(q),
                json!(n),
                json!(k),
                big(&exact),
                json!(s.to_string()),
                num(gap),
            ]);
        }
    }
    Ok(report)
}

type Check = fn(&Budget) -> ffcount::Result<Option<String>>;

fn check_series(b: &Budget) -> ffcount::Result<Option<String>> {
    for (q, n_max) in [(2u64, 8usize), (3, 6)] {
        let field = FieldSpec::prime(q)?;
        let sf = euler_product_squarefree(q, n_max, n_max, b)?;
        let all = euler_product_allfactors(q, n_max, n_max, b)?;
        for n in 0..=n_max {
            let t = brute_force_table(field, n, b)?;
            for k in 0..=n {
                if sf.coeff(n, k) != BigUint::from(t.squarefree[k]) || all.coeff(n, k) != BigUint::from(t.all[k]) {
                    return Ok(Some(format!("q = {q}, n = {n}, k = {k}")));
                }
            }
        }
    }
    Ok(None)
}

fn check_identities(b: &Budget) -> ffcount::Result<Option<String>> {
    let sf = euler_product_squarefree(2, 60, 60, b)?;
    for n in 2..=60usize {
        let total: BigUint = (0..=n).map(|k| sf.coeff(n, k)).sum();
        if total != (BigUint::from(1u32) << n) - (BigUint::from(1u32) << (n - 1)) {
            return Ok(Some(format!("squarefree total at n = {n}")));
        }
    }
    Ok(None)
}

fn check_analytic(_: &Budget) -> ffcount::Result<Option<String>> {
    let cfg = AnalyticConfig::default();
    for q in [2u64, 3, 5, 9] {
        let f = ffcount::asym::euler_f(q, Complex64::new(1.0, 0.0), &cfg)?;
        if (f - (1.0 - 1.0 / q as f64)).norm() > 1e-10 {
            return Ok(Some(format!("F(1/{q}, 1) = {f}")));
        }
    }
    for x in [0.25, 1.5, 4.0, 9.5] {
        let lhs = gamma_real(x + 1.0)?;
        let rhs = x * gamma_real(x)?;
        if (lhs - rhs).abs() > 1e-12 * rhs.abs() {
            return Ok(Some(format!("Γ functional equation at {x}")));
        }
    }
    Ok(None)
}

fn check_weil(b: &Budget) -> ffcount::Result<Option<String>> {
    let field = FieldSpec::prime(3)?;
    let group = Arc::new(UnitGroup::new(&Poly::parse(field, "1,0,1")?, b)?);
    for chi in characters(&group).into_iter().filter(|c| !c.is_principal()) {
        let (_, report) = weil_check(&chi, 1e-6, b)?;
        if !report.passed() {
            return Ok(Some(format!("character {:?} mod 1,0,1 over F_3", chi.exponents())));
        }
    }
    Ok(None)
}

fn check_progressions(b: &Budget) -> ffcount::Result<Option<String>> {
    let field = FieldSpec::prime(2)?;
    let d = Poly::parse(field, "1,1,1")?;
    let group = Arc::new(UnitGroup::new(&d, b)?);
    let series = ap_series(&group, 7, 7, b)?;
    let path = CharacterPath::new(&group, 7, 7, b)?;
    for g in group.elements() {
        for n in 0..=7 {
            for k in 0..=n {
                let exact = series.count(g, n, k)?;
                let brute = pi_k_ap_brute(
                    &APQuery {
                        n,
                        k,
                        g: g.clone(),
                        d: d.clone(),
                    },
                    b,
                )?;
                let chars = path.count(g, n, k)?;
                if exact != brute || chars.to_string() != exact.to_string() {
                    return Ok(Some(format!("g = {g}, n = {n}, k = {k}")));
                }
            }
        }
    }
    Ok(None)
}

fn check_intervals(b: &Budget) -> ffcount::Result<Option<String>> {
    let field = FieldSpec::prime(2)?;
    let n = 7;
    for h in 0..n {
        let group = Arc::new(UnitGroup::new(&Poly::monomial(field, 1, n - h), b)?);
        let series = ap_series(&group, n, n, b)?;
        for k in 0..=n {
            let qy = IntervalQuery {
                n,
                k,
                g: Poly::monomial(field, 1, n),
                h,
            };
            if pi_k_interval_with(&series, &qy)? != pi_k_interval_brute(&qy, b)? {
                return Ok(Some(format!("h = {h}, k = {k}")));
            }
        }
    }
    Ok(None)
}

fn selftest(config: &RunConfig) -> Report {
    let checks: [(&str, Check); 6] = [
        ("series_vs_enumeration", check_series),
        ("global_identities", check_identities),
        ("analytic_closed_forms", check_analytic),
        ("weil_moduli", check_weil),
        ("progression_paths", check_progressions),
        ("interval_involution", check_intervals),
    ];
    let mut report = Report::new("selftest", Table::new(&["check", "passed", "detail"]));
    for (name, check) in checks {
        let (passed, detail) = match check(&config.budget) {
            Ok(None) => (true, Value::Null),
            Ok(Some(why)) => (false, json!(why)),
            Err(e) => (false, json!(e.to_string())),
        };
        if !passed {
            report.fail(format!("selftest check {name} failed"));
        }
        report.table.push(vec![json!(name), json!(passed), detail]);
    }
    report
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}
