//! Acceptance suite: one line per criterion, non-zero exit if any fails.

// `ensure!(a <= b)` must fail on NaN, which the negated form does.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::f64::consts::PI;
use std::panic::{self, AssertUnwindSafe};
use std::process::{Command, Output};
use std::time::{Duration, Instant};

use serde_json::Value;
use sharpbound::apps;
use sharpbound::ineq::{self, combined_tolerance, Analysis};
use sharpbound::quad::{self, DEFAULT_TOL};
use sharpbound::search::{self, Family, GeneratorSpec, Hypothesis};
use sharpbound::{parse, Expr, Interval, TheoremId};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn close(got: f64, want: f64, tol: f64) -> bool {
    (got - want).abs() <= tol
}

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sharpbound"))
        .args(args)
        .output()
        .expect("run sharpbound")
}

fn cli_json(args: &[&str]) -> Result<(i32, Value), String> {
    let out = cli(args);
    let code = out.status.code().unwrap_or(-1);
    let v = serde_json::from_slice(&out.stdout).map_err(|e| {
        format!(
            "bad json ({e}); stderr: {}",
            String::from_utf8_lossy(&out.stderr)
        )
    })?;
    Ok((code, v))
}

fn f64_at(v: &Value, key: &str) -> f64 {
    v[key].as_f64().unwrap_or(f64::NAN)
}

fn sharp_quadratic() -> Expr {
    parse("6*x^2 - 6*x + 1").unwrap()
}

/// Mixed twice-differentiable corpus: polynomials, trig polynomials, exponentials.
fn mixed_corpus(total: u64) -> Vec<(Expr, Interval)> {
    let parts = [
        (
            Family::Polynomial,
            vec![Hypothesis::Convex, Hypothesis::MeanZero],
            2 * total / 5,
        ),
        (
            Family::TrigPolynomial,
            vec![Hypothesis::MeanZero],
            3 * total / 10,
        ),
        (
            Family::ExpMixture,
            vec![],
            total - 2 * total / 5 - 3 * total / 10,
        ),
    ];
    let mut out = Vec::new();
    for (i, (family, targets, trials)) in parts.into_iter().enumerate() {
        let spec = GeneratorSpec::new(family, targets)
            .seed(100 + i as u64)
            .trials(trials);
        let interval = spec.interval;
        out.extend(
            search::generate(&spec)
                .unwrap()
                .into_iter()
                .map(|f| (f, interval)),
        );
    }
    out
}

fn c1_thm3_equality() -> Outcome {
    let start = Instant::now();
    let (code, v) = cli_json(&[
        "verify",
        "--expr",
        "6*x^2-6*x+1",
        "--interval",
        "0",
        "1",
        "--theorem",
        "thm3",
    ])?;
    let elapsed = start.elapsed();
    ensure!(code == 0, "exit code {code}");
    let r = &v["reports"][0];
    let (lhs, rhs) = (f64_at(r, "lhs"), f64_at(r, "rhs"));
    ensure!(
        close(lhs, 1.0, 1e-9) && close(rhs, 1.0, 1e-9),
        "lhs {lhs}, rhs {rhs}"
    );
    let energy = r["quadrature_budget"]
        .as_array()
        .and_then(|q| q.iter().find(|e| e["quantity"] == "int_df_sq"))
        .map_or(f64::NAN, |e| f64_at(e, "value"));
    ensure!(close(energy, 12.0, 1e-9), "int f'^2 = {energy}");
    ensure!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    Ok(format!(
        "lhs {lhs:.12}, rhs {rhs:.12}, int f'^2 {energy:.12}, {elapsed:.2?}"
    ))
}

fn c2_thm2_equality() -> Outcome {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for c in [1.0, 2.0, -3.0] {
        let f = parse(&format!("({c})*(3*((x - pi)/pi)^2 - 1)")).unwrap();
        let r = ineq::check_alzer(&f).map_err(|e| e.to_string())?;
        let (lhs_oracle, rhs_oracle) = (6.0 / PI * (2.0 * c) * (2.0 * c), 24.0 * c * c / PI);
        let ratio = r.sharpness_ratio.unwrap_or(f64::NAN);
        ensure!(close(ratio, 1.0, 1e-8), "c = {c}: ratio {ratio}");
        ensure!(
            close(r.lhs, lhs_oracle, 1e-8 * lhs_oracle)
                && close(r.rhs, rhs_oracle, 1e-8 * rhs_oracle),
            "c = {c}: lhs {} vs {lhs_oracle}, rhs {} vs {rhs_oracle}",
            r.lhs,
            r.rhs
        );
        worst = worst.max((ratio - 1.0).abs());
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    Ok(format!("max |ratio - 1| = {worst:.1e}, {elapsed:.2?}"))
}

fn c3_thm6_equality() -> Outcome {
    let r = ineq::check_thm6_general(&sharp_quadratic(), &Interval::unit())
        .map_err(|e| e.to_string())?;
    let t_rap = r.details.get("t_rap").copied().unwrap_or(f64::NAN);
    ensure!(close(t_rap, 1.0, 1e-9), "T_rap {t_rap}");
    ensure!(
        close(r.lhs, 1.0, 1e-9) && close(r.rhs, 1.0, 1e-9),
        "lhs {}, rhs {}",
        r.lhs,
        r.rhs
    );
    Ok(format!(
        "T_rap {t_rap:.12}, lhs {:.12}, rhs {:.12}",
        r.lhs, r.rhs
    ))
}

fn c4_no_violations() -> Outcome {
    let start = Instant::now();
    let convex = GeneratorSpec::new(
        Family::Polynomial,
        [
            Hypothesis::Convex,
            Hypothesis::MeanZero,
            Hypothesis::PositiveEndpointProduct,
        ],
    )
    .seed(42)
    .trials(1000);
    let increasing = GeneratorSpec::new(
        Family::Polynomial,
        [Hypothesis::Increasing, Hypothesis::MeanZero],
    )
    .seed(42)
    .trials(1000);
    let mut notes = Vec::new();
    for (spec, theorem) in [(convex, TheoremId::Thm3), (increasing, TheoremId::Thm4)] {
        let out = search::mine(&spec, &[theorem], 1).map_err(|e| e.to_string())?;
        let s = &out.summary[0];
        ensure!(
            s.checked == 1000,
            "{theorem}: only {} of 1000 checked",
            s.checked
        );
        ensure!(
            out.records.is_empty(),
            "{theorem}: {} counterexamples",
            out.records.len()
        );
        notes.push(format!("{theorem} 0/1000"));
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    Ok(format!("{}, {elapsed:.1?}", notes.join(", ")))
}

fn c5_vanishing_identity() -> Outcome {
    let r = ineq::check_higher_order(&sharp_quadratic(), &Interval::unit(), 1)
        .map_err(|e| e.to_string())?;
    let residual = r.details["vanishing_residual"];
    ensure!(
        close(residual, 2.0, 1e-9),
        "sharp quadratic residual {residual}"
    );

    let corpus = mixed_corpus(500);
    ensure!(corpus.len() == 500, "corpus has {} members", corpus.len());
    let mut worst = 0.0f64;
    for (f, interval) in &corpus {
        let an = Analysis::new(f.clone(), *interval);
        let residual = an.vanishing_integral(1).map_err(|e| e.to_string())?.value;
        let (a, b) = (interval.a(), interval.b());
        let integral = quad::integrate(f, interval, DEFAULT_TOL)
            .map_err(|e| e.to_string())?
            .value;
        let identity = (b - a) * (f.eval(a).unwrap() + f.eval(b).unwrap()) - 2.0 * integral;
        let gap = (residual - identity).abs();
        ensure!(
            gap <= 1e-8,
            "{f} on {interval}: residual {residual} vs {identity}"
        );
        worst = worst.max(gap);
    }
    Ok(format!(
        "sharp quadratic residual {residual:.12}; 500 members, max gap {worst:.1e}"
    ))
}

fn c6_higher_order_falsified() -> Outcome {
    let sin = ineq::check_higher_order(&parse("sin(x)").unwrap(), &Interval::full_period(), 1)
        .map_err(|e| e.to_string())?;
    let rhs_oracle = PI / 6.0 * PI.sqrt();
    ensure!(
        close(sin.lhs, 1.0, 1e-9) && close(sin.rhs, rhs_oracle, 1e-9),
        "sin(x): lhs {}, rhs {}",
        sin.lhs,
        sin.rhs
    );

    let (code, v) = cli_json(&[
        "mine",
        "--family",
        "trig",
        "--targets",
        "mean-zero",
        "--interval",
        "0",
        "2pi",
        "--theorem",
        "higher",
        "--n",
        "1",
        "--seed",
        "1",
        "--trials",
        "60",
    ])?;
    ensure!(code == 3, "exit code {code}");
    let records = v["reports"].as_array().cloned().unwrap_or_default();
    ensure!(!records.is_empty(), "no records");
    let sin_ratio = 1.0 / rhs_oracle;
    let mut sin_class = 0;
    for rec in &records {
        let f = parse(rec["function"].as_str().unwrap()).map_err(|e| e.to_string())?;
        let tight = Analysis::with_tol(f, Interval::full_period(), DEFAULT_TOL / 10.0)
            .higher_order(1)
            .map_err(|e| e.to_string())?;
        ensure!(
            tight.margin < -combined_tolerance(tight.rhs),
            "record does not survive: {}",
            rec["function"]
        );
        let ratio = f64_at(rec, "lhs") / f64_at(rec, "rhs");
        if close(ratio, sin_ratio, 1e-8 * sin_ratio) {
            sin_class += 1;
        }
    }
    ensure!(
        sin_class > 0,
        "no sin(x)-class record among {}",
        records.len()
    );
    Ok(format!(
        "{} records, {sin_class} of sin(x) class (ratio {sin_ratio:.6}), all confirmed",
        records.len()
    ))
}

fn c7_trapezoid_bounds() -> Outcome {
    let b =
        apps::trapezoid_bounds(&sharp_quadratic(), &Interval::unit()).map_err(|e| e.to_string())?;
    let (classic, new) = (
        b.classic_bound.unwrap_or(f64::NAN),
        b.new_bound.unwrap_or(f64::NAN),
    );
    ensure!(
        close(classic, 1.0, 1e-9) && close(new, 1.0, 1e-9) && close(b.true_abs, 1.0, 1e-9),
        "classic {classic}, new {new}, |T_rap| {}",
        b.true_abs
    );
    let corpus = mixed_corpus(300);
    for (f, interval) in &corpus {
        let b = apps::trapezoid_bounds(f, interval).map_err(|e| e.to_string())?;
        let classic = b
            .classic_bound
            .ok_or_else(|| format!("{f}: no classic bound"))?;
        ensure!(
            b.true_abs <= classic + combined_tolerance(classic),
            "{f} on {interval}: |T_rap| {} > {classic}",
            b.true_abs
        );
    }
    Ok(format!("classic = new = |T_rap| = 1 for the sharp quadratic; {} corpus members within the classic bound", corpus.len()))
}

fn c8_quadrature() -> Outcome {
    let e = std::f64::consts::E;
    let mut cases: Vec<(String, f64, f64, f64)> = (0..=10)
        .map(|k| (format!("x^{k}"), 0.0, 1.0, 1.0 / (k as f64 + 1.0)))
        .collect();
    cases.extend([
        ("x^10".to_string(), -1.0, 2.0, 2049.0 / 11.0),
        ("x^3 - 2*x".to_string(), -2.0, 3.0, 11.25),
        ("6*x^2 - 6*x + 1".to_string(), 0.0, 2.0, 6.0),
        ("(1 + x)^5".to_string(), 0.0, 1.0, 10.5),
        ("sin(x)".to_string(), 0.0, PI, 2.0),
        ("cos(x)".to_string(), 0.0, PI / 2.0, 1.0),
        ("sin(x)^2".to_string(), 0.0, PI, PI / 2.0),
        ("sin(x)*cos(x)".to_string(), 0.0, PI / 2.0, 0.5),
        ("sin(3*x)*sin(3*x)".to_string(), 0.0, 2.0 * PI, PI),
        ("sin(2*x)*cos(x)".to_string(), 0.0, PI / 2.0, 2.0 / 3.0),
        ("cos(x)^2*sin(x)".to_string(), 0.0, PI, 2.0 / 3.0),
        ("sin(5*x)*cos(2*x)".to_string(), 0.0, PI, 10.0 / 21.0),
        ("cos(x)^4".to_string(), 0.0, 2.0 * PI, 0.75 * PI),
        ("exp(x)".to_string(), 0.0, 1.0, e - 1.0),
        ("exp(-x)".to_string(), 0.0, 2.0, 1.0 - (-2.0f64).exp()),
        ("exp(2*x)".to_string(), -1.0, 1.0, 2.0f64.sinh()),
        ("x*exp(x)".to_string(), 0.0, 1.0, 1.0),
        ("exp(x)*sin(x)".to_string(), 0.0, PI, (PI.exp() + 1.0) / 2.0),
        ("exp(sin(x))*cos(x)".to_string(), 0.0, PI / 2.0, e - 1.0),
    ]);
    ensure!(cases.len() == 30, "corpus has {} members", cases.len());
    let mut worst = 0.0f64;
    for (src, a, b, exact) in &cases {
        let f = parse(src).map_err(|e| e.to_string())?;
        let got = quad::integrate(&f, &Interval::new(*a, *b).unwrap(), DEFAULT_TOL)
            .map_err(|e| e.to_string())?
            .value;
        let rel = ((got - exact) / exact).abs();
        ensure!(
            rel <= 1e-10,
            "{src} on [{a}, {b}]: {got} vs {exact} (rel {rel:.1e})"
        );
        worst = worst.max(rel);
    }
    Ok(format!("30 members, max relative error {worst:.1e}"))
}

fn c9_determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let paths = [dir.path().join("a.json"), dir.path().join("b.json")];
    for p in &paths {
        let out = cli(&[
            "mine",
            "--family",
            "poly",
            "--targets",
            "convex,mean-zero",
            "--seed",
            "42",
            "--trials",
            "100",
            "--theorem",
            "all",
            "--output",
            p.to_str().unwrap(),
        ]);
        ensure!(
            matches!(out.status.code(), Some(0 | 3)),
            "exit {:?}: {}",
            out.status.code(),
            String::from_utf8_lossy(&out.stderr)
        );
    }
    let (a, b) = (
        std::fs::read(&paths[0]).unwrap(),
        std::fs::read(&paths[1]).unwrap(),
    );
    ensure!(!a.is_empty() && a == b, "payloads differ");
    Ok(format!("two runs, {} identical bytes", a.len()))
}

fn c10_audit() -> Outcome {
    let (code, v) = cli_json(&["audit"])?;
    ensure!(code == 0, "exit code {code}");
    let audits = v["reports"].as_array().cloned().unwrap_or_default();
    let find = |id: &str| audits.iter().find(|a| a["theorem_id"] == id).cloned();
    for id in ["thm2", "thm3", "thm5", "thm6"] {
        let a = find(id).ok_or_else(|| format!("{id} missing"))?;
        ensure!(
            a["sharp_confirmed"] == true,
            "{id} not confirmed: ratio {}",
            a["report"]["sharpness_ratio"]
        );
    }
    let thm4 = find("thm4").ok_or("thm4 missing")?;
    let ratio = thm4["report"]["sharpness_ratio"]
        .as_f64()
        .ok_or("thm4 ratio missing")?;
    let table = cli(&["audit", "--format", "markdown"]);
    ensure!(table.status.success(), "markdown audit failed");
    Ok(format!(
        "thm2/3/5/6 confirmed; thm4 ratio {ratio:.6} (confirmed: {})",
        thm4["sharp_confirmed"]
    ))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("thm3 equality case", c1_thm3_equality),
        ("thm2 equality case", c2_thm2_equality),
        ("thm6 equality case", c3_thm6_equality),
        ("randomized no-violation suites", c4_no_violations),
        ("vanishing-integral identity", c5_vanishing_identity),
        ("higher-order falsification", c6_higher_order_falsified),
        ("trapezoid-bound consistency", c7_trapezoid_bounds),
        ("quadrature engine", c8_quadrature),
        ("mine determinism", c9_determinism),
        ("sharpness audit", c10_audit),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
