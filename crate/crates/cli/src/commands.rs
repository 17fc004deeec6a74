use anyhow::{bail, Result};
use serde::Serialize;
use serde_json::{json, Value};
use sharpbound::apps::{self, Tighter, TrapezoidBounds};
use sharpbound::ineq::{self, Analysis};
use sharpbound::quad::{self, DEFAULT_TOL};
use sharpbound::search;
use sharpbound::{parse, Expr, IneqReport, Interval};

use crate::args::{AuditArgs, BoundsArgs, MineArgs, VerifyArgs};
use crate::config::{corpus_spec, parse_interval, parse_theorems, resolve_input, Input, RunConfig};
use crate::output::{num, opt_num, Payload, Table};

pub const EXIT_OK: u8 = 0;
pub const EXIT_VIOLATION: u8 = 2;
pub const EXIT_COUNTEREXAMPLES: u8 = 3;

fn envelope(config: &RunConfig, reports: Value) -> Result<serde_json::Map<String, Value>> {
    let mut top = serde_json::Map::new();
    top.insert("tool_version".into(), json!(env!("CARGO_PKG_VERSION")));
    top.insert("config_echo".into(), serde_json::to_value(config)?);
    top.insert("reports".into(), reports);
    Ok(top)
}

fn functions(input: &Input, interval: &Interval) -> Result<Vec<Expr>> {
    Ok(match input {
        Input::Expression { expr, center } => {
            let f = parse(expr)?;
            vec![if *center {
                quad::mean_zero_shift(&f, interval)?
            } else {
                f
            }]
        }
        Input::Corpus(spec) => search::generate(spec)?,
        Input::Extremals => Vec::new(),
    })
}

fn flag(b: bool) -> String {
    b.to_string()
}

pub fn verify(args: &VerifyArgs) -> Result<(Payload, u8)> {
    let (input, interval) = resolve_input(&args.input)?;
    let theorems = parse_theorems(&args.theorem)?;
    let config = RunConfig {
        subcommand: "verify",
        input,
        interval,
        theorems: theorems.clone(),
        n: args.n,
        tol: args.tol,
        format: args.output.format,
    };

    let full = Interval::full_period();
    let mut reports: Vec<IneqReport> = Vec::new();
    for f in functions(&config.input, &interval)? {
        let base = Analysis::with_tol(f.clone(), interval, args.tol);
        let period = Analysis::with_tol(f, full, args.tol);
        for &t in &theorems {
            let an = if t.fixed_period() && interval != full {
                &period
            } else {
                &base
            };
            reports.push(an.check(t, args.n)?);
        }
    }
    let code = if reports.iter().any(|r| !r.satisfied && r.hypotheses_met) {
        EXIT_VIOLATION
    } else {
        EXIT_OK
    };

    let rows = reports
        .iter()
        .map(|r| {
            vec![
                r.theorem_id.to_string(),
                r.function.clone(),
                num(r.interval.a()),
                num(r.interval.b()),
                num(r.lhs),
                num(r.rhs),
                num(r.margin),
                opt_num(r.sharpness_ratio),
                flag(r.satisfied),
                flag(r.hypotheses_met),
            ]
        })
        .collect();
    let table = Table {
        title: "reports",
        headers: vec![
            "theorem_id",
            "function",
            "a",
            "b",
            "lhs",
            "rhs",
            "margin",
            "sharpness_ratio",
            "satisfied",
            "hypotheses_met",
        ],
        rows,
    };
    let json = Value::Object(envelope(&config, serde_json::to_value(&reports)?)?);
    Ok((
        Payload {
            json,
            tables: vec![table],
        },
        code,
    ))
}

pub fn audit(args: &AuditArgs) -> Result<(Payload, u8)> {
    let theorems = parse_theorems(&args.theorem)?;
    let interval = match &args.interval {
        Some(tokens) => parse_interval(tokens)?,
        None => Interval::unit(),
    };
    let config = RunConfig {
        subcommand: "audit",
        input: Input::Extremals,
        interval,
        theorems: theorems.clone(),
        n: 1,
        tol: DEFAULT_TOL,
        format: args.output.format,
    };
    let audits = theorems
        .iter()
        .map(|&t| ineq::audit_sharpness(t, &interval))
        .collect::<Result<Vec<_>, _>>()?;

    let rows = audits
        .iter()
        .map(|a| {
            vec![
                a.theorem_id.to_string(),
                a.extremal.clone(),
                num(a.report.interval.a()),
                num(a.report.interval.b()),
                num(a.report.lhs),
                num(a.report.rhs),
                opt_num(a.report.sharpness_ratio),
                flag(a.sharp_confirmed),
            ]
        })
        .collect();
    let table = Table {
        title: "audit",
        headers: vec![
            "theorem_id",
            "extremal",
            "a",
            "b",
            "lhs",
            "rhs",
            "sharpness_ratio",
            "sharp_confirmed",
        ],
        rows,
    };
    let json = Value::Object(envelope(&config, serde_json::to_value(&audits)?)?);
    Ok((
        Payload {
            json,
            tables: vec![table],
        },
        EXIT_OK,
    ))
}

#[derive(Serialize)]
struct BoundsRow {
    #[serde(flatten)]
    bounds: TrapezoidBounds,
    tighter: Option<Tighter>,
}

pub fn bounds(args: &BoundsArgs) -> Result<(Payload, u8)> {
    let (input, interval) = resolve_input(&args.input)?;
    let config = RunConfig {
        subcommand: "bounds",
        input,
        interval,
        theorems: Vec::new(),
        n: 1,
        tol: DEFAULT_TOL,
        format: args.output.format,
    };
    let rows: Vec<BoundsRow> = functions(&config.input, &interval)?
        .iter()
        .map(|f| {
            apps::trapezoid_bounds(f, &interval).map(|bounds| {
                let tighter = bounds.tighter();
                BoundsRow { bounds, tighter }
            })
        })
        .collect::<Result<_, _>>()?;

    let cells = rows
        .iter()
        .map(|r| {
            let b = &r.bounds;
            let tighter = match r.tighter {
                Some(Tighter::Classic) => "classic",
                Some(Tighter::New) => "new",
                Some(Tighter::Tie) => "tie",
                None => "",
            };
            vec![
                b.function.clone(),
                num(b.interval.a()),
                num(b.interval.b()),
                num(b.t_rap),
                opt_num(b.classic_bound),
                opt_num(b.new_bound),
                tighter.to_string(),
            ]
        })
        .collect();
    let table = Table {
        title: "bounds",
        headers: vec!["function", "a", "b", "t_rap", "classic", "new", "tighter"],
        rows: cells,
    };
    let json = Value::Object(envelope(&config, serde_json::to_value(&rows)?)?);
    Ok((
        Payload {
            json,
            tables: vec![table],
        },
        EXIT_OK,
    ))
}

pub fn mine(args: &MineArgs) -> Result<(Payload, u8)> {
    let Some(spec) = corpus_spec(&args.corpus, args.interval.as_deref())? else {
        bail!("mine needs a corpus: pass --family");
    };
    let theorems = parse_theorems(&args.theorem)?;
    let interval = spec.interval;
    let outcome = search::mine(&spec, &theorems, args.n)?;
    let config = RunConfig {
        subcommand: "mine",
        input: Input::Corpus(spec),
        interval,
        theorems,
        n: args.n,
        tol: DEFAULT_TOL,
        format: args.output.format,
    };

    for s in &outcome.summary {
        eprintln!(
            "{}: checked {}, violations {}, worst ratio {}",
            s.theorem_id,
            s.checked,
            s.violations,
            s.worst_ratio.map_or("-".to_string(), |r| format!("{r:.6}"))
        );
    }
    for f in &outcome.failures {
        eprintln!("trial {} skipped: {}", f.trial, f.message);
    }
    let code = if outcome.records.is_empty() {
        EXIT_OK
    } else {
        EXIT_COUNTEREXAMPLES
    };

    let records = Table {
        title: "records",
        headers: vec![
            "theorem_id",
            "trial",
            "trial_seed",
            "function",
            "a",
            "b",
            "lhs",
            "rhs",
            "margin",
            "hypotheses_met",
        ],
        rows: outcome
            .records
            .iter()
            .map(|r| {
                vec![
                    r.theorem_id.to_string(),
                    r.trial.to_string(),
                    r.trial_seed.to_string(),
                    r.function.clone(),
                    num(r.interval.a()),
                    num(r.interval.b()),
                    num(r.lhs),
                    num(r.rhs),
                    num(r.margin),
                    flag(r.hypotheses_met),
                ]
            })
            .collect(),
    };
    let summary = Table {
        title: "summary",
        headers: vec![
            "theorem_id",
            "checked",
            "violations",
            "worst_ratio",
            "worst_margin",
        ],
        rows: outcome
            .summary
            .iter()
            .map(|s| {
                vec![
                    s.theorem_id.to_string(),
                    s.checked.to_string(),
                    s.violations.to_string(),
                    opt_num(s.worst_ratio),
                    opt_num(s.worst_margin),
                ]
            })
            .collect(),
    };
    let mut top = envelope(&config, serde_json::to_value(&outcome.records)?)?;
    top.insert("summary".into(), serde_json::to_value(&outcome.summary)?);
    top.insert("failures".into(), serde_json::to_value(&outcome.failures)?);
    Ok((
        Payload {
            json: Value::Object(top),
            tables: vec![records, summary],
        },
        code,
    ))
}
