use anyhow::{anyhow, bail, Context, Result};
use serde::Serialize;
use sharpbound::search::GeneratorSpec;
use sharpbound::{Interval, TheoremId};

use crate::args::{CorpusArgs, Format, InputArgs};

/// Where the functions under test come from.
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Input {
    Expression { expr: String, center: bool },
    Corpus(GeneratorSpec),
    Extremals,
}

/// Everything that determines a run's payload. Echoed into structured output.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub subcommand: &'static str,
    pub input: Input,
    pub interval: Interval,
    pub theorems: Vec<TheoremId>,
    pub n: u32,
    pub tol: f64,
    pub format: Format,
}

/// Parses an endpoint: a decimal literal or `[k]pi` such as `pi`, `-pi`, `2pi`, `0.5pi`.
pub fn parse_endpoint(token: &str) -> Result<f64> {
    let t = token.trim();
    let value = match t.strip_suffix("pi") {
        Some(coef) => {
            let k = match coef.trim_end_matches('*') {
                "" | "+" => 1.0,
                "-" => -1.0,
                c => c
                    .parse::<f64>()
                    .with_context(|| format!("bad endpoint `{token}`"))?,
            };
            k * std::f64::consts::PI
        }
        None => t
            .parse::<f64>()
            .with_context(|| format!("bad endpoint `{token}`"))?,
    };
    Ok(value)
}

pub fn parse_interval(tokens: &[String]) -> Result<Interval> {
    let [a, b] = tokens else {
        bail!("--interval takes exactly two endpoints");
    };
    Ok(Interval::new(parse_endpoint(a)?, parse_endpoint(b)?)?)
}

pub fn parse_theorems(list: &str) -> Result<Vec<TheoremId>> {
    if list.trim() == "all" {
        return Ok(TheoremId::ALL.to_vec());
    }
    let mut out = Vec::new();
    for item in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let t: TheoremId = item.parse().map_err(|e: String| anyhow!(e))?;
        if !out.contains(&t) {
            out.push(t);
        }
    }
    if out.is_empty() {
        bail!("no theorem selected");
    }
    Ok(out)
}

pub fn corpus_spec(
    args: &CorpusArgs,
    interval: Option<&[String]>,
) -> Result<Option<GeneratorSpec>> {
    let Some(family) = args.family else {
        return Ok(None);
    };
    let mut spec = GeneratorSpec::new(family, args.targets.iter().copied());
    spec.seed = args.seed;
    spec.trials = args.trials;
    spec.max_degree = args.max_degree;
    spec.max_terms = args.max_terms;
    spec.coefficient_range = args.coefficient_range;
    if let Some(tokens) = interval {
        spec.interval = parse_interval(tokens)?;
    }
    Ok(Some(spec))
}

/// Resolves `--expr` xor `--family` into an input and its interval.
pub fn resolve_input(args: &InputArgs) -> Result<(Input, Interval)> {
    let spec = corpus_spec(&args.corpus, args.interval.as_deref())?;
    match (&args.expr, spec) {
        (Some(expr), None) => {
            let interval = match &args.interval {
                Some(tokens) => parse_interval(tokens)?,
                None => Interval::unit(),
            };
            Ok((
                Input::Expression {
                    expr: expr.clone(),
                    center: args.center,
                },
                interval,
            ))
        }
        (None, Some(spec)) => {
            if args.center {
                bail!("--center applies to --expr; use the mean-zero target for corpora");
            }
            let interval = spec.interval;
            Ok((Input::Corpus(spec), interval))
        }
        (Some(_), Some(_)) => bail!("give either --expr or --family, not both"),
        (None, None) => bail!("one of --expr or --family is required"),
    }
}
