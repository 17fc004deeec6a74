//! Seeded generation of hypothesis-satisfying corpora and counterexample mining.
//!
//! Every trial draws from its own ChaCha stream, seeded from the master seed
//! and the trial index by [`trial_seed`], so a trial can be replayed alone and
//! parallel runs produce exactly the serial result.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::expr::{Expr, Interval};
use crate::ineq::{
    self, combined_tolerance, Analysis, HypothesisFlags, IneqReport, TheoremId, SHAPE_SLACK,
};
use crate::quad::{self, DEFAULT_TOL};

/// Rejected candidates allowed per accepted function.
pub const REJECTION_CAP: u64 = 10_000;
/// Quadrature tolerance divisor for the confirmation pass.
pub const CONFIRM_TIGHTENING: f64 = 10.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Polynomial,
    TrigPolynomial,
    ExpMixture,
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "poly" | "polynomial" => Ok(Family::Polynomial),
            "trig" | "trig-polynomial" => Ok(Family::TrigPolynomial),
            "exp" | "exp-mixture" => Ok(Family::ExpMixture),
            _ => Err(format!("unknown family `{s}` (poly, trig, exp)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Hypothesis {
    Convex,
    Increasing,
    Decreasing,
    MeanZero,
    EndpointMax,
    PositiveEndpointProduct,
}

impl Hypothesis {
    pub fn as_str(self) -> &'static str {
        match self {
            Hypothesis::Convex => "convex",
            Hypothesis::Increasing => "increasing",
            Hypothesis::Decreasing => "decreasing",
            Hypothesis::MeanZero => "mean-zero",
            Hypothesis::EndpointMax => "endpoint-max",
            Hypothesis::PositiveEndpointProduct => "positive-endpoint-product",
        }
    }

    fn holds(self, h: &HypothesisFlags) -> bool {
        match self {
            Hypothesis::Convex => h.convex.holds,
            Hypothesis::Increasing => h.increasing.holds,
            Hypothesis::Decreasing => h.decreasing.holds,
            Hypothesis::MeanZero => h.mean_zero.holds,
            Hypothesis::EndpointMax => h.endpoints_are_max.holds,
            Hypothesis::PositiveEndpointProduct => h.endpoint_product_positive.holds,
        }
    }
}

impl fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Hypothesis {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        use Hypothesis::*;
        [
            Convex,
            Increasing,
            Decreasing,
            MeanZero,
            EndpointMax,
            PositiveEndpointProduct,
        ]
        .into_iter()
        .find(|h| h.as_str() == s)
        .ok_or_else(|| format!("unknown hypothesis `{s}`"))
    }
}

/// What to generate.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GeneratorSpec {
    pub family: Family,
    /// Polynomial degree, highest harmonic, or largest |rate| for exponentials.
    pub max_degree: u32,
    /// Number of random terms (at least one is always drawn).
    pub max_terms: u32,
    /// Coefficients are drawn from `[-r, r]` (or `[0, r]` where a sign is forced).
    pub coefficient_range: f64,
    pub targets: BTreeSet<Hypothesis>,
    pub interval: Interval,
    pub seed: u64,
    pub trials: u64,
}

impl GeneratorSpec {
    pub fn new(family: Family, targets: impl IntoIterator<Item = Hypothesis>) -> GeneratorSpec {
        let interval = match family {
            Family::TrigPolynomial => Interval::full_period(),
            _ => Interval::unit(),
        };
        GeneratorSpec {
            family,
            max_degree: 6,
            max_terms: 3,
            coefficient_range: 1.0,
            targets: targets.into_iter().collect(),
            interval,
            seed: 0,
            trials: 100,
        }
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn trials(mut self, trials: u64) -> Self {
        self.trials = trials;
        self
    }

    pub fn interval(mut self, interval: Interval) -> Self {
        self.interval = interval;
        self
    }

    pub fn max_degree(mut self, max_degree: u32) -> Self {
        self.max_degree = max_degree;
        self
    }

    fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidSpec(m.to_string()));
        if self.max_degree == 0 {
            return bad("max_degree must be at least 1");
        }
        if self.max_terms == 0 {
            return bad("max_terms must be at least 1");
        }
        if !(self.coefficient_range > 0.0 && self.coefficient_range.is_finite()) {
            return bad("coefficient_range must be positive and finite");
        }
        if self.family == Family::Polynomial
            && self.max_degree < 2
            && (self.targets.contains(&Hypothesis::Convex)
                || self.targets.contains(&Hypothesis::EndpointMax))
        {
            return bad("convex polynomials need max_degree >= 2");
        }
        Ok(())
    }

    fn wants(&self, h: Hypothesis) -> bool {
        self.targets.contains(&h)
    }
}

/// Per-trial seed: SplitMix64 over the master seed offset by the trial index.
pub fn trial_seed(master: u64, trial: u64) -> u64 {
    let mut z = master.wrapping_add(trial.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// The shape a candidate is built to have before rejection filtering.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Shape {
    Symmetric,
    Convex,
    Increasing,
    Decreasing,
    Free,
}

impl Shape {
    fn for_targets(spec: &GeneratorSpec) -> Shape {
        if spec.wants(Hypothesis::EndpointMax) {
            Shape::Symmetric
        } else if spec.wants(Hypothesis::Convex) {
            Shape::Convex
        } else if spec.wants(Hypothesis::Increasing) {
            Shape::Increasing
        } else if spec.wants(Hypothesis::Decreasing) {
            Shape::Decreasing
        } else {
            Shape::Free
        }
    }
}

/// Draws one candidate; polynomial and exponential candidates live on `[0, 1]`
/// and are transplanted afterwards.
fn candidate(spec: &GeneratorSpec, shape: Shape, rng: &mut ChaCha8Rng) -> Expr {
    let r = spec.coefficient_range;
    let terms = rng.random_range(1..=spec.max_terms);
    let x = Expr::x;
    let mut f = Expr::zero();
    match spec.family {
        Family::Polynomial => {
            let deg = spec.max_degree;
            for _ in 0..terms {
                let c = rng.random_range(0.0..=r);
                f = match shape {
                    Shape::Symmetric | Shape::Convex => {
                        // c·(x−s)^(2m+2) has f'' = c·(2m+2)(2m+1)(x−s)^(2m) ≥ 0
                        let m = rng.random_range(0..=(deg - 2) / 2);
                        let s = if shape == Shape::Symmetric {
                            0.5
                        } else {
                            rng.random_range(0.0..=1.0)
                        };
                        let k = (2 * m + 2) as f64;
                        f + c / (k * (k - 1.0)) * Expr::powf(x() - s, k)
                    }
                    Shape::Increasing | Shape::Decreasing => {
                        if deg < 3 {
                            f
                        } else {
                            let m = rng.random_range(1..=(deg - 1) / 2);
                            let s = rng.random_range(0.0..=1.0);
                            let k = (2 * m + 1) as f64;
                            f + c / k * Expr::powf(x() - s, k)
                        }
                    }
                    Shape::Free => {
                        let k = rng.random_range(1..=deg) as f64;
                        let c = rng.random_range(-r..=r);
                        f + c * Expr::powf(x() - 0.5, k)
                    }
                };
            }
            let slope = match shape {
                Shape::Symmetric => 0.0,
                Shape::Increasing | Shape::Decreasing => rng.random_range(0.0..=r),
                Shape::Convex | Shape::Free => rng.random_range(-r..=r),
            };
            f = f + slope * (x() - 0.5);
            if shape == Shape::Decreasing {
                f = -f;
            }
        }
        Family::TrigPolynomial => {
            // built directly on the interval, so [0, 2π] gives cos(k·x), sin(k·x)
            let omega = 2.0 * std::f64::consts::PI / spec.interval.width();
            let theta = omega * (x() - spec.interval.a());
            let top = rng.random_range(1..=spec.max_degree);
            for k in 1..=top {
                let (a, b) = (rng.random_range(-r..=r), rng.random_range(-r..=r));
                let arg = k as f64 * theta.clone();
                f = f + a * Expr::cos(arg.clone()) + b * Expr::sin(arg);
            }
        }
        Family::ExpMixture => {
            let rate_cap = spec.max_degree as f64;
            for _ in 0..terms {
                let c = rng.random_range(0.0..=r);
                let rate = rng.random_range(0.0..=rate_cap);
                let term = match shape {
                    Shape::Symmetric => {
                        let u = x() - 0.5;
                        Expr::exp(rate * u.clone()) + Expr::exp(-rate * u)
                    }
                    Shape::Convex => {
                        let signed = if rng.random::<bool>() { rate } else { -rate };
                        Expr::exp(signed * x())
                    }
                    Shape::Increasing => Expr::exp(rate * x()),
                    Shape::Decreasing => Expr::exp(-rate * x()),
                    Shape::Free => {
                        let signed = if rng.random::<bool>() { rate } else { -rate };
                        let c = rng.random_range(-r..=r);
                        f = f + c * Expr::exp(signed * x());
                        continue;
                    }
                };
                f = f + c * term;
            }
            let slope = match shape {
                Shape::Symmetric => 0.0,
                Shape::Increasing => rng.random_range(0.0..=r),
                Shape::Decreasing => -rng.random_range(0.0..=r),
                Shape::Convex | Shape::Free => rng.random_range(-r..=r),
            };
            f = f + slope * x();
        }
    }
    let offset = rng.random_range(-r..=r);
    f + offset
}

/// Generates trial `trial` of `spec`, rejecting candidates until every target
/// hypothesis holds. Returns the function with its analysis at default tolerance.
fn generate_trial(spec: &GeneratorSpec, trial: u64) -> Result<Analysis> {
    let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(spec.seed, trial));
    let shape = Shape::for_targets(spec);
    let interval = spec.interval;
    let mut rejects = 0u64;
    loop {
        if let Some(an) = try_candidate(spec, shape, &interval, &mut rng) {
            return Ok(an);
        }
        rejects += 1;
        if rejects > REJECTION_CAP {
            return Err(Error::RejectionCap {
                trial,
                cap: REJECTION_CAP,
            });
        }
    }
}

fn try_candidate(
    spec: &GeneratorSpec,
    shape: Shape,
    interval: &Interval,
    rng: &mut ChaCha8Rng,
) -> Option<Analysis> {
    let raw = candidate(spec, shape, rng);
    let mut f = match spec.family {
        Family::TrigPolynomial => raw,
        _ => ineq::transplant(&raw, interval),
    };
    if !coarse_shape_ok(spec, &f, interval) {
        return None;
    }
    if spec.wants(Hypothesis::MeanZero) {
        f = quad::mean_zero_shift(&f, interval).ok()?;
    }
    if spec.wants(Hypothesis::PositiveEndpointProduct) {
        let product = f.eval(interval.a()).ok()? * f.eval(interval.b()).ok()?;
        if product.is_nan() || product <= 0.0 {
            return None;
        }
    }
    let an = Analysis::new(f, *interval);
    let h = an.hypotheses().ok()?;
    spec.targets.iter().all(|t| t.holds(&h)).then_some(an)
}

/// Grid screen for the shape targets. A grid value beyond the slack means the
/// full check, whose minimum is at most any grid value, would fail as well.
fn coarse_shape_ok(spec: &GeneratorSpec, f: &Expr, interval: &Interval) -> bool {
    const POINTS: usize = 33;
    let on_grid = |d: &Expr, ok: &dyn Fn(f64) -> bool| {
        (0..POINTS).all(|i| {
            let t = interval.a() + interval.width() * i as f64 / (POINTS - 1) as f64;
            d.eval(t).map_or(true, ok)
        })
    };
    if spec.wants(Hypothesis::Increasing) || spec.wants(Hypothesis::Decreasing) {
        let Ok(d1) = f.differentiate(1) else {
            return false;
        };
        if spec.wants(Hypothesis::Increasing) && !on_grid(&d1, &|v| v >= -SHAPE_SLACK) {
            return false;
        }
        if spec.wants(Hypothesis::Decreasing) && !on_grid(&d1, &|v| v <= SHAPE_SLACK) {
            return false;
        }
    }
    if spec.wants(Hypothesis::Convex) {
        let Ok(d2) = f.differentiate(2) else {
            return false;
        };
        return on_grid(&d2, &|v| v >= -SHAPE_SLACK);
    }
    true
}

/// The corpus described by `spec`, in trial order.
pub fn generate(spec: &GeneratorSpec) -> Result<Vec<Expr>> {
    spec.validate()?;
    (0..spec.trials)
        .into_par_iter()
        .map(|i| generate_trial(spec, i).map(|an| an.function().clone()))
        .collect()
}

/// Regenerates a single trial's function.
pub fn replay_function(spec: &GeneratorSpec, trial: u64) -> Result<Expr> {
    spec.validate()?;
    Ok(generate_trial(spec, trial)?.function().clone())
}

/// A confirmed violation of one inequality by one generated function.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CounterexampleRecord {
    pub theorem_id: TheoremId,
    pub function: String,
    pub interval: Interval,
    pub lhs: f64,
    pub rhs: f64,
    /// `rhs − lhs` from the confirmation pass; always below `−combined tolerance`.
    pub margin: f64,
    /// Margin at the default quadrature tolerance.
    pub initial_margin: f64,
    pub sharpness_ratio: Option<f64>,
    pub hypotheses: HypothesisFlags,
    pub hypotheses_met: bool,
    pub seed: u64,
    pub trial: u64,
    pub trial_seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TheoremSummary {
    pub theorem_id: TheoremId,
    pub checked: u64,
    pub violations: u64,
    /// Largest `lhs / rhs` seen.
    pub worst_ratio: Option<f64>,
    /// Smallest `rhs − lhs` seen.
    pub worst_margin: Option<f64>,
}

/// A trial or check that failed and was skipped.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialFailure {
    pub trial: u64,
    pub theorem_id: Option<TheoremId>,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MineOutcome {
    pub records: Vec<CounterexampleRecord>,
    pub summary: Vec<TheoremSummary>,
    pub failures: Vec<TrialFailure>,
}

struct TrialOutcome {
    reports: Vec<(TheoremId, IneqReport)>,
    records: Vec<CounterexampleRecord>,
    failures: Vec<TrialFailure>,
}

fn analysis_for(base: &Analysis, theorem: TheoremId, tol: f64) -> Analysis {
    let interval = if theorem.fixed_period() {
        Interval::full_period()
    } else {
        *base.interval()
    };
    Analysis::with_tol(base.function().clone(), interval, tol)
}

fn mine_trial(
    spec: &GeneratorSpec,
    trial: u64,
    theorems: &[TheoremId],
    n: u32,
) -> Result<TrialOutcome> {
    let base = match generate_trial(spec, trial) {
        Ok(an) => an,
        Err(e @ Error::RejectionCap { .. }) => return Err(e),
        Err(e) => {
            return Ok(TrialOutcome {
                reports: Vec::new(),
                records: Vec::new(),
                failures: vec![TrialFailure {
                    trial,
                    theorem_id: None,
                    message: e.to_string(),
                }],
            })
        }
    };
    let mut out = TrialOutcome {
        reports: Vec::new(),
        records: Vec::new(),
        failures: Vec::new(),
    };
    for &theorem in theorems {
        let fresh;
        let an = if theorem.fixed_period() && *base.interval() != Interval::full_period() {
            fresh = analysis_for(&base, theorem, DEFAULT_TOL);
            &fresh
        } else {
            &base
        };
        let report = match an.check(theorem, n) {
            Ok(r) => r,
            Err(e) => {
                out.failures.push(TrialFailure {
                    trial,
                    theorem_id: Some(theorem),
                    message: e.to_string(),
                });
                continue;
            }
        };
        if !report.satisfied {
            let tight = analysis_for(&base, theorem, DEFAULT_TOL / CONFIRM_TIGHTENING);
            match tight.check(theorem, n) {
                Ok(confirmed) if confirmed.margin < -combined_tolerance(confirmed.rhs) => {
                    out.records.push(CounterexampleRecord {
                        theorem_id: theorem,
                        function: confirmed.function.clone(),
                        interval: confirmed.interval,
                        lhs: confirmed.lhs,
                        rhs: confirmed.rhs,
                        margin: confirmed.margin,
                        initial_margin: report.margin,
                        sharpness_ratio: confirmed.sharpness_ratio,
                        hypotheses: confirmed.hypotheses,
                        hypotheses_met: confirmed.hypotheses_met,
                        seed: spec.seed,
                        trial,
                        trial_seed: trial_seed(spec.seed, trial),
                    });
                }
                Ok(_) => {}
                Err(e) => out.failures.push(TrialFailure {
                    trial,
                    theorem_id: Some(theorem),
                    message: format!("confirmation pass: {e}"),
                }),
            }
        }
        out.reports.push((theorem, report));
    }
    Ok(out)
}

/// Runs every checker in `theorems` on every function of the corpus.
///
/// `n` is the order used by [`TheoremId::Higher`]. Violations are only
/// recorded after a confirmation pass at a 10× tighter quadrature tolerance.
/// Records come back ordered by trial, then by the order of `theorems`.
pub fn mine(spec: &GeneratorSpec, theorems: &[TheoremId], n: u32) -> Result<MineOutcome> {
    spec.validate()?;
    let outcomes: Vec<TrialOutcome> = (0..spec.trials)
        .into_par_iter()
        .map(|i| mine_trial(spec, i, theorems, n))
        .collect::<Result<_>>()?;

    let mut summary: Vec<TheoremSummary> = theorems
        .iter()
        .map(|&t| TheoremSummary {
            theorem_id: t,
            checked: 0,
            violations: 0,
            worst_ratio: None,
            worst_margin: None,
        })
        .collect();
    let mut records = Vec::new();
    let mut failures = Vec::new();
    for outcome in outcomes {
        for (theorem, report) in &outcome.reports {
            let s = summary
                .iter_mut()
                .find(|s| s.theorem_id == *theorem)
                .expect("theorem listed");
            s.checked += 1;
            if let Some(r) = report.sharpness_ratio {
                s.worst_ratio = Some(s.worst_ratio.map_or(r, |w: f64| w.max(r)));
            }
            s.worst_margin = Some(
                s.worst_margin
                    .map_or(report.margin, |w: f64| w.min(report.margin)),
            );
        }
        for rec in &outcome.records {
            let s = summary
                .iter_mut()
                .find(|s| s.theorem_id == rec.theorem_id)
                .expect("theorem listed");
            s.violations += 1;
        }
        records.extend(outcome.records);
        failures.extend(outcome.failures);
    }
    Ok(MineOutcome {
        records,
        summary,
        failures,
    })
}

/// Re-runs one trial and returns its record for `theorem`, if it still violates.
pub fn replay(
    spec: &GeneratorSpec,
    trial: u64,
    theorem: TheoremId,
    n: u32,
) -> Result<Option<CounterexampleRecord>> {
    spec.validate()?;
    let out = mine_trial(spec, trial, &[theorem], n)?;
    Ok(out.records.into_iter().next())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trial_seeds_are_distinct_and_stable() {
        let seeds: BTreeSet<u64> = (0..1000).map(|i| trial_seed(42, i)).collect();
        assert_eq!(seeds.len(), 1000);
        assert_eq!(trial_seed(42, 3), trial_seed(42, 3));
        assert_ne!(trial_seed(42, 3), trial_seed(43, 3));
    }

    #[test]
    fn convex_mean_zero_corpus() {
        let spec = GeneratorSpec::new(
            Family::Polynomial,
            [Hypothesis::Convex, Hypothesis::MeanZero],
        )
        .seed(42)
        .trials(100);
        let corpus = generate(&spec).unwrap();
        assert_eq!(corpus.len(), 100);
        for f in &corpus {
            let an = Analysis::new(f.clone(), spec.interval);
            let h = an.hypotheses().unwrap();
            assert!(h.convex.witness.unwrap() >= -1e-9);
            assert!(an.integral().unwrap().value.abs() <= 1e-9);
        }
    }

    #[test]
    fn increasing_corpus() {
        let spec = GeneratorSpec::new(Family::Polynomial, [Hypothesis::Increasing])
            .seed(7)
            .trials(50);
        for f in generate(&spec).unwrap() {
            let h = Analysis::new(f, spec.interval).hypotheses().unwrap();
            assert!(h.increasing.witness.unwrap() >= -1e-9);
        }
    }

    #[test]
    fn every_family_honours_its_targets() {
        let cases = [
            (
                Family::Polynomial,
                vec![Hypothesis::EndpointMax, Hypothesis::MeanZero],
            ),
            (
                Family::Polynomial,
                vec![Hypothesis::Decreasing, Hypothesis::MeanZero],
            ),
            (
                Family::ExpMixture,
                vec![Hypothesis::Convex, Hypothesis::PositiveEndpointProduct],
            ),
            (
                Family::ExpMixture,
                vec![Hypothesis::Increasing, Hypothesis::MeanZero],
            ),
            (Family::ExpMixture, vec![Hypothesis::EndpointMax]),
            (Family::TrigPolynomial, vec![Hypothesis::MeanZero]),
        ];
        for (family, targets) in cases {
            let spec = GeneratorSpec::new(family, targets.clone())
                .seed(1)
                .trials(20);
            for f in generate(&spec).unwrap() {
                let h = Analysis::new(f, spec.interval).hypotheses().unwrap();
                for t in &targets {
                    assert!(t.holds(&h), "{family:?} {t}");
                }
            }
        }
    }

    #[test]
    fn generation_is_deterministic() {
        let spec = GeneratorSpec::new(Family::ExpMixture, [Hypothesis::Convex])
            .seed(5)
            .trials(30);
        let a: Vec<String> = generate(&spec)
            .unwrap()
            .iter()
            .map(|e| e.to_string())
            .collect();
        let b: Vec<String> = generate(&spec)
            .unwrap()
            .iter()
            .map(|e| e.to_string())
            .collect();
        assert_eq!(a, b);
        assert_eq!(replay_function(&spec, 17).unwrap().to_string(), a[17]);
    }

    #[test]
    fn infeasible_targets_hit_the_rejection_cap() {
        let spec = GeneratorSpec::new(
            Family::TrigPolynomial,
            [Hypothesis::Convex, Hypothesis::MeanZero],
        )
        .seed(3)
        .trials(1)
        .max_degree(1);
        assert!(matches!(generate(&spec), Err(Error::RejectionCap { .. })));
    }

    #[test]
    fn invalid_specs_are_rejected() {
        let mut spec = GeneratorSpec::new(Family::Polynomial, [Hypothesis::Convex]).max_degree(1);
        assert!(matches!(generate(&spec), Err(Error::InvalidSpec(_))));
        spec.max_degree = 4;
        spec.coefficient_range = 0.0;
        assert!(matches!(generate(&spec), Err(Error::InvalidSpec(_))));
    }

    #[test]
    fn empty_corpus_mines_nothing() {
        let spec = GeneratorSpec::new(Family::Polynomial, [Hypothesis::Convex]).trials(0);
        let out = mine(&spec, &[TheoremId::Thm3], 1).unwrap();
        assert!(out.records.is_empty() && out.failures.is_empty());
        assert_eq!(out.summary[0].checked, 0);
    }

    #[test]
    fn higher_order_counterexamples_replay() {
        let spec = GeneratorSpec::new(Family::TrigPolynomial, [Hypothesis::MeanZero])
            .seed(11)
            .trials(20)
            .max_degree(2);
        let out = mine(&spec, &[TheoremId::Higher], 1).unwrap();
        assert!(!out.records.is_empty());
        for rec in &out.records {
            assert!(rec.margin < -combined_tolerance(rec.rhs));
            let again = replay(&spec, rec.trial, TheoremId::Higher, 1)
                .unwrap()
                .unwrap();
            assert_eq!(&again, rec);
        }
    }
}
