//! One checker per inequality.
//!
//! Every checker evaluates both sides numerically, records the hypothesis
//! evidence it gathered along the way and never refuses to run when a
//! hypothesis fails. Consumers filter on [`IneqReport::hypotheses_met`].
//!
//! | id       | inequality                                              |
//! |----------|---------------------------------------------------------|
//! | `thm1`   | `∫f² ≤ ∫f'²` on `[0, 2π]`                               |
//! | `thm2`   | `(6/π)·max f² ≤ ∫f'²` on `[0, 2π]`                      |
//! | `thm3`   | `f(a)f(b) ≤ (b−a)/12 · ∫f'²`                            |
//! | `thm4`   | `(2f(a) − f(b))·f(b) ≤ (b−a)/12 · ∫f'²`                 |
//! | `cor1`   | `(2f(b) − f(a))·f(a) ≤ (b−a)/12 · ∫f'²`                 |
//! | `thm5`   | `max f² ≤ (b−a)/12 · ∫f'²`                              |
//! | `thm6`   | `(2T/(b−a) − max f)·max f ≤ (b−a)/12 · ∫f'²`            |
//! | `higher` | `‖f‖∞ ≤ ((b−a)/12)ⁿ · ‖f⁽²ⁿ⁾‖₂`                          |
//!
//! where `T = (b−a)(f(a)+f(b))/2 − ∫f` is the trapezoid functional.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::expr::{DiffError, Expr, Interval};
use crate::quad::{self, QuadError, QuadResult, SupNormResult, DEFAULT_TOL};

/// Absolute part of the "satisfied" tolerance.
pub const SATISFY_ABS_TOL: f64 = 1e-9;
/// Relative (to `|rhs|`) part of the "satisfied" tolerance.
pub const SATISFY_REL_TOL: f64 = 1e-9;
/// Threshold on min f'' / min f' for convexity and monotonicity evidence.
pub const SHAPE_SLACK: f64 = 1e-9;
/// Endpoint equalities (`f(a) = max = f(b)`, `f(a) = f(b)`).
pub const ENDPOINT_TOL: f64 = 1e-8;
/// Relative threshold on `|∫f|` against `(b−a)·‖f‖∞`.
pub const MEAN_ZERO_TOL: f64 = 1e-8;
/// Window around 1 in which an extremal's ratio confirms sharpness.
pub const SHARP_TOL: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TheoremId {
    Thm1,
    Thm2,
    Thm3,
    Thm4,
    Cor1,
    Thm5,
    Thm6,
    Higher,
}

impl TheoremId {
    pub const ALL: [TheoremId; 8] = [
        TheoremId::Thm1,
        TheoremId::Thm2,
        TheoremId::Thm3,
        TheoremId::Thm4,
        TheoremId::Cor1,
        TheoremId::Thm5,
        TheoremId::Thm6,
        TheoremId::Higher,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::Thm1 => "thm1",
            TheoremId::Thm2 => "thm2",
            TheoremId::Thm3 => "thm3",
            TheoremId::Thm4 => "thm4",
            TheoremId::Cor1 => "cor1",
            TheoremId::Thm5 => "thm5",
            TheoremId::Thm6 => "thm6",
            TheoremId::Higher => "higher",
        }
    }

    /// Whether the inequality lives on the fixed interval `[0, 2π]`.
    pub fn fixed_period(self) -> bool {
        matches!(self, TheoremId::Thm1 | TheoremId::Thm2)
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremId {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        TheoremId::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| format!("unknown theorem `{s}`"))
    }
}

/// A hypothesis verdict with the number that decided it.
///
/// `witness` is `None` when the evidence could not be computed (for example
/// convexity of an expression containing `abs`); `holds` is then false.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Evidence {
    pub holds: bool,
    pub witness: Option<f64>,
}

impl Evidence {
    fn from(witness: Option<f64>, test: impl Fn(f64) -> bool) -> Evidence {
        Evidence {
            holds: witness.is_some_and(test),
            witness,
        }
    }
}

/// Numeric evidence for each hypothesis used by the theorems.
///
/// These are grid-based checks, not proofs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HypothesisFlags {
    /// Witness: `∫f`.
    pub mean_zero: Evidence,
    /// Witness: minimum of `f''`.
    pub convex: Evidence,
    /// Witness: minimum of `f'`.
    pub increasing: Evidence,
    /// Witness: maximum of `f'`.
    pub decreasing: Evidence,
    /// Witness: `f(a)·f(b)`.
    pub endpoint_product_positive: Evidence,
    /// Witness: `max f − min(f(a), f(b))`.
    pub endpoints_are_max: Evidence,
    /// Witness: `f(a) − f(b)`.
    pub periodic_match: Evidence,
}

/// Which maximum was squared for `max f²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MaxChoice {
    SignedMax,
    AbsMax,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuadSummary {
    pub quantity: &'static str,
    pub value: f64,
    pub error_estimate: f64,
    pub subdivisions: usize,
}

impl QuadSummary {
    fn new(quantity: &'static str, r: &QuadResult) -> QuadSummary {
        QuadSummary {
            quantity,
            value: r.value,
            error_estimate: r.error_estimate,
            subdivisions: r.subdivisions,
        }
    }
}

/// Outcome of checking one inequality on one function.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IneqReport {
    pub theorem_id: TheoremId,
    pub function: String,
    pub interval: Interval,
    pub lhs: f64,
    pub rhs: f64,
    /// `rhs − lhs`.
    pub margin: f64,
    pub satisfied: bool,
    /// `lhs / rhs`, when `rhs > 0`.
    pub sharpness_ratio: Option<f64>,
    pub hypotheses: HypothesisFlags,
    /// All hypotheses of this theorem hold (numerically).
    pub hypotheses_met: bool,
    pub quadrature_budget: Vec<QuadSummary>,
    pub max_choice: Option<MaxChoice>,
    /// Theorem-specific intermediate values (trapezoid functional, residuals, constants).
    pub details: BTreeMap<&'static str, f64>,
}

/// Tolerance used for `satisfied`: `lhs ≤ rhs + combined_tolerance(rhs)`.
pub fn combined_tolerance(rhs: f64) -> f64 {
    SATISFY_ABS_TOL + SATISFY_REL_TOL * rhs.abs()
}

/// Constants of the higher-order inequality.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HigherOrderConstants {
    pub n: u32,
    /// `B(2n+1, 2n+1) = (2n)!² / (4n+1)!`.
    pub beta: f64,
    /// `12ⁿ (b−a)^−(n+½) / √beta`.
    pub alpha: f64,
}

impl HigherOrderConstants {
    pub fn new(n: u32, interval: &Interval) -> HigherOrderConstants {
        let beta = beta_central(n);
        let alpha = 12f64.powi(n as i32) * interval.width().powf(-(n as f64 + 0.5)) / beta.sqrt();
        HigherOrderConstants { n, beta, alpha }
    }
}

/// `ln k!` as a compensated sum of logarithms, returned as a (hi, lo) pair.
fn ln_factorial(k: u64) -> (f64, f64) {
    let (mut sum, mut comp) = (0.0f64, 0.0f64);
    for i in 2..=k {
        let v = (i as f64).ln();
        let t = sum + v;
        comp += if sum.abs() >= v.abs() {
            (sum - t) + v
        } else {
            (v - t) + sum
        };
        sum = t;
    }
    (sum, comp)
}

/// Euler beta `B(2n+1, 2n+1)` via log-factorials.
pub fn beta_central(n: u32) -> f64 {
    let n = n as u64;
    let (num_hi, num_lo) = ln_factorial(2 * n);
    let (den_hi, den_lo) = ln_factorial(4 * n + 1);
    let hi = 2.0 * num_hi - den_hi;
    let lo = 2.0 * num_lo - den_lo + ((2.0 * num_hi - hi) - den_hi);
    hi.exp() * lo.exp()
}

/// Cached derivatives, integrals and extrema of one function on one interval.
///
/// All checkers for a function share one `Analysis` so that each quantity is
/// computed once.
pub struct Analysis {
    f: Expr,
    interval: Interval,
    tol: f64,
    d1: OnceLock<Result<Expr, DiffError>>,
    d2: OnceLock<Result<Expr, DiffError>>,
    integral: OnceLock<Result<QuadResult, QuadError>>,
    energy: OnceLock<Result<QuadResult, Error>>,
    sup: OnceLock<Result<SupNormResult, QuadError>>,
    hypotheses: OnceLock<Result<HypothesisFlags, Error>>,
}

impl Analysis {
    pub fn new(f: Expr, interval: Interval) -> Analysis {
        Analysis::with_tol(f, interval, DEFAULT_TOL)
    }

    /// `tol` is the absolute quadrature tolerance for every integral.
    pub fn with_tol(f: Expr, interval: Interval, tol: f64) -> Analysis {
        Analysis {
            f,
            interval,
            tol,
            d1: OnceLock::new(),
            d2: OnceLock::new(),
            integral: OnceLock::new(),
            energy: OnceLock::new(),
            sup: OnceLock::new(),
            hypotheses: OnceLock::new(),
        }
    }

    pub fn function(&self) -> &Expr {
        &self.f
    }

    pub fn interval(&self) -> &Interval {
        &self.interval
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn first_derivative(&self) -> Result<&Expr> {
        self.d1
            .get_or_init(|| self.f.differentiate(1))
            .as_ref()
            .map_err(|e| e.clone().into())
    }

    pub fn second_derivative(&self) -> Result<&Expr> {
        self.d2
            .get_or_init(|| self.f.differentiate(2))
            .as_ref()
            .map_err(|e| e.clone().into())
    }

    /// `∫f`.
    pub fn integral(&self) -> Result<QuadResult> {
        self.integral
            .get_or_init(|| quad::integrate(&self.f, &self.interval, self.tol))
            .clone()
            .map_err(Error::from)
    }

    /// `∫f'²`.
    pub fn derivative_energy(&self) -> Result<QuadResult> {
        self.energy
            .get_or_init(|| {
                let d1 = self.first_derivative()?;
                Ok(quad::integrate_fn(
                    |x| d1.eval(x).map(|v| v * v),
                    &self.interval,
                    self.tol,
                )?)
            })
            .clone()
    }

    pub fn sup_norm(&self) -> Result<SupNormResult> {
        self.sup
            .get_or_init(|| quad::sup_norm(&self.f, &self.interval))
            .clone()
            .map_err(Error::from)
    }

    pub fn at(&self, x: f64) -> Result<f64> {
        Ok(self.f.eval(x)?)
    }

    /// `T(f) = (b−a)(f(a)+f(b))/2 − ∫f`.
    pub fn trapezoid_functional(&self) -> Result<f64> {
        let (a, b) = (self.interval.a(), self.interval.b());
        Ok((b - a) * 0.5 * (self.at(a)? + self.at(b)?) - self.integral()?.value)
    }

    pub fn hypotheses(&self) -> Result<HypothesisFlags> {
        self.hypotheses
            .get_or_init(|| self.compute_hypotheses())
            .clone()
    }

    fn compute_hypotheses(&self) -> Result<HypothesisFlags> {
        let (a, b) = (self.interval.a(), self.interval.b());
        let (fa, fb) = (self.at(a)?, self.at(b)?);
        let sup = self.sup_norm()?;
        let integral = self.integral()?.value;
        let mean_scale = MEAN_ZERO_TOL * (self.interval.width() * sup.abs_max).max(1.0);

        let slope = self
            .first_derivative()
            .ok()
            .and_then(|d| quad::sup_norm(d, &self.interval).ok());
        let curvature = self
            .second_derivative()
            .ok()
            .and_then(|d| quad::sup_norm(d, &self.interval).ok());

        Ok(HypothesisFlags {
            mean_zero: Evidence::from(Some(integral), |v| v.abs() <= mean_scale),
            convex: Evidence::from(curvature.map(|s| s.min_value), |v| v >= -SHAPE_SLACK),
            increasing: Evidence::from(slope.map(|s| s.min_value), |v| v >= -SHAPE_SLACK),
            decreasing: Evidence::from(slope.map(|s| s.max_value), |v| v <= SHAPE_SLACK),
            endpoint_product_positive: Evidence::from(Some(fa * fb), |v| v > 0.0),
            endpoints_are_max: Evidence::from(Some(sup.max_value - fa.min(fb)), |v| {
                v <= ENDPOINT_TOL && (fa - fb).abs() <= ENDPOINT_TOL
            }),
            periodic_match: Evidence::from(Some(fa - fb), |v| v.abs() <= ENDPOINT_TOL),
        })
    }

    fn report(
        &self,
        theorem_id: TheoremId,
        lhs: f64,
        rhs: f64,
        hypotheses_met: bool,
    ) -> Result<IneqReport> {
        let satisfied = lhs <= rhs + combined_tolerance(rhs);
        Ok(IneqReport {
            theorem_id,
            function: self.f.to_string(),
            interval: self.interval,
            lhs,
            rhs,
            margin: rhs - lhs,
            satisfied,
            sharpness_ratio: (rhs > 0.0).then(|| lhs / rhs),
            hypotheses: self.hypotheses()?,
            hypotheses_met,
            quadrature_budget: Vec::new(),
            max_choice: None,
            details: BTreeMap::new(),
        })
    }

    /// `(b−a)/12 · ∫f'²`, shared by Theorems 3 to 6.
    fn twelfth_rhs(&self) -> Result<(f64, QuadResult)> {
        let energy = self.derivative_energy()?;
        Ok((self.interval.width() / 12.0 * energy.value, energy))
    }

    /// The maximum whose square stands for `max f²`.
    fn squared_max(&self) -> Result<(f64, MaxChoice)> {
        let sup = self.sup_norm()?;
        if self.hypotheses()?.endpoints_are_max.holds {
            Ok((sup.max_value * sup.max_value, MaxChoice::SignedMax))
        } else {
            Ok((sup.abs_max * sup.abs_max, MaxChoice::AbsMax))
        }
    }

    /// Runs the checker for `theorem`. `n` is only used by [`TheoremId::Higher`].
    pub fn check(&self, theorem: TheoremId, n: u32) -> Result<IneqReport> {
        match theorem {
            TheoremId::Thm1 => self.wirtinger(),
            TheoremId::Thm2 => self.alzer(),
            TheoremId::Thm3 => self.thm3_convex(),
            TheoremId::Thm4 => self.thm4_increasing(),
            TheoremId::Cor1 => self.cor1_decreasing(),
            TheoremId::Thm5 => self.thm5_endpoint_max(),
            TheoremId::Thm6 => self.thm6_general(),
            TheoremId::Higher => self.higher_order(n),
        }
    }

    pub fn wirtinger(&self) -> Result<IneqReport> {
        let square =
            quad::integrate_fn(|x| self.f.eval(x).map(|v| v * v), &self.interval, self.tol)?;
        let energy = self.derivative_energy()?;
        let h = self.hypotheses()?;
        let mut r = self.report(
            TheoremId::Thm1,
            square.value,
            energy.value,
            h.mean_zero.holds && h.periodic_match.holds,
        )?;
        r.quadrature_budget = vec![
            QuadSummary::new("int_f_sq", &square),
            QuadSummary::new("int_df_sq", &energy),
        ];
        Ok(r)
    }

    pub fn alzer(&self) -> Result<IneqReport> {
        let (max_sq, choice) = self.squared_max()?;
        let energy = self.derivative_energy()?;
        let h = self.hypotheses()?;
        let mut r = self.report(
            TheoremId::Thm2,
            6.0 / PI * max_sq,
            energy.value,
            h.mean_zero.holds && h.periodic_match.holds,
        )?;
        r.max_choice = Some(choice);
        r.quadrature_budget = vec![QuadSummary::new("int_df_sq", &energy)];
        Ok(r)
    }

    pub fn thm3_convex(&self) -> Result<IneqReport> {
        let (fa, fb) = (self.at(self.interval.a())?, self.at(self.interval.b())?);
        let (rhs, energy) = self.twelfth_rhs()?;
        let h = self.hypotheses()?;
        let met = h.convex.holds && h.mean_zero.holds && h.endpoint_product_positive.holds;
        let mut r = self.report(TheoremId::Thm3, fa * fb, rhs, met)?;
        r.quadrature_budget = vec![QuadSummary::new("int_df_sq", &energy)];
        Ok(r)
    }

    pub fn thm4_increasing(&self) -> Result<IneqReport> {
        let (fa, fb) = (self.at(self.interval.a())?, self.at(self.interval.b())?);
        let (rhs, energy) = self.twelfth_rhs()?;
        let h = self.hypotheses()?;
        let met = h.increasing.holds && h.mean_zero.holds;
        let mut r = self.report(TheoremId::Thm4, (2.0 * fa - fb) * fb, rhs, met)?;
        r.quadrature_budget = vec![QuadSummary::new("int_df_sq", &energy)];
        Ok(r)
    }

    pub fn cor1_decreasing(&self) -> Result<IneqReport> {
        let (fa, fb) = (self.at(self.interval.a())?, self.at(self.interval.b())?);
        let (rhs, energy) = self.twelfth_rhs()?;
        let h = self.hypotheses()?;
        let met = h.decreasing.holds && h.mean_zero.holds;
        let mut r = self.report(TheoremId::Cor1, (2.0 * fb - fa) * fa, rhs, met)?;
        r.quadrature_budget = vec![QuadSummary::new("int_df_sq", &energy)];
        Ok(r)
    }

    pub fn thm5_endpoint_max(&self) -> Result<IneqReport> {
        let (max_sq, choice) = self.squared_max()?;
        let (rhs, energy) = self.twelfth_rhs()?;
        let h = self.hypotheses()?;
        let met = h.endpoints_are_max.holds && h.mean_zero.holds;
        let mut r = self.report(TheoremId::Thm5, max_sq, rhs, met)?;
        r.max_choice = Some(choice);
        r.quadrature_budget = vec![QuadSummary::new("int_df_sq", &energy)];
        Ok(r)
    }

    pub fn thm6_general(&self) -> Result<IneqReport> {
        let t_rap = self.trapezoid_functional()?;
        let max = self.sup_norm()?.max_value;
        let (rhs, energy) = self.twelfth_rhs()?;
        let lhs = (2.0 / self.interval.width() * t_rap - max) * max;
        let mut r = self.report(TheoremId::Thm6, lhs, rhs, true)?;
        r.max_choice = Some(MaxChoice::SignedMax);
        r.quadrature_budget = vec![
            QuadSummary::new("int_f", &self.integral()?),
            QuadSummary::new("int_df_sq", &energy),
        ];
        r.details.insert("t_rap", t_rap);
        Ok(r)
    }

    /// `∫ (x−a)ⁿ (b−x)ⁿ f⁽²ⁿ⁾(x) dx` and its quadrature record.
    pub fn vanishing_integral(&self, n: u32) -> Result<QuadResult> {
        let d = self.f.differentiate(2 * n)?;
        let (a, b) = (self.interval.a(), self.interval.b());
        let k = n as i32;
        Ok(quad::integrate_fn(
            |x| d.eval(x).map(|v| (x - a).powi(k) * (b - x).powi(k) * v),
            &self.interval,
            self.tol,
        )?)
    }

    pub fn higher_order(&self, n: u32) -> Result<IneqReport> {
        if n == 0 {
            return Err(DiffError::ZeroOrder.into());
        }
        let d = self.f.differentiate(2 * n)?;
        let energy = quad::integrate_fn(|x| d.eval(x).map(|v| v * v), &self.interval, self.tol)?;
        let width = self.interval.width();
        let rhs = (width / 12.0).powi(n as i32) * energy.value.sqrt();
        let lhs = self.sup_norm()?.abs_max;
        let residual = self.vanishing_integral(n)?;
        let constants = HigherOrderConstants::new(n, &self.interval);

        let h = self.hypotheses()?;
        let mut r = self.report(TheoremId::Higher, lhs, rhs, h.mean_zero.holds)?;
        r.quadrature_budget = vec![
            QuadSummary::new("int_d2n_sq", &energy),
            QuadSummary::new("vanishing_integral", &residual),
        ];
        r.details.insert("n", n as f64);
        r.details.insert("beta", constants.beta);
        r.details.insert("alpha", constants.alpha);
        r.details.insert("vanishing_residual", residual.value);
        if n == 1 {
            let (a, b) = (self.interval.a(), self.interval.b());
            let identity = width * (self.at(a)? + self.at(b)?) - 2.0 * self.integral()?.value;
            r.details.insert("vanishing_identity", identity);
        }
        Ok(r)
    }
}

/// Wirtinger's inequality on `[0, 2π]`.
pub fn check_wirtinger(f: &Expr) -> Result<IneqReport> {
    Analysis::new(f.clone(), Interval::full_period()).wirtinger()
}

/// Alzer's inequality on `[0, 2π]`.
pub fn check_alzer(f: &Expr) -> Result<IneqReport> {
    Analysis::new(f.clone(), Interval::full_period()).alzer()
}

pub fn check_thm3_convex(f: &Expr, interval: &Interval) -> Result<IneqReport> {
    Analysis::new(f.clone(), *interval).thm3_convex()
}

pub fn check_thm4_increasing(f: &Expr, interval: &Interval) -> Result<IneqReport> {
    Analysis::new(f.clone(), *interval).thm4_increasing()
}

pub fn check_cor1_decreasing(f: &Expr, interval: &Interval) -> Result<IneqReport> {
    Analysis::new(f.clone(), *interval).cor1_decreasing()
}

pub fn check_thm5_endpoint_max(f: &Expr, interval: &Interval) -> Result<IneqReport> {
    Analysis::new(f.clone(), *interval).thm5_endpoint_max()
}

pub fn check_thm6_general(f: &Expr, interval: &Interval) -> Result<IneqReport> {
    Analysis::new(f.clone(), *interval).thm6_general()
}

pub fn check_higher_order(f: &Expr, interval: &Interval, n: u32) -> Result<IneqReport> {
    Analysis::new(f.clone(), *interval).higher_order(n)
}

/// Value of `∫ (x−a)ⁿ (b−x)ⁿ f⁽²ⁿ⁾(x) dx`.
pub fn vanishing_integral_residual(f: &Expr, interval: &Interval, n: u32) -> Result<f64> {
    Ok(Analysis::new(f.clone(), *interval)
        .vanishing_integral(n)?
        .value)
}

/// Checks `theorem` on `f`; the period theorems ignore `interval` and use `[0, 2π]`.
pub fn check(theorem: TheoremId, f: &Expr, interval: &Interval, n: u32) -> Result<IneqReport> {
    let interval = if theorem.fixed_period() {
        Interval::full_period()
    } else {
        *interval
    };
    Analysis::new(f.clone(), interval).check(theorem, n)
}

/// The built-in extremal for Theorem 4's sharpness claim uses this constant.
pub fn thm4_extremal_constant() -> f64 {
    (10.0 + 2.0 * 835f64.sqrt()) / 27.0
}

/// Extremal function claimed for `theorem`, on its native interval
/// (`[0, 2π]` for Theorem 2, `[0, 1]` otherwise).
pub fn extremal(theorem: TheoremId) -> Result<(Expr, Interval)> {
    let x = Expr::x;
    let sharp_quadratic = || 6.0 * Expr::powf(x(), 2.0) - 6.0 * x() + 1.0;
    Ok(match theorem {
        TheoremId::Thm2 => {
            let pi = Expr::constant(PI);
            let u = (x() - pi.clone()) / pi;
            (3.0 * Expr::powf(u, 2.0) - 1.0, Interval::full_period())
        }
        TheoremId::Thm3 | TheoremId::Thm5 | TheoremId::Thm6 => {
            (sharp_quadratic(), Interval::unit())
        }
        TheoremId::Thm4 => {
            let c = thm4_extremal_constant();
            let f = 4.0 * c * c * Expr::powf(x(), 3.0) + 12.0 * c * x() - (c * c + 6.0 * c);
            (f, Interval::unit())
        }
        other => return Err(Error::NoExtremal(other)),
    })
}

/// `f((x − a)/(b − a))`: moves a function on `[0, 1]` onto `[a, b]`.
pub fn transplant(f: &Expr, interval: &Interval) -> Expr {
    let u = (Expr::x() - interval.a()) / interval.width();
    f.substitute(&u)
}

/// `f(a + b − x)`.
pub fn reflect(f: &Expr, interval: &Interval) -> Expr {
    f.substitute(&(Expr::constant(interval.a() + interval.b()) - Expr::x()))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SharpnessAudit {
    pub theorem_id: TheoremId,
    pub extremal: String,
    pub report: IneqReport,
    pub sharp_confirmed: bool,
}

/// Runs `theorem`'s checker on its claimed extremal moved onto `interval`.
///
/// Theorem 2 lives on `[0, 2π]` and ignores `interval`.
pub fn audit_sharpness(theorem: TheoremId, interval: &Interval) -> Result<SharpnessAudit> {
    let (f, native) = extremal(theorem)?;
    let (f, on) = if theorem.fixed_period() || *interval == native {
        (f, native)
    } else {
        (transplant(&f, interval), *interval)
    };
    let report = Analysis::new(f.clone(), on).check(theorem, 1)?;
    let sharp_confirmed = report
        .sharpness_ratio
        .is_some_and(|r| (r - 1.0).abs() <= SHARP_TOL);
    Ok(SharpnessAudit {
        theorem_id: theorem,
        extremal: f.to_string(),
        report,
        sharp_confirmed,
    })
}
