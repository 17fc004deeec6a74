//! Applications: trapezoid-rule error bounds and mean-inequality chains.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::expr::{Expr, Interval};
use crate::ineq::{combined_tolerance, Analysis, Evidence, SHAPE_SLACK};
use crate::quad::{self, DEFAULT_TOL};

/// Iteration cap for the bisection inverse.
pub const INVERSION_MAX_ITER: usize = 200;
/// λ values swept by default.
pub const DEFAULT_LAMBDAS: [f64; 5] = [0.0, 0.25, 0.5, 0.75, 1.0];

/// The one-panel trapezoid error `T(f)` next to two upper bounds for `|T(f)|`:
/// the classical `(b−a)³/12 · ‖f''‖∞` and `(b−a)³/12 · M` with
/// `M = 6/(b−a)² · ‖f‖∞ + 1/(2(b−a)) · ‖f'‖₂² / ‖f‖∞`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrapezoidBounds {
    pub function: String,
    pub interval: Interval,
    pub t_rap: f64,
    pub true_abs: f64,
    /// `‖f‖∞`.
    pub sup_norm: f64,
    /// `‖f''‖∞`, when `f''` exists.
    pub second_derivative_sup: Option<f64>,
    pub classic_bound: Option<f64>,
    pub classic_applicable: bool,
    /// `‖f'‖₂²`.
    pub derivative_energy: Option<f64>,
    pub m_constant: Option<f64>,
    /// `(b−a)³/12 · M = (b−a)/2 · ‖f‖∞ + (b−a)²/24 · ‖f'‖₂² / ‖f‖∞`.
    pub new_bound: Option<f64>,
    pub classic_holds: Option<bool>,
    pub new_holds: Option<bool>,
    pub hypothesis_note: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Tighter {
    Classic,
    New,
    Tie,
}

impl TrapezoidBounds {
    /// Which of the available bounds is smaller; `None` unless both exist.
    pub fn tighter(&self) -> Option<Tighter> {
        let (c, n) = (self.classic_bound?, self.new_bound?);
        Some(if (c - n).abs() <= combined_tolerance(c.max(n)) {
            Tighter::Tie
        } else if c < n {
            Tighter::Classic
        } else {
            Tighter::New
        })
    }
}

fn within(value: f64, bound: f64) -> bool {
    value <= bound + combined_tolerance(bound)
}

pub fn trapezoid_bounds(f: &Expr, interval: &Interval) -> Result<TrapezoidBounds> {
    let an = Analysis::new(f.clone(), *interval);
    let width = interval.width();
    let t_rap = an.trapezoid_functional()?;
    let sup = an.sup_norm()?.abs_max;
    let mut notes = Vec::new();

    let second_derivative_sup = match an.second_derivative() {
        Ok(d2) => Some(quad::sup_norm(d2, interval)?.abs_max),
        Err(e) => {
            notes.push(format!("classical bound unavailable: {e}"));
            None
        }
    };
    let classic_bound = second_derivative_sup.map(|s| width.powi(3) / 12.0 * s);

    let derivative_energy = match an.derivative_energy() {
        Ok(r) => Some(r.value),
        Err(e) => {
            notes.push(format!("new bound unavailable: {e}"));
            None
        }
    };
    let m_constant = match derivative_energy {
        Some(_) if sup == 0.0 => {
            notes.push("‖f‖∞ = 0, M undefined".to_string());
            None
        }
        Some(energy) => Some(6.0 / (width * width) * sup + energy / (2.0 * width * sup)),
        None => None,
    };
    let new_bound = m_constant.map(|m| width.powi(3) / 12.0 * m);
    if notes.is_empty() {
        notes.push("both bounds computed".to_string());
    }

    Ok(TrapezoidBounds {
        function: f.to_string(),
        interval: *interval,
        t_rap,
        true_abs: t_rap.abs(),
        sup_norm: sup,
        second_derivative_sup,
        classic_bound,
        classic_applicable: classic_bound.is_some(),
        derivative_energy,
        m_constant,
        new_bound,
        classic_holds: classic_bound.map(|b| within(t_rap.abs(), b)),
        new_holds: new_bound.map(|b| within(t_rap.abs(), b)),
        hypothesis_note: notes.join("; "),
    })
}

/// `G(f(a), f(b)) ≤ √((b−a)/12) · ‖f'‖₂`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GeometricMeanReport {
    pub function: String,
    pub interval: Interval,
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
    pub convex: Evidence,
    pub mean_zero: Evidence,
    pub endpoint_product_positive: Evidence,
}

pub fn geometric_mean_bound(f: &Expr, interval: &Interval) -> Result<GeometricMeanReport> {
    let an = Analysis::new(f.clone(), *interval);
    let product = an.at(interval.a())? * an.at(interval.b())?;
    if product.is_nan() || product <= 0.0 {
        return Err(Error::GeometricMeanUndefined { product });
    }
    let lhs = product.sqrt();
    let rhs = (interval.width() / 12.0).sqrt() * an.derivative_energy()?.value.sqrt();
    let h = an.hypotheses()?;
    Ok(GeometricMeanReport {
        function: f.to_string(),
        interval: *interval,
        lhs,
        rhs,
        holds: within(lhs, rhs),
        convex: h.convex,
        mean_zero: h.mean_zero,
        endpoint_product_positive: h.endpoint_product_positive,
    })
}

/// A chain `f(A_λ(x, y)) ≤ G_λ(f(x), f(y)) ≤ right`, evaluated link by link.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MeanChainReport {
    pub function: String,
    pub x: f64,
    pub y: f64,
    pub lambda: f64,
    /// `f(λx + (1−λ)y)`.
    pub left: f64,
    /// `f(x)^λ f(y)^(1−λ)`.
    pub middle: f64,
    pub right: f64,
    pub left_link_holds: bool,
    pub right_link_holds: bool,
    /// Minimum of `(log f)''` on `[x, y]` (log-convex chain only).
    pub log_convex: Option<Evidence>,
    /// `f⁻¹(f(x)^λ)` (bijective chain only).
    pub alpha: Option<f64>,
    /// `f⁻¹(f(y)^(1−λ))` (bijective chain only).
    pub beta: Option<f64>,
    /// `alpha < beta`.
    pub ordered: Option<bool>,
    pub note: String,
}

/// `f((x+y)/2) ≤ √(f(x)f(y)) ≤ √((y−x)/12) · ‖f'‖₂` with the norm over `[x, y]`.
pub fn log_convex_chain(f: &Expr, x: f64, y: f64) -> Result<MeanChainReport> {
    let span = Interval::new(x, y).map_err(|_| Error::InvalidPoints { x, y, lo: x, hi: y })?;
    let an = Analysis::new(f.clone(), span);
    let (fx, fy) = (an.at(x)?, an.at(y)?);
    let product = fx * fy;
    if product.is_nan() || product < 0.0 {
        return Err(Error::GeometricMeanUndefined { product });
    }
    let left = an.at(0.5 * (x + y))?;
    let middle = product.sqrt();
    let right = (span.width() / 12.0).sqrt() * an.derivative_energy()?.value.sqrt();

    let log_convex = log_convexity(&an)?;
    let note = if log_convex.witness.is_none() {
        "f is not positive on [x, y]; log-convexity evidence unavailable".to_string()
    } else {
        "lambda = 1/2; norm of f' taken over [x, y]".to_string()
    };
    Ok(MeanChainReport {
        function: f.to_string(),
        x,
        y,
        lambda: 0.5,
        left,
        middle,
        right,
        left_link_holds: within(left, middle),
        right_link_holds: within(middle, right),
        log_convex: Some(log_convex),
        alpha: None,
        beta: None,
        ordered: None,
        note,
    })
}

/// Grid minimum of `(log f)'' = (f f'' − f'²)/f²`, when `f > 0` throughout.
fn log_convexity(an: &Analysis) -> Result<Evidence> {
    let unavailable = Evidence {
        holds: false,
        witness: None,
    };
    if an.sup_norm()?.min_value <= 0.0 {
        return Ok(unavailable);
    }
    let (Ok(d1), Ok(d2)) = (an.first_derivative(), an.second_derivative()) else {
        return Ok(unavailable);
    };
    let f = an.function();
    let g = (f * d2 - Expr::powf(d1.clone(), 2.0)) / Expr::powf(f.clone(), 2.0);
    let min = quad::sup_norm(&g, an.interval())?.min_value;
    Ok(Evidence {
        holds: min >= -SHAPE_SLACK,
        witness: Some(min),
    })
}

/// Inverts a monotone `f` on `interval` by bisection.
pub fn invert_monotone(f: &Expr, interval: &Interval, value: f64) -> Result<f64> {
    let (mut lo, mut hi) = (interval.a(), interval.b());
    let (f_lo, f_hi) = (f.eval(lo)?, f.eval(hi)?);
    let increasing = f_hi >= f_lo;
    let (range_lo, range_hi) = if increasing {
        (f_lo, f_hi)
    } else {
        (f_hi, f_lo)
    };
    if !(range_lo <= value && value <= range_hi) {
        return Err(Error::OutOfRange {
            value,
            lo: range_lo,
            hi: range_hi,
        });
    }
    if value == f_lo {
        return Ok(lo);
    }
    if value == f_hi {
        return Ok(hi);
    }
    for _ in 0..INVERSION_MAX_ITER {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f.eval(mid)?;
        if fm == value {
            return Ok(mid);
        }
        if (fm < value) == increasing {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let (e_lo, e_hi) = ((f.eval(lo)? - value).abs(), (f.eval(hi)? - value).abs());
    Ok(if e_lo <= e_hi { lo } else { hi })
}

/// The weighted chain through `α = f⁻¹(f(x)^λ)` and `β = f⁻¹(f(y)^(1−λ))`:
/// `f(A_λ(x,y)) ≤ G_λ(f(x), f(y)) ≤ (β − α)/12 · ∫_α^β f'²`.
///
/// The integral is oriented, so `β < α` still yields a value; `ordered`
/// records which case occurred.
pub fn bijective_generalization(
    f: &Expr,
    interval: &Interval,
    x: f64,
    y: f64,
    lambda: f64,
) -> Result<MeanChainReport> {
    if !(0.0..=1.0).contains(&lambda) {
        return Err(Error::InvalidLambda(lambda));
    }
    if !(interval.contains(x) && interval.contains(y)) {
        return Err(Error::InvalidPoints {
            x,
            y,
            lo: interval.a(),
            hi: interval.b(),
        });
    }
    let an = Analysis::new(f.clone(), *interval);
    let slope = quad::sup_norm(an.first_derivative()?, interval)?;
    let monotone = (slope.min_value >= -SHAPE_SLACK && slope.max_value > 0.0)
        || (slope.max_value <= SHAPE_SLACK && slope.min_value < 0.0);
    if !monotone {
        return Err(Error::NotMonotone {
            min_slope: slope.min_value,
            max_slope: slope.max_value,
        });
    }
    let (fx, fy) = (an.at(x)?, an.at(y)?);
    if !(fx > 0.0 && fy > 0.0) {
        return Err(Error::NotPositive { min: fx.min(fy) });
    }
    let (u, v) = (fx.powf(lambda), fy.powf(1.0 - lambda));
    let alpha = invert_monotone(f, interval, u)?;
    let beta = invert_monotone(f, interval, v)?;

    let d1 = an.first_derivative()?;
    let energy = |lo: f64, hi: f64| -> Result<f64> {
        let span = Interval::new(lo, hi)?;
        Ok(quad::integrate_fn(|t| d1.eval(t).map(|w| w * w), &span, DEFAULT_TOL)?.value)
    };
    let oriented = if alpha < beta {
        energy(alpha, beta)?
    } else if beta < alpha {
        -energy(beta, alpha)?
    } else {
        0.0
    };
    let left = an.at(lambda * x + (1.0 - lambda) * y)?;
    let middle = u * v;
    let right = (beta - alpha) / 12.0 * oriented;

    Ok(MeanChainReport {
        function: f.to_string(),
        x,
        y,
        lambda,
        left,
        middle,
        right,
        left_link_holds: within(left, middle),
        right_link_holds: within(middle, right),
        log_convex: None,
        alpha: Some(alpha),
        beta: Some(beta),
        ordered: Some(alpha < beta),
        note: "integral of f'^2 taken over [alpha, beta] (oriented), alpha = f^-1(f(x)^lambda), beta = f^-1(f(y)^(1-lambda))".to_string(),
    })
}
