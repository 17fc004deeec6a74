//! Integrals, sup-norms and mean-zero shifts over an [`Interval`].
//!
//! Integration is adaptive Simpson with Richardson extrapolation on each
//! accepted panel. The reported error estimate is the accumulated local
//! `|S₂ − S₁| / 15`, which bounds the error of the un-extrapolated sum and is
//! therefore conservative for the returned (extrapolated) value.

use serde::Serialize;
use thiserror::Error;

use crate::expr::{BinaryOp, EvalError, Expr, Interval};

/// Default absolute tolerance for every integral.
pub const DEFAULT_TOL: f64 = 1e-10;
/// Recursion depth cap for adaptive subdivision.
pub const MAX_DEPTH: u32 = 60;
/// Points in the sup-norm search grid.
pub const SUP_GRID: usize = 4097;
/// Number of grid peaks refined by the sup-norm search.
pub const SUP_REFINE: usize = 8;

const INITIAL_PANELS: usize = 64;
const MAX_PANELS: usize = 1 << 22;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuadError {
    #[error("tolerance must be positive, got {0}")]
    InvalidTolerance(f64),
    #[error("integrand evaluation failed: {0}")]
    Eval(#[from] EvalError),
    #[error("depth cap {MAX_DEPTH} reached near x = {x} without meeting tolerance")]
    DepthExceeded { x: f64 },
    #[error("more than {MAX_PANELS} panels needed")]
    TooManyPanels,
}

/// Integral value plus an a-posteriori absolute error estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadResult {
    pub value: f64,
    pub error_estimate: f64,
    /// Accepted panels.
    pub subdivisions: usize,
}

/// Extrema of `f` over an interval.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SupNormResult {
    /// Signed maximum of `f`.
    pub max_value: f64,
    pub argmax: f64,
    /// Signed minimum of `f`.
    pub min_value: f64,
    pub argmin: f64,
    /// `sup |f|`.
    pub abs_max: f64,
}

/// Integrates `f` over `interval` to absolute tolerance `tol`.
pub fn integrate(f: &Expr, interval: &Interval, tol: f64) -> Result<QuadResult, QuadError> {
    integrate_fn(|x| f.eval(x), interval, tol)
}

/// Integrates an arbitrary fallible integrand.
pub fn integrate_fn<F>(f: F, interval: &Interval, tol: f64) -> Result<QuadResult, QuadError>
where
    F: Fn(f64) -> Result<f64, EvalError>,
{
    if tol.is_nan() || tol <= 0.0 {
        return Err(QuadError::InvalidTolerance(tol));
    }
    let (a, b) = (interval.a(), interval.b());
    let width = b - a;
    let mut acc = Accumulator::default();
    let h = width / INITIAL_PANELS as f64;
    let mut left = a;
    let mut f_left = f(a)?;
    for i in 0..INITIAL_PANELS {
        let right = if i + 1 == INITIAL_PANELS {
            b
        } else {
            a + (i + 1) as f64 * h
        };
        let mid = 0.5 * (left + right);
        let (f_mid, f_right) = (f(mid)?, f(right)?);
        let whole = simpson(left, right, f_left, f_mid, f_right);
        let panel = Panel {
            a: left,
            b: right,
            fa: f_left,
            fm: f_mid,
            fb: f_right,
            whole,
        };
        adapt(&f, panel, tol * (right - left) / width, 0, &mut acc)?;
        left = right;
        f_left = f_right;
    }
    Ok(QuadResult {
        value: acc.sum + acc.compensation,
        error_estimate: acc.error,
        subdivisions: acc.panels,
    })
}

#[derive(Default)]
struct Accumulator {
    sum: f64,
    compensation: f64,
    error: f64,
    panels: usize,
}

impl Accumulator {
    // Neumaier summation; order of additions is fixed by the recursion.
    fn push(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.compensation += (self.sum - t) + v;
        } else {
            self.compensation += (v - t) + self.sum;
        }
        self.sum = t;
    }
}

#[derive(Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

fn adapt<F>(f: &F, p: Panel, tol: f64, depth: u32, acc: &mut Accumulator) -> Result<(), QuadError>
where
    F: Fn(f64) -> Result<f64, EvalError>,
{
    let m = 0.5 * (p.a + p.b);
    let (lm, rm) = (0.5 * (p.a + m), 0.5 * (m + p.b));
    let (f_lm, f_rm) = (f(lm)?, f(rm)?);
    let left = simpson(p.a, m, p.fa, f_lm, p.fm);
    let right = simpson(m, p.b, p.fm, f_rm, p.fb);
    let delta = left + right - p.whole;

    // Below this the difference is rounding noise and cannot shrink further.
    let scale = (p.b - p.a) * (p.fa.abs() + f_lm.abs() + p.fm.abs() + f_rm.abs() + p.fb.abs());
    let noise = 64.0 * f64::EPSILON * scale;

    if delta.abs() <= 15.0 * tol || delta.abs() <= noise {
        acc.push(left + right + delta / 15.0);
        acc.error += delta.abs() / 15.0;
        acc.panels += 1;
        if acc.panels > MAX_PANELS {
            return Err(QuadError::TooManyPanels);
        }
        return Ok(());
    }
    if depth >= MAX_DEPTH || lm <= p.a || rm >= p.b {
        return Err(QuadError::DepthExceeded { x: m });
    }
    let lp = Panel {
        a: p.a,
        b: m,
        fa: p.fa,
        fm: f_lm,
        fb: p.fm,
        whole: left,
    };
    let rp = Panel {
        a: m,
        b: p.b,
        fa: p.fm,
        fm: f_rm,
        fb: p.fb,
        whole: right,
    };
    adapt(f, lp, 0.5 * tol, depth + 1, acc)?;
    adapt(f, rp, 0.5 * tol, depth + 1, acc)
}

/// Global maximum, minimum and sup-norm of `f` on `interval`.
///
/// A uniform grid of [`SUP_GRID`] points is scanned first. The best
/// [`SUP_REFINE`] grid peaks (and troughs) are then refined by bisecting on a
/// sign change of `f'` in the neighbouring cells, or by golden-section search
/// when `f` has no symbolic derivative.
pub fn sup_norm(f: &Expr, interval: &Interval) -> Result<SupNormResult, QuadError> {
    let (a, b) = (interval.a(), interval.b());
    let step = interval.width() / (SUP_GRID - 1) as f64;
    let xs: Vec<f64> = (0..SUP_GRID)
        .map(|i| {
            if i + 1 == SUP_GRID {
                b
            } else {
                a + i as f64 * step
            }
        })
        .collect();
    let values = xs
        .iter()
        .map(|&x| f.eval(x))
        .collect::<Result<Vec<_>, _>>()?;
    let df = f.derivative().ok();

    let (max_value, argmax) = extremum(f, df.as_ref(), &xs, &values, 1.0);
    let (min_value, argmin) = extremum(f, df.as_ref(), &xs, &values, -1.0);
    Ok(SupNormResult {
        max_value,
        argmax,
        min_value,
        argmin,
        abs_max: max_value.abs().max(min_value.abs()),
    })
}

/// Best value of `sign * f` (returned unsigned as f) with its location.
fn extremum(f: &Expr, df: Option<&Expr>, xs: &[f64], values: &[f64], sign: f64) -> (f64, f64) {
    let g = |i: usize| sign * values[i];
    let n = xs.len();
    let mut peaks: Vec<usize> = (0..n)
        .filter(|&i| (i == 0 || g(i) >= g(i - 1)) && (i + 1 == n || g(i) >= g(i + 1)))
        .collect();
    peaks.sort_by(|&i, &j| g(j).total_cmp(&g(i)).then(i.cmp(&j)));
    peaks.truncate(SUP_REFINE);

    let mut best = (g(peaks[0]), xs[peaks[0]]);
    let mut consider = |x: f64| {
        if let Ok(v) = f.eval(x) {
            if sign * v > best.0 {
                best = (sign * v, x);
            }
        }
    };
    for &i in &peaks {
        let lo = i.saturating_sub(1);
        let hi = (i + 1).min(n - 1);
        match df {
            Some(df) => {
                for (l, r) in [(lo, i), (i, hi)] {
                    if l == r {
                        continue;
                    }
                    if let Some(x) = bisect_descending(df, xs[l], xs[r], sign) {
                        consider(x);
                    }
                }
            }
            None => consider(golden_section(f, xs[lo], xs[hi], sign)),
        }
    }
    (sign * best.0, best.1)
}

/// Root of `sign * df` going from positive to non-positive on `[lo, hi]`.
fn bisect_descending(df: &Expr, mut lo: f64, mut hi: f64, sign: f64) -> Option<f64> {
    let d = |x: f64| df.eval(x).ok().map(|v| sign * v);
    let (dl, dh) = (d(lo)?, d(hi)?);
    if !(dl > 0.0 && dh <= 0.0) {
        return None;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if d(mid)? > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(0.5 * (lo + hi))
}

fn golden_section(f: &Expr, mut lo: f64, mut hi: f64, sign: f64) -> f64 {
    let g = |x: f64| f.eval(x).map(|v| sign * v).unwrap_or(f64::NEG_INFINITY);
    let ratio = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = hi - ratio * (hi - lo);
    let mut d = lo + ratio * (hi - lo);
    let (mut gc, mut gd) = (g(c), g(d));
    for _ in 0..200 {
        if hi - lo <= 4.0 * f64::EPSILON * (lo.abs() + hi.abs()).max(f64::MIN_POSITIVE) {
            break;
        }
        if gc >= gd {
            hi = d;
            d = c;
            gd = gc;
            c = hi - ratio * (hi - lo);
            gc = g(c);
        } else {
            lo = c;
            c = d;
            gc = gd;
            d = lo + ratio * (hi - lo);
            gd = g(d);
        }
    }
    0.5 * (lo + hi)
}

/// Mean of `f` over `interval`.
pub fn mean_value(f: &Expr, interval: &Interval, tol: f64) -> Result<f64, QuadError> {
    Ok(integrate(f, interval, tol)?.value / interval.width())
}

/// `f − mean(f)`, with the mean appended as a trailing constant node so that
/// the derivative of the result is the derivative of `f`.
pub fn mean_zero_shift(f: &Expr, interval: &Interval) -> Result<Expr, QuadError> {
    mean_zero_shift_with_tol(f, interval, DEFAULT_TOL)
}

pub fn mean_zero_shift_with_tol(
    f: &Expr,
    interval: &Interval,
    tol: f64,
) -> Result<Expr, QuadError> {
    let mean = mean_value(f, interval, tol)?;
    Ok(Expr::raw_binary(
        BinaryOp::Sub,
        f.clone(),
        Expr::constant(mean),
    ))
}
