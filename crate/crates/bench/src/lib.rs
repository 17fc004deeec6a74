//! Benchmark fixtures shared by the criterion targets.

use sharpbound::{parse, Expr};

/// Expressions of increasing cost used across the benches.
pub fn fixtures() -> Vec<(&'static str, Expr)> {
    [
        ("sharp_quadratic", "6*x^2 - 6*x + 1"),
        ("trig", "sin(x) + 0.25*cos(3*x) - 0.1*sin(7*x)"),
        ("exp_mix", "exp(0.5*x) + 2*exp(-x) - x^3"),
    ]
    .into_iter()
    .map(|(name, text)| (name, parse(text).expect("fixture parses")))
    .collect()
}
