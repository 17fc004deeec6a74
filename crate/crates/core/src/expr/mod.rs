//! Closed-form functions of one real variable.
//!
//! An [`Expr`] is an immutable, reference-counted expression tree over the
//! single variable `x`. Trees are built either by [`parse`] or by the
//! simplifying constructors on [`Expr`] (which fold constants and drop
//! `0`/`1` identities), and can be evaluated pointwise or differentiated
//! symbolically to any order.
//!
//! ```
//! use sharpbound::expr::parse;
//!
//! let f = parse("6*x^2 - 6*x + 1").unwrap();
//! assert_eq!(f.eval(0.5).unwrap(), -0.5);
//! let f2 = f.differentiate(2).unwrap();
//! assert_eq!(f2.eval(0.3).unwrap(), 12.0);
//! ```

mod deriv;
mod parser;

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

pub use parser::{parse, ParseError};

/// Hard cap on the size of a differentiated expression.
pub const MAX_NODES: usize = 20_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum UnaryOp {
    Neg,
    Sin,
    Cos,
    Exp,
    Log,
    Sqrt,
    Abs,
}

impl UnaryOp {
    pub fn name(self) -> &'static str {
        match self {
            UnaryOp::Neg => "-",
            UnaryOp::Sin => "sin",
            UnaryOp::Cos => "cos",
            UnaryOp::Exp => "exp",
            UnaryOp::Log => "log",
            UnaryOp::Sqrt => "sqrt",
            UnaryOp::Abs => "abs",
        }
    }

    pub(crate) fn from_name(name: &str) -> Option<UnaryOp> {
        Some(match name {
            "sin" => UnaryOp::Sin,
            "cos" => UnaryOp::Cos,
            "exp" => UnaryOp::Exp,
            "log" => UnaryOp::Log,
            "sqrt" => UnaryOp::Sqrt,
            "abs" => UnaryOp::Abs,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinaryOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl BinaryOp {
    fn symbol(self) -> char {
        match self {
            BinaryOp::Add => '+',
            BinaryOp::Sub => '-',
            BinaryOp::Mul => '*',
            BinaryOp::Div => '/',
        }
    }
}

/// One node of an expression tree.
#[derive(Debug, Clone, PartialEq)]
pub enum Node {
    Const(f64),
    X,
    Unary(UnaryOp, Expr),
    Binary(BinaryOp, Expr, Expr),
    /// Power with a constant exponent.
    Pow(Expr, f64),
}

/// A closed-form function of `x`.
///
/// Cloning is cheap; subtrees are shared.
#[derive(Clone, PartialEq)]
pub struct Expr(Arc<Node>);

/// Why a pointwise evaluation failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DomainErrorKind {
    LogNonPositive,
    SqrtNegative,
    DivisionByZero,
    NegativeBaseFractionalPower,
    NonFinite,
}

impl fmt::Display for DomainErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DomainErrorKind::LogNonPositive => "log of non-positive value",
            DomainErrorKind::SqrtNegative => "sqrt of negative value",
            DomainErrorKind::DivisionByZero => "division by zero",
            DomainErrorKind::NegativeBaseFractionalPower => {
                "negative base raised to a fractional power"
            }
            DomainErrorKind::NonFinite => "non-finite result",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
#[error("{kind} in `{subexpr}` at x = {x}")]
pub struct EvalError {
    pub kind: DomainErrorKind,
    /// Printed form of the offending sub-expression.
    pub subexpr: String,
    pub x: f64,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DiffError {
    #[error("derivative order must be at least 1")]
    ZeroOrder,
    #[error("`{0}` is not differentiable (abs)")]
    NonDifferentiable(String),
    #[error("derivative of order {order} exceeds the {cap}-node cap")]
    TooLarge { order: u32, cap: usize },
}

impl Expr {
    pub fn node(&self) -> &Node {
        &self.0
    }

    fn from_node(node: Node) -> Expr {
        Expr(Arc::new(node))
    }

    pub fn constant(v: f64) -> Expr {
        Expr::from_node(Node::Const(v))
    }

    pub fn x() -> Expr {
        Expr::from_node(Node::X)
    }

    pub fn zero() -> Expr {
        Expr::constant(0.0)
    }

    pub fn one() -> Expr {
        Expr::constant(1.0)
    }

    /// The value of a constant node, if this is one.
    pub fn as_const(&self) -> Option<f64> {
        match *self.0 {
            Node::Const(v) => Some(v),
            _ => None,
        }
    }

    pub fn is_const(&self, v: f64) -> bool {
        self.as_const() == Some(v)
    }

    // Raw constructors keep the tree exactly as written.

    pub(crate) fn raw_unary(op: UnaryOp, arg: Expr) -> Expr {
        Expr::from_node(Node::Unary(op, arg))
    }

    pub(crate) fn raw_binary(op: BinaryOp, lhs: Expr, rhs: Expr) -> Expr {
        Expr::from_node(Node::Binary(op, lhs, rhs))
    }

    pub(crate) fn raw_pow(base: Expr, exponent: f64) -> Expr {
        Expr::from_node(Node::Pow(base, exponent))
    }

    // Simplifying constructors.

    pub fn unary(op: UnaryOp, arg: Expr) -> Expr {
        if let Some(c) = arg.as_const() {
            if let Ok(v) = apply_unary(op, c) {
                if v.is_finite() {
                    return Expr::constant(v);
                }
            }
        }
        if op == UnaryOp::Neg {
            if let Node::Unary(UnaryOp::Neg, inner) = arg.node() {
                return inner.clone();
            }
        }
        Expr::raw_unary(op, arg)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(arg: Expr) -> Expr {
        Expr::unary(UnaryOp::Neg, arg)
    }

    pub fn sin(arg: Expr) -> Expr {
        Expr::unary(UnaryOp::Sin, arg)
    }

    pub fn cos(arg: Expr) -> Expr {
        Expr::unary(UnaryOp::Cos, arg)
    }

    pub fn exp(arg: Expr) -> Expr {
        Expr::unary(UnaryOp::Exp, arg)
    }

    pub fn log(arg: Expr) -> Expr {
        Expr::unary(UnaryOp::Log, arg)
    }

    pub fn sqrt(arg: Expr) -> Expr {
        Expr::unary(UnaryOp::Sqrt, arg)
    }

    pub fn abs(arg: Expr) -> Expr {
        Expr::unary(UnaryOp::Abs, arg)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(lhs: Expr, rhs: Expr) -> Expr {
        if let (Some(a), Some(b)) = (lhs.as_const(), rhs.as_const()) {
            return Expr::constant(a + b);
        }
        if lhs.is_const(0.0) {
            return rhs;
        }
        if rhs.is_const(0.0) {
            return lhs;
        }
        Expr::raw_binary(BinaryOp::Add, lhs, rhs)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn sub(lhs: Expr, rhs: Expr) -> Expr {
        if let (Some(a), Some(b)) = (lhs.as_const(), rhs.as_const()) {
            return Expr::constant(a - b);
        }
        if rhs.is_const(0.0) {
            return lhs;
        }
        if lhs.is_const(0.0) {
            return Expr::neg(rhs);
        }
        Expr::raw_binary(BinaryOp::Sub, lhs, rhs)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(lhs: Expr, rhs: Expr) -> Expr {
        match (lhs.as_const(), rhs.as_const()) {
            (Some(a), Some(b)) => return Expr::constant(a * b),
            (_, Some(_)) => return Expr::mul(rhs, lhs),
            (Some(a), None) => {
                if a == 0.0 {
                    return Expr::zero();
                }
                if a == 1.0 {
                    return rhs;
                }
                if a == -1.0 {
                    return Expr::neg(rhs);
                }
                if let Node::Binary(BinaryOp::Mul, inner_l, inner_r) = rhs.node() {
                    if let Some(b) = inner_l.as_const() {
                        return Expr::mul(Expr::constant(a * b), inner_r.clone());
                    }
                }
                if let Node::Unary(UnaryOp::Neg, inner) = rhs.node() {
                    return Expr::mul(Expr::constant(-a), inner.clone());
                }
            }
            (None, None) => {}
        }
        Expr::raw_binary(BinaryOp::Mul, lhs, rhs)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn div(lhs: Expr, rhs: Expr) -> Expr {
        if let (Some(a), Some(b)) = (lhs.as_const(), rhs.as_const()) {
            let q = a / b;
            if b != 0.0 && q.is_finite() {
                return Expr::constant(q);
            }
        }
        if lhs.is_const(0.0) {
            return Expr::zero();
        }
        if rhs.is_const(1.0) {
            return lhs;
        }
        Expr::raw_binary(BinaryOp::Div, lhs, rhs)
    }

    pub fn powf(base: Expr, exponent: f64) -> Expr {
        if exponent == 0.0 {
            return Expr::one();
        }
        if exponent == 1.0 {
            return base;
        }
        if let Some(c) = base.as_const() {
            if let Ok(v) = apply_pow(c, exponent) {
                return Expr::constant(v);
            }
        }
        if let Node::Pow(inner, p) = base.node() {
            if is_integer(*p) && is_integer(exponent) {
                return Expr::powf(inner.clone(), p * exponent);
            }
        }
        Expr::raw_pow(base, exponent)
    }

    /// Composition `self(inner(x))`.
    pub fn substitute(&self, inner: &Expr) -> Expr {
        match self.node() {
            Node::Const(_) => self.clone(),
            Node::X => inner.clone(),
            Node::Unary(op, a) => Expr::unary(*op, a.substitute(inner)),
            Node::Binary(op, a, b) => {
                let (a, b) = (a.substitute(inner), b.substitute(inner));
                match op {
                    BinaryOp::Add => Expr::add(a, b),
                    BinaryOp::Sub => Expr::sub(a, b),
                    BinaryOp::Mul => Expr::mul(a, b),
                    BinaryOp::Div => Expr::div(a, b),
                }
            }
            Node::Pow(a, p) => Expr::powf(a.substitute(inner), *p),
        }
    }

    /// Number of nodes counted as a tree (shared subtrees counted each time).
    pub fn node_count(&self) -> usize {
        self.count_up_to(usize::MAX)
    }

    /// Like [`Expr::node_count`] but stops early once `limit` is exceeded.
    pub(crate) fn count_up_to(&self, limit: usize) -> usize {
        fn walk(e: &Expr, acc: &mut usize, limit: usize) {
            if *acc > limit {
                return;
            }
            *acc += 1;
            match e.node() {
                Node::Const(_) | Node::X => {}
                Node::Unary(_, a) | Node::Pow(a, _) => walk(a, acc, limit),
                Node::Binary(_, a, b) => {
                    walk(a, acc, limit);
                    walk(b, acc, limit);
                }
            }
        }
        let mut acc = 0;
        walk(self, &mut acc, limit);
        acc
    }

    pub fn contains_abs(&self) -> bool {
        match self.node() {
            Node::Const(_) | Node::X => false,
            Node::Unary(UnaryOp::Abs, _) => true,
            Node::Unary(_, a) | Node::Pow(a, _) => a.contains_abs(),
            Node::Binary(_, a, b) => a.contains_abs() || b.contains_abs(),
        }
    }

    /// Evaluates the expression at `x`.
    pub fn eval(&self, x: f64) -> Result<f64, EvalError> {
        let fail = |kind| EvalError {
            kind,
            subexpr: self.to_string(),
            x,
        };
        let v = match self.node() {
            Node::Const(c) => *c,
            Node::X => x,
            Node::Unary(op, a) => {
                let u = a.eval(x)?;
                apply_unary(*op, u).map_err(fail)?
            }
            Node::Binary(op, a, b) => {
                let (u, w) = (a.eval(x)?, b.eval(x)?);
                match op {
                    BinaryOp::Add => u + w,
                    BinaryOp::Sub => u - w,
                    BinaryOp::Mul => u * w,
                    BinaryOp::Div => {
                        if w == 0.0 {
                            return Err(fail(DomainErrorKind::DivisionByZero));
                        }
                        u / w
                    }
                }
            }
            Node::Pow(a, p) => {
                let u = a.eval(x)?;
                apply_pow(u, *p).map_err(fail)?
            }
        };
        if v.is_finite() {
            Ok(v)
        } else {
            Err(fail(DomainErrorKind::NonFinite))
        }
    }
}

pub(crate) fn is_integer(v: f64) -> bool {
    v.fract() == 0.0 && v.abs() < 2_147_483_648.0
}

fn apply_unary(op: UnaryOp, u: f64) -> Result<f64, DomainErrorKind> {
    Ok(match op {
        UnaryOp::Neg => -u,
        UnaryOp::Sin => u.sin(),
        UnaryOp::Cos => u.cos(),
        UnaryOp::Exp => u.exp(),
        UnaryOp::Log => {
            if u <= 0.0 {
                return Err(DomainErrorKind::LogNonPositive);
            }
            u.ln()
        }
        UnaryOp::Sqrt => {
            if u < 0.0 {
                return Err(DomainErrorKind::SqrtNegative);
            }
            u.sqrt()
        }
        UnaryOp::Abs => u.abs(),
    })
}

fn apply_pow(base: f64, exponent: f64) -> Result<f64, DomainErrorKind> {
    if base == 0.0 && exponent < 0.0 {
        return Err(DomainErrorKind::DivisionByZero);
    }
    let v = if is_integer(exponent) {
        base.powi(exponent as i32)
    } else {
        if base < 0.0 {
            return Err(DomainErrorKind::NegativeBaseFractionalPower);
        }
        base.powf(exponent)
    };
    if v.is_finite() {
        Ok(v)
    } else {
        Err(DomainErrorKind::NonFinite)
    }
}

fn write_number(f: &mut fmt::Formatter<'_>, v: f64) -> fmt::Result {
    let body = |f: &mut fmt::Formatter<'_>, a: f64| {
        if a.fract() == 0.0 && a < 1e15 {
            write!(f, "{}", a as u64)
        } else {
            write!(f, "{a:?}")
        }
    };
    if v.is_sign_negative() {
        f.write_str("(-")?;
        body(f, -v)?;
        f.write_str(")")
    } else {
        body(f, v)
    }
}

/// Canonical, fully parenthesized form that [`parse`] reads back.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.node() {
            Node::Const(v) => write_number(f, *v),
            Node::X => f.write_str("x"),
            Node::Unary(UnaryOp::Neg, a) => write!(f, "(-{a})"),
            Node::Unary(op, a) => write!(f, "{}({a})", op.name()),
            Node::Binary(op, a, b) => write!(f, "({a} {} {b})", op.symbol()),
            Node::Pow(a, p) => {
                write!(f, "({a} ^ ")?;
                write_number(f, *p)?;
                f.write_str(")")
            }
        }
    }
}

impl fmt::Debug for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Expr({self})")
    }
}

impl std::str::FromStr for Expr {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

impl serde::Serialize for Expr {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

macro_rules! impl_binop {
    ($trait:ident, $method:ident, $ctor:ident) => {
        impl std::ops::$trait for Expr {
            type Output = Expr;
            fn $method(self, rhs: Expr) -> Expr {
                Expr::$ctor(self, rhs)
            }
        }
        impl std::ops::$trait<&Expr> for &Expr {
            type Output = Expr;
            fn $method(self, rhs: &Expr) -> Expr {
                Expr::$ctor(self.clone(), rhs.clone())
            }
        }
        impl std::ops::$trait<f64> for Expr {
            type Output = Expr;
            fn $method(self, rhs: f64) -> Expr {
                Expr::$ctor(self, Expr::constant(rhs))
            }
        }
        impl std::ops::$trait<Expr> for f64 {
            type Output = Expr;
            fn $method(self, rhs: Expr) -> Expr {
                Expr::$ctor(Expr::constant(self), rhs)
            }
        }
    };
}

impl_binop!(Add, add, add);
impl_binop!(Sub, sub, sub);
impl_binop!(Mul, mul, mul);
impl_binop!(Div, div, div);

impl std::ops::Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::neg(self)
    }
}

/// A closed interval `[a, b]` with `a < b`.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct Interval {
    a: f64,
    b: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Error)]
#[error("invalid interval [{a}, {b}]: need finite a < b")]
pub struct IntervalError {
    pub a: f64,
    pub b: f64,
}

impl Interval {
    pub fn new(a: f64, b: f64) -> Result<Interval, IntervalError> {
        if a.is_finite() && b.is_finite() && a < b {
            Ok(Interval { a, b })
        } else {
            Err(IntervalError { a, b })
        }
    }

    pub fn unit() -> Interval {
        Interval { a: 0.0, b: 1.0 }
    }

    /// `[0, 2π]`.
    pub fn full_period() -> Interval {
        Interval {
            a: 0.0,
            b: 2.0 * std::f64::consts::PI,
        }
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn width(&self) -> f64 {
        self.b - self.a
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.a + self.b)
    }

    pub fn contains(&self, x: f64) -> bool {
        self.a <= x && x <= self.b
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.a, self.b)
    }
}
