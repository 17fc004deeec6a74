use super::{is_integer, BinaryOp, DiffError, Expr, Node, UnaryOp, MAX_NODES};

impl Expr {
    /// Exact symbolic derivative of the given order, simplified as it is built.
    ///
    /// Fails on `abs` nodes and when any intermediate derivative grows past
    /// [`MAX_NODES`].
    pub fn differentiate(&self, order: u32) -> Result<Expr, DiffError> {
        if order == 0 {
            return Err(DiffError::ZeroOrder);
        }
        let mut current = self.clone();
        for k in 1..=order {
            current = current.derivative()?;
            if current.count_up_to(MAX_NODES) > MAX_NODES {
                return Err(DiffError::TooLarge {
                    order: k,
                    cap: MAX_NODES,
                });
            }
        }
        Ok(current)
    }

    /// First derivative.
    pub fn derivative(&self) -> Result<Expr, DiffError> {
        Ok(match self.node() {
            Node::Const(_) => Expr::zero(),
            Node::X => Expr::one(),
            Node::Unary(op, u) => {
                let du = u.derivative()?;
                let outer = match op {
                    UnaryOp::Neg => return Ok(Expr::neg(du)),
                    UnaryOp::Sin => Expr::cos(u.clone()),
                    UnaryOp::Cos => Expr::neg(Expr::sin(u.clone())),
                    UnaryOp::Exp => self.clone(),
                    UnaryOp::Log => return Ok(Expr::div(du, u.clone())),
                    UnaryOp::Sqrt => {
                        return Ok(Expr::div(du, Expr::mul(Expr::constant(2.0), self.clone())))
                    }
                    UnaryOp::Abs => return Err(DiffError::NonDifferentiable(self.to_string())),
                };
                Expr::mul(outer, du)
            }
            Node::Binary(op, u, v) => {
                let (du, dv) = (u.derivative()?, v.derivative()?);
                match op {
                    BinaryOp::Add => Expr::add(du, dv),
                    BinaryOp::Sub => Expr::sub(du, dv),
                    BinaryOp::Mul => Expr::add(Expr::mul(du, v.clone()), Expr::mul(u.clone(), dv)),
                    BinaryOp::Div => Expr::div(
                        Expr::sub(Expr::mul(du, v.clone()), Expr::mul(u.clone(), dv)),
                        Expr::powf(v.clone(), 2.0),
                    ),
                }
            }
            Node::Pow(u, p) => {
                let du = u.derivative()?;
                if is_integer(*p) {
                    Expr::mul(
                        Expr::mul(Expr::constant(*p), Expr::powf(u.clone(), p - 1.0)),
                        du,
                    )
                } else {
                    // u^p = exp(p log u)
                    let rewritten = Expr::exp(Expr::mul(Expr::constant(*p), Expr::log(u.clone())));
                    Expr::mul(
                        rewritten,
                        Expr::mul(Expr::constant(*p), Expr::div(du, u.clone())),
                    )
                }
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use crate::expr::parse;

    use super::*;

    #[test]
    fn power_rule_on_sharp_quadratic() {
        let f = parse("6*x^2 - 6*x + 1").unwrap();
        let d1 = f.differentiate(1).unwrap();
        assert_eq!(d1.to_string(), "((12 * x) - 6)");
        let d2 = f.differentiate(2).unwrap();
        assert_eq!(d2.as_const(), Some(12.0));
        assert_eq!(f.differentiate(3).unwrap().as_const(), Some(0.0));
    }

    #[test]
    fn sin_derivative_matches_finite_difference() {
        let f = parse("sin(x)").unwrap();
        let d = f.differentiate(1).unwrap();
        assert_eq!(d.eval(0.0).unwrap(), 1.0);
        let h = 1e-5;
        let fd = (f.eval(h).unwrap() - f.eval(-h).unwrap()) / (2.0 * h);
        assert!((fd - 1.0).abs() < 1e-8);
    }

    #[test]
    fn even_orders_of_sine_stay_small() {
        let f = parse("sin(x)").unwrap();
        let d4 = f.differentiate(4).unwrap();
        assert_eq!(d4.to_string(), "sin(x)");
        let d2 = f.differentiate(2).unwrap();
        assert_eq!(d2.to_string(), "(-sin(x))");
    }

    #[test]
    fn fractional_power_uses_exp_log() {
        let f = parse("x^0.5").unwrap();
        let d = f.differentiate(1).unwrap();
        assert!(d.to_string().contains("exp("));
        assert!((d.eval(4.0).unwrap() - 0.25).abs() < 1e-15);
    }

    #[test]
    fn quotient_and_chain_rules() {
        let f = parse("exp(x^2)/(1+x)").unwrap();
        let d = f.differentiate(1).unwrap();
        let x: f64 = 0.7;
        let want = (2.0 * x * (x * x).exp() * (1.0 + x) - (x * x).exp()) / (1.0 + x).powi(2);
        assert!((d.eval(x).unwrap() - want).abs() < 1e-14);
        let g = parse("log(sqrt(x))").unwrap().differentiate(1).unwrap();
        assert!((g.eval(2.0).unwrap() - 0.25).abs() < 1e-15);
    }

    #[test]
    fn abs_is_rejected() {
        let f = parse("x + abs(x)").unwrap();
        assert!(matches!(
            f.differentiate(1),
            Err(DiffError::NonDifferentiable(_))
        ));
        assert_eq!(f.differentiate(0), Err(DiffError::ZeroOrder));
    }

    #[test]
    fn node_cap_is_enforced() {
        // The quotient rule roughly doubles this expression per order.
        let f = parse("exp(sin(x))/(2 + cos(x)*x^3)").unwrap();
        let err = f.differentiate(40).unwrap_err();
        assert!(matches!(err, DiffError::TooLarge { cap: MAX_NODES, .. }));
    }
}
