use std::f64::consts::{E, PI};

use super::ast::{BinOp, Expr, Func};
use super::jet::Jet2;
use super::{EvalError, Point, ScalarField};
use crate::tensor3::SymMat3;

fn domain(expr: &Expr, p: &Point, reason: &'static str) -> EvalError {
    EvalError::Domain {
        subexpr: expr.to_string(),
        point: *p,
        reason,
    }
}

enum Exponent {
    Int(i32),
    Real(f64),
    Field,
}

fn classify_exponent(exponent: &Expr, p: &Point) -> Result<Exponent, EvalError> {
    if !exponent.is_constant() {
        return Ok(Exponent::Field);
    }
    let c = value(exponent, p)?;
    if c.fract() == 0.0 && c.abs() <= i32::MAX as f64 {
        Ok(Exponent::Int(c as i32))
    } else {
        Ok(Exponent::Real(c))
    }
}

fn finite_or(expr: &Expr, p: &Point, v: f64) -> Result<f64, EvalError> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(domain(expr, p, "non-finite result"))
    }
}

/// Plain floating-point evaluation.
pub(super) fn value(expr: &Expr, p: &Point) -> Result<f64, EvalError> {
    let v = match expr {
        Expr::Num(v) => *v,
        Expr::Pi => PI,
        Expr::E => E,
        Expr::Var(i) => p.0[*i as usize],
        Expr::Neg(e) => -value(e, p)?,
        Expr::Binary(op, l, r) => {
            let a = value(l, p)?;
            match op {
                BinOp::Add => a + value(r, p)?,
                BinOp::Sub => a - value(r, p)?,
                BinOp::Mul => a * value(r, p)?,
                BinOp::Div => {
                    let b = value(r, p)?;
                    if b == 0.0 {
                        return Err(domain(expr, p, "division by zero"));
                    }
                    a / b
                }
                BinOp::Pow => match classify_exponent(r, p)? {
                    Exponent::Int(n) => {
                        if n < 0 && a == 0.0 {
                            return Err(domain(expr, p, "zero raised to a negative power"));
                        }
                        a.powi(n)
                    }
                    Exponent::Real(c) => {
                        if a <= 0.0 {
                            return Err(domain(expr, p, "non-integer power of a non-positive base"));
                        }
                        a.powf(c)
                    }
                    Exponent::Field => {
                        if a <= 0.0 {
                            return Err(domain(expr, p, "variable power of a non-positive base"));
                        }
                        (value(r, p)? * a.ln()).exp()
                    }
                },
            }
        }
        Expr::Call(func, arg) => {
            let u = value(arg, p)?;
            match func {
                Func::Exp => u.exp(),
                Func::Log => {
                    if u <= 0.0 {
                        return Err(domain(expr, p, "log of a non-positive value"));
                    }
                    u.ln()
                }
                Func::Sin => u.sin(),
                Func::Cos => u.cos(),
                Func::Tan => {
                    if u.cos().abs() <= f64::EPSILON {
                        return Err(domain(expr, p, "tan at a pole"));
                    }
                    u.tan()
                }
                Func::Sqrt => {
                    if u < 0.0 {
                        return Err(domain(expr, p, "sqrt of a negative value"));
                    }
                    u.sqrt()
                }
            }
        }
    };
    finite_or(expr, p, v)
}

/// Forward-mode second-order evaluation.
pub(super) fn jet(expr: &Expr, p: &Point) -> Result<Jet2, EvalError> {
    let j = match expr {
        Expr::Num(v) => Jet2::constant(*v),
        Expr::Pi => Jet2::constant(PI),
        Expr::E => Jet2::constant(E),
        Expr::Var(i) => Jet2::variable(*i as usize, p.0[*i as usize]),
        Expr::Neg(e) => -jet(e, p)?,
        Expr::Binary(op, l, r) => {
            let a = jet(l, p)?;
            match op {
                BinOp::Add => a + jet(r, p)?,
                BinOp::Sub => a - jet(r, p)?,
                BinOp::Mul => a * jet(r, p)?,
                BinOp::Div => {
                    let b = jet(r, p)?;
                    if b.value == 0.0 {
                        return Err(domain(expr, p, "division by zero"));
                    }
                    a / b
                }
                BinOp::Pow => match classify_exponent(r, p)? {
                    Exponent::Int(n) => {
                        if n < 0 && a.value == 0.0 {
                            return Err(domain(expr, p, "zero raised to a negative power"));
                        }
                        let positive = a.powi(n.unsigned_abs());
                        if n < 0 {
                            positive.recip()
                        } else {
                            positive
                        }
                    }
                    Exponent::Real(c) => {
                        if a.value <= 0.0 {
                            return Err(domain(expr, p, "non-integer power of a non-positive base"));
                        }
                        a.powf(c)
                    }
                    Exponent::Field => {
                        if a.value <= 0.0 {
                            return Err(domain(expr, p, "variable power of a non-positive base"));
                        }
                        (jet(r, p)? * a.ln()).exp()
                    }
                },
            }
        }
        Expr::Call(func, arg) => {
            let u = jet(arg, p)?;
            match func {
                Func::Exp => u.exp(),
                Func::Log => {
                    if u.value <= 0.0 {
                        return Err(domain(expr, p, "log of a non-positive value"));
                    }
                    u.ln()
                }
                Func::Sin => u.sin(),
                Func::Cos => u.cos(),
                Func::Tan => {
                    if u.value.cos().abs() <= f64::EPSILON {
                        return Err(domain(expr, p, "tan at a pole"));
                    }
                    u.tan()
                }
                Func::Sqrt => {
                    if u.value < 0.0 {
                        return Err(domain(expr, p, "sqrt of a negative value"));
                    }
                    if u.value == 0.0 {
                        if !u.is_locally_constant() {
                            return Err(domain(expr, p, "sqrt derivative unbounded at zero"));
                        }
                        Jet2::constant(0.0)
                    } else {
                        u.sqrt()
                    }
                }
            }
        }
    };
    let all_finite = j.value.is_finite()
        && j.grad.iter().all(|g| g.is_finite())
        && j.hess.packed().iter().all(|h| h.is_finite());
    if all_finite {
        Ok(j)
    } else {
        Err(domain(expr, p, "non-finite result"))
    }
}

/// Central-difference estimate of the jet, independent of the forward-mode
/// path: gradient by `(f(p+h e_i) − f(p−h e_i)) / 2h`, Hessian by the 3×3
/// stencil in each coordinate plane.
pub fn fd_jet2_oracle(field: &ScalarField, p: &Point, step: f64) -> Result<Jet2, EvalError> {
    if !(step > 0.0) || !step.is_finite() {
        return Err(EvalError::BadStep(step));
    }
    let h = step;
    let f = |q: Point| field.eval(&q);
    let f0 = f(*p)?;
    let mut grad = [0.0; 3];
    let mut plus = [0.0; 3];
    let mut minus = [0.0; 3];
    for i in 0..3 {
        plus[i] = f(p.shifted(i, h))?;
        minus[i] = f(p.shifted(i, -h))?;
        grad[i] = (plus[i] - minus[i]) / (2.0 * h);
    }
    let mut hess = SymMat3::zero();
    for i in 0..3 {
        hess.set(i, i, (plus[i] - 2.0 * f0 + minus[i]) / (h * h));
        for j in (i + 1)..3 {
            let pp = f(p.shifted(i, h).shifted(j, h))?;
            let pm = f(p.shifted(i, h).shifted(j, -h))?;
            let mp = f(p.shifted(i, -h).shifted(j, h))?;
            let mm = f(p.shifted(i, -h).shifted(j, -h))?;
            hess.set(i, j, (pp - pm - mp + mm) / (4.0 * h * h));
        }
    }
    Ok(Jet2 {
        value: f0,
        grad,
        hess,
    })
}
