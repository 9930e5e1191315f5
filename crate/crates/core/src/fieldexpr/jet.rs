use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::tensor3::SymMat3;

/// Second-order jet of a scalar field at a point: value, gradient and
/// Hessian with respect to `(x1, x2, x3)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jet2 {
    pub value: f64,
    pub grad: [f64; 3],
    pub hess: SymMat3,
}

impl Jet2 {
    pub const fn constant(value: f64) -> Self {
        Self {
            value,
            grad: [0.0; 3],
            hess: SymMat3::zero(),
        }
    }

    /// The coordinate function `x_{axis+1}` evaluated at `value`.
    pub fn variable(axis: usize, value: f64) -> Self {
        let mut grad = [0.0; 3];
        grad[axis] = 1.0;
        Self {
            value,
            grad,
            hess: SymMat3::zero(),
        }
    }

    pub fn hess(&self, i: usize, j: usize) -> f64 {
        self.hess.get(i, j)
    }

    pub fn is_locally_constant(&self) -> bool {
        self.grad.iter().all(|g| *g == 0.0) && self.hess.max_abs() == 0.0
    }

    /// Composition `f(self)` given `f(u)`, `f'(u)` and `f''(u)`:
    /// grad `f' u_i`, Hessian `f' u_ij + f'' u_i u_j`.
    pub fn chain(&self, f0: f64, f1: f64, f2: f64) -> Self {
        let u = self;
        Self {
            value: f0,
            grad: u.grad.map(|g| f1 * g),
            hess: SymMat3::from_fn(|i, j| f1 * u.hess(i, j) + f2 * u.grad[i] * u.grad[j]),
        }
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            value: self.value * s,
            grad: self.grad.map(|g| g * s),
            hess: self.hess.scale(s),
        }
    }

    pub fn recip(&self) -> Self {
        let v = self.value;
        self.chain(1.0 / v, -1.0 / (v * v), 2.0 / (v * v * v))
    }

    pub fn exp(&self) -> Self {
        let e = self.value.exp();
        self.chain(e, e, e)
    }

    pub fn ln(&self) -> Self {
        let v = self.value;
        self.chain(v.ln(), 1.0 / v, -1.0 / (v * v))
    }

    pub fn sin(&self) -> Self {
        let (s, c) = self.value.sin_cos();
        self.chain(s, c, -s)
    }

    pub fn cos(&self) -> Self {
        let (s, c) = self.value.sin_cos();
        self.chain(c, -s, -c)
    }

    pub fn tan(&self) -> Self {
        let t = self.value.tan();
        let sec2 = 1.0 + t * t;
        self.chain(t, sec2, 2.0 * t * sec2)
    }

    pub fn sqrt(&self) -> Self {
        let r = self.value.sqrt();
        self.chain(r, 0.5 / r, -0.25 / (r * self.value))
    }

    /// `u^c` for a real constant exponent (requires `u > 0` unless `c` is an
    /// integer; callers route integer exponents through [`Jet2::powi`]).
    pub fn powf(&self, c: f64) -> Self {
        let v = self.value;
        self.chain(v.powf(c), c * v.powf(c - 1.0), c * (c - 1.0) * v.powf(c - 2.0))
    }

    /// Non-negative integer power by repeated squaring.
    pub fn powi(&self, n: u32) -> Self {
        let mut result = Jet2::constant(1.0);
        let mut base = *self;
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = result * base;
            }
            n >>= 1;
            if n > 0 {
                base = base * base;
            }
        }
        result
    }
}

impl Add for Jet2 {
    type Output = Jet2;
    fn add(self, rhs: Jet2) -> Jet2 {
        Jet2 {
            value: self.value + rhs.value,
            grad: [0, 1, 2].map(|i| self.grad[i] + rhs.grad[i]),
            hess: self.hess + rhs.hess,
        }
    }
}

impl Sub for Jet2 {
    type Output = Jet2;
    fn sub(self, rhs: Jet2) -> Jet2 {
        Jet2 {
            value: self.value - rhs.value,
            grad: [0, 1, 2].map(|i| self.grad[i] - rhs.grad[i]),
            hess: self.hess - rhs.hess,
        }
    }
}

impl Neg for Jet2 {
    type Output = Jet2;
    fn neg(self) -> Jet2 {
        self.scale(-1.0)
    }
}

impl Mul for Jet2 {
    type Output = Jet2;
    fn mul(self, rhs: Jet2) -> Jet2 {
        let (a, b) = (self, rhs);
        Jet2 {
            value: a.value * b.value,
            grad: [0, 1, 2].map(|i| a.value * b.grad[i] + b.value * a.grad[i]),
            hess: SymMat3::from_fn(|i, j| {
                a.value * b.hess(i, j)
                    + b.value * a.hess(i, j)
                    + a.grad[i] * b.grad[j]
                    + a.grad[j] * b.grad[i]
            }),
        }
    }
}

impl Div for Jet2 {
    type Output = Jet2;
    fn div(self, rhs: Jet2) -> Jet2 {
        self * rhs.recip()
    }
}

impl Mul<f64> for Jet2 {
    type Output = Jet2;
    fn mul(self, rhs: f64) -> Jet2 {
        self.scale(rhs)
    }
}

impl Add<f64> for Jet2 {
    type Output = Jet2;
    fn add(self, rhs: f64) -> Jet2 {
        Jet2 {
            value: self.value + rhs,
            ..self
        }
    }
}
