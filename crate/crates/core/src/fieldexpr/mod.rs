//! Scalar fields over ℝ³ written in a small arithmetic DSL, evaluated with
//! second-order forward-mode derivatives.

mod ast;
mod eval;
mod jet;
mod parser;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use ast::{BinOp, Expr, Func};
pub use eval::fd_jet2_oracle;
pub use jet::Jet2;
pub use parser::{ParseError, MAX_DEPTH};

/// A point of the coordinate domain.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Point(pub [f64; 3]);

impl Point {
    pub fn new(x1: f64, x2: f64, x3: f64) -> Self {
        Point([x1, x2, x3])
    }

    pub fn coords(&self) -> [f64; 3] {
        self.0
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|c| c.is_finite())
    }

    pub fn shifted(&self, axis: usize, delta: f64) -> Point {
        let mut c = self.0;
        c[axis] += delta;
        Point(c)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.0[0], self.0[1], self.0[2])
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EvalError {
    #[error("domain error in `{subexpr}` at {point}: {reason}")]
    Domain {
        subexpr: String,
        point: Point,
        reason: &'static str,
    },
    #[error("non-finite point {0}")]
    NonFinitePoint(Point),
    #[error("finite-difference step must be positive, got {0}")]
    BadStep(f64),
}

/// A parsed scalar field together with the text it came from.
#[derive(Clone, Debug, PartialEq)]
pub struct ScalarField {
    ast: Expr,
    source: String,
}

impl ScalarField {
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let ast = parser::parse_expr(text)?;
        Ok(Self {
            ast,
            source: text.to_string(),
        })
    }

    pub fn constant(value: f64) -> Self {
        let ast = if value < 0.0 {
            Expr::Neg(Box::new(Expr::Num(-value)))
        } else {
            Expr::Num(value)
        };
        let source = ast.to_string();
        Self { ast, source }
    }

    pub fn ast(&self) -> &Expr {
        &self.ast
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    /// Canonical text: parses back to the same tree.
    pub fn pretty(&self) -> String {
        self.ast.to_string()
    }

    pub fn eval_jet2(&self, p: &Point) -> Result<Jet2, EvalError> {
        if !p.is_finite() {
            return Err(EvalError::NonFinitePoint(*p));
        }
        eval::jet(&self.ast, p)
    }

    /// Value only; shares the domain rules of [`ScalarField::eval_jet2`].
    pub fn eval(&self, p: &Point) -> Result<f64, EvalError> {
        if !p.is_finite() {
            return Err(EvalError::NonFinitePoint(*p));
        }
        eval::value(&self.ast, p)
    }
}

impl FromStr for ScalarField {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ScalarField::parse(s)
    }
}

impl fmt::Display for ScalarField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.source)
    }
}

/// Parses text into a scalar field.
pub fn parse(text: &str) -> Result<ScalarField, ParseError> {
    ScalarField::parse(text)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn var(i: u8) -> Expr {
        Expr::Var(i)
    }

    #[test]
    fn flat_sum_is_left_associative() {
        let f = parse("x1 + x2 + x3").unwrap();
        assert_eq!(
            f.ast(),
            &Expr::binary(BinOp::Add, Expr::binary(BinOp::Add, var(0), var(1)), var(2))
        );
    }

    #[test]
    fn power_binds_tighter_than_negation() {
        let f = parse("-x1^2").unwrap();
        assert_eq!(
            f.ast(),
            &Expr::Neg(Box::new(Expr::binary(BinOp::Pow, var(0), Expr::Num(2.0))))
        );
    }

    #[test]
    fn power_is_right_associative() {
        let f = parse("x1^x2^x3").unwrap();
        assert_eq!(
            f.ast(),
            &Expr::binary(BinOp::Pow, var(0), Expr::binary(BinOp::Pow, var(1), var(2)))
        );
        let g = parse("2^-1").unwrap();
        assert_eq!(
            g.ast(),
            &Expr::binary(BinOp::Pow, Expr::Num(2.0), Expr::Neg(Box::new(Expr::Num(1.0))))
        );
    }

    #[test]
    fn division_is_left_associative() {
        let f = parse("x1 / x2 * x3").unwrap();
        assert_eq!(
            f.ast(),
            &Expr::binary(BinOp::Mul, Expr::binary(BinOp::Div, var(0), var(1)), var(2))
        );
    }

    #[test]
    fn syntax_error_offset() {
        match parse("x1 + * x2") {
            Err(ParseError::Syntax { offset, .. }) => assert_eq!(offset, 5),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn error_kinds() {
        assert!(matches!(parse(""), Err(ParseError::Syntax { offset: 0, .. })));
        assert!(matches!(parse("   "), Err(ParseError::Syntax { .. })));
        assert!(matches!(
            parse("x4 + 1"),
            Err(ParseError::UnknownIdentifier { ref name, offset: 0 }) if name == "x4"
        ));
        assert!(matches!(
            parse("sin(x1, x2)"),
            Err(ParseError::Arity { found: 2, .. })
        ));
        assert!(matches!(parse("exp()"), Err(ParseError::Arity { found: 0, .. })));
        assert!(matches!(parse("1 + log"), Err(ParseError::Arity { offset: 4, .. })));
        assert!(matches!(parse("(x1 + 2"), Err(ParseError::Syntax { offset: 7, .. })));
        assert!(matches!(parse("x1 x2"), Err(ParseError::Syntax { offset: 3, .. })));
        assert!(matches!(parse("1e999"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse("x1 # 2"), Err(ParseError::Syntax { offset: 3, .. })));
        assert!(matches!(parse("+x1"), Err(ParseError::Syntax { offset: 0, .. })));
    }

    #[test]
    fn constants_and_literals() {
        assert_eq!(parse("pi").unwrap().ast(), &Expr::Pi);
        assert_eq!(parse("e").unwrap().ast(), &Expr::E);
        assert_eq!(parse("2.5e-3").unwrap().ast(), &Expr::Num(2.5e-3));
        assert_eq!(parse(".5").unwrap().ast(), &Expr::Num(0.5));
        assert_eq!(parse("3E2").unwrap().ast(), &Expr::Num(300.0));
    }

    #[test]
    fn deep_nesting_is_rejected_not_overflowed() {
        let deep = format!("{}x1{}", "(".repeat(5000), ")".repeat(5000));
        assert!(matches!(parse(&deep), Err(ParseError::Syntax { .. })));
        let long = vec!["x1"; 5000].join("+");
        assert!(matches!(parse(&long), Err(ParseError::Syntax { .. })));
        let negs = format!("{}x1", "-".repeat(5000));
        assert!(parse(&negs).is_err());
    }

    #[test]
    fn constant_field_printing() {
        assert_eq!(ScalarField::constant(3.0).source(), "3.0");
        let neg = ScalarField::constant(-0.25);
        assert_eq!(neg.eval(&Point::new(0.0, 0.0, 0.0)).unwrap(), -0.25);
    }
}
