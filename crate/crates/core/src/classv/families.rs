//! Built-in scenario families. Each is constructed so that the class-V
//! gradient condition holds identically.
//!
//! With `u = x1 + x2 + x3` and `v = x1 − x2`:
//!
//! * `constants`: constant `A > B > 0`.
//! * `u_family`: `B = b(u)`, `A = B + c`. Gradients parallel to `(1,1,1)`
//!   are fixed by `S`.
//! * `general_family`: `B = ε sin v + φ(u)`, `A = φ(u) − 2ε sin v + k`
//!   with `φ(u) = c0 + u²/10`. `S (1,−1,0) = −2 (1,−1,0)` supplies the
//!   factor −2.
//! * `flat_bar`: a `u_family` base with `6B + 2c = (p0 + q0 y)²`,
//!   `y = u/√3`, and `β = Ω⁻²` for the null-linear
//!   `Ω = p0 y + q0 y²/2 + √c (x1 − x2)/√2 + d`, which makes `β f` flat.

use std::collections::BTreeMap;

use super::scenario::{DomainBox, Scenario, ScenarioError, DEFAULT_GUARD_MARGIN};
use crate::fieldexpr::ScalarField;

#[derive(Clone, Debug, PartialEq)]
pub enum Family {
    Constants { a0: f64, b0: f64 },
    UFamily { b: String, c: f64 },
    General { eps: f64, c0: f64, k: f64 },
    FlatBar { p0: f64, q0: f64, c: f64, d: f64 },
}

impl Family {
    pub fn constants() -> Self {
        Family::Constants { a0: 3.0, b0: 1.0 }
    }

    pub fn u_family() -> Self {
        Family::UFamily {
            b: "1 + 0.1*(x1+x2+x3)^2".to_string(),
            c: 1.0,
        }
    }

    pub fn general() -> Self {
        Family::General {
            eps: 0.1,
            c0: 1.0,
            k: 1.0,
        }
    }

    pub fn flat_bar() -> Self {
        Family::FlatBar {
            p0: 3.0,
            q0: 0.5,
            c: 1.0,
            d: 10.0,
        }
    }

    /// Family from a CLI-style name and `key=value` parameters; unspecified
    /// parameters take the defaults above.
    pub fn from_params(name: &str, params: &BTreeMap<String, String>) -> Result<Self, ScenarioError> {
        let mut family = match name {
            "constants" => Family::constants(),
            "u-family" | "u_family" | "u" => Family::u_family(),
            "general" | "general-family" | "general_family" => Family::general(),
            "flat-bar" | "flat_bar" => Family::flat_bar(),
            other => {
                return Err(ScenarioError::InvalidParams(format!(
                    "unknown family `{other}` (expected constants, u-family, general, flat-bar)"
                )))
            }
        };
        for (key, raw) in params {
            let num = || -> Result<f64, ScenarioError> {
                raw.trim()
                    .parse::<f64>()
                    .ok()
                    .filter(|v| v.is_finite())
                    .ok_or_else(|| ScenarioError::InvalidParams(format!("`{key}={raw}` is not a finite number")))
            };
            let slot: &mut f64 = match (&mut family, key.as_str()) {
                (Family::Constants { a0, .. }, "A0") => a0,
                (Family::Constants { b0, .. }, "B0") => b0,
                (Family::UFamily { b, .. }, "b") => {
                    *b = raw.clone();
                    continue;
                }
                (Family::UFamily { c, .. }, "c") => c,
                (Family::General { eps, .. }, "eps") => eps,
                (Family::General { c0, .. }, "c0") => c0,
                (Family::General { k, .. }, "k") => k,
                (Family::FlatBar { p0, .. }, "p0") => p0,
                (Family::FlatBar { q0, .. }, "q0") => q0,
                (Family::FlatBar { c, .. }, "c") => c,
                (Family::FlatBar { d, .. }, "d") => d,
                _ => {
                    return Err(ScenarioError::InvalidParams(format!(
                        "parameter `{key}` does not apply to family `{name}`"
                    )))
                }
            };
            *slot = num()?;
        }
        Ok(family)
    }
}

/// Literal that parses back to `v`, parenthesized when negative.
fn lit(v: f64) -> String {
    if v < 0.0 {
        format!("(-{})", -v)
    } else {
        format!("{v}")
    }
}

fn field(name: &str, text: &str) -> Result<ScalarField, ScenarioError> {
    ScalarField::parse(text).map_err(|source| ScenarioError::Parse {
        field: name.to_string(),
        source,
    })
}

fn invalid(msg: impl Into<String>) -> ScenarioError {
    ScenarioError::InvalidParams(msg.into())
}

pub fn builtin_scenario(family: &Family) -> Result<Scenario, ScenarioError> {
    let base = |name: &str, a: String, b: String| -> Result<Scenario, ScenarioError> {
        Ok(Scenario {
            name: name.to_string(),
            a: field("A", &a)?,
            b: field("B", &b)?,
            alpha: None,
            beta: None,
            domain: DomainBox::cube(1.0),
            guards: Vec::new(),
            guard_margin: DEFAULT_GUARD_MARGIN,
            tolerances: BTreeMap::new(),
        })
    };
    match family {
        Family::Constants { a0, b0 } => {
            if !(a0 > b0 && *b0 > 0.0) {
                return Err(invalid(format!("constants need A0 > B0 > 0, got A0={a0}, B0={b0}")));
            }
            base("constants", lit(*a0), lit(*b0))
        }
        Family::UFamily { b, c } => {
            if !(*c > 0.0) {
                return Err(invalid(format!("u-family needs c > 0, got {c}")));
            }
            field("b", b)?;
            let mut s = base("u_family", format!("({b}) + {}", lit(*c)), b.clone())?;
            s.guards.push(field("guards[0]", b)?);
            Ok(s)
        }
        Family::General { eps, c0, k } => {
            if !(*c0 > 0.0 && *k > 0.0 && *eps >= 0.0) {
                return Err(invalid(format!(
                    "general family needs eps >= 0, c0 > 0, k > 0, got eps={eps}, c0={c0}, k={k}"
                )));
            }
            let phi = format!("({} + 0.1*(x1+x2+x3)^2)", lit(*c0));
            let psi = format!("{}*sin(x1-x2)", lit(*eps));
            let b = format!("{psi} + {phi}");
            let a = format!("{phi} - 2*{psi} + {}", lit(*k));
            let mut s = base("general_family", a.clone(), b.clone())?;
            s.guards.push(field("guards[0]", &b)?);
            s.guards.push(field("guards[1]", &format!("({a}) - ({b})"))?);
            Ok(s)
        }
        Family::FlatBar { p0, q0, c, d } => {
            if !(*c > 0.0) {
                return Err(invalid(format!("flat-bar needs c > 0, got {c}")));
            }
            let y = "(x1+x2+x3)/sqrt(3)";
            let lin = format!("({} + {}*{y})", lit(*p0), lit(*q0));
            let b = format!("({lin}^2 - 2*{})/6", lit(*c));
            let a = format!("{b} + {}", lit(*c));
            let omega = format!(
                "{}*{y} + {}*(x1+x2+x3)^2/6 + sqrt({})*(x1-x2)/sqrt(2) + {}",
                lit(*p0),
                lit(*q0),
                lit(*c),
                lit(*d)
            );
            let mut s = base("flat_bar", a, b)?;
            s.beta = Some(field("beta", &format!("({omega})^(-2)"))?);
            s.guards.push(field("guards[0]", &format!("{lin}^2 - 2*{}", lit(*c)))?);
            s.guards.push(field("guards[1]", &omega)?);
            Ok(s)
        }
    }
}
