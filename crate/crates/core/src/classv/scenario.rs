use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fieldexpr::{EvalError, ParseError, Point, ScalarField};
use crate::tolerance::{TolClass, Tolerances};

pub const DEFAULT_GUARD_MARGIN: f64 = 0.05;

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("scenario JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("field `{field}`: {source}")]
    Parse {
        field: String,
        #[source]
        source: ParseError,
    },
    #[error("domain box is empty or non-finite: min {min:?}, max {max:?}")]
    EmptyDomain { min: [f64; 3], max: [f64; 3] },
    #[error("guard margin must be finite, got {0}")]
    BadMargin(f64),
    #[error("tolerance `{name}`: {reason}")]
    BadTolerance { name: String, reason: String },
    #[error("invalid scenario parameters: {0}")]
    InvalidParams(String),
}

/// Why a point is not admissible for a scenario.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum PointError {
    #[error("point {0} lies outside the domain box")]
    OutsideDomain(Point),
    #[error("guard #{index} `{expr}` = {value} does not exceed margin {margin}")]
    Guard {
        index: usize,
        expr: String,
        value: f64,
        margin: f64,
    },
    #[error("ordering A > B > 0 violated: A = {a}, B = {b}")]
    Ordering { a: f64, b: f64 },
    #[error(transparent)]
    Eval(#[from] EvalError),
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DomainBox {
    pub min: [f64; 3],
    pub max: [f64; 3],
}

impl DomainBox {
    pub fn cube(half_width: f64) -> Self {
        DomainBox {
            min: [-half_width; 3],
            max: [half_width; 3],
        }
    }

    pub fn is_valid(&self) -> bool {
        (0..3).all(|i| self.min[i].is_finite() && self.max[i].is_finite() && self.min[i] < self.max[i])
    }

    pub fn contains(&self, p: &Point) -> bool {
        (0..3).all(|i| p.0[i] >= self.min[i] && p.0[i] <= self.max[i])
    }
}

/// On-disk scenario layout; key names are fixed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub name: String,
    #[serde(rename = "A")]
    pub a: String,
    #[serde(rename = "B")]
    pub b: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<String>,
    pub domain: DomainBox,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub guards: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub guard_margin: Option<f64>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub tolerances: BTreeMap<String, f64>,
}

/// One manifold instance: the fields `A`, `B` (and optionally `alpha`,
/// `beta`) on a coordinate box, with guard expressions that must stay above
/// `guard_margin` wherever the scenario is sampled.
#[derive(Clone, Debug, PartialEq)]
pub struct Scenario {
    pub name: String,
    pub a: ScalarField,
    pub b: ScalarField,
    pub alpha: Option<ScalarField>,
    pub beta: Option<ScalarField>,
    pub domain: DomainBox,
    pub guards: Vec<ScalarField>,
    pub guard_margin: f64,
    pub tolerances: BTreeMap<TolClass, f64>,
}

fn parse_field(field: &str, text: &str) -> Result<ScalarField, ScenarioError> {
    ScalarField::parse(text).map_err(|source| ScenarioError::Parse {
        field: field.to_string(),
        source,
    })
}

impl Scenario {
    pub fn from_file(file: &ScenarioFile) -> Result<Self, ScenarioError> {
        if !file.domain.is_valid() {
            return Err(ScenarioError::EmptyDomain {
                min: file.domain.min,
                max: file.domain.max,
            });
        }
        let guard_margin = file.guard_margin.unwrap_or(DEFAULT_GUARD_MARGIN);
        if !guard_margin.is_finite() {
            return Err(ScenarioError::BadMargin(guard_margin));
        }
        let mut tolerances = BTreeMap::new();
        for (name, value) in &file.tolerances {
            let class: TolClass = name.parse().map_err(|reason| ScenarioError::BadTolerance {
                name: name.clone(),
                reason,
            })?;
            if !(*value > 0.0) || !value.is_finite() {
                return Err(ScenarioError::BadTolerance {
                    name: name.clone(),
                    reason: format!("must be positive and finite, got {value}"),
                });
            }
            tolerances.insert(class, *value);
        }
        let guards = file
            .guards
            .iter()
            .enumerate()
            .map(|(i, g)| parse_field(&format!("guards[{i}]"), g))
            .collect::<Result<_, _>>()?;
        Ok(Scenario {
            name: file.name.clone(),
            a: parse_field("A", &file.a)?,
            b: parse_field("B", &file.b)?,
            alpha: file.alpha.as_deref().map(|t| parse_field("alpha", t)).transpose()?,
            beta: file.beta.as_deref().map(|t| parse_field("beta", t)).transpose()?,
            domain: file.domain,
            guards,
            guard_margin,
            tolerances,
        })
    }

    pub fn from_json(text: &str) -> Result<Self, ScenarioError> {
        let file: ScenarioFile = serde_json::from_str(text)?;
        Scenario::from_file(&file)
    }

    pub fn to_file(&self) -> ScenarioFile {
        ScenarioFile {
            name: self.name.clone(),
            a: self.a.source().to_string(),
            b: self.b.source().to_string(),
            alpha: self.alpha.as_ref().map(|f| f.source().to_string()),
            beta: self.beta.as_ref().map(|f| f.source().to_string()),
            domain: self.domain,
            guards: self.guards.iter().map(|g| g.source().to_string()).collect(),
            guard_margin: Some(self.guard_margin),
            tolerances: self
                .tolerances
                .iter()
                .map(|(k, v)| (k.name().to_string(), *v))
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("scenario serializes")
    }

    /// Defaults overlaid with the scenario's own tolerance entries.
    pub fn tolerances(&self) -> Tolerances {
        let mut t = Tolerances::default();
        t.overlay(&self.tolerances);
        t
    }

    /// True when the deformed metric is `beta * f` (no `alpha` term).
    pub fn is_beta_deformation(&self) -> bool {
        self.alpha.is_none() && self.beta.is_some()
    }

    pub fn check_guards(&self, p: &Point) -> Result<(), PointError> {
        for (index, guard) in self.guards.iter().enumerate() {
            let value = guard.eval(p)?;
            if !(value > self.guard_margin) {
                return Err(PointError::Guard {
                    index,
                    expr: guard.source().to_string(),
                    value,
                    margin: self.guard_margin,
                });
            }
        }
        Ok(())
    }

    pub fn check_ordering(&self, p: &Point) -> Result<(), PointError> {
        let a = self.a.eval(p)?;
        let b = self.b.eval(p)?;
        if a > b && b > 0.0 {
            Ok(())
        } else {
            Err(PointError::Ordering { a, b })
        }
    }

    /// Domain membership, guards and `A > B > 0`.
    pub fn check_admissible(&self, p: &Point) -> Result<(), PointError> {
        if !self.domain.contains(p) {
            return Err(PointError::OutsideDomain(*p));
        }
        self.check_guards(p)?;
        self.check_ordering(p)
    }
}
