//! Seeded sampling, suite execution and result aggregation.

mod checks;
mod output;
mod report;
mod sampling;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::classv::{PointError, Scenario, ScenarioError};
use crate::curvature::{normalized_curvature, riemann, CurvatureError, PointGeometry};
use crate::fieldexpr::Point;
use crate::tolerance::{TolClass, Tolerances};

pub use output::{to_json, to_text};
pub use report::{parse_params, report, scenario_generate, validate, ValidationSummary};
pub use sampling::{sample_points, ATTEMPTS_PER_SAMPLE};

/// Values of `tau0` used by the synthetic suites when none is given.
pub const DEFAULT_TAUS: [f64; 3] = [-3.0, 1.0, 6.0];

#[derive(Debug, Error)]
pub enum RunError {
    #[error("found only {found} of {requested} admissible points in {attempts} attempts")]
    GuardStarved {
        found: usize,
        requested: usize,
        attempts: usize,
    },
    #[error(transparent)]
    Scenario(#[from] ScenarioError),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("point {point} is not admissible: {source}")]
    Inadmissible {
        point: Point,
        #[source]
        source: PointError,
    },
    #[error("suite `{suite}` is not available for this scenario: {reason}")]
    SuiteUnavailable { suite: Suite, reason: String },
    #[error("evaluation failed at {point}: {source}")]
    Evaluation {
        point: Point,
        #[source]
        source: CurvatureError,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Structure,
    Connection,
    Deformation,
    Transfer,
    Theorem2,
    Corollaries,
    All,
}

impl Suite {
    pub const CONCRETE: [Suite; 6] = [
        Suite::Structure,
        Suite::Connection,
        Suite::Deformation,
        Suite::Transfer,
        Suite::Theorem2,
        Suite::Corollaries,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Structure => "structure",
            Suite::Connection => "connection",
            Suite::Deformation => "deformation",
            Suite::Transfer => "transfer",
            Suite::Theorem2 => "theorem2",
            Suite::Corollaries => "corollaries",
            Suite::All => "all",
        }
    }

    fn needs_beta_deformation(self) -> bool {
        matches!(self, Suite::Deformation | Suite::Transfer)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::CONCRETE
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == s)
            .ok_or_else(|| {
                format!("unknown suite `{s}` (expected structure, connection, deformation, transfer, theorem2, corollaries, all)")
            })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

impl FromStr for OutputFormat {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "text" => Ok(OutputFormat::Text),
            "json" => Ok(OutputFormat::Json),
            other => Err(format!("unknown format `{other}` (expected text or json)")),
        }
    }
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub scenario: Scenario,
    pub suite: Suite,
    pub samples: usize,
    pub seed: u64,
    pub tol_overrides: BTreeMap<TolClass, f64>,
    /// Evaluate at this point only instead of sampling.
    pub point: Option<Point>,
    pub tau0: Option<f64>,
}

impl RunConfig {
    pub fn new(scenario: Scenario, suite: Suite) -> Self {
        RunConfig {
            scenario,
            suite,
            samples: 100,
            seed: 42,
            tol_overrides: BTreeMap::new(),
            point: None,
            tau0: None,
        }
    }

    /// Defaults, then scenario entries, then overrides.
    pub fn tolerances(&self) -> Tolerances {
        let mut t = self.scenario.tolerances();
        t.overlay(&self.tol_overrides);
        t
    }
}

/// Worst defect of one check over all evaluated points.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckRecord {
    pub id: String,
    pub anchor: String,
    pub defect: f64,
    pub tol: f64,
    pub point: Point,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteResult {
    pub scenario: String,
    pub suite: String,
    pub seed: u64,
    pub samples: usize,
    pub checks: Vec<CheckRecord>,
    pub pass: bool,
    pub passed: usize,
    pub failed: usize,
    pub notes: Vec<String>,
    pub wall_time_s: f64,
}

impl SuiteResult {
    pub fn check(&self, id: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.id == id)
    }

    /// 0 when every check passed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.pass {
            0
        } else {
            1
        }
    }
}

fn worse(candidate: f64, current: f64) -> bool {
    candidate.is_nan() && !current.is_nan() || candidate > current
}

pub fn run(config: &RunConfig) -> Result<SuiteResult, RunError> {
    let start = Instant::now();
    let s = &config.scenario;
    if config.samples == 0 {
        return Err(RunError::Config("samples must be at least 1".into()));
    }
    let tolerances = config.tolerances();
    let mut notes = Vec::new();

    let suites: Vec<Suite> = if config.suite == Suite::All {
        Suite::CONCRETE
            .into_iter()
            .filter(|x| {
                let ok = !x.needs_beta_deformation() || s.is_beta_deformation();
                if !ok {
                    notes.push(format!("{x}: skipped, the scenario has no deformed metric of the form beta * f"));
                }
                ok
            })
            .collect()
    } else {
        if config.suite.needs_beta_deformation() && !s.is_beta_deformation() {
            return Err(RunError::SuiteUnavailable {
                suite: config.suite,
                reason: "needs `beta` without `alpha`".into(),
            });
        }
        vec![config.suite]
    };

    let points = match &config.point {
        Some(p) => {
            s.check_admissible(p).map_err(|source| RunError::Inadmissible { point: *p, source })?;
            vec![*p]
        }
        None => sample_points(s, config.samples, config.seed)?,
    };

    let mut scenario_chain = false;
    if suites.contains(&Suite::Theorem2) {
        if s.is_beta_deformation() {
            let geom = PointGeometry::at(s, &points[0]).map_err(|source| RunError::Evaluation {
                point: points[0],
                source,
            })?;
            let bar = geom.deformed.as_ref().expect("beta deformation has a deformed connection");
            let flatness = normalized_curvature(&riemann(bar), bar);
            scenario_chain = flatness < tolerances.get(TolClass::Flatness);
            if !scenario_chain {
                notes.push(format!(
                    "theorem2: scenario chain skipped, beta * f is not flat at {} (normalized |Rbar| = {flatness:e})",
                    points[0]
                ));
            }
        } else {
            notes.push("theorem2: scenario chain skipped, the scenario has no deformed metric of the form beta * f".into());
        }
    }

    let taus: Vec<f64> = config.tau0.map_or(DEFAULT_TAUS.to_vec(), |t| vec![t]);
    let per_point: Vec<Result<Vec<checks::Measurement>, RunError>> = points
        .par_iter()
        .enumerate()
        .map(|(index, p)| {
            let ctx = checks::PointContext {
                scenario: s,
                tolerances: &tolerances,
                taus: &taus,
                seed: config.seed,
                index,
                scenario_chain,
            };
            checks::measure(&ctx, &suites, p).map_err(|source| RunError::Evaluation { point: *p, source })
        })
        .collect();

    let mut records: Vec<CheckRecord> = Vec::new();
    let mut slots: BTreeMap<String, usize> = BTreeMap::new();
    for (p, result) in points.iter().zip(per_point) {
        for m in result? {
            let tol = tolerances.get(m.class);
            match slots.get(&m.id) {
                Some(&i) => {
                    if worse(m.defect, records[i].defect) {
                        records[i].defect = m.defect;
                        records[i].point = *p;
                    }
                }
                None => {
                    slots.insert(m.id.clone(), records.len());
                    records.push(CheckRecord {
                        id: m.id,
                        anchor: m.anchor.to_string(),
                        defect: m.defect,
                        tol,
                        point: *p,
                        pass: false,
                    });
                }
            }
        }
    }
    for r in &mut records {
        r.pass = r.defect < r.tol;
    }
    let passed = records.iter().filter(|r| r.pass).count();
    let failed = records.len() - passed;
    Ok(SuiteResult {
        scenario: s.name.clone(),
        suite: config.suite.name().to_string(),
        seed: config.seed,
        samples: points.len(),
        pass: failed == 0,
        checks: records,
        passed,
        failed,
        notes,
        wall_time_s: start.elapsed().as_secs_f64(),
    })
}
