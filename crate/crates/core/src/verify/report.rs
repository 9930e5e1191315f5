use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::classv::{builtin_scenario, metrics_at, validate_frame, Family, Scenario, ScenarioError};
use crate::curvature::{corollary_suite, ricci_and_scalars, riemann, Connection, PointGeometry};
use crate::fieldexpr::Point;
use crate::tensor3::{Mat3, Rank3, Rank4, SymMat3};
use crate::tolerance::TolClass;

use super::{sample_points, RunError};

/// Splits `k=v,k2=v2` into a map. Empty input gives an empty map.
pub fn parse_params(text: &str) -> Result<BTreeMap<String, String>, ScenarioError> {
    let mut out = BTreeMap::new();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| ScenarioError::InvalidParams(format!("`{item}` is not of the form key=value")))?;
        let (k, v) = (k.trim(), v.trim());
        if k.is_empty() || v.is_empty() {
            return Err(ScenarioError::InvalidParams(format!("`{item}` has an empty key or value")));
        }
        if out.insert(k.to_string(), v.to_string()).is_some() {
            return Err(ScenarioError::InvalidParams(format!("parameter `{k}` given twice")));
        }
    }
    Ok(out)
}

/// JSON text of a built-in family scenario.
pub fn scenario_generate(family: &str, params: &BTreeMap<String, String>) -> Result<String, ScenarioError> {
    Ok(builtin_scenario(&Family::from_params(family, params)?)?.to_json())
}

#[derive(Clone, Debug, PartialEq)]
pub struct ValidationSummary {
    pub points: usize,
    pub min_eigenvalue: f64,
    pub class_v_defect: f64,
    /// Worst `|∇α − S ∇β|` when both fields are present.
    pub theorem1_defect: Option<f64>,
    pub tolerance: f64,
}

impl ValidationSummary {
    pub fn pass(&self) -> bool {
        self.min_eigenvalue > 0.0 && self.class_v_defect < self.tolerance
    }
}

/// Class-V gate and positivity over `samples` seeded points.
pub fn validate(s: &Scenario, samples: usize, seed: u64) -> Result<ValidationSummary, RunError> {
    let tolerance = s.tolerances().get(TolClass::Identity);
    let mut summary = ValidationSummary {
        points: 0,
        min_eigenvalue: f64::INFINITY,
        class_v_defect: 0.0,
        theorem1_defect: None,
        tolerance,
    };
    for p in sample_points(s, samples, seed)? {
        let frame = metrics_at(s, &p).expect("sampled points are admissible");
        let r = validate_frame(&frame, tolerance);
        summary.points += 1;
        summary.min_eigenvalue = summary.min_eigenvalue.min(r.eigen_diagonal.min(r.eigen_transverse));
        summary.class_v_defect = summary.class_v_defect.max(r.class_v_defect);
        if let Some(d) = r.theorem1_defect {
            summary.theorem1_defect = Some(summary.theorem1_defect.unwrap_or(0.0).max(d));
        }
    }
    Ok(summary)
}

fn sym(out: &mut String, name: &str, m: &SymMat3) {
    mat(out, name, &m.to_mat3());
}

fn mat(out: &mut String, name: &str, m: &Mat3) {
    let _ = writeln!(out, "{name}:");
    for row in &m.0 {
        let _ = writeln!(out, "  [{:>13.6e} {:>13.6e} {:>13.6e}]", row[0], row[1], row[2]);
    }
}

fn rank3(out: &mut String, name: &str, t: &Rank3) {
    let _ = writeln!(out, "{name} (nonzero, |.| > 1e-15):");
    let mut any = false;
    for (s, k, i) in triples() {
        let v = t.get(s, k, i);
        if v.abs() > 1e-15 {
            any = true;
            let _ = writeln!(out, "  [{}][{}{}] = {v:.6e}", s + 1, k + 1, i + 1);
        }
    }
    if !any {
        let _ = writeln!(out, "  all zero");
    }
}

fn rank4(out: &mut String, name: &str, r: &Rank4) {
    let _ = writeln!(out, "{name}: max|.| = {:.6e}", r.max_abs());
    for h in 0..3 {
        for (i, j, k) in triples() {
            let v = r.get(h, i, j, k);
            if v.abs() > 1e-15 && j < k {
                let _ = writeln!(out, "  [{}][{}{}{}] = {v:.6e}", h + 1, i + 1, j + 1, k + 1);
            }
        }
    }
}

fn triples() -> impl Iterator<Item = (usize, usize, usize)> {
    (0..27).map(|n| (n / 9, n / 3 % 3, n % 3))
}

fn connection(out: &mut String, label: &str, c: &Connection) {
    rank3(out, &format!("Gamma{label}^s_ki"), &c.gamma);
}

/// Human-readable pointwise report.
pub fn report(s: &Scenario, p: &Point, tau: Option<f64>) -> Result<String, RunError> {
    s.check_admissible(p)
        .map_err(|source| RunError::Inadmissible { point: *p, source })?;
    let geom = PointGeometry::at(s, p).map_err(|source| RunError::Evaluation { point: *p, source })?;
    let frame = &geom.frame;
    let mut out = String::new();
    let _ = writeln!(out, "scenario {} at {p}", s.name);
    let _ = writeln!(out, "A = {:.12e}  B = {:.12e}", frame.a.value, frame.b.value);
    if let Some(al) = &frame.alpha {
        let _ = writeln!(out, "alpha = {:.12e}", al.value);
    }
    if let Some(be) = &frame.beta {
        let _ = writeln!(out, "beta = {:.12e}", be.value);
    }
    sym(&mut out, "g", &frame.g.value);
    sym(&mut out, "f", &frame.f.value);
    if let Some(gbar) = &frame.gbar {
        sym(&mut out, "gbar", &gbar.value);
    }
    connection(&mut out, "", &geom.base);
    let r = riemann(&geom.base);
    let curv = ricci_and_scalars(&r, frame);
    if let Some(bar) = &geom.deformed {
        connection(&mut out, "bar", bar);
    }
    rank4(&mut out, "R^h_ijk", &r);
    sym(&mut out, "Ricci", &curv.ricci);
    let _ = writeln!(out, "tau = {:.12e}  tau* = {:.12e}", curv.tau, curv.tau_star);
    if let Some(bar) = &geom.deformed {
        let _ = writeln!(out, "max|Rbar| = {:.6e}", riemann(bar).max_abs());
    }
    if let Some(t) = tau {
        let c = corollary_suite(frame, t, &[1.0, 0.0, 0.0])
            .map_err(|source| RunError::Evaluation { point: *p, source })?;
        let _ = writeln!(
            out,
            "closed-form curvature with tau = {t}: mu(e1, q e1) = {:.12e}, -(tau/6) tan^2(phi/2) = {:.12e}, cos phi = {:.12e}",
            c.mu_direct, c.mu_formula, c.cos_angle
        );
    }
    Ok(out)
}
