use crate::classv::MetricFrame;
use crate::tensor3::{Rank4, SymMat3};

use super::theorem::theorem18_curvature;
use super::CurvatureError;

/// `μ(x, y) = R(x, y, x, y) / (g(x, x) g(y, y) − g(x, y)²)`.
pub fn sectional_curvature(r: &Rank4, g: &SymMat3, x: &[f64; 3], y: &[f64; 3]) -> Result<f64, CurvatureError> {
    let gxx = g.form(x, x);
    let gyy = g.form(y, y);
    let gxy = g.form(x, y);
    let denominator = gxx * gyy - gxy * gxy;
    if !(denominator.abs() > 1e-12 * (gxx * gyy).abs()) {
        return Err(CurvatureError::DegeneratePlane { denominator });
    }
    Ok(r.eval(x, y, x, y)? / denominator)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CorollaryReport {
    /// Angle between `x` and `qx`.
    pub angle: f64,
    pub cos_angle: f64,
    /// Sectional curvature of `{x, qx}` by direct contraction.
    pub mu_direct: f64,
    /// `−(τ/6) tan²(angle/2)`
    pub mu_formula: f64,
    /// `det((τ/6)(2g − f))`
    pub ricci_det: f64,
    /// `|ricci_det|` divided by the cube of the largest Ricci entry.
    pub ricci_det_normalized: f64,
}

fn parallel_to_diagonal(x: &[f64; 3]) -> bool {
    let norm = x.iter().map(|c| c * c).sum::<f64>().sqrt();
    let cross = [x[1] - x[2], x[2] - x[0], x[0] - x[1]];
    let cross_norm = cross.iter().map(|c| c * c).sum::<f64>().sqrt();
    norm == 0.0 || cross_norm <= 1e-12 * norm
}

pub fn corollary_suite(frame: &MetricFrame, tau0: f64, x: &[f64; 3]) -> Result<CorollaryReport, CurvatureError> {
    if parallel_to_diagonal(x) {
        return Err(CurvatureError::ParallelToDiagonal(*x));
    }
    let g = &frame.g.value;
    let qx = frame.affinors.q.act(x);
    // g(qx, qx) = g(x, x) because q is a g-isometry
    let cos_angle = (g.form(x, &qx) / g.form(x, x)).clamp(-1.0, 1.0);
    let angle = cos_angle.acos();
    let r = theorem18_curvature(tau0, frame);
    let mu_direct = sectional_curvature(&r, g, x, &qx)?;
    let half_tan = (angle / 2.0).tan();
    let mu_formula = -(tau0 / 6.0) * half_tan * half_tan;
    let ricci = (g.scale(2.0) - frame.f.value).scale(tau0 / 6.0);
    let ricci_det = ricci.det();
    let scale = ricci.max_abs();
    let ricci_det_normalized = if scale > 0.0 {
        ricci_det.abs() / (scale * scale * scale)
    } else {
        0.0
    };
    Ok(CorollaryReport {
        angle,
        cos_angle,
        mu_direct,
        mu_formula,
        ricci_det,
        ricci_det_normalized,
    })
}

/// A vector `x = (1, 1, z)` with `g(x, qx) = 0`:
/// `B z² + 2(A + B) z + (A + 3B) = 0`, larger root.
pub fn q_orthogonal_vector(frame: &MetricFrame) -> [f64; 3] {
    let (a, b) = (frame.a.value, frame.b.value);
    let disc = (a - b) * (a + 2.0 * b);
    let z = (-(a + b) + disc.sqrt()) / b;
    [1.0, 1.0, z]
}
