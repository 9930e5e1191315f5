use super::frame::{metrics_at, FrameError, MetricFrame};
use super::scenario::Scenario;
use crate::fieldexpr::{Jet2, Point};
use crate::tensor3::{rel_defect, Mat3, SymMat3};
use crate::tolerance::TolClass;

/// `max_i |∂_i lhs − S_i^j ∂_j rhs|`.
pub fn gradient_condition_defect(lhs: &Jet2, rhs: &Jet2, s: &Mat3) -> f64 {
    (0..3)
        .map(|i| {
            let s_grad: f64 = (0..3).map(|j| s.get(i, j) * rhs.grad[j]).sum();
            (lhs.grad[i] - s_grad).abs()
        })
        .fold(0.0, f64::max)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ValidationReport {
    /// Eigenvalue of `g` on `(1,1,1)`: `A + 2B`.
    pub eigen_diagonal: f64,
    /// Doubly degenerate eigenvalue of `g`: `A − B`.
    pub eigen_transverse: f64,
    pub positive_definite: bool,
    pub class_v_defect: f64,
    pub class_v_pass: bool,
    /// Present when both `alpha` and `beta` are.
    pub theorem1_defect: Option<f64>,
    pub theorem1_pass: Option<bool>,
    pub tolerance: f64,
}

impl ValidationReport {
    pub fn pass(&self) -> bool {
        self.positive_definite && self.class_v_pass
    }
}

pub fn validate_frame(frame: &MetricFrame, tolerance: f64) -> ValidationReport {
    let (a, b) = (frame.a.value, frame.b.value);
    let eigen_diagonal = a + 2.0 * b;
    let eigen_transverse = a - b;
    let s = &frame.affinors.s;
    let class_v_defect = gradient_condition_defect(&frame.a, &frame.b, s);
    let theorem1_defect = match (&frame.alpha, &frame.beta) {
        (Some(al), Some(be)) => Some(gradient_condition_defect(al, be, s)),
        _ => None,
    };
    ValidationReport {
        eigen_diagonal,
        eigen_transverse,
        positive_definite: eigen_diagonal > 0.0 && eigen_transverse > 0.0,
        class_v_defect,
        class_v_pass: class_v_defect < tolerance,
        theorem1_defect,
        theorem1_pass: theorem1_defect.map(|d| d < tolerance),
        tolerance,
    }
}

pub fn validate_point(s: &Scenario, p: &Point) -> Result<ValidationReport, FrameError> {
    let frame = metrics_at(s, p)?;
    Ok(validate_frame(&frame, s.tolerances().get(TolClass::Identity)))
}

/// Max-norm defects of the pointwise structure identities.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StructureDefects {
    /// `q³ = E`
    pub q_cubed: f64,
    /// `g(qu, qv) = g(u, v)` on basis pairs
    pub q_isometry: f64,
    /// `Φ_j^s g_is = f_ji`
    pub phi_g: f64,
    /// `Φ_j^s f_is = 2 g_ji + f_ji`
    pub phi_f: f64,
    /// `f_ji g^is = Φ_j^s`
    pub f_ginv: f64,
    /// `g_ji f^is = ½ S_j^s`
    pub g_finv: f64,
    /// `S = Φ − E`
    pub s_phi: f64,
    /// `f_ij = g_ik q_j^k + g_jk q_i^k` against `circulant(2B, A + B)`
    pub f_layout: f64,
    /// Relative mismatch of `det f` against `2 (A − B)² (A + 2B)`.
    pub det_f: f64,
}

impl StructureDefects {
    pub fn entries(&self) -> [(&'static str, f64); 9] {
        [
            ("q_cubed", self.q_cubed),
            ("q_isometry", self.q_isometry),
            ("phi_g", self.phi_g),
            ("phi_f", self.phi_f),
            ("f_ginv", self.f_ginv),
            ("g_finv", self.g_finv),
            ("s_phi", self.s_phi),
            ("f_layout", self.f_layout),
            ("det_f", self.det_f),
        ]
    }

    pub fn max(&self) -> f64 {
        self.entries().iter().map(|e| e.1).fold(0.0, f64::max)
    }
}

fn mat_defect(lhs: &Mat3, rhs: &Mat3) -> f64 {
    rel_defect(lhs.max_abs_diff(rhs), lhs.max_abs(), rhs.max_abs())
}

pub fn structure_identities(frame: &MetricFrame) -> StructureDefects {
    let af = &frame.affinors;
    let g = frame.g.value.to_mat3();
    let g_inv = frame.g.inverse.to_mat3();
    let f = frame.f.value.to_mat3();
    let f_inv = frame.f.inverse.to_mat3();
    let (a, b) = (frame.a.value, frame.b.value);

    let q3 = af.q * af.q * af.q;
    // g(q e_a, q e_b) = q_a^i g_ij q_b^j
    let gqq = af.q * g * af.q.transpose();
    let phi_g = Mat3::from_fn(|j, i| (0..3).map(|s| af.phi.get(j, s) * g.get(i, s)).sum());
    let phi_f = Mat3::from_fn(|j, i| (0..3).map(|s| af.phi.get(j, s) * f.get(i, s)).sum());
    let f_ginv = Mat3::from_fn(|j, s| (0..3).map(|i| f.get(j, i) * g_inv.get(i, s)).sum());
    let g_finv = Mat3::from_fn(|j, s| (0..3).map(|i| g.get(j, i) * f_inv.get(i, s)).sum());
    let f_built = Mat3::from_fn(|i, j| {
        (0..3)
            .map(|k| g.get(i, k) * af.q.get(j, k) + g.get(j, k) * af.q.get(i, k))
            .sum()
    });
    let det_closed = 2.0 * (a - b) * (a - b) * (a + 2.0 * b);

    StructureDefects {
        q_cubed: q3.max_abs_diff(&Mat3::identity()),
        q_isometry: mat_defect(&gqq, &g),
        phi_g: mat_defect(&phi_g, &f),
        phi_f: mat_defect(&phi_f, &(g.scale(2.0) + f)),
        f_ginv: mat_defect(&f_ginv, &af.phi),
        g_finv: mat_defect(&g_finv, &af.s.scale(0.5)),
        s_phi: af.s.max_abs_diff(&(af.phi - Mat3::identity())),
        f_layout: mat_defect(&f_built, &SymMat3::circulant(2.0 * b, a + b).to_mat3()),
        det_f: (frame.det_f() - det_closed).abs() / det_closed.abs().max(f64::MIN_POSITIVE),
    }
}

pub fn structure_identity_suite(s: &Scenario, p: &Point) -> Result<StructureDefects, FrameError> {
    Ok(structure_identities(&metrics_at(s, p)?))
}
