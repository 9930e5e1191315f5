use crate::classv::MetricFrame;
use crate::tensor3::{first_bianchi_residual, lower_riemann, Mat3, Rank4, SymMat3, Variance};

use super::connection::Connection;

/// `R^h_{ijk} = ∂_j Γ^h_{ik} − ∂_k Γ^h_{ij} + Γ^s_{ik} Γ^h_{sj} − Γ^s_{ij} Γ^h_{sk}`.
pub fn riemann(c: &Connection) -> Rank4 {
    let gm = &c.gamma;
    let d = &c.dgamma;
    Rank4::from_fn(Variance::Mixed, |h, i, j, k| {
        let mut v = d[j].get(h, i, k) - d[k].get(h, i, j);
        for s in 0..3 {
            v += gm.get(s, i, k) * gm.get(h, s, j) - gm.get(s, i, j) * gm.get(h, s, k);
        }
        v
    })
}

/// Normalized `max|R|` used for the "locally flat" premise.
pub fn normalized_curvature(r: &Rank4, c: &Connection) -> f64 {
    r.max_abs() / (1.0 + c.curvature_scale())
}

/// Contraction `R_ij = R^k_{ijk}` (unsymmetrized).
pub fn ricci_mat(r: &Rank4) -> Mat3 {
    Mat3::from_fn(|i, j| (0..3).map(|k| r.get(k, i, j, k)).sum())
}

#[derive(Clone, Debug, PartialEq)]
pub struct CurvatureReport {
    pub r_mixed: Rank4,
    pub r_lower: Rank4,
    pub ricci: SymMat3,
    /// `τ = R_ij g^ij`
    pub tau: f64,
    /// `τ* = R_ij f^ij`
    pub tau_star: f64,
    /// `max|R_ij − R_ji|`
    pub ricci_asymmetry: f64,
    /// `max|R^h_{ijk} + R^h_{jki} + R^h_{kij}|`
    pub bianchi_residual: f64,
}

pub fn ricci_and_scalars(r: &Rank4, frame: &MetricFrame) -> CurvatureReport {
    assert_eq!(r.variance, Variance::Mixed, "ricci_and_scalars expects a mixed tensor");
    let rm = ricci_mat(r);
    let ricci = rm.sym_part();
    let r_lower = lower_riemann(r, &frame.g.value).expect("mixed variance checked above");
    CurvatureReport {
        r_mixed: *r,
        r_lower,
        ricci,
        tau: ricci.contract(&frame.g.inverse),
        tau_star: ricci.contract(&frame.f.inverse),
        ricci_asymmetry: rm.max_abs_diff(&rm.transpose()),
        bianchi_residual: first_bianchi_residual(r),
    }
}
