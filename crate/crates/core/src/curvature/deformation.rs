//! The deformation tensor `T = Γ̄ − Γ` of `ḡ = β f` and the two curvature
//! transfer laws built on it.

use crate::classv::MetricFrame;
use crate::tensor3::{Mat3, Rank3, Rank4, SymMat3, Variance};

use super::connection::Connection;
use super::{CurvatureError, PointGeometry};

/// How the covector `β_k` entering the closed-form deformation is read
/// off the scalar field `β`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BetaReading {
    /// `β_k = ∂_k β / (2β)`, the logarithmic derivative of `√β`.
    HalfLog,
    /// `β_k = ∂_k β`. Kept only to show that it does not reproduce `Γ̄ − Γ`.
    Raw,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DeformationData {
    /// `T^s_{ik}`, stored `[s][i][k]`.
    pub t: Rank3,
    pub beta_lower: [f64; 3],
    /// `β^a = g^{ab} β_b`
    pub beta_upper: [f64; 3],
    /// `φ = ½ β^t β_s S_t^s`
    pub phi: f64,
    /// `ψ = ½ S_t^h ∇_h β^t`
    pub psi: f64,
    /// `∇_k β_i = ∂_k β_i − Γ^a_{ki} β_a`
    pub nabla_beta: SymMat3,
    /// `∇_k β^t = g^{ta} ∇_k β_a`, stored `[k][t]`.
    pub nabla_beta_upper: Mat3,
}

fn beta_only(frame: &MetricFrame) -> Result<crate::fieldexpr::Jet2, CurvatureError> {
    match (&frame.alpha, &frame.beta) {
        (None, Some(b)) => {
            if b.value == 0.0 {
                Err(CurvatureError::BetaZero)
            } else {
                Ok(*b)
            }
        }
        _ => Err(CurvatureError::NotBetaDeformation),
    }
}

/// `T = Γ(ḡ) − Γ(g)`.
pub fn deformation_direct(geom: &PointGeometry) -> Result<Rank3, CurvatureError> {
    beta_only(&geom.frame)?;
    let bar = geom.deformed.as_ref().ok_or(CurvatureError::NoDeformedMetric)?;
    Ok(bar.gamma - geom.base.gamma)
}

/// Closed-form `T^s_{ik} = β_k δ^s_i + β_i δ^s_k − ½ β^a S_a^s f_ik` together
/// with the derived scalars `φ`, `ψ` and `∇β`.
pub fn deformation_formula(geom: &PointGeometry, reading: BetaReading) -> Result<DeformationData, CurvatureError> {
    let frame = &geom.frame;
    let beta = beta_only(frame)?;
    let g_inv = &frame.g.inverse;
    let f = &frame.f.value;
    let s = &frame.affinors.s;
    let gm = &geom.base.gamma;

    let (beta_lower, d_beta_lower) = match reading {
        BetaReading::HalfLog => {
            let b = beta.value;
            let lower = beta.grad.map(|g| g / (2.0 * b));
            // ∂_k (∂_i β / 2β) = ∂_k∂_i β / 2β − ∂_i β ∂_k β / 2β²
            let d = SymMat3::from_fn(|k, i| beta.hess(k, i) / (2.0 * b) - beta.grad[i] * beta.grad[k] / (2.0 * b * b));
            (lower, d)
        }
        BetaReading::Raw => (beta.grad, beta.hess),
    };
    let beta_upper = [0, 1, 2].map(|a| (0..3).map(|b| g_inv.get(a, b) * beta_lower[b]).sum::<f64>());

    let nabla_beta = SymMat3::from_fn(|k, i| {
        d_beta_lower.get(k, i) - (0..3).map(|a| gm.get(a, k, i) * beta_lower[a]).sum::<f64>()
    });
    let nabla_beta_upper = Mat3::from_fn(|k, t| (0..3).map(|a| g_inv.get(t, a) * nabla_beta.get(k, a)).sum());

    let mut phi = 0.0;
    let mut psi = 0.0;
    for t in 0..3 {
        for h in 0..3 {
            phi += beta_upper[t] * beta_lower[h] * s.get(t, h);
            psi += s.get(t, h) * nabla_beta_upper.get(h, t);
        }
    }
    phi *= 0.5;
    psi *= 0.5;

    let raised_s: [f64; 3] = [0, 1, 2].map(|sx| (0..3).map(|a| beta_upper[a] * s.get(a, sx)).sum::<f64>());
    let delta = |a: usize, b: usize| if a == b { 1.0 } else { 0.0 };
    let t = Rank3::from_fn(|sx, i, k| {
        beta_lower[k] * delta(sx, i) + beta_lower[i] * delta(sx, k) - 0.5 * raised_s[sx] * f.get(i, k)
    });

    Ok(DeformationData {
        t,
        beta_lower,
        beta_upper,
        phi,
        psi,
        nabla_beta,
        nabla_beta_upper,
    })
}

/// `R̄ = R + ∇_j T^h_{ik} − ∇_k T^h_{ij} + T^s_{ik} T^h_{sj} − T^s_{ij} T^h_{sk}`
/// with `∂T` supplied explicitly (`dt[m] = ∂_m T`).
pub fn transfer_via_deformation(r: &Rank4, base: &Connection, t: &Rank3, dt: &[Rank3; 3]) -> Rank4 {
    let gm = &base.gamma;
    // ∇_j T^h_{ik} = ∂_j T^h_{ik} + Γ^h_{js} T^s_{ik} − Γ^s_{ji} T^h_{sk} − Γ^s_{jk} T^h_{is}
    let nabla_t = |j: usize, h: usize, i: usize, k: usize| -> f64 {
        let mut v = dt[j].get(h, i, k);
        for s in 0..3 {
            v += gm.get(h, j, s) * t.get(s, i, k) - gm.get(s, j, i) * t.get(h, s, k) - gm.get(s, j, k) * t.get(h, i, s);
        }
        v
    };
    Rank4::from_fn(Variance::Mixed, |h, i, j, k| {
        let mut v = r.get(h, i, j, k) + nabla_t(j, h, i, k) - nabla_t(k, h, i, j);
        for s in 0..3 {
            v += t.get(s, i, k) * t.get(h, s, j) - t.get(s, i, j) * t.get(h, s, k);
        }
        v
    })
}

/// `R̄ = R + δ^h_k(∇_jβ_i − β_iβ_j + φ f_ij) − δ^h_j(∇_kβ_i − β_iβ_k + φ f_ik)
///      + ½ f_ij S_t^h(∇_kβ^t − β_kβ^t) − ½ f_ik S_t^h(∇_jβ^t − β_jβ^t)`.
pub fn transfer_via_beta(r: &Rank4, frame: &MetricFrame, data: &DeformationData) -> Rank4 {
    let f = &frame.f.value;
    let s = &frame.affinors.s;
    let b = &data.beta_lower;
    let bu = &data.beta_upper;
    let nb = &data.nabla_beta;
    let nbu = &data.nabla_beta_upper;
    let phi = data.phi;
    let delta = |a: usize, b: usize| if a == b { 1.0 } else { 0.0 };
    // ½ S_t^h (∇_k β^t − β_k β^t), stored [k][h]
    let q = Mat3::from_fn(|k, h| 0.5 * (0..3).map(|t| s.get(t, h) * (nbu.get(k, t) - b[k] * bu[t])).sum::<f64>());
    Rank4::from_fn(Variance::Mixed, |h, i, j, k| {
        r.get(h, i, j, k) + delta(h, k) * (nb.get(j, i) - b[i] * b[j] + phi * f.get(i, j))
            - delta(h, j) * (nb.get(k, i) - b[i] * b[k] + phi * f.get(i, k))
            + f.get(i, j) * q.get(k, h)
            - f.get(i, k) * q.get(j, h)
    })
}

/// Both predictions of the deformed curvature.
#[derive(Clone, Debug, PartialEq)]
pub struct TransferPrediction {
    /// From `R(g)`, `T = Γ̄ − Γ` and `∇T`.
    pub via_deformation: Rank4,
    /// From `R(g)`, `∇β`, `φ`, `f`, `S` and `δ`.
    pub via_beta: Rank4,
    /// `max|via_deformation − via_beta|`
    pub mutual_defect: f64,
}

pub fn transfer_rhs(geom: &PointGeometry) -> Result<TransferPrediction, CurvatureError> {
    let t = deformation_direct(geom)?;
    let bar = geom.deformed.as_ref().ok_or(CurvatureError::NoDeformedMetric)?;
    let dt = [0, 1, 2].map(|m| bar.dgamma[m] - geom.base.dgamma[m]);
    let r = super::riemann(&geom.base);
    let via_deformation = transfer_via_deformation(&r, &geom.base, &t, &dt);
    let data = deformation_formula(geom, BetaReading::HalfLog)?;
    let via_beta = transfer_via_beta(&r, &geom.frame, &data);
    let mutual_defect = via_deformation.max_abs_diff(&via_beta);
    Ok(TransferPrediction {
        via_deformation,
        via_beta,
        mutual_defect,
    })
}
