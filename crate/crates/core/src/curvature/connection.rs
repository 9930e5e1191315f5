use crate::classv::{MetricFrame, MetricJet};
use crate::tensor3::{Mat3, Rank3, SymMat3};

use super::CurvatureError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MetricKind {
    /// The circulant metric `g`.
    Base,
    /// The deformed metric `ḡ = α g + β f`.
    Deformed,
}

/// Levi-Civita connection at a point: `gamma[s][k][i] = Γ^s_{ki}` and
/// `dgamma[m][s][k][i] = ∂_m Γ^s_{ki}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Connection {
    pub gamma: Rank3,
    pub dgamma: [Rank3; 3],
    pub metric: MetricKind,
}

impl Connection {
    /// `Γ^s_{ki} = ½ g^{sa}(∂_k g_ia + ∂_i g_ka − ∂_a g_ki)`; the derivative
    /// uses `∂g⁻¹ = −g⁻¹ (∂g) g⁻¹` and the second derivatives of `g`.
    pub fn levi_civita(m: &MetricJet, metric: MetricKind) -> Self {
        let first = Rank3::from_fn(|a, k, i| 0.5 * (m.d[k].get(i, a) + m.d[i].get(k, a) - m.d[a].get(k, i)));
        let gamma = Rank3::from_fn(|s, k, i| (0..3).map(|a| m.inverse.get(s, a) * first.get(a, k, i)).sum());
        let dgamma = [0, 1, 2].map(|l| {
            let d_inv = m.d_inverse(l);
            let d2 = &m.d2[l];
            Rank3::from_fn(|s, k, i| {
                (0..3)
                    .map(|a| {
                        let d_first = 0.5 * (d2[k].get(i, a) + d2[i].get(k, a) - d2[a].get(k, i));
                        d_inv.get(s, a) * first.get(a, k, i) + m.inverse.get(s, a) * d_first
                    })
                    .sum()
            })
        });
        Connection {
            gamma,
            dgamma,
            metric,
        }
    }

    /// Size of the terms that cancel inside the curvature:
    /// `max|∂Γ| + max|Γ|²`.
    pub fn curvature_scale(&self) -> f64 {
        let dmax = self.dgamma.iter().map(Rank3::max_abs).fold(0.0, f64::max);
        let gmax = self.gamma.max_abs();
        dmax + gmax * gmax
    }

    /// `∇_k m_ij = ∂_k m_ij − Γ^a_{ki} m_aj − Γ^a_{kj} m_ai`, stored `[k][i][j]`.
    pub fn covariant_derivative_form(&self, m: &SymMat3, dm: &[SymMat3; 3]) -> Rank3 {
        let gm = &self.gamma;
        Rank3::from_fn(|k, i, j| {
            let mut v = dm[k].get(i, j);
            for a in 0..3 {
                v -= gm.get(a, k, i) * m.get(a, j) + gm.get(a, k, j) * m.get(a, i);
            }
            v
        })
    }

    /// `∇_i M_j^k = Γ^k_{ia} M_j^a − Γ^a_{ij} M_a^k` for a constant affinor,
    /// stored `[i][j][k]`.
    pub fn covariant_derivative_affinor(&self, m: &Mat3) -> Rank3 {
        let gm = &self.gamma;
        Rank3::from_fn(|i, j, k| {
            (0..3)
                .map(|a| gm.get(k, i, a) * m.get(j, a) - gm.get(a, i, j) * m.get(a, k))
                .sum()
        })
    }
}

/// Connection of the selected metric of a frame.
pub fn christoffel(frame: &MetricFrame, metric: MetricKind) -> Result<Connection, CurvatureError> {
    let m = match metric {
        MetricKind::Base => &frame.g,
        MetricKind::Deformed => frame.gbar.as_ref().ok_or(CurvatureError::NoDeformedMetric)?,
    };
    Ok(Connection::levi_civita(m, metric))
}

/// Largest `|∇ metric|` of a connection against its own metric.
pub fn metric_compatibility(conn: &Connection, m: &MetricJet) -> f64 {
    conn.covariant_derivative_form(&m.value, &m.d).max_abs()
}
