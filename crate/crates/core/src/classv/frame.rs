use thiserror::Error;

use super::scenario::{PointError, Scenario};
use crate::fieldexpr::{Jet2, Point};
use crate::tensor3::{Mat3, SymMat3, TensorError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FrameError {
    #[error(transparent)]
    Point(#[from] PointError),
    #[error("metric {which} is singular: {source}")]
    Singular {
        which: &'static str,
        #[source]
        source: TensorError,
    },
}

/// The constant affinors `q`, `q̃ = q²`, `S` and `Φ = q + q̃`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Affinors {
    pub q: Mat3,
    pub q_tilde: Mat3,
    pub s: Mat3,
    pub phi: Mat3,
}

pub fn structure_affinors() -> Affinors {
    Affinors {
        q: Mat3([[0.0, 1.0, 0.0], [0.0, 0.0, 1.0], [1.0, 0.0, 0.0]]),
        q_tilde: Mat3([[0.0, 0.0, 1.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]]),
        s: Mat3([[-1.0, 1.0, 1.0], [1.0, -1.0, 1.0], [1.0, 1.0, -1.0]]),
        phi: Mat3([[0.0, 1.0, 1.0], [1.0, 0.0, 1.0], [1.0, 1.0, 0.0]]),
    }
}

/// A circulant metric together with its inverse and its first and second
/// coordinate derivatives at one point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MetricJet {
    pub value: SymMat3,
    pub inverse: SymMat3,
    /// `d[k]` holds `∂_k m_ij`.
    pub d: [SymMat3; 3],
    /// `d2[k][l]` holds `∂_k ∂_l m_ij`.
    pub d2: [[SymMat3; 3]; 3],
}

impl MetricJet {
    /// Circulant metric whose diagonal and off-diagonal entries are the
    /// given jets.
    pub fn circulant(diag: &Jet2, off: &Jet2) -> Result<Self, TensorError> {
        let value = SymMat3::circulant(diag.value, off.value);
        let inverse = value.invert()?;
        let d = [0, 1, 2].map(|k| SymMat3::circulant(diag.grad[k], off.grad[k]));
        let d2 = [0, 1, 2].map(|k| [0, 1, 2].map(|l| SymMat3::circulant(diag.hess(k, l), off.hess(k, l))));
        Ok(Self {
            value,
            inverse,
            d,
            d2,
        })
    }

    /// `∂_k m^{ij} = −m^{ia} (∂_k m_ab) m^{bj}`.
    pub fn d_inverse(&self, k: usize) -> SymMat3 {
        let inv = &self.inverse;
        let dm = &self.d[k];
        SymMat3::from_fn(|i, j| {
            let mut s = 0.0;
            for a in 0..3 {
                for b in 0..3 {
                    s -= inv.get(i, a) * dm.get(a, b) * inv.get(b, j);
                }
            }
            s
        })
    }
}

/// Every pointwise structure tensor of a scenario.
#[derive(Clone, Debug, PartialEq)]
pub struct MetricFrame {
    pub point: Point,
    pub a: Jet2,
    pub b: Jet2,
    pub alpha: Option<Jet2>,
    pub beta: Option<Jet2>,
    pub g: MetricJet,
    pub f: MetricJet,
    /// `ḡ = α g + β f`; absent when the scenario has neither field.
    pub gbar: Option<MetricJet>,
    pub affinors: Affinors,
}

impl MetricFrame {
    /// Frame for explicit values of `A` and `B` with no spatial variation.
    pub fn constant(a: f64, b: f64) -> Result<Self, FrameError> {
        Self::from_jets(
            Point::new(0.0, 0.0, 0.0),
            Jet2::constant(a),
            Jet2::constant(b),
            None,
            None,
        )
    }

    pub fn from_jets(
        point: Point,
        a: Jet2,
        b: Jet2,
        alpha: Option<Jet2>,
        beta: Option<Jet2>,
    ) -> Result<Self, FrameError> {
        if !(a.value > b.value && b.value > 0.0) {
            return Err(PointError::Ordering {
                a: a.value,
                b: b.value,
            }
            .into());
        }
        let g = MetricJet::circulant(&a, &b).map_err(|source| FrameError::Singular { which: "g", source })?;
        let f = MetricJet::circulant(&(b * 2.0), &(a + b)).map_err(|source| FrameError::Singular { which: "f", source })?;
        let gbar = if alpha.is_some() || beta.is_some() {
            let al = alpha.unwrap_or(Jet2::constant(0.0));
            let be = beta.unwrap_or(Jet2::constant(0.0));
            let diag = al * a + be * b * 2.0;
            let off = be * a + (al + be) * b;
            Some(MetricJet::circulant(&diag, &off).map_err(|source| FrameError::Singular { which: "gbar", source })?)
        } else {
            None
        };
        Ok(Self {
            point,
            a,
            b,
            alpha,
            beta,
            g,
            f,
            gbar,
            affinors: structure_affinors(),
        })
    }

    /// `det f` from the cofactor expansion.
    pub fn det_f(&self) -> f64 {
        self.f.value.det()
    }
}

/// Builds the frame of `s` at `p`; the point must be admissible.
pub fn metrics_at(s: &Scenario, p: &Point) -> Result<MetricFrame, FrameError> {
    s.check_admissible(p)?;
    let jet = |f: &crate::fieldexpr::ScalarField| f.eval_jet2(p).map_err(PointError::from);
    let a = jet(&s.a)?;
    let b = jet(&s.b)?;
    let alpha = s.alpha.as_ref().map(jet).transpose()?;
    let beta = s.beta.as_ref().map(jet).transpose()?;
    MetricFrame::from_jets(*p, a, b, alpha, beta)
}
