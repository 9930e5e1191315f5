//! Levi-Civita connections of `g` and `ḡ`, their curvature, the
//! deformation tensor between them, and the sectional-curvature results.
//!
//! Curvature convention: `R^h_{ijk} = ∂_j Γ^h_{ik} − ∂_k Γ^h_{ij}
//! + Γ^s_{ik} Γ^h_{sj} − Γ^s_{ij} Γ^h_{sk}`, Ricci `R_ij = R^k_{ijk}`.

mod connection;
mod deformation;
mod riemann;
mod sectional;
mod theorem;

use thiserror::Error;

use crate::classv::{metrics_at, FrameError, MetricFrame, Scenario};
use crate::fieldexpr::Point;
use crate::tensor3::TensorError;

pub use connection::{christoffel, metric_compatibility, Connection, MetricKind};
pub use deformation::{
    deformation_direct, deformation_formula, transfer_rhs, transfer_via_beta, transfer_via_deformation, BetaReading,
    DeformationData, TransferPrediction,
};
pub use riemann::{normalized_curvature, ricci_and_scalars, ricci_mat, riemann, CurvatureReport};
pub use sectional::{corollary_suite, q_orthogonal_vector, sectional_curvature, CorollaryReport};
pub use theorem::{
    chain_defects, theorem18_curvature, theorem1_check, theorem2_chain_scenario, theorem2_chain_synthetic, ChainInput,
    ChainLink, ChainReport, Theorem1Report,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CurvatureError {
    #[error(transparent)]
    Frame(#[from] FrameError),
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error("scenario defines no deformed metric")]
    NoDeformedMetric,
    #[error("operation needs a deformed metric of the form beta * f (beta present, alpha absent)")]
    NotBetaDeformation,
    #[error("beta vanishes at the point")]
    BetaZero,
    #[error("premise not satisfied: normalized |Rbar| = {flatness:e} is not below {tolerance:e}")]
    PremiseNotSatisfied { flatness: f64, tolerance: f64 },
    #[error("input curvature is not pair-symmetric (defect {0:e})")]
    NotPairSymmetric(f64),
    #[error("degenerate plane: g(x,x) g(y,y) - g(x,y)^2 = {denominator:e}")]
    DegeneratePlane { denominator: f64 },
    #[error("vector {0:?} is zero or parallel to (1,1,1), so qx is parallel to x")]
    ParallelToDiagonal([f64; 3]),
}

/// Frame plus both connections at one point; the common input of the
/// curvature operations.
#[derive(Clone, Debug)]
pub struct PointGeometry {
    pub frame: MetricFrame,
    pub base: Connection,
    pub deformed: Option<Connection>,
}

impl PointGeometry {
    pub fn from_frame(frame: MetricFrame) -> Self {
        let base = Connection::levi_civita(&frame.g, MetricKind::Base);
        let deformed = frame
            .gbar
            .as_ref()
            .map(|m| Connection::levi_civita(m, MetricKind::Deformed));
        PointGeometry { frame, base, deformed }
    }

    pub fn at(s: &Scenario, p: &Point) -> Result<Self, CurvatureError> {
        Ok(Self::from_frame(metrics_at(s, p)?))
    }
}
