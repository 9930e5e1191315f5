//! Scenarios and the pointwise structure tensors of class-V manifolds:
//! circulant metric `g = circulant(A, B)`, the constant affinors `q`, `q̃`,
//! `S`, `Φ`, the tensor `f = circulant(2B, A + B)` and the deformed metric
//! `ḡ = α g + β f`.

mod families;
mod frame;
mod scenario;
mod validate;

pub use families::{builtin_scenario, Family};
pub use frame::{metrics_at, structure_affinors, Affinors, FrameError, MetricFrame, MetricJet};
pub use scenario::{DomainBox, PointError, Scenario, ScenarioError, ScenarioFile, DEFAULT_GUARD_MARGIN};
pub use validate::{
    gradient_condition_defect, structure_identities, structure_identity_suite, validate_frame, validate_point,
    StructureDefects, ValidationReport,
};
