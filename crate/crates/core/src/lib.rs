//! Verification engine for 3-dimensional Riemannian manifolds whose metric
//! and affinor structures have circulant coordinate matrices.
//!
//! Scalar fields are parsed from a small expression language
//! ([`fieldexpr`]), differentiated to second order by forward-mode jets, and
//! assembled into metrics, Levi-Civita connections and curvature tensors
//! ([`classv`], [`curvature`]). The [`verify`] module samples scenarios and
//! runs the identity suites.

// Index loops mirror tensor notation; NaN-aware comparisons are deliberate.
#![allow(clippy::needless_range_loop, clippy::neg_cmp_op_on_partial_ord, clippy::suspicious_arithmetic_impl)]

pub mod fieldexpr;
pub mod tensor3;
pub mod classv;
pub mod tolerance;
pub mod curvature;
pub mod verify;
