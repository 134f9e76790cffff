//! Special Galilean differential invariants of space-time curves.
//!
//! A space-time curve is a worldline `t ↦ (t, X(t))` in ℝ × ℝ³. The special
//! Galilean group SGal(4) acts on it by rotations, boosts, spatial
//! translations and time shifts. This crate attaches a group-valued moving
//! frame to each curve point, reads the differential invariants off its
//! Maurer–Cartan pullback, decides whether two curves are related by a group
//! element (and recovers that element), and rebuilds constant-invariant
//! curves by integrating the frame equation on the group.
//!
//! Modules:
//!
//! - [`galgroup`]: the group as 5×5 matrices, its action on events, and
//!   numerical left-logarithmic derivatives of group-valued paths.
//! - [`curvejet`]: analytic and sampled curves, finite-difference jets, arc
//!   length.
//! - [`invariants`]: frames, pullbacks, signatures, equivalence and recovery.
//! - [`reconstruct`]: integration of `dα/ds = α·b` for constant invariants.
//! - [`json`]: the fixed-precision JSON writer shared by every report.

// `!(x > y)` comparisons are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod curvejet;
mod error;
pub mod galgroup;
pub mod invariants;
pub mod json;
pub mod reconstruct;

pub use curvejet::{AnalyticCurve, CurveJet, CurveSamples, TOL_DEGEN};
pub use error::{Error, Result};
pub use galgroup::{AlgebraElement, Event, GalileanElement};
pub use invariants::{
    EquivalenceReport, Frame, RecoveryReport, Signature, SignatureMeta, SignatureOptions,
};
pub use reconstruct::{ConstantInvariants, ReconstructionResult};

/// Spatial 3-vector.
pub type Vec3 = nalgebra::Vector3<f64>;
/// 3×3 matrix (rotation block).
pub type Mat3 = nalgebra::Matrix3<f64>;
/// 5×5 matrix in the homogeneous space-time embedding.
pub type Mat5 = nalgebra::SMatrix<f64, 5, 5>;
/// Homogeneous space-time column `(t, x1, x2, x3, 1)`.
pub type Vec5 = nalgebra::SVector<f64, 5>;
