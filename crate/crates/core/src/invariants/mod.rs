//! Moving frames, Maurer–Cartan pullbacks, signatures, equivalence and
//! recovery of the witnessing group element.
//!
//! Two curves related by `c̄ = g·c` have frames related by
//! `α_c̄ = embed(g)·α_c`, hence equal pullbacks `α⁻¹·dα`. The pullback's
//! nonzero entries are functions of `ω₁ = |X″|`, `ω₂ = |X‴|` (and
//! `ω₃ = |X″ × X‴|`), which form the signature.

mod frame;
mod recovery;
mod relations;
mod signature;

pub use frame::{frame, frame_derivative, frame_inverse, pullback, Frame};
pub use recovery::{
    recover_analytic, recover_sampled, recover_transformation, RecoveryOptions, RecoveryReport,
    SNAP_TOL,
};
pub use relations::{invariant_relations_check, RelationDefect};
pub use signature::{
    equivalent, force_signature, jet_invariants, signature_analytic, signature_sampled,
    EquivalenceReport, JetInvariants, Method, Parameter, Signature, SignatureMeta,
    SignatureOptions, MIN_OVERLAP_STEPS, TOL_ANALYTIC, TOL_FD,
};
