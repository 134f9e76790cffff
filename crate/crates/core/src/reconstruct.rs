//! Reconstruction of constant-invariant curves by integrating the frame
//! equation `dα/ds = α·b` on the group.
//!
//! For an arc-length curve with constant `ω₁ = |X″|` and `ω₂ = |X‴|`, the
//! frame satisfies `e₁′ = −(ω₂/ω₁) e₃`, `e₂′ = 0`, `e₃′ = (ω₂/ω₁) e₁`,
//! `X″ = ω₁ e₁` and `dt/ds = 1`, which fixes the constant generator `b`.
//! The curve is a helix with curvature `κ = ω₁` and torsion
//! `τ = sqrt((ω₂/ω₁)² − ω₁²)`.

use serde::Serialize;

use crate::curvejet::CurveSamples;
use crate::galgroup::{orthogonality_defect, snap_to_group, AlgebraElement};
use crate::invariants::{
    equivalent, signature_sampled, EquivalenceReport, Method, Signature, SignatureMeta,
    SignatureOptions,
};
use crate::{Error, Mat3, Mat5, Result, Vec3};

/// Middle-block defect above which the unit columns are re-orthonormalized.
pub const REORTHONORMALIZE_AT: f64 = 1e-6;

/// Middle-block defect that aborts the integration.
pub const MAX_ORTH_DEFECT: f64 = 1e-3;

/// Largest accepted integration step.
pub const MAX_STEP: f64 = 1e-2;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConstantInvariants {
    w1: f64,
    w2: f64,
}

impl ConstantInvariants {
    /// Requires `w1 > 0` and `w2 > w1²` (positive torsion).
    pub fn new(w1: f64, w2: f64) -> Result<Self> {
        if !(w1 > 0.0) || !(w2 > w1 * w1) || !w1.is_finite() || !w2.is_finite() {
            return Err(Error::InvalidInvariants { w1, w2 });
        }
        Ok(ConstantInvariants { w1, w2 })
    }

    pub fn w1(&self) -> f64 {
        self.w1
    }

    pub fn w2(&self) -> f64 {
        self.w2
    }

    pub fn kappa(&self) -> f64 {
        self.w1
    }

    /// Angular rate `ω₂/ω₁ = sqrt(κ² + τ²)` of `e₁` and `e₃`.
    pub fn rotation_rate(&self) -> f64 {
        self.w2 / self.w1
    }

    pub fn tau(&self) -> f64 {
        let r = self.rotation_rate();
        (r * r - self.w1 * self.w1).sqrt()
    }

    /// `|X″ × X‴| = ω₁ω₂`, since `X″ ⊥ X‴` when `|X″|` is constant.
    pub fn w3(&self) -> f64 {
        self.w1 * self.w2
    }
}

/// The constant pullback `b`: `(1,5) = 1`, `(2,1) = ω₁`,
/// `(2,4) = ω₂/ω₁`, `(4,2) = −ω₂/ω₁`, zero elsewhere.
pub fn algebra_matrix(inv: &ConstantInvariants) -> AlgebraElement {
    let rate = inv.rotation_rate();
    let mut b = Mat5::zeros();
    b[(0, 4)] = 1.0;
    b[(1, 0)] = inv.w1;
    b[(1, 3)] = rate;
    b[(3, 1)] = -rate;
    AlgebraElement::from_matrix_unchecked(b)
}

/// Initial frame with `e₁, e₂, e₃` the coordinate axes, `X = 0`, `t = 0` and
/// the unit tangent `X′ = (τ e₂ + κ e₃) / sqrt(κ² + τ²)` that makes the
/// reconstructed curve arc-length parameterized.
pub fn identity_compatible_frame(inv: &ConstantInvariants) -> Mat5 {
    let tangent = Vec3::new(0.0, inv.tau(), inv.kappa()) / inv.rotation_rate();
    let mut m = Mat5::identity();
    m.fixed_view_mut::<3, 1>(1, 0).copy_from(&tangent);
    m
}

#[derive(Debug, Clone)]
pub struct ReconstructionResult {
    /// Arc-length parameterized curve read from column 5 of each frame.
    pub samples: CurveSamples,
    pub frames: Vec<Mat5>,
    pub max_orth_defect: f64,
    pub reorthonormalizations: usize,
}

/// Sidecar record written next to a reconstructed curve.
#[derive(Debug, Clone, Serialize)]
pub struct ReconstructionSummary {
    pub w1: f64,
    pub w2: f64,
    pub kappa: f64,
    pub tau: f64,
    pub h: f64,
    pub reorthonormalizations: usize,
    pub max_orth_defect: f64,
}

impl ReconstructionSummary {
    pub fn new(inv: &ConstantInvariants, h: f64, result: &ReconstructionResult) -> Self {
        ReconstructionSummary {
            w1: inv.w1,
            w2: inv.w2,
            kappa: inv.kappa(),
            tau: inv.tau(),
            h,
            reorthonormalizations: result.reorthonormalizations,
            max_orth_defect: result.max_orth_defect,
        }
    }
}

/// Integrates `dα/ds = α·b` over `[0, length]` from `alpha0` with the
/// classical fourth-order Runge–Kutta scheme at step `h`.
pub fn integrate_frame(
    inv: &ConstantInvariants,
    alpha0: &Mat5,
    length: f64,
    h: f64,
) -> Result<ReconstructionResult> {
    let b = *algebra_matrix(inv).matrix();
    integrate_with_generator(|_| b, alpha0, length, h)
}

fn middle_defect(alpha: &Mat5) -> f64 {
    orthogonality_defect(&alpha.fixed_view::<3, 3>(1, 1).into_owned())
}

/// Runge–Kutta integration of `dα/ds = α·b(s)`. After each step the middle
/// block is checked: a defect above [`REORTHONORMALIZE_AT`] is repaired by
/// polar decomposition, one above [`MAX_ORTH_DEFECT`] is an error.
pub(crate) fn integrate_with_generator<B>(
    generator: B,
    alpha0: &Mat5,
    length: f64,
    h: f64,
) -> Result<ReconstructionResult>
where
    B: Fn(f64) -> Mat5,
{
    if !(h > 0.0 && h <= MAX_STEP) {
        return Err(Error::InvalidArgument(format!(
            "step must be in (0, {MAX_STEP}], got {h}"
        )));
    }
    if !(length > 0.0) || !length.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "length must be positive, got {length}"
        )));
    }
    let defect0 = middle_defect(alpha0);
    if defect0 > REORTHONORMALIZE_AT {
        return Err(Error::InvalidArgument(format!(
            "initial frame columns are not orthonormal (defect {defect0:.3e})"
        )));
    }
    let steps = (length / h).round().max(1.0) as usize;
    let mut alpha = *alpha0;
    let mut frames = Vec::with_capacity(steps + 1);
    frames.push(alpha);
    let mut max_orth_defect = defect0;
    let mut reorthonormalizations = 0;

    for n in 0..steps {
        let s = n as f64 * h;
        let k1 = alpha * generator(s);
        let k2 = (alpha + k1 * (h / 2.0)) * generator(s + h / 2.0);
        let k3 = (alpha + k2 * (h / 2.0)) * generator(s + h / 2.0);
        let k4 = (alpha + k3 * h) * generator(s + h);
        alpha += (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0);

        let defect = middle_defect(&alpha);
        max_orth_defect = max_orth_defect.max(defect);
        if defect > MAX_ORTH_DEFECT {
            return Err(Error::StepTooLarge { defect, s: s + h });
        }
        if defect > REORTHONORMALIZE_AT {
            let block: Mat3 = alpha.fixed_view::<3, 3>(1, 1).into_owned();
            alpha
                .fixed_view_mut::<3, 3>(1, 1)
                .copy_from(&snap_to_group(&block)?);
            reorthonormalizations += 1;
        }
        frames.push(alpha);
    }

    let xs = frames
        .iter()
        .map(|f| f.fixed_view::<3, 1>(1, 4).into_owned())
        .collect();
    Ok(ReconstructionResult {
        samples: CurveSamples::new(alpha0[(0, 4)], h, xs)?,
        frames,
        max_orth_defect,
        reorthonormalizations,
    })
}

/// Constant signature on the grid of `like`.
pub fn constant_signature(inv: &ConstantInvariants, like: &Signature) -> Signature {
    let n = like.len();
    Signature {
        s: like.s.clone(),
        w1: vec![inv.w1; n],
        w2: vec![inv.w2; n],
        w3: vec![inv.w3(); n],
        meta: SignatureMeta {
            source: format!("constant(w1={}, w2={})", inv.w1, inv.w2),
            dt: like.meta.dt,
            method: Method::Analytic,
        },
    }
}

/// Default arc length covered by [`roundtrip`].
pub const ROUNDTRIP_LENGTH: f64 = 2.0;
/// Default step for [`roundtrip`].
pub const ROUNDTRIP_STEP: f64 = 1e-3;
/// Default tolerance for [`roundtrip`].
pub const ROUNDTRIP_TOL: f64 = 1e-5;

/// Reconstructs from [`identity_compatible_frame`], computes the signature of
/// the result, and compares it to the constant target.
pub fn roundtrip(inv: &ConstantInvariants) -> Result<EquivalenceReport> {
    roundtrip_with(inv, ROUNDTRIP_LENGTH, ROUNDTRIP_STEP, ROUNDTRIP_TOL)
}

pub fn roundtrip_with(
    inv: &ConstantInvariants,
    length: f64,
    h: f64,
    tol: f64,
) -> Result<EquivalenceReport> {
    let result = integrate_frame(inv, &identity_compatible_frame(inv), length, h)?;
    let sig = signature_sampled(
        &result.samples,
        &SignatureOptions {
            source: "reconstruction".into(),
            ..Default::default()
        },
    )?;
    equivalent(&sig, &constant_signature(inv, &sig), tol)
}
