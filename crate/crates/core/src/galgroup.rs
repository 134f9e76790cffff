//! The special Galilean group SGal(4) as a concrete 5×5 matrix group.
//!
//! An element `(R, v, y, s)` is embedded as
//!
//! ```text
//! ┌ 1  0  s ┐
//! │ v  R  y │      acting on (t, X, 1)ᵀ:  t ↦ t + s,  X ↦ R·X + t·v + y
//! └ 0  0  1 ┘
//! ```
//!
//! with `R ∈ SO(3)`. Orientation-reversing rotations are rejected at
//! construction.

use nalgebra::{Quaternion, UnitQuaternion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::{Error, Mat3, Mat5, Result, Vec3, Vec5};

/// Tolerance on `max |RᵀR − I|` and `|det R − 1|` accepted by the constructor.
pub const TOL_ORTH: f64 = 1e-12;

/// Default central-difference step for [`left_log_derivative`].
pub const DEFAULT_LOG_DERIVATIVE_STEP: f64 = 1e-5;

/// Condition-number bound above which a path value counts as singular.
pub const MAX_CONDITION: f64 = 1e12;

/// Bound on boost, translation and time-shift components drawn by [`GalileanElement::random_special`].
pub const RANDOM_COMPONENT_BOUND: f64 = 5.0;

/// A space-time event `(t, x)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Event {
    pub t: f64,
    pub x: Vec3,
}

impl Event {
    pub fn new(t: f64, x: Vec3) -> Result<Self> {
        if !t.is_finite() || !x.iter().all(|c| c.is_finite()) {
            return Err(Error::Domain(format!("non-finite event ({t}, {x:?})")));
        }
        Ok(Event { t, x })
    }

    /// Homogeneous column `(t, x1, x2, x3, 1)`.
    pub fn homogeneous(&self) -> Vec5 {
        Vec5::new(self.t, self.x.x, self.x.y, self.x.z, 1.0)
    }
}

/// Max-norm distance of `RᵀR` from the identity.
pub fn orthogonality_defect(r: &Mat3) -> f64 {
    (r.transpose() * r - Mat3::identity()).amax()
}

/// Nearest rotation to `r` in the Frobenius sense (polar factor).
///
/// Fails with [`Error::NotSpecial`] if the nearest orthogonal matrix is a
/// reflection.
pub fn snap_to_group(r: &Mat3) -> Result<Mat3> {
    let svd = r.svd(true, true);
    let (u, v_t) = match (svd.u, svd.v_t) {
        (Some(u), Some(v_t)) => (u, v_t),
        _ => {
            return Err(Error::SingularMatrix {
                condition: f64::INFINITY,
            })
        }
    };
    let q = u * v_t;
    let det = q.determinant();
    if det < 0.0 {
        return Err(Error::NotSpecial { det });
    }
    Ok(q)
}

/// A special Galilean transformation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(into = "ElementJson", try_from = "ElementJson")]
pub struct GalileanElement {
    r: Mat3,
    v: Vec3,
    y: Vec3,
    s: f64,
}

impl GalileanElement {
    /// Validating constructor.
    pub fn new(r: Mat3, v: Vec3, y: Vec3, s: f64) -> Result<Self> {
        let finite = r
            .iter()
            .chain(v.iter())
            .chain(y.iter())
            .all(|c| c.is_finite());
        if !finite || !s.is_finite() {
            return Err(Error::Domain("non-finite group element component".into()));
        }
        let defect = orthogonality_defect(&r);
        if defect > TOL_ORTH {
            return Err(Error::NotOrthogonal { defect });
        }
        let det = r.determinant();
        if det < 0.0 {
            return Err(Error::NotSpecial { det });
        }
        if (det - 1.0).abs() > TOL_ORTH {
            return Err(Error::NotOrthogonal {
                defect: (det - 1.0).abs(),
            });
        }
        Ok(GalileanElement { r, v, y, s })
    }

    pub fn identity() -> Self {
        GalileanElement {
            r: Mat3::identity(),
            v: Vec3::zeros(),
            y: Vec3::zeros(),
            s: 0.0,
        }
    }

    pub fn rotation(r: Mat3) -> Result<Self> {
        Self::new(r, Vec3::zeros(), Vec3::zeros(), 0.0)
    }

    pub fn boost(v: Vec3) -> Self {
        GalileanElement {
            v,
            ..Self::identity()
        }
    }

    pub fn translation(y: Vec3) -> Self {
        GalileanElement {
            y,
            ..Self::identity()
        }
    }

    pub fn time_shift(s: f64) -> Self {
        GalileanElement {
            s,
            ..Self::identity()
        }
    }

    pub fn r(&self) -> &Mat3 {
        &self.r
    }

    pub fn v(&self) -> &Vec3 {
        &self.v
    }

    pub fn y(&self) -> &Vec3 {
        &self.y
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    /// The 5×5 block matrix `(1, 0, s | v, R, y | 0, 0, 1)`.
    pub fn embed(&self) -> Mat5 {
        let mut m = Mat5::identity();
        m[(0, 4)] = self.s;
        m.fixed_view_mut::<3, 1>(1, 0).copy_from(&self.v);
        m.fixed_view_mut::<3, 3>(1, 1).copy_from(&self.r);
        m.fixed_view_mut::<3, 1>(1, 4).copy_from(&self.y);
        m
    }

    /// Group product `self · other` (apply `other` first).
    pub fn compose(&self, other: &GalileanElement) -> GalileanElement {
        let out = GalileanElement {
            r: self.r * other.r,
            v: self.v + self.r * other.v,
            y: self.r * other.y + other.s * self.v + self.y,
            s: self.s + other.s,
        };
        debug_assert!(orthogonality_defect(&out.r) < 1e-9);
        out
    }

    /// Closed-form inverse `(Rᵀ, −Rᵀv, −Rᵀ(y − s·v), −s)`.
    pub fn inverse(&self) -> GalileanElement {
        let rt = self.r.transpose();
        GalileanElement {
            r: rt,
            v: -(rt * self.v),
            y: -(rt * (self.y - self.s * self.v)),
            s: -self.s,
        }
    }

    /// `t ↦ t + s`, `X ↦ R·X + t·v + y`.
    pub fn act(&self, e: &Event) -> Event {
        Event {
            t: e.t + self.s,
            x: self.r * e.x + e.t * self.v + self.y,
        }
    }

    /// Decodes a 5×5 matrix with the group's block layout.
    ///
    /// The rotation block is snapped to SO(3) by polar decomposition when its
    /// orthogonality defect is at most `snap_tol`; the returned defect also
    /// accounts for any violation of the fixed first and last rows.
    pub fn from_matrix(m: &Mat5, snap_tol: f64) -> Result<(GalileanElement, f64)> {
        let r = m.fixed_view::<3, 3>(1, 1).into_owned();
        let pattern = [m[(0, 0)] - 1.0, m[(0, 1)], m[(0, 2)], m[(0, 3)]]
            .into_iter()
            .chain((0..4).map(|j| m[(4, j)]))
            .chain(std::iter::once(m[(4, 4)] - 1.0))
            .fold(0.0_f64, |acc, x| acc.max(x.abs()));
        let defect = orthogonality_defect(&r).max(pattern);
        if !(defect <= snap_tol) {
            return Err(Error::NotOrthogonal { defect });
        }
        let g = GalileanElement {
            r: snap_to_group(&r)?,
            v: m.fixed_view::<3, 1>(1, 0).into_owned(),
            y: m.fixed_view::<3, 1>(1, 4).into_owned(),
            s: m[(0, 4)],
        };
        Ok((g, defect))
    }

    /// Deterministic sample: `R` uniform on SO(3) via a uniformly random unit
    /// quaternion, every other component uniform in `[−5, 5]`.
    pub fn random_special(seed: u64) -> GalileanElement {
        Self::random_with(&mut ChaCha8Rng::seed_from_u64(seed))
    }

    pub fn random_with<R: Rng + ?Sized>(rng: &mut R) -> GalileanElement {
        let b = RANDOM_COMPONENT_BOUND;
        let mut component = || rng.random_range(-b..=b);
        let v = Vec3::new(component(), component(), component());
        let y = Vec3::new(component(), component(), component());
        let s = component();
        GalileanElement {
            r: random_rotation(rng),
            v,
            y,
            s,
        }
    }

    /// Largest absolute difference over all 16 scalar fields.
    pub fn max_field_deviation(&self, other: &GalileanElement) -> f64 {
        (self.r - other.r)
            .amax()
            .max((self.v - other.v).amax())
            .max((self.y - other.y).amax())
            .max((self.s - other.s).abs())
    }
}

/// Uniform rotation from three uniforms (Shoemake's subgroup algorithm).
pub fn random_rotation<R: Rng + ?Sized>(rng: &mut R) -> Mat3 {
    use std::f64::consts::TAU;
    let (u1, u2, u3): (f64, f64, f64) = (rng.random(), rng.random(), rng.random());
    let (a, b) = ((1.0 - u1).sqrt(), u1.sqrt());
    let q = Quaternion::new(
        b * (TAU * u3).cos(),
        a * (TAU * u2).sin(),
        a * (TAU * u2).cos(),
        b * (TAU * u3).sin(),
    );
    UnitQuaternion::new_normalize(q)
        .to_rotation_matrix()
        .into_inner()
}

#[derive(Serialize, Deserialize)]
struct ElementJson {
    r: [f64; 9],
    v: [f64; 3],
    y: [f64; 3],
    s: f64,
}

impl From<GalileanElement> for ElementJson {
    fn from(g: GalileanElement) -> Self {
        let mut r = [0.0; 9];
        for i in 0..3 {
            for j in 0..3 {
                r[3 * i + j] = g.r[(i, j)];
            }
        }
        ElementJson {
            r,
            v: g.v.into(),
            y: g.y.into(),
            s: g.s,
        }
    }
}

impl TryFrom<ElementJson> for GalileanElement {
    type Error = Error;

    fn try_from(j: ElementJson) -> Result<Self> {
        GalileanElement::new(
            Mat3::from_row_slice(&j.r),
            Vec3::from(j.v),
            Vec3::from(j.y),
            j.s,
        )
    }
}

/// An element of the Lie algebra 𝔰𝔤𝔞𝔩(4): first row `(0, 0, 0, 0, c)`,
/// last row zero, skew-symmetric middle 3×3 block.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraElement {
    m: Mat5,
}

impl AlgebraElement {
    /// Accepts `m` if both [`structure_defect`](Self::structure_defect) and
    /// [`skew_defect`](Self::skew_defect) are within `tol`.
    pub fn new(m: Mat5, tol: f64) -> Result<Self> {
        let a = AlgebraElement { m };
        let defect = a.structure_defect().max(a.skew_defect());
        if !(defect <= tol) {
            return Err(Error::InvalidArgument(format!(
                "matrix is not in the special Galilean algebra (defect {defect:.3e})"
            )));
        }
        Ok(a)
    }

    /// Wraps a matrix whose structure is only approximately algebraic, such as
    /// a finite-difference estimate.
    pub fn from_matrix_unchecked(m: Mat5) -> Self {
        AlgebraElement { m }
    }

    pub fn matrix(&self) -> &Mat5 {
        &self.m
    }

    pub fn into_matrix(self) -> Mat5 {
        self.m
    }

    /// `max |W + Wᵀ|` over the middle block `W`.
    pub fn skew_defect(&self) -> f64 {
        let w = self.m.fixed_view::<3, 3>(1, 1);
        (w + w.transpose()).amax()
    }

    /// Largest entry that must vanish in row 1 (columns 1–4) or row 5.
    pub fn structure_defect(&self) -> f64 {
        (0..4)
            .map(|j| self.m[(0, j)].abs())
            .chain((0..5).map(|j| self.m[(4, j)].abs()))
            .fold(0.0, f64::max)
    }
}

/// Inverse with a 1-norm condition check against [`MAX_CONDITION`].
pub fn checked_inverse(m: &Mat5) -> Result<Mat5> {
    let inv = m.try_inverse().ok_or(Error::SingularMatrix {
        condition: f64::INFINITY,
    })?;
    let condition = one_norm(m) * one_norm(&inv);
    if !(condition <= MAX_CONDITION) {
        return Err(Error::SingularMatrix { condition });
    }
    Ok(inv)
}

fn one_norm(m: &Mat5) -> f64 {
    m.column_iter()
        .map(|c| c.iter().map(|x| x.abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Central-difference Maurer–Cartan form of a group-valued path:
/// `P(t)⁻¹ · (P(t+h) − P(t−h)) / 2h`. Truncation error is `O(h²)`.
pub fn left_log_derivative<F>(path: F, t: f64, h: f64) -> Result<AlgebraElement>
where
    F: Fn(f64) -> Mat5,
{
    if !(h > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "step must be positive, got {h}"
        )));
    }
    let inv = checked_inverse(&path(t))?;
    let dp = (path(t + h) - path(t - h)) / (2.0 * h);
    Ok(AlgebraElement::from_matrix_unchecked(inv * dp))
}
