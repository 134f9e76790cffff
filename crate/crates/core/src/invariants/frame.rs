use crate::curvejet::{CurveJet, TOL_DEGEN};
use crate::galgroup::AlgebraElement;
use crate::{Error, Mat3, Mat5, Result, Vec3};

/// The moving frame `α_c(t)`: a special Galilean element whose columns are
/// `(1, X′, 0)`, `(0, e₁, 0)`, `(0, e₂, 0)`, `(0, e₃, 0)`, `(t, X, 1)` with
///
/// ```text
/// e₁ = X″ / |X″|,   e₂ = B / |B|,   e₃ = D / |D|,
/// B = X″ × X‴,      D = X″ × B.
/// ```
///
/// `e₃ = e₁ × e₂`, so the rotation block is in SO(3) and `det α_c = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Frame {
    m: Mat5,
}

impl Frame {
    pub fn matrix(&self) -> &Mat5 {
        &self.m
    }

    pub fn into_matrix(self) -> Mat5 {
        self.m
    }

    pub fn rotation(&self) -> Mat3 {
        self.m.fixed_view::<3, 3>(1, 1).into_owned()
    }

    pub fn e1(&self) -> Vec3 {
        self.m.fixed_view::<3, 1>(1, 1).into_owned()
    }

    pub fn e2(&self) -> Vec3 {
        self.m.fixed_view::<3, 1>(1, 2).into_owned()
    }

    pub fn e3(&self) -> Vec3 {
        self.m.fixed_view::<3, 1>(1, 3).into_owned()
    }
}

/// Cross products shared by the frame, its inverse and its derivative.
struct Basis {
    x2_norm: f64,
    b: Vec3,
    b_norm: f64,
    d: Vec3,
    d_norm: f64,
}

// The frame only divides by |X″| and |X″ × X‴|; both are invariant under the
// whole group, unlike the triple product X′·(X″ × X‴), which a boost can
// drive through zero.
fn basis(j: &CurveJet) -> Result<Basis> {
    let x2_norm = j.d2.norm();
    if !(x2_norm > TOL_DEGEN) {
        return Err(Error::degenerate("|X''|", x2_norm));
    }
    let b = j.d2.cross(&j.d3);
    let b_norm = b.norm();
    if !(b_norm > TOL_DEGEN) {
        return Err(Error::degenerate("|X'' x X'''|", b_norm));
    }
    let d = j.d2.cross(&b);
    let d_norm = d.norm();
    if !(d_norm > TOL_DEGEN) {
        return Err(Error::degenerate("|X'' x (X'' x X''')|", d_norm));
    }
    Ok(Basis {
        x2_norm,
        b,
        b_norm,
        d,
        d_norm,
    })
}

pub fn frame(j: &CurveJet) -> Result<Frame> {
    let k = basis(j)?;
    let mut m = Mat5::identity();
    m[(0, 4)] = j.t;
    m.fixed_view_mut::<3, 1>(1, 0).copy_from(&j.d1);
    m.fixed_view_mut::<3, 1>(1, 1)
        .copy_from(&(j.d2 / k.x2_norm));
    m.fixed_view_mut::<3, 1>(1, 2).copy_from(&(k.b / k.b_norm));
    m.fixed_view_mut::<3, 1>(1, 3).copy_from(&(k.d / k.d_norm));
    m.fixed_view_mut::<3, 1>(1, 4).copy_from(&j.x);
    Ok(Frame { m })
}

/// Closed-form `α_c(t)⁻¹`, written entry by entry in terms of dot and
/// triple products of the jet:
///
/// ```text
/// ┌ 1                     0        −t                         ┐
/// │ −X′·X″ / |X″|         X″ᵀ/|X″|  (t X′·X″ − X·X″) / |X″|    │
/// │ −X′·B / |B|           Bᵀ/|B|    (t X′·B − X·B) / |B|       │
/// │ −(X′×X″)·B / A        Dᵀ/A      (t (X′×X″)·B − (X×X″)·B)/A │
/// └ 0                     0         1                          ┘
/// ```
///
/// with `A = |X″ × B|`.
pub fn frame_inverse(j: &CurveJet) -> Result<Mat5> {
    let k = basis(j)?;
    let (t, x, x1, x2) = (j.t, &j.x, &j.d1, &j.d2);
    let a = k.d_norm;

    let x1_x2 = x1.dot(x2);
    let x_x2 = x.dot(x2);
    let x1_b = x1.dot(&k.b);
    let x_b = x.dot(&k.b);
    let x1_x2_b = x1.cross(x2).dot(&k.b);
    let x_x2_b = x.cross(x2).dot(&k.b);

    let mut inv = Mat5::zeros();
    inv[(0, 0)] = 1.0;
    inv[(0, 4)] = -t;
    inv[(4, 4)] = 1.0;

    inv[(1, 0)] = -x1_x2 / k.x2_norm;
    inv.fixed_view_mut::<1, 3>(1, 1)
        .copy_from(&(x2 / k.x2_norm).transpose());
    inv[(1, 4)] = (t * x1_x2 - x_x2) / k.x2_norm;

    inv[(2, 0)] = -x1_b / k.b_norm;
    inv.fixed_view_mut::<1, 3>(2, 1)
        .copy_from(&(k.b / k.b_norm).transpose());
    inv[(2, 4)] = (t * x1_b - x_b) / k.b_norm;

    inv[(3, 0)] = -x1_x2_b / a;
    inv.fixed_view_mut::<1, 3>(3, 1)
        .copy_from(&(k.d / a).transpose());
    inv[(3, 4)] = (t * x1_x2_b - x_x2_b) / a;
    Ok(inv)
}

/// `dα_c/dt`: columns `(0, X″, 0)`, `(0, A₁, 0)`, `(0, A₂, 0)`, `(0, A₃, 0)`,
/// `(1, X′, 0)`, where `A₁, A₂, A₃` are the derivatives of the unit vectors
/// `e₁, e₂, e₃` by the quotient rule `(u/|u|)′ = (u′|u|² − (u·u′) u) / |u|³`
/// with
///
/// ```text
/// (X″)′ = X‴,   B′ = X″ × X⁗,   D′ = X‴ × B + X″ × B′.
/// ```
pub fn frame_derivative(j: &CurveJet) -> Result<Mat5> {
    let k = basis(j)?;
    let unit_rate = |u: &Vec3, u_norm: f64, du: &Vec3| -> Vec3 {
        (du * (u_norm * u_norm) - u * u.dot(du)) / (u_norm * u_norm * u_norm)
    };
    let c = j.d2.cross(&j.d4);
    let dd = j.d3.cross(&k.b) + j.d2.cross(&c);
    let a1 = unit_rate(&j.d2, k.x2_norm, &j.d3);
    let a2 = unit_rate(&k.b, k.b_norm, &c);
    let a3 = unit_rate(&k.d, k.d_norm, &dd);

    let mut m = Mat5::zeros();
    m[(0, 4)] = 1.0;
    m.fixed_view_mut::<3, 1>(1, 0).copy_from(&j.d2);
    m.fixed_view_mut::<3, 1>(1, 1).copy_from(&a1);
    m.fixed_view_mut::<3, 1>(1, 2).copy_from(&a2);
    m.fixed_view_mut::<3, 1>(1, 3).copy_from(&a3);
    m.fixed_view_mut::<3, 1>(1, 4).copy_from(&j.d1);
    Ok(m)
}

/// Maurer–Cartan pullback `α_c⁻¹ · dα_c/dt`.
///
/// Its first row is `(0, 0, 0, 0, 1)`, its first column below that is
/// `(|X″|, 0, 0)`, and the middle block holds the rotation rates
/// `eᵢ · eⱼ′` of the frame vectors.
pub fn pullback(j: &CurveJet) -> Result<AlgebraElement> {
    Ok(AlgebraElement::from_matrix_unchecked(
        frame_inverse(j)? * frame_derivative(j)?,
    ))
}
