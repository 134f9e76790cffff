//! Space-time curves, their jets, and arc length.
//!
//! A curve is the worldline `t ↦ (t, X(t))`. Jets hold `X` and its first
//! four derivatives with respect to the curve's time parameter; this is the
//! parameter the Galilean group preserves up to a shift.

mod arclength;
pub mod csv;
pub mod stencil;

pub use arclength::{arc_length_table, reparameterize_by_arclength};

use crate::{Error, GalileanElement, Result, Vec3};
use stencil::{D1_CENTRAL, D2_CENTRAL, D3_CENTRAL, D4_CENTRAL};

/// Threshold below which a nondegeneracy quantity counts as zero.
pub const TOL_DEGEN: f64 = 1e-9;

/// Fewest samples a [`CurveSamples`] may hold.
pub const MIN_SAMPLES: usize = 11;

/// Half-width of the widest interior stencil window.
pub const STENCIL_MARGIN: usize = 4;

/// Uniformly sampled curve positions.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveSamples {
    t0: f64,
    dt: f64,
    xs: Vec<Vec3>,
}

impl CurveSamples {
    pub fn new(t0: f64, dt: f64, xs: Vec<Vec3>) -> Result<Self> {
        if xs.len() < MIN_SAMPLES {
            return Err(Error::InvalidArgument(format!(
                "need at least {MIN_SAMPLES} samples, got {}",
                xs.len()
            )));
        }
        if !(dt > 0.0) || !dt.is_finite() || !t0.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "invalid sampling t0 = {t0}, dt = {dt}"
            )));
        }
        if let Some(i) = xs.iter().position(|x| !x.iter().all(|c| c.is_finite())) {
            return Err(Error::InvalidArgument(format!(
                "non-finite position at sample {i}"
            )));
        }
        Ok(CurveSamples { t0, dt, xs })
    }

    pub fn t0(&self) -> f64 {
        self.t0
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn positions(&self) -> &[Vec3] {
        &self.xs
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }

    pub fn time(&self, i: usize) -> f64 {
        self.t0 + i as f64 * self.dt
    }

    /// Indices at which [`jet_fd`] is defined.
    pub fn interior(&self) -> std::ops::RangeInclusive<usize> {
        STENCIL_MARGIN..=self.len() - 1 - STENCIL_MARGIN
    }

    /// Applies `g` to every sample. The spacing is unchanged; times shift by `g.s()`.
    pub fn transformed(&self, g: &GalileanElement) -> CurveSamples {
        let xs = self
            .xs
            .iter()
            .enumerate()
            .map(|(i, x)| g.r() * x + self.time(i) * g.v() + g.y())
            .collect();
        CurveSamples {
            t0: self.t0 + g.s(),
            dt: self.dt,
            xs,
        }
    }
}

/// Position and derivatives `X′ … X⁗` at time `t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveJet {
    pub t: f64,
    pub x: Vec3,
    pub d1: Vec3,
    pub d2: Vec3,
    pub d3: Vec3,
    pub d4: Vec3,
}

impl CurveJet {
    /// Jet of the transformed curve: `X̄′ = R·X′ + v` and `X̄⁽ᵏ⁾ = R·X⁽ᵏ⁾` for `k ≥ 2`.
    pub fn transformed(&self, g: &GalileanElement) -> CurveJet {
        let r = g.r();
        CurveJet {
            t: self.t + g.s(),
            x: r * self.x + self.t * g.v() + g.y(),
            d1: r * self.d1 + g.v(),
            d2: r * self.d2,
            d3: r * self.d3,
            d4: r * self.d4,
        }
    }

    /// Scalar triple product `X′ · (X″ × X‴)`.
    pub fn nondegeneracy(&self) -> f64 {
        nondegeneracy(self)
    }

    pub fn is_st_curve(&self) -> bool {
        is_st_curve(self)
    }
}

/// `det(X′, X″, X‴) = X′ · (X″ × X‴)`.
pub fn nondegeneracy(j: &CurveJet) -> f64 {
    j.d1.dot(&j.d2.cross(&j.d3))
}

/// Nonzero triple product. Either sign is accepted: a boost can flip it.
pub fn is_st_curve(j: &CurveJet) -> bool {
    nondegeneracy(j).abs() > TOL_DEGEN
}

/// Curve families with closed-form jets, used as fixtures.
#[derive(Debug, Clone, PartialEq)]
pub enum AnalyticCurve {
    /// `(a cos t, a sin t, b t)`.
    Helix { a: f64, b: f64 },
    /// The same helix traversed at unit speed, so time equals arc length.
    ArcLengthHelix { a: f64, b: f64 },
    /// `Σ c_k t^k` for `k ≤ 5`.
    Polynomial { coeffs: Vec<Vec3> },
    /// The image of `inner` under `g`.
    Transformed {
        inner: Box<AnalyticCurve>,
        g: GalileanElement,
    },
}

impl AnalyticCurve {
    pub fn helix(a: f64, b: f64) -> Result<Self> {
        let c = AnalyticCurve::Helix { a, b };
        c.validate()?;
        Ok(c)
    }

    pub fn arc_length_helix(a: f64, b: f64) -> Result<Self> {
        let c = AnalyticCurve::ArcLengthHelix { a, b };
        c.validate()?;
        Ok(c)
    }

    pub fn polynomial(coeffs: Vec<Vec3>) -> Result<Self> {
        let c = AnalyticCurve::Polynomial { coeffs };
        c.validate()?;
        Ok(c)
    }

    pub fn transformed(self, g: GalileanElement) -> Self {
        AnalyticCurve::Transformed {
            inner: Box::new(self),
            g,
        }
    }

    fn validate(&self) -> Result<()> {
        match self {
            AnalyticCurve::Helix { a, b } | AnalyticCurve::ArcLengthHelix { a, b } => {
                if !(*a > 0.0) || *b == 0.0 || !a.is_finite() || !b.is_finite() {
                    return Err(Error::Domain(format!(
                        "helix needs a > 0 and b != 0, got a = {a}, b = {b}"
                    )));
                }
            }
            AnalyticCurve::Polynomial { coeffs } => {
                if coeffs.is_empty() || coeffs.len() > 6 {
                    return Err(Error::Domain(format!(
                        "polynomial needs 1 to 6 coefficient vectors, got {}",
                        coeffs.len()
                    )));
                }
            }
            AnalyticCurve::Transformed { inner, .. } => inner.validate()?,
        }
        Ok(())
    }

    /// Exact jet at parameter `t`.
    pub fn jet(&self, t: f64) -> Result<CurveJet> {
        if !t.is_finite() {
            return Err(Error::Domain(format!("parameter {t} is not finite")));
        }
        self.validate()?;
        Ok(self.jet_unchecked(t))
    }

    fn jet_unchecked(&self, t: f64) -> CurveJet {
        match self {
            AnalyticCurve::Helix { a, b } => helix_jet(*a, *b, 1.0, t),
            AnalyticCurve::ArcLengthHelix { a, b } => helix_jet(*a, *b, 1.0 / a.hypot(*b), t),
            AnalyticCurve::Polynomial { coeffs } => polynomial_jet(coeffs, t),
            AnalyticCurve::Transformed { inner, g } => inner.jet_unchecked(t).transformed(g),
        }
    }

    /// `n` samples at parameters `t0 + i·dt`. Sample times are the curve's
    /// event times, which differ from the parameter under a time shift.
    pub fn sample(&self, t0: f64, dt: f64, n: usize) -> Result<CurveSamples> {
        self.validate()?;
        let xs = (0..n)
            .map(|i| self.jet_unchecked(t0 + i as f64 * dt).x)
            .collect();
        CurveSamples::new(self.jet_unchecked(t0).t, dt, xs)
    }
}

/// Helix `(a cos ωt, a sin ωt, b ωt)`.
fn helix_jet(a: f64, b: f64, w: f64, t: f64) -> CurveJet {
    let (s, c) = (w * t).sin_cos();
    let (w2, w3, w4) = (w * w, w * w * w, w * w * w * w);
    CurveJet {
        t,
        x: Vec3::new(a * c, a * s, b * w * t),
        d1: Vec3::new(-a * w * s, a * w * c, b * w),
        d2: Vec3::new(-a * w2 * c, -a * w2 * s, 0.0),
        d3: Vec3::new(a * w3 * s, -a * w3 * c, 0.0),
        d4: Vec3::new(a * w4 * c, a * w4 * s, 0.0),
    }
}

fn polynomial_jet(coeffs: &[Vec3], t: f64) -> CurveJet {
    // d-th derivative: Σ_{k≥d} k!/(k-d)! c_k t^(k-d), evaluated by Horner
    let derivative = |d: usize| -> Vec3 {
        coeffs
            .iter()
            .enumerate()
            .skip(d)
            .rev()
            .fold(Vec3::zeros(), |acc, (k, c)| {
                let falling: f64 = ((k - d + 1)..=k).map(|m| m as f64).product();
                acc * t + c * falling
            })
    };
    CurveJet {
        t,
        x: derivative(0),
        d1: derivative(1),
        d2: derivative(2),
        d3: derivative(3),
        d4: derivative(4),
    }
}

/// Finite-difference jet at interior sample `i` (`4 ≤ i ≤ n − 5`), from the
/// central stencils documented in [`stencil`].
pub fn jet_fd(samples: &CurveSamples, i: usize) -> Result<CurveJet> {
    let range = samples.interior();
    if !range.contains(&i) {
        return Err(Error::IndexOutOfRange {
            index: i,
            min: *range.start(),
            max: *range.end(),
        });
    }
    let xs = samples.positions();
    let h = samples.dt();
    let apply = |w: &[f64]| -> Vec3 {
        let k = w.len() / 2;
        w.iter()
            .zip(&xs[i - k..=i + k])
            .fold(Vec3::zeros(), |acc, (c, x)| acc + x * *c)
    };
    Ok(CurveJet {
        t: samples.time(i),
        x: xs[i],
        d1: apply(&D1_CENTRAL) / h,
        d2: apply(&D2_CENTRAL) / (h * h),
        d3: apply(&D3_CENTRAL) / (h * h * h),
        d4: apply(&D4_CENTRAL) / (h * h * h * h),
    })
}

/// Finite-difference jets at every interior node, in order.
pub fn interior_jets(samples: &CurveSamples) -> Vec<CurveJet> {
    samples
        .interior()
        .map(|i| jet_fd(samples, i).expect("interior index"))
        .collect()
}
