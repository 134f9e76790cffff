use serde::{Deserialize, Serialize};

use super::frame::{frame, frame_inverse};
use crate::curvejet::{interior_jets, AnalyticCurve, CurveJet, CurveSamples};
use crate::{Error, GalileanElement, Result};

/// Largest orthogonality defect of the frame quotient that is still snapped
/// onto the group.
pub const SNAP_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RecoveryReport {
    pub g: GalileanElement,
    /// `max_i ‖embed(g)·α_a(tᵢ) − α_b(tᵢ)‖_max` over the shared nodes.
    pub residual: f64,
    /// Orthogonality defect of the quotient before snapping.
    pub orth_defect: f64,
    /// Node at which the quotient was taken.
    pub node: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RecoveryOptions {
    pub snap_tol: f64,
    /// When set, a residual above this bound is reported as
    /// [`Error::NotInGroup`].
    pub residual_tol: Option<f64>,
}

impl Default for RecoveryOptions {
    fn default() -> Self {
        RecoveryOptions {
            snap_tol: SNAP_TOL,
            residual_tol: None,
        }
    }
}

/// Recovers `g` with `b = g·a` from paired jets: decodes
/// `α_b(t₀) · α_a(t₀)⁻¹` at `jets_a[node]`, `jets_b[node]`, then measures how
/// well `g` carries every frame of `a` onto the corresponding frame of `b`.
pub fn recover_transformation(
    jets_a: &[CurveJet],
    jets_b: &[CurveJet],
    node: usize,
    opts: &RecoveryOptions,
) -> Result<RecoveryReport> {
    let shared = jets_a.len().min(jets_b.len());
    if node >= shared {
        return Err(Error::IndexOutOfRange {
            index: node,
            min: 0,
            max: shared.saturating_sub(1),
        });
    }
    let quotient = frame(&jets_b[node])
        .map_err(|e| e.at_node(node))?
        .into_matrix()
        * frame_inverse(&jets_a[node]).map_err(|e| e.at_node(node))?;

    let (g, orth_defect) = match GalileanElement::from_matrix(&quotient, opts.snap_tol) {
        Ok(decoded) => decoded,
        Err(Error::NotOrthogonal { defect }) => {
            return Err(Error::NotInGroup {
                orth_defect: defect,
                residual: f64::NAN,
            })
        }
        Err(e) => return Err(e),
    };

    let embedded = g.embed();
    let mut residual = 0.0_f64;
    for (i, (ja, jb)) in jets_a.iter().zip(jets_b).enumerate() {
        let fa = frame(ja).map_err(|e| e.at_node(i))?;
        let fb = frame(jb).map_err(|e| e.at_node(i))?;
        residual = residual.max((embedded * fa.matrix() - fb.matrix()).amax());
    }
    if let Some(tol) = opts.residual_tol {
        if !(residual <= tol) {
            return Err(Error::NotInGroup {
                orth_defect,
                residual,
            });
        }
    }
    Ok(RecoveryReport {
        g,
        residual,
        orth_defect,
        node,
    })
}

/// Recovery between analytic curves: the quotient is taken at parameter `t0`
/// and the residual is measured at each of `residual_params`.
pub fn recover_analytic(
    a: &AnalyticCurve,
    b: &AnalyticCurve,
    t0: f64,
    residual_params: &[f64],
    opts: &RecoveryOptions,
) -> Result<RecoveryReport> {
    let params: Vec<f64> = std::iter::once(t0)
        .chain(residual_params.iter().copied())
        .collect();
    let jets = |c: &AnalyticCurve| params.iter().map(|&t| c.jet(t)).collect::<Result<Vec<_>>>();
    recover_transformation(&jets(a)?, &jets(b)?, 0, opts)
}

/// Recovery between sampled curves paired by sample index. `node` is a
/// sample index (default: middle of the shared interior).
pub fn recover_sampled(
    a: &CurveSamples,
    b: &CurveSamples,
    node: Option<usize>,
    opts: &RecoveryOptions,
) -> Result<RecoveryReport> {
    let first = *a.interior().start();
    let (ja, jb) = (interior_jets(a), interior_jets(b));
    let shared = ja.len().min(jb.len());
    let k = match node {
        Some(i) if i >= first && i - first < shared => i - first,
        Some(i) => {
            return Err(Error::IndexOutOfRange {
                index: i,
                min: first,
                max: first + shared - 1,
            })
        }
        None => shared / 2,
    };
    recover_transformation(&ja[..shared], &jb[..shared], k, opts)
        .map(|r| RecoveryReport {
            node: r.node + first,
            ..r
        })
        .map_err(|e| match e {
            Error::DegenerateJet {
                quantity,
                value,
                node,
            } => Error::DegenerateJet {
                quantity,
                value,
                node: node.map(|n| n + first),
            },
            other => other,
        })
}
