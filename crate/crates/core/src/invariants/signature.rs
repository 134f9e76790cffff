use serde::{Deserialize, Serialize};

use crate::curvejet::{
    interior_jets, reparameterize_by_arclength, AnalyticCurve, CurveJet, CurveSamples, TOL_DEGEN,
};
use crate::{Error, Result};

/// Fewest grid steps two signatures must share to be compared.
pub const MIN_OVERLAP_STEPS: f64 = 10.0;

/// Default decision tolerance for signatures from exact jets.
pub const TOL_ANALYTIC: f64 = 1e-6;

/// Default decision tolerance for finite-difference signatures at `dt ≤ 1e-3`.
pub const TOL_FD: f64 = 1e-3;

/// The three invariants at one jet.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JetInvariants {
    /// `|X″|`
    pub w1: f64,
    /// `|X‴|`
    pub w2: f64,
    /// `|X″ × X‴|`
    pub w3: f64,
}

pub fn jet_invariants(j: &CurveJet) -> Result<JetInvariants> {
    let w1 = j.d2.norm();
    if !(w1 > TOL_DEGEN) {
        return Err(Error::DegenerateJet {
            quantity: "|X''|",
            value: w1,
            node: None,
        });
    }
    let w3 = j.d2.cross(&j.d3).norm();
    if !(w3 > TOL_DEGEN) {
        return Err(Error::DegenerateJet {
            quantity: "|X'' x X'''|",
            value: w3,
            node: None,
        });
    }
    Ok(JetInvariants {
        w1,
        w2: j.d3.norm(),
        w3,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Analytic,
    Fd,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SignatureMeta {
    pub source: String,
    pub dt: f64,
    pub method: Method,
}

/// Invariants tabulated on a uniform grid `s = 0, h, 2h, …`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Signature {
    pub s: Vec<f64>,
    pub w1: Vec<f64>,
    pub w2: Vec<f64>,
    pub w3: Vec<f64>,
    pub meta: SignatureMeta,
}

impl Signature {
    pub fn len(&self) -> usize {
        self.s.len()
    }

    pub fn is_empty(&self) -> bool {
        self.s.is_empty()
    }

    /// Grid spacing.
    pub fn step(&self) -> f64 {
        if self.s.len() < 2 {
            0.0
        } else {
            self.s[1] - self.s[0]
        }
    }

    pub fn span(&self) -> f64 {
        self.s.last().copied().unwrap_or(0.0) - self.s.first().copied().unwrap_or(0.0)
    }

    /// Plot table `s,w1,w2,w3`.
    pub fn to_plot_csv(&self) -> String {
        let mut out = String::from("s,w1,w2,w3\n");
        for i in 0..self.len() {
            out.push_str(&format!(
                "{},{},{},{}\n",
                self.s[i], self.w1[i], self.w2[i], self.w3[i]
            ));
        }
        out
    }

    fn from_jets<'a>(
        jets: impl Iterator<Item = &'a CurveJet>,
        step: f64,
        meta: SignatureMeta,
    ) -> Result<Signature> {
        let mut sig = Signature {
            s: Vec::new(),
            w1: Vec::new(),
            w2: Vec::new(),
            w3: Vec::new(),
            meta,
        };
        for (k, j) in jets.enumerate() {
            let w = jet_invariants(j).map_err(|e| e.at_node(k))?;
            sig.s.push(k as f64 * step);
            sig.w1.push(w.w1);
            sig.w2.push(w.w2);
            sig.w3.push(w.w3);
        }
        Ok(sig)
    }
}

/// Parameter against which a sampled signature is tabulated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Parameter {
    /// The curve's own time parameter, which the group preserves up to a shift.
    #[default]
    Time,
    /// Spatial arc length, after resampling with
    /// [`reparameterize_by_arclength`]. Not boost invariant.
    ArcLength,
}

#[derive(Debug, Clone, Default)]
pub struct SignatureOptions {
    pub parameter: Parameter,
    /// Output node count for [`Parameter::ArcLength`] resampling; defaults to
    /// the input sample count.
    pub nodes: Option<usize>,
    pub source: String,
}

/// Signature of a sampled curve from finite-difference jets at every
/// interior node. The grid starts at 0 at the first interior node.
pub fn signature_sampled(samples: &CurveSamples, opts: &SignatureOptions) -> Result<Signature> {
    let resampled;
    let working = match opts.parameter {
        Parameter::Time => samples,
        Parameter::ArcLength => {
            resampled = reparameterize_by_arclength(samples, opts.nodes.unwrap_or(samples.len()))?;
            &resampled
        }
    };
    let first = *working.interior().start();
    let jets = interior_jets(working);
    Signature::from_jets(
        jets.iter(),
        working.dt(),
        SignatureMeta {
            source: opts.source.clone(),
            dt: working.dt(),
            method: Method::Fd,
        },
    )
    .map_err(|e| match e {
        Error::DegenerateJet {
            quantity,
            value,
            node,
        } => Error::DegenerateJet {
            quantity,
            value,
            node: node.map(|k| k + first),
        },
        other => other,
    })
}

/// Signature of an analytic curve on `m` grid points over
/// `[start, start + length]` of its parameter.
pub fn signature_analytic(
    curve: &AnalyticCurve,
    start: f64,
    length: f64,
    m: usize,
    source: &str,
) -> Result<Signature> {
    if m < 2 || !(length > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "need m >= 2 and length > 0, got m = {m}, length = {length}"
        )));
    }
    let step = length / (m - 1) as f64;
    let jets = (0..m)
        .map(|k| curve.jet(start + k as f64 * step))
        .collect::<Result<Vec<_>>>()?;
    Signature::from_jets(
        jets.iter(),
        step,
        SignatureMeta {
            source: source.to_string(),
            dt: step,
            method: Method::Analytic,
        },
    )
}

/// Scales the signature to force norms of a particle of the given mass:
/// `|F| = m·ω₁`, `|F′| = m·ω₂`, and `|F × F′| = m²·ω₃`.
pub fn force_signature(mass: f64, sig: &Signature) -> Result<Signature> {
    if !(mass > 0.0) || !mass.is_finite() {
        return Err(Error::NonPositiveMass(mass));
    }
    let scale = |v: &[f64], f: f64| v.iter().map(|x| x * f).collect();
    Ok(Signature {
        s: sig.s.clone(),
        w1: scale(&sig.w1, mass),
        w2: scale(&sig.w2, mass),
        w3: scale(&sig.w3, mass * mass),
        meta: sig.meta.clone(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquivalenceReport {
    pub equivalent: bool,
    pub max_dev_w1: f64,
    pub max_dev_w2: f64,
    /// Diagnostic only; the decision uses ω₁ and ω₂.
    pub max_dev_w3: f64,
    pub overlap: [f64; 2],
    pub tol: f64,
}

fn interpolate(sig_s: &[f64], values: &[f64], x: f64) -> f64 {
    let h = sig_s[1] - sig_s[0];
    let pos = (x - sig_s[0]) / h;
    let k = (pos.floor().max(0.0) as usize).min(values.len() - 2);
    let u = pos - k as f64;
    values[k] * (1.0 - u) + values[k + 1] * u
}

/// Compares two signatures over their common span after aligning both grids
/// to start at 0, on a uniform grid with the coarser of the two steps.
/// Equivalent iff both `max|Δω₁|` and `max|Δω₂|` are at most `tol`.
pub fn equivalent(a: &Signature, b: &Signature, tol: f64) -> Result<EquivalenceReport> {
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let step = a.step().max(b.step());
    let span = a.span().min(b.span());
    let required = MIN_OVERLAP_STEPS * step;
    if a.len() < 2 || b.len() < 2 || !(span >= required * (1.0 - 1e-12)) {
        return Err(Error::NoOverlap { span, required });
    }
    let count = (span / step + 1e-9).floor() as usize;
    let (sa, sb) = (a.s[0], b.s[0]);
    let mut dev = [0.0_f64; 3];
    for k in 0..=count {
        let x = k as f64 * step;
        for (d, (va, vb)) in dev
            .iter_mut()
            .zip([(&a.w1, &b.w1), (&a.w2, &b.w2), (&a.w3, &b.w3)])
        {
            let diff = interpolate(&a.s, va, sa + x) - interpolate(&b.s, vb, sb + x);
            *d = d.max(diff.abs());
        }
    }
    Ok(EquivalenceReport {
        equivalent: dev[0] <= tol && dev[1] <= tol,
        max_dev_w1: dev[0],
        max_dev_w2: dev[1],
        max_dev_w3: dev[2],
        overlap: [0.0, span],
        tol,
    })
}
