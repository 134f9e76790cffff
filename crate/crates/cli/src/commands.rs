use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use galinv_core::curvejet::csv::{read_curve_file, write_curve_csv, write_curve_file};
use galinv_core::curvejet::{jet_fd, reparameterize_by_arclength};
use galinv_core::invariants::{
    equivalent, pullback as pullback_at, recover_sampled, signature_analytic, signature_sampled,
    Parameter, RecoveryOptions, SNAP_TOL,
};
use galinv_core::reconstruct::{identity_compatible_frame, integrate_frame, ReconstructionSummary};
use galinv_core::{
    json, AnalyticCurve, ConstantInvariants, CurveSamples, Error, GalileanElement,
    SignatureOptions, Vec3,
};
use serde_json::json;

use crate::{
    EquivArgs, Family, GenerateArgs, InvariantsArgs, MethodArg, PullbackArgs, ReconstructArgs,
    RecoverArgs,
};

fn emit(text: &str, output: Option<&Path>) -> Result<()> {
    match output {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn read_curve(path: &Path) -> Result<CurveSamples> {
    read_curve_file(path).with_context(|| format!("reading {}", path.display()))
}

fn family_curve(family: Family, a: f64, b: f64) -> Result<AnalyticCurve> {
    let curve = match family {
        Family::Helix => AnalyticCurve::arc_length_helix(a, b)?,
        Family::Line => {
            AnalyticCurve::polynomial(vec![Vec3::zeros(), Vec3::new(1.0, 2.0, 2.0) / 3.0])?
        }
        Family::Cubic => AnalyticCurve::polynomial(vec![
            Vec3::zeros(),
            Vec3::new(1.0, 0.0, 0.0),
            Vec3::new(0.0, 1.0, 0.0),
            Vec3::new(0.0, 0.0, 1.0),
        ])?,
    };
    Ok(curve)
}

fn parameter(arclength: bool) -> Parameter {
    if arclength {
        Parameter::ArcLength
    } else {
        Parameter::Time
    }
}

pub fn error_json(e: &Error) -> String {
    let mut body = json!({ "error": e.to_string() });
    let fields = match e {
        Error::DegenerateJet {
            quantity,
            value,
            node,
        } => {
            json!({ "kind": "degenerate", "quantity": quantity, "value": value, "node": node })
        }
        Error::Regularity { node, speed } => {
            json!({ "kind": "degenerate", "quantity": "speed", "value": speed, "node": node })
        }
        Error::NoOverlap { span, required } => {
            json!({ "kind": "no_overlap", "span": span, "required": required })
        }
        Error::NotInGroup {
            orth_defect,
            residual,
        } => json!({ "kind": "not_in_group", "orth_defect": orth_defect, "residual": residual }),
        _ => json!({ "kind": "config" }),
    };
    body.as_object_mut()
        .expect("object")
        .extend(fields.as_object().expect("object").clone());
    json::to_string(&body).expect("serializable")
}

pub fn generate(args: &GenerateArgs) -> Result<u8> {
    let mut curve = family_curve(args.family, args.a, args.b)?;
    let g = args.transform_seed.map(GalileanElement::random_special);
    if let Some(g) = &g {
        curve = curve.transformed(g.clone());
    }
    let samples = curve.sample(args.t0, args.dt, args.n)?;
    match &args.output {
        Some(path) => write_curve_file(path, &samples)
            .with_context(|| format!("writing {}", path.display()))?,
        None => write_curve_csv(io::stdout().lock(), &samples)?,
    }
    if let Some(g) = g {
        let path = match (&args.transform_out, &args.output) {
            (Some(p), _) => p.clone(),
            (None, Some(out)) => out.with_extension("transform.json"),
            (None, None) => bail!(Error::InvalidArgument(
                "--transform-seed with stdout output needs --transform-out".into()
            )),
        };
        emit(&json::to_string(&g)?, Some(&path))?;
    }
    Ok(0)
}

pub fn invariants(args: &InvariantsArgs) -> Result<u8> {
    let m = args.m.map(|m| m as usize);
    let sig = match args.method {
        MethodArg::Fd => {
            let Some(input) = &args.input else {
                bail!(Error::InvalidArgument(
                    "--method fd needs an input CSV".into()
                ));
            };
            let opts = SignatureOptions {
                parameter: parameter(args.arclength),
                nodes: m,
                source: input.display().to_string(),
            };
            signature_sampled(&read_curve(input)?, &opts)?
        }
        MethodArg::Analytic => {
            if args.input.is_some() {
                bail!(Error::InvalidArgument(
                    "--method analytic takes no input file".into()
                ));
            }
            let curve = family_curve(args.family, args.a, args.b)?;
            let source = format!("{:?}(a={}, b={})", args.family, args.a, args.b).to_lowercase();
            signature_analytic(&curve, args.start, args.length, m.unwrap_or(1001), &source)?
        }
    };
    if let Some(plot) = &args.plot {
        emit(&sig.to_plot_csv(), Some(plot))?;
    }
    emit(&json::to_string(&sig)?, args.output.as_deref())?;
    Ok(0)
}

pub fn equiv(args: &EquivArgs) -> Result<u8> {
    let signature = |path: &PathBuf| -> Result<_> {
        let opts = SignatureOptions {
            parameter: parameter(args.arclength),
            nodes: None,
            source: path.display().to_string(),
        };
        Ok(signature_sampled(&read_curve(path)?, &opts)?)
    };
    let report = equivalent(&signature(&args.a)?, &signature(&args.b)?, args.tol)?;
    emit(&json::to_string(&report)?, args.output.as_deref())?;
    Ok(if report.equivalent { 0 } else { 1 })
}

pub fn recover(args: &RecoverArgs) -> Result<u8> {
    if !(args.tol > 0.0) {
        bail!(Error::InvalidArgument(format!(
            "tolerance must be positive, got {}",
            args.tol
        )));
    }
    let opts = RecoveryOptions {
        snap_tol: SNAP_TOL,
        residual_tol: Some(args.tol),
    };
    let report = recover_sampled(&read_curve(&args.a)?, &read_curve(&args.b)?, args.at, &opts)?;
    emit(&json::to_string(&report)?, args.output.as_deref())?;
    Ok(0)
}

pub fn pullback(args: &PullbackArgs) -> Result<u8> {
    let mut samples = read_curve(&args.input)?;
    if args.arclength {
        let n = samples.len();
        samples = reparameterize_by_arclength(&samples, n)?;
    }
    let first = *samples.interior().start();
    let last = *samples.interior().end();
    let offset = (args.at / samples.dt()).round();
    if !(offset >= 0.0 && offset <= (last - first) as f64) {
        bail!(Error::InvalidArgument(format!(
            "--at {} is outside [0, {}]",
            args.at,
            (last - first) as f64 * samples.dt()
        )));
    }
    let node = first + offset as usize;
    let p = pullback_at(&jet_fd(&samples, node)?).map_err(|e| e.at_node(node))?;
    let rows: Vec<Vec<f64>> = p
        .matrix()
        .row_iter()
        .map(|r| r.iter().copied().collect())
        .collect();
    let body = json!({
        "at": offset * samples.dt(),
        "node": node,
        "matrix": rows,
        "skew_defect": p.skew_defect(),
    });
    emit(&json::to_string(&body)?, args.output.as_deref())?;
    Ok(0)
}

pub fn reconstruct(args: &ReconstructArgs) -> Result<u8> {
    let inv = ConstantInvariants::new(args.w1, args.w2)?;
    let result = integrate_frame(&inv, &identity_compatible_frame(&inv), args.length, args.h)?;
    write_curve_file(&args.output, &result.samples)
        .with_context(|| format!("writing {}", args.output.display()))?;
    let sidecar = args
        .sidecar
        .clone()
        .unwrap_or_else(|| args.output.with_extension("json"));
    let summary = ReconstructionSummary::new(&inv, args.h, &result);
    emit(&json::to_string(&summary)?, Some(&sidecar))?;
    Ok(0)
}
