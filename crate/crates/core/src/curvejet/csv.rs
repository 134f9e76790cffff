//! Curve CSV: header `t,x1,x2,x3`, one sample per row, rows sorted by `t`
//! with uniform spacing (relative tolerance [`UNIFORM_DT_TOL`]).
//!
//! Values are written in shortest round-trip decimal form, so a written
//! curve reads back bit-identically.

use std::fs::File;
use std::io::{BufWriter, Read, Write};
use std::path::Path;

use super::CurveSamples;
use crate::{Error, Result, Vec3};

pub const HEADER: [&str; 4] = ["t", "x1", "x2", "x3"];

/// Allowed relative deviation of each time step from the mean step.
pub const UNIFORM_DT_TOL: f64 = 1e-9;

pub fn read_curve_csv<R: Read>(reader: R) -> Result<CurveSamples> {
    let mut rdr = ::csv::ReaderBuilder::new()
        .trim(::csv::Trim::All)
        .from_reader(reader);
    let header = rdr.headers()?.clone();
    if header.iter().ne(HEADER.iter().copied()) {
        return Err(Error::Parse(format!(
            "expected header `{}`, found `{}`",
            HEADER.join(","),
            header.iter().collect::<Vec<_>>().join(",")
        )));
    }
    let mut ts = Vec::new();
    let mut xs = Vec::new();
    for (row, record) in rdr.records().enumerate() {
        let record = record?;
        let field = |k: usize| -> Result<f64> {
            record[k]
                .parse::<f64>()
                .map_err(|e| Error::Parse(format!("row {}: column {}: {e}", row + 1, HEADER[k])))
        };
        ts.push(field(0)?);
        xs.push(Vec3::new(field(1)?, field(2)?, field(3)?));
    }
    if ts.len() < 2 {
        return Err(Error::Parse(format!(
            "need at least 2 rows, found {}",
            ts.len()
        )));
    }
    let dt = (ts[ts.len() - 1] - ts[0]) / (ts.len() - 1) as f64;
    if !(dt > 0.0) {
        return Err(Error::Parse("rows must be sorted by increasing t".into()));
    }
    if let Some(i) = ts
        .windows(2)
        .position(|w| !((w[1] - w[0] - dt).abs() <= UNIFORM_DT_TOL * dt))
    {
        return Err(Error::Parse(format!(
            "non-uniform time step between rows {} and {} (expected {dt})",
            i + 1,
            i + 2
        )));
    }
    CurveSamples::new(ts[0], dt, xs)
}

pub fn write_curve_csv<W: Write>(writer: W, samples: &CurveSamples) -> Result<()> {
    let mut w = ::csv::Writer::from_writer(writer);
    w.write_record(HEADER)?;
    for (i, x) in samples.positions().iter().enumerate() {
        w.write_record([
            samples.time(i).to_string(),
            x.x.to_string(),
            x.y.to_string(),
            x.z.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_curve_file(path: impl AsRef<Path>) -> Result<CurveSamples> {
    read_curve_csv(File::open(path)?)
}

pub fn write_curve_file(path: impl AsRef<Path>, samples: &CurveSamples) -> Result<()> {
    write_curve_csv(BufWriter::new(File::create(path)?), samples)
}
