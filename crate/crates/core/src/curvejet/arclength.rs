use super::stencil::fornberg_weights;
use super::{CurveSamples, MIN_SAMPLES, TOL_DEGEN};
use crate::{Error, Result, Vec3};

/// Derivative of `order` at every node, from a `width`-point window kept
/// inside the sample range (central where possible, one-sided at the ends).
fn node_derivative(xs: &[Vec3], h: f64, i: usize, order: usize, width: usize) -> Vec3 {
    let start = i.saturating_sub(width / 2).min(xs.len() - width);
    let offsets: Vec<f64> = (start..start + width)
        .map(|j| j as f64 - i as f64)
        .collect();
    let w = fornberg_weights(0.0, &offsets, order);
    let sum = w[order]
        .iter()
        .zip(&xs[start..start + width])
        .fold(Vec3::zeros(), |acc, (c, x)| acc + x * *c);
    sum / h.powi(order as i32)
}

fn velocities(samples: &CurveSamples) -> Vec<Vec3> {
    let xs = samples.positions();
    (0..xs.len())
        .map(|i| node_derivative(xs, samples.dt(), i, 1, 5))
        .collect()
}

fn accelerations(samples: &CurveSamples) -> Vec<Vec3> {
    let xs = samples.positions();
    let n = xs.len();
    (0..n)
        .map(|i| {
            let width = if i >= 2 && i + 2 < n { 5 } else { 6 };
            node_derivative(xs, samples.dt(), i, 2, width)
        })
        .collect()
}

fn checked_speeds(velocities: &[Vec3]) -> Result<Vec<f64>> {
    velocities
        .iter()
        .enumerate()
        .map(|(node, v)| {
            let speed = v.norm();
            if speed > TOL_DEGEN {
                Ok(speed)
            } else {
                Err(Error::Regularity { node, speed })
            }
        })
        .collect()
}

/// Cumulative composite Simpson integral of `f` on a uniform grid. Even nodes
/// close full panels; odd nodes add the half-panel quadratic rule.
fn cumulative_simpson(f: &[f64], h: f64) -> Vec<f64> {
    let n = f.len();
    let mut s = vec![0.0; n];
    for i in 1..n {
        s[i] = if i % 2 == 0 {
            s[i - 2] + h / 3.0 * (f[i - 2] + 4.0 * f[i - 1] + f[i])
        } else if i + 1 < n {
            s[i - 1] + h / 12.0 * (5.0 * f[i - 1] + 8.0 * f[i] - f[i + 1])
        } else {
            s[i - 1] + h / 12.0 * (-f[i - 2] + 8.0 * f[i - 1] + 5.0 * f[i])
        };
    }
    s
}

fn arc_lengths(speeds: &[f64], h: f64) -> Result<Vec<f64>> {
    let s = cumulative_simpson(speeds, h);
    if let Some(i) = s.windows(2).position(|w| !(w[1] > w[0])) {
        return Err(Error::Regularity {
            node: i + 1,
            speed: speeds[i + 1],
        });
    }
    Ok(s)
}

/// `(t_i, s_i)` at every sample, with `s_0 = 0` and `s` strictly increasing.
pub fn arc_length_table(samples: &CurveSamples) -> Result<Vec<(f64, f64)>> {
    let speeds = checked_speeds(&velocities(samples))?;
    let s = arc_lengths(&speeds, samples.dt())?;
    Ok(s.into_iter()
        .enumerate()
        .map(|(i, s)| (samples.time(i), s))
        .collect())
}

/// Resamples the curve at `m` uniformly spaced arc-length values on
/// `[0, s_total]`. The result's time parameter is arc length, starting at 0.
///
/// Between nodes each coordinate is a quintic Hermite interpolant matching
/// position, `dX/ds = X′/|X′|` and `d²X/ds²` (chain rule from `X′`, `X″`),
/// so the resampled curve is C² and accurate enough for 4th-derivative
/// stencils.
pub fn reparameterize_by_arclength(samples: &CurveSamples, m: usize) -> Result<CurveSamples> {
    if m < MIN_SAMPLES {
        return Err(Error::InvalidArgument(format!(
            "need at least {MIN_SAMPLES} output nodes, got {m}"
        )));
    }
    let vel = velocities(samples);
    let acc = accelerations(samples);
    let speeds = checked_speeds(&vel)?;
    let s = arc_lengths(&speeds, samples.dt())?;

    // derivatives with respect to arc length
    let (ds1, ds2): (Vec<Vec3>, Vec<Vec3>) = vel
        .iter()
        .zip(&acc)
        .zip(&speeds)
        .map(|((v, a), &speed)| {
            let tangent = v / speed;
            let normal_acc = a - tangent * tangent.dot(a);
            (tangent, normal_acc / (speed * speed))
        })
        .unzip();

    let xs = samples.positions();
    let total = *s.last().expect("non-empty");
    let step = total / (m - 1) as f64;
    let out = (0..m)
        .map(|k| {
            let sigma = if k + 1 == m { total } else { k as f64 * step };
            let j = s.partition_point(|&sj| sj <= sigma).clamp(1, s.len() - 1) - 1;
            let h = s[j + 1] - s[j];
            let u = (sigma - s[j]) / h;
            quintic_hermite(
                u,
                h,
                [xs[j], ds1[j], ds2[j]],
                [xs[j + 1], ds1[j + 1], ds2[j + 1]],
            )
        })
        .collect();
    CurveSamples::new(0.0, step, out)
}

fn quintic_hermite(u: f64, h: f64, left: [Vec3; 3], right: [Vec3; 3]) -> Vec3 {
    let (u2, u3, u4, u5) = (u * u, u.powi(3), u.powi(4), u.powi(5));
    let h0 = 1.0 - 10.0 * u3 + 15.0 * u4 - 6.0 * u5;
    let h1 = u - 6.0 * u3 + 8.0 * u4 - 3.0 * u5;
    let h2 = 0.5 * u2 - 1.5 * u3 + 1.5 * u4 - 0.5 * u5;
    let h3 = 0.5 * u3 - u4 + 0.5 * u5;
    let h4 = -4.0 * u3 + 7.0 * u4 - 3.0 * u5;
    let h5 = 10.0 * u3 - 15.0 * u4 + 6.0 * u5;
    left[0] * h0
        + left[1] * (h1 * h)
        + left[2] * (h2 * h * h)
        + right[2] * (h3 * h * h)
        + right[1] * (h4 * h)
        + right[0] * h5
}
