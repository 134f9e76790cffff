//! Finite-difference weights.
//!
//! Interior jets use fixed central stencils (weights multiply samples at
//! offsets `-k..=k`, result divided by `dt^order`):
//!
//! | derivative | points | offsets | weights                                   | error   |
//! |------------|--------|---------|-------------------------------------------|---------|
//! | X′         | 5      | −2..2   | (1, −8, 0, 8, −1) / 12                    | O(dt⁴)  |
//! | X″         | 5      | −2..2   | (−1, 16, −30, 16, −1) / 12                | O(dt⁴)  |
//! | X‴         | 7      | −3..3   | (1, −8, 13, 0, −13, 8, −1) / 8            | O(dt⁴)  |
//! | X⁗         | 7      | −3..3   | (−1, 12, −39, 56, −39, 12, −1) / 6        | O(dt⁴)  |
//!
//! Boundary nodes (arc length only) use one-sided weights from
//! [`fornberg_weights`].

pub const D1_CENTRAL: [f64; 5] = [1.0 / 12.0, -8.0 / 12.0, 0.0, 8.0 / 12.0, -1.0 / 12.0];
pub const D2_CENTRAL: [f64; 5] = [
    -1.0 / 12.0,
    16.0 / 12.0,
    -30.0 / 12.0,
    16.0 / 12.0,
    -1.0 / 12.0,
];
pub const D3_CENTRAL: [f64; 7] = [
    1.0 / 8.0,
    -1.0,
    13.0 / 8.0,
    0.0,
    -13.0 / 8.0,
    1.0,
    -1.0 / 8.0,
];
pub const D4_CENTRAL: [f64; 7] = [
    -1.0 / 6.0,
    2.0,
    -13.0 / 2.0,
    28.0 / 3.0,
    -13.0 / 2.0,
    2.0,
    -1.0 / 6.0,
];

/// Weights for derivatives `0..=max_order` at `z` from values at `nodes`
/// (Fornberg's recursion). `w[k][j]` multiplies the sample at `nodes[j]`.
pub fn fornberg_weights(z: f64, nodes: &[f64], max_order: usize) -> Vec<Vec<f64>> {
    let n = nodes.len();
    let mut c = vec![vec![0.0; n]; max_order + 1];
    if n == 0 {
        return c;
    }
    let mut c1 = 1.0;
    let mut c4 = nodes[0] - z;
    c[0][0] = 1.0;
    for i in 1..n {
        let mn = i.min(max_order);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = nodes[i] - z;
        for j in 0..i {
            let c3 = nodes[i] - nodes[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[k][i] = c1 * (k as f64 * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
                }
                c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
            }
            for k in (1..=mn).rev() {
                c[k][j] = (c4 * c[k][j] - k as f64 * c[k - 1][j]) / c3;
            }
            c[0][j] *= c4 / c3;
        }
        c1 = c2;
    }
    c
}
