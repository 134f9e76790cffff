use crate::curvejet::CurveJet;
use crate::Mat3;

/// A named identity and how far the jet is from satisfying it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RelationDefect {
    pub name: &'static str,
    pub defect: f64,
}

/// Defects of the identities that hold along an arc-length parameterized
/// curve with constant `|X″|` and `|X‴|`:
///
/// - `unit_speed`: `|X′| − 1`
/// - `x1_dot_x2`: `X′·X″` (from `|X′| = 1`)
/// - `x1_dot_x3_plus_w1_sq`: `X′·X‴ + |X″|²` (derivative of the above)
/// - `x2_dot_x3`: `X″·X‴` (constant `|X″|`)
/// - `x3_dot_x4`: `X‴·X⁗` (constant `|X‴|`)
/// - `x2_dot_x4_plus_w2_sq`: `X″·X⁗ + |X‴|²` (derivative of `X″·X‴ = 0`)
/// - `w1_variation`, `w2_variation`, `w3_variation`: spread of the invariants
///   over `window` relative to `j`
///
/// and of the algebraic identity `[X″·(X‴ × X⁗)]² = det Gram(X″, X‴, X⁗)`
/// (`gram_identity`), which holds for every jet.
pub fn invariant_relations_check(j: &CurveJet, window: &[CurveJet]) -> Vec<RelationDefect> {
    let (x1, x2, x3, x4) = (&j.d1, &j.d2, &j.d3, &j.d4);
    let (w1, w2, w3) = (x2.norm(), x3.norm(), x2.cross(x3).norm());
    let spread = |f: &dyn Fn(&CurveJet) -> f64, reference: f64| {
        window
            .iter()
            .map(|k| (f(k) - reference).abs())
            .fold(0.0, f64::max)
    };
    let triple = x2.dot(&x3.cross(x4));
    let cols = Mat3::from_columns(&[*x2, *x3, *x4]);
    let gram = (cols.transpose() * cols).determinant();

    let mut out = vec![
        ("unit_speed", x1.norm() - 1.0),
        ("x1_dot_x2", x1.dot(x2)),
        ("x1_dot_x3_plus_w1_sq", x1.dot(x3) + w1 * w1),
        ("x2_dot_x3", x2.dot(x3)),
        ("x3_dot_x4", x3.dot(x4)),
        ("x2_dot_x4_plus_w2_sq", x2.dot(x4) + w2 * w2),
        ("w1_variation", spread(&|k| k.d2.norm(), w1)),
        ("w2_variation", spread(&|k| k.d3.norm(), w2)),
        ("w3_variation", spread(&|k| k.d2.cross(&k.d3).norm(), w3)),
        ("gram_identity", triple * triple - gram),
    ];
    out.iter_mut().for_each(|(_, d)| *d = d.abs());
    out.into_iter()
        .map(|(name, defect)| RelationDefect { name, defect })
        .collect()
}
