use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("rotation block is not orthogonal (max |RᵀR - I| = {defect:.3e})")]
    NotOrthogonal { defect: f64 },

    #[error(
        "rotation block has det {det:.6}; only orientation-preserving rotations are supported"
    )]
    NotSpecial { det: f64 },

    #[error("matrix is singular or ill-conditioned (condition estimate {condition:.3e})")]
    SingularMatrix { condition: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("index {index} outside the admissible range {min}..={max}")]
    IndexOutOfRange {
        index: usize,
        min: usize,
        max: usize,
    },

    #[error("curve is not regular at node {node}: speed {speed:.3e}")]
    Regularity { node: usize, speed: f64 },

    #[error("degenerate jet{}: {quantity} = {value:.3e}", .node.map(|n| format!(" at node {n}")).unwrap_or_default())]
    DegenerateJet {
        quantity: &'static str,
        value: f64,
        node: Option<usize>,
    },

    #[error(
        "signatures overlap on {span:.6} but at least {required:.6} (10 grid steps) is needed"
    )]
    NoOverlap { span: f64, required: f64 },

    #[error("frame quotient is not a special Galilean element (orthogonality defect {orth_defect:.3e}, residual {residual:.3e})")]
    NotInGroup { orth_defect: f64, residual: f64 },

    #[error("invalid constant invariants w1 = {w1}, w2 = {w2}: need w1 > 0 and w2 > w1²")]
    InvalidInvariants { w1: f64, w2: f64 },

    #[error("frame orthogonality defect {defect:.3e} at s = {s:.6}; step is too large")]
    StepTooLarge { defect: f64, s: f64 },

    #[error("mass must be positive, got {0}")]
    NonPositiveMass(f64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("malformed input: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn degenerate(quantity: &'static str, value: f64) -> Self {
        Error::DegenerateJet {
            quantity,
            value,
            node: None,
        }
    }

    /// Attaches a sample index to a [`Error::DegenerateJet`]; other errors pass through.
    pub fn at_node(self, index: usize) -> Self {
        match self {
            Error::DegenerateJet {
                quantity, value, ..
            } => Error::DegenerateJet {
                quantity,
                value,
                node: Some(index),
            },
            other => other,
        }
    }
}
