//! Exact finite-probability arithmetic: PMFs, kernels, dense joints,
//! entropy and mutual information (bits), total variation and divergence.

mod channel;
mod joint;
mod measures;
mod pmf;

use thiserror::Error;

pub use channel::{assemble_joint, axes, Auxiliary, SdWtc, StateFactors};
pub use joint::{JointPmf, CELL_BUDGET};
pub use measures::{
    binary_entropy, binary_entropy_inv, kl_divergence, lemma5_gap, lemma5_terms, product_kernel,
    tv_distance, Lemma5Terms,
};
pub use pmf::{CondKernel, FinitePmf, STOCHASTIC_TOL};

pub(crate) use pmf::entropy_bits;

#[derive(Debug, Error)]
pub enum ProbError {
    #[error("empty support")]
    EmptySupport,
    #[error("negative or non-finite mass {value} at index {index}")]
    NegativeMass { index: usize, value: f64 },
    #[error("masses sum to {sum}, not 1")]
    NotStochastic { sum: f64 },
    #[error("row {row}: {source}")]
    BadRow {
        row: usize,
        #[source]
        source: Box<ProbError>,
    },
    #[error("{what}: expected {expected}, found {found}")]
    ShapeMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("alphabet mismatch on axis {axis}: {left} vs {right}")]
    DimensionMismatch {
        axis: &'static str,
        left: usize,
        right: usize,
    },
    #[error("index {index} outside alphabet of size {size}")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("value {0} outside [0, 1]")]
    OutOfUnitInterval(f64),
    #[error("unknown axis {0:?}")]
    UnknownAxis(String),
    #[error("duplicate axis {0:?}")]
    DuplicateAxis(String),
    #[error("axis {0:?} appears in more than one set")]
    OverlappingAxes(String),
    #[error("empty axis set")]
    EmptyAxisSet,
    #[error("product alphabet exceeds the {budget}-cell budget")]
    CellBudget { budget: usize },
    #[error("divergence is infinite: block row {row} leaves the reference support")]
    NotAbsolutelyContinuous { row: usize },
}
