//! Example channels with known answers, and the channel/auxiliary file format.

mod coin;
mod keyed;
mod micro;
mod msaf;
mod spec_io;

use thiserror::Error;

use crate::probkit::ProbError;
use crate::regions::RegionError;

pub use coin::{coin_aux, coin_channel, coin_counterexample_report, CoinReport};
pub use micro::{micro_aux, micro_wiretap};
pub use keyed::{build_less_noisy_with_key, corollary1_region, msaf_base, Corollary1Region, DegradedWtc};
pub use msaf::{
    build_msaf_example, msaf_reference_aux, stuck_at, MsafAnalytics, MsafParams, ERASURE, STUCK_ONE,
    STUCK_ZERO, WORKING,
};
pub use spec_io::{emit_aux_spec, emit_channel_spec, parse_aux_spec, parse_channel_spec};

#[derive(Debug, Error)]
pub enum GalleryError {
    #[error(transparent)]
    Prob(#[from] ProbError),
    #[error(transparent)]
    Region(#[from] RegionError),
    #[error("{name} = {value} is out of range")]
    OutOfRange { name: &'static str, value: f64 },
    #[error("channel does not factor through the garbling (deviation {deviation:e})")]
    NotDegraded { deviation: f64 },
    #[error("{0}")]
    Shape(String),
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{what} row {index:?} sums to {sum}")]
    NotStochastic {
        what: &'static str,
        index: Vec<usize>,
        sum: f64,
    },
}
