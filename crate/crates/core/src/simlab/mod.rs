//! Desk-scale realization of the superposition wiretap code: random
//! codebooks, likelihood encoding, typicality decoding, and the error, key
//! uniformity and leakage metrics measured on small instances.

mod codebook;
mod config;
mod exact;
mod laws;
mod trials;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::probkit::ProbError;

pub use codebook::{
    generate_codebook, is_letter_typical, likelihood_encode, likelihood_weights, typicality_decode, Codebook,
    DecodeResult, EncodeResult, IndexSizes, CODEBOOK_BUDGET,
};
pub use config::{SimConfig, DEFAULT_EPS_TYP};
pub use exact::{exact_metrics, key_uniformity_exact, ExactMetrics, EXACT_BUDGET};
pub use laws::CodeLaws;
pub use trials::{run_trials, run_trials_with_codebook, SimReport};

#[derive(Debug, Error)]
pub enum SimError {
    #[error(transparent)]
    Prob(#[from] ProbError),
    #[error("alphabet mismatch: {0}")]
    Alphabet(String),
    #[error("{what} exceeds the budget of {budget}")]
    Budget { what: &'static str, budget: usize },
    #[error("invalid simulation config: {0}")]
    InvalidConfig(String),
}

/// Independent random stream `index` under `seed`; stream 0 builds the
/// codebook, stream `t + 1` drives trial `t`.
pub fn stream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}
