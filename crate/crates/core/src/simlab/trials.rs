use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::probkit::{Auxiliary, SdWtc};

use super::codebook::sample;
use super::exact::exact_metrics;
use super::{generate_codebook, likelihood_encode, stream, typicality_decode, CodeLaws, Codebook, IndexSizes, SimConfig, SimError};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimReport {
    pub n: usize,
    pub seed: u64,
    pub eps_typ: f64,
    pub trial_count: usize,
    /// Requested `(R_M, R_K, R_1, R_2)`.
    pub rates: [f64; 4],
    /// Rates after rounding the index sets to integers.
    pub effective_rates: [f64; 4],
    pub sizes: IndexSizes,
    pub avg_error: f64,
    pub max_error: f64,
    pub key_tv: f64,
    pub encode_failures: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub leakage_bits: Option<f64>,
    /// `max_{m,k} D(p_{Z^n|m,k,I} || q^n_{Z|U} | p_{I|m,k})`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ss_divergence: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub key_tv_exact: Option<f64>,
}

#[derive(Clone)]
struct Tally {
    trials: Vec<u64>,
    errors: Vec<u64>,
    keys: Vec<u64>,
    failures: usize,
}

impl Tally {
    fn new(s: IndexSizes) -> Self {
        Self {
            trials: vec![0; s.m],
            errors: vec![0; s.m],
            keys: vec![0; s.m * s.k],
            failures: 0,
        }
    }

    fn merge(mut self, o: Self) -> Self {
        for (a, b) in self.trials.iter_mut().zip(o.trials) {
            *a += b;
        }
        for (a, b) in self.errors.iter_mut().zip(o.errors) {
            *a += b;
        }
        for (a, b) in self.keys.iter_mut().zip(o.keys) {
            *a += b;
        }
        self.failures += o.failures;
        self
    }
}

/// Builds the codebook from stream 0 and runs `cfg.trials` independent
/// transmissions, message `t mod |M|` in trial `t`.
pub fn run_trials(wtc: &SdWtc, aux: &Auxiliary, cfg: &SimConfig) -> Result<SimReport, SimError> {
    cfg.validate()?;
    let laws = CodeLaws::new(wtc, aux)?;
    let cb = generate_codebook(&laws.q_u_pmf()?, &laws.q_v_given_u_kernel()?, cfg)?;
    run_trials_with_codebook(&laws, &cb, cfg)
}

pub fn run_trials_with_codebook(laws: &CodeLaws, cb: &Codebook, cfg: &SimConfig) -> Result<SimReport, SimError> {
    cfg.validate()?;
    let sz = cb.sizes();
    if sz != cfg.sizes() || cb.n() != cfg.n {
        return Err(SimError::InvalidConfig("codebook does not match the config's block length and rates".into()));
    }
    let exact = if cfg.exact_mode { Some(exact_metrics(laws, cb)?) } else { None };
    let n = cfg.n;
    let cz = laws.card_z;
    let tally = (0..cfg.trials)
        .into_par_iter()
        .fold(
            || Tally::new(sz),
            |mut acc, t| {
                let m = t % sz.m;
                let mut rng = stream(cfg.seed, t as u64 + 1);
                let s_seq: Vec<u8> = (0..n).map(|_| sample(&mut rng, &laws.state) as u8).collect();
                let enc = likelihood_encode(cb, laws, m, &s_seq, &mut rng);
                let y_seq: Vec<u8> = (0..n)
                    .map(|t| (sample(&mut rng, laws.channel_row(s_seq[t] as usize, enc.x_seq[t] as usize)) / cz) as u8)
                    .collect();
                let dec = typicality_decode(cb, laws, &y_seq, cfg.eps_typ);
                acc.trials[m] += 1;
                acc.keys[m * sz.k + enc.k] += 1;
                if enc.failed {
                    acc.failures += 1;
                }
                if enc.failed || dec.m != m || dec.k != enc.k {
                    acc.errors[m] += 1;
                }
                acc
            },
        )
        .reduce(|| Tally::new(sz), Tally::merge);

    let mut err_sum = 0.0;
    let mut sampled = 0usize;
    let mut max_error: f64 = 0.0;
    let mut key_tv: f64 = 0.0;
    let uniform = 1.0 / sz.k as f64;
    for m in 0..sz.m {
        let t = tally.trials[m];
        if t == 0 {
            continue;
        }
        let e = tally.errors[m] as f64 / t as f64;
        err_sum += e;
        sampled += 1;
        max_error = max_error.max(e);
        let tv = 0.5
            * tally.keys[m * sz.k..(m + 1) * sz.k]
                .iter()
                .map(|&c| (c as f64 / t as f64 - uniform).abs())
                .sum::<f64>();
        key_tv = key_tv.max(tv);
    }
    Ok(SimReport {
        n,
        seed: cfg.seed,
        eps_typ: cfg.eps_typ,
        trial_count: cfg.trials,
        rates: [cfg.rate_m, cfg.rate_k, cfg.rate_1, cfg.rate_2],
        effective_rates: cfg.effective_rates(),
        sizes: sz,
        avg_error: err_sum / sampled as f64,
        max_error,
        key_tv,
        encode_failures: tally.failures,
        leakage_bits: exact.as_ref().map(|e| e.leakage_bits),
        ss_divergence: exact.as_ref().map(|e| e.ss_divergence),
        key_tv_exact: exact.as_ref().map(|e| e.key_tv.iter().copied().fold(0.0, f64::max)),
    })
}
