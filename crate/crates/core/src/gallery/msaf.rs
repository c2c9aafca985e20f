use serde::{Deserialize, Serialize};

use crate::probkit::{binary_entropy, binary_entropy_inv, Auxiliary, FinitePmf, SdWtc, StateFactors};

use super::GalleryError;

/// Stuck-at state values and the "cell works" state.
pub const STUCK_ZERO: usize = 0;
pub const STUCK_ONE: usize = 1;
pub const WORKING: usize = 2;
/// Index of the erasure symbol in the legitimate output alphabet.
pub const ERASURE: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MsafParams {
    pub sigma: f64,
    pub epsilon: f64,
    pub lambda: f64,
}

impl MsafParams {
    /// `ε = ½[h(σ/2) − σ]`, `λ = h⁻¹(1 − σ − ε)`.
    pub fn from_sigma(sigma: f64) -> Result<Self, GalleryError> {
        if !(sigma > 0.0 && sigma < 0.5) {
            return Err(GalleryError::OutOfRange { name: "sigma", value: sigma });
        }
        let epsilon = 0.5 * (binary_entropy(sigma / 2.0)? - sigma);
        let lambda = binary_entropy_inv(1.0 - sigma - epsilon)?;
        Ok(Self { sigma, epsilon, lambda })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MsafAnalytics {
    pub capacity: f64,
    pub gp_capacity: f64,
    pub causal_bound: f64,
    pub key_entropy: f64,
}

impl MsafAnalytics {
    pub fn from_params(p: &MsafParams) -> Result<Self, GalleryError> {
        Ok(Self {
            capacity: 1.0 - p.sigma - p.epsilon,
            gp_capacity: (1.0 - p.sigma) * (1.0 - p.epsilon),
            causal_bound: 1.0 - binary_entropy(p.sigma / 2.0)?,
            key_entropy: binary_entropy(p.lambda)?,
        })
    }
}

/// Memory cell output: stuck cells return their state, working cells the input.
pub fn stuck_at(s: usize, x: usize) -> usize {
    if s == WORKING {
        x
    } else {
        s
    }
}

pub(crate) fn fault_law(sigma: f64) -> FinitePmf {
    FinitePmf::new(vec![sigma / 2.0, sigma / 2.0, 1.0 - sigma]).expect("valid for sigma in (0, 0.5)")
}

/// `P(y | g)` of the erasure channel.
pub(crate) fn bec(epsilon: f64, g: usize, y: usize) -> f64 {
    if y == ERASURE {
        epsilon
    } else if y == g {
        1.0 - epsilon
    } else {
        0.0
    }
}

/// Stuck-at memory followed by an erasure channel, with a key `L ~ Ber(λ)`
/// shared by the legitimate parties.
///
/// State `(l, s)` is indexed `3l + s`, the legitimate output `(l, y)` is
/// `3l + y` with `y = 2` the erasure, and the eavesdropper sees `z = 2s + x`.
pub fn build_msaf_example(sigma: f64) -> Result<(SdWtc, MsafParams, MsafAnalytics), GalleryError> {
    let p = MsafParams::from_sigma(sigma)?;
    let a = MsafAnalytics::from_params(&p)?;
    let key = FinitePmf::bernoulli(p.lambda)?;
    let faults = fault_law(p.sigma);
    let mut state = Vec::with_capacity(6);
    for l in 0..2 {
        for s in 0..3 {
            state.push(key.get(l) * faults.get(s));
        }
    }
    let state = FinitePmf::new(state)?;
    let wtc = SdWtc::from_fn(state, 2, 6, 6, |st, x, yt, z| {
        let (l, s) = (st / 3, st % 3);
        let (ly, y) = (yt / 3, yt % 3);
        if ly != l || z != 2 * s + x {
            return 0.0;
        }
        bec(p.epsilon, stuck_at(s, x), y)
    })?
    .with_factors(StateFactors { key: 2, core: 3 })?;
    Ok((wtc, p, a))
}

/// `U = g(S, X)`, `V = (U, L)` indexed `2u + l`, `X ~ Ber(½)` independent of the state.
pub fn msaf_reference_aux(_p: &MsafParams) -> Auxiliary {
    Auxiliary::from_fn(6, 2, 4, 2, |st, u, v, x| {
        let (l, s) = (st / 3, st % 3);
        if u == stuck_at(s, x) && v == 2 * u + l {
            0.5
        } else {
            0.0
        }
    })
    .expect("reference auxiliary is stochastic")
}
