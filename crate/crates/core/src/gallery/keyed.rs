use serde::Serialize;

use crate::probkit::{CondKernel, FinitePmf, SdWtc, StateFactors};
use crate::regions::{search_scheme, Scheme, SearchConfig};

use super::msaf::{bec, fault_law, stuck_at};
use super::GalleryError;

/// A channel whose legitimate output is an explicit garbling of the
/// eavesdropper's: `W(y,z|s,x) = W(z|s,x) G(y|z)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DegradedWtc {
    wtc: SdWtc,
    garbling: CondKernel,
}

const DEGRADED_TOL: f64 = 1e-12;

impl DegradedWtc {
    /// `eve` maps `(s, x)` to `z`, `garbling` maps `z` to `y`.
    pub fn new(state_law: FinitePmf, eve: CondKernel, garbling: CondKernel) -> Result<Self, GalleryError> {
        let cs = state_law.len();
        let cz = eve.output_size();
        if eve.input_shape().len() != 2 || eve.input_shape()[0] != cs {
            return Err(GalleryError::Shape("eve kernel must be indexed by (s, x)".into()));
        }
        if garbling.input_shape() != [cz] {
            return Err(GalleryError::Shape("garbling must be indexed by z".into()));
        }
        let cx = eve.input_shape()[1];
        let cy = garbling.output_size();
        let wtc = SdWtc::from_fn(state_law, cx, cy, cz, |s, x, y, z| {
            eve.get(s * cx + x, z) * garbling.get(z, y)
        })?;
        Ok(Self { wtc, garbling })
    }

    /// Checks that `wtc` factors through `garbling`.
    pub fn from_wtc(wtc: SdWtc, garbling: CondKernel) -> Result<Self, GalleryError> {
        let (cs, cx, cy, cz) = (wtc.card_s(), wtc.card_x(), wtc.card_y(), wtc.card_z());
        if garbling.input_shape() != [cz] || garbling.output_size() != cy {
            return Err(GalleryError::Shape("garbling must map Z to Y".into()));
        }
        let eve = wtc.eve_table();
        let mut worst: f64 = 0.0;
        for s in 0..cs {
            for x in 0..cx {
                for z in 0..cz {
                    let pz = eve[(s * cx + x) * cz + z];
                    for y in 0..cy {
                        let d = (wtc.prob(s, x, y, z) - pz * garbling.get(z, y)).abs();
                        worst = worst.max(d);
                    }
                }
            }
        }
        if worst > DEGRADED_TOL {
            return Err(GalleryError::NotDegraded { deviation: worst });
        }
        Ok(Self { wtc, garbling })
    }

    pub fn wtc(&self) -> &SdWtc {
        &self.wtc
    }

    pub fn garbling(&self) -> &CondKernel {
        &self.garbling
    }
}

/// Attaches a key `L ~ key_law` seen by both legitimate parties: state
/// `(l, s)` indexed `l|S| + s`, legitimate output `(l, y)` indexed `l|Y| + y`.
pub fn build_less_noisy_with_key(base: &DegradedWtc, key_law: &FinitePmf) -> Result<SdWtc, GalleryError> {
    let w = base.wtc();
    let (cs, cx, cy, cz, cl) = (w.card_s(), w.card_x(), w.card_y(), w.card_z(), key_law.len());
    let mut state = Vec::with_capacity(cl * cs);
    for l in 0..cl {
        for s in 0..cs {
            state.push(key_law.get(l) * w.state_law().get(s));
        }
    }
    let wtc = SdWtc::from_fn(FinitePmf::new(state)?, cx, cl * cy, cz, |st, x, yt, z| {
        if yt / cy != st / cs {
            0.0
        } else {
            w.prob(st % cs, x, yt % cy, z)
        }
    })?
    .with_factors(StateFactors { key: cl, core: cs })?;
    Ok(wtc)
}

/// The stuck-at memory with erasures, without the key: `Z = (S, X)`, `Y` an
/// erased copy of the cell output.
pub fn msaf_base(sigma: f64, epsilon: f64) -> Result<DegradedWtc, GalleryError> {
    let eve = CondKernel::from_fn(vec![3, 2], 6, |sx, z| if z == sx { 1.0 } else { 0.0 })?;
    let garbling = CondKernel::from_fn(vec![6], 3, |z, y| bec(epsilon, stuck_at(z / 2, z % 2), y))?;
    DegradedWtc::new(fault_law(sigma), eve, garbling)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Corollary1Region {
    /// Best-found `I(U;Y) − I(U;S)` on the base channel.
    pub r_m_cap: f64,
    /// `H(L)`.
    pub sum_cap: f64,
}

impl Corollary1Region {
    pub fn best_message_rate(&self) -> f64 {
        self.r_m_cap.min(self.sum_cap)
    }
}

/// `R_M ≤ max [I(U;Y) − I(U;S)]`, `R_M + R_K ≤ H(L)`; the first cap is searched
/// over `q(u,x|s)` with `cfg.card_u`.
pub fn corollary1_region(
    base: &DegradedWtc,
    key_law: &FinitePmf,
    cfg: &SearchConfig,
) -> Result<Corollary1Region, GalleryError> {
    let cfg = SearchConfig { weight: 1.0, ..cfg.clone() };
    let best = search_scheme(base.wtc(), Scheme::Gp, &cfg)?;
    Ok(Corollary1Region {
        r_m_cap: best.rm_intercept,
        sum_cap: key_law.entropy(),
    })
}
