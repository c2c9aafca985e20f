use serde::{Deserialize, Serialize};

use super::{IndexSizes, SimError};

pub const DEFAULT_EPS_TYP: f64 = 0.1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    pub n: usize,
    pub rate_m: f64,
    pub rate_k: f64,
    pub rate_1: f64,
    pub rate_2: f64,
    pub eps_typ: f64,
    pub trials: usize,
    pub seed: u64,
    pub exact_mode: bool,
}

impl Default for SimConfig {
    fn default() -> Self {
        Self {
            n: 4,
            rate_m: 0.0,
            rate_k: 0.0,
            rate_1: 0.0,
            rate_2: 0.0,
            eps_typ: DEFAULT_EPS_TYP,
            trials: 1000,
            seed: 0,
            exact_mode: false,
        }
    }
}

fn size(n: usize, rate: f64) -> usize {
    ((n as f64 * rate).exp2() + 1e-9).floor().max(1.0) as usize
}

impl SimConfig {
    pub fn validate(&self) -> Result<(), SimError> {
        let bad = |m: String| Err(SimError::InvalidConfig(m));
        if self.n == 0 {
            return bad("n must be at least 1".into());
        }
        if self.trials == 0 {
            return bad("trials must be at least 1".into());
        }
        if !(self.eps_typ > 0.0 && self.eps_typ < 1.0) {
            return bad(format!("eps_typ = {} is outside (0, 1)", self.eps_typ));
        }
        for (name, r) in [("rate_m", self.rate_m), ("rate_k", self.rate_k), ("rate_1", self.rate_1), ("rate_2", self.rate_2)] {
            if !(r >= 0.0) || !r.is_finite() {
                return bad(format!("{name} = {r} must be a finite nonnegative number"));
            }
            if self.n as f64 * r > 40.0 {
                return bad(format!("{name} = {r} gives an index set above 2^40"));
            }
        }
        Ok(())
    }

    /// `⌊2^{nR}⌋`, floored at 1.
    pub fn sizes(&self) -> IndexSizes {
        IndexSizes {
            m: size(self.n, self.rate_m),
            k: size(self.n, self.rate_k),
            i: size(self.n, self.rate_1),
            j: size(self.n, self.rate_2),
        }
    }

    /// Rates actually realized after rounding, in the order `(R_M, R_K, R_1, R_2)`.
    pub fn effective_rates(&self) -> [f64; 4] {
        let s = self.sizes();
        let n = self.n as f64;
        [s.m, s.k, s.i, s.j].map(|c| (c as f64).log2() / n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes_round_down_and_floor_at_one() {
        let cfg = SimConfig {
            n: 4,
            rate_m: 0.5,
            rate_k: 0.1,
            rate_1: 0.0,
            rate_2: 0.6,
            ..Default::default()
        };
        let s = cfg.sizes();
        assert_eq!((s.m, s.k, s.i, s.j), (4, 1, 1, 5));
        assert_eq!(cfg.effective_rates()[0], 0.5);
    }

    #[test]
    fn rejects_bad_values() {
        for cfg in [
            SimConfig { n: 0, ..Default::default() },
            SimConfig { trials: 0, ..Default::default() },
            SimConfig { eps_typ: 1.0, ..Default::default() },
            SimConfig { rate_k: -0.1, ..Default::default() },
        ] {
            assert!(cfg.validate().is_err(), "{cfg:?}");
        }
    }
}
