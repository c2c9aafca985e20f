use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::probkit::{CondKernel, FinitePmf};

use super::laws::CodeLaws;
use super::{stream, SimConfig, SimError};

/// Longest codebook, in stored symbols.
pub const CODEBOOK_BUDGET: usize = 10_000_000;

/// Index-set sizes `|M|, |K|, |I|, |J|`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexSizes {
    pub m: usize,
    pub k: usize,
    pub i: usize,
    pub j: usize,
}

impl IndexSizes {
    pub fn cells(&self) -> usize {
        self.i * self.j * self.k * self.m
    }
}

/// Superposition codebook: `u(i)` and `v(i, j, k, m)`, symbols stored as
/// `u8` alphabet indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Codebook {
    n: usize,
    sizes: IndexSizes,
    u_words: Vec<u8>,
    v_words: Vec<u8>,
}

impl Codebook {
    /// `u_words[i]` and `v_words[((i·|J| + j)·|K| + k)·|M| + m]`, each of length `n`.
    pub fn from_words(
        n: usize,
        sizes: IndexSizes,
        u_words: Vec<Vec<u8>>,
        v_words: Vec<Vec<u8>>,
    ) -> Result<Self, SimError> {
        if u_words.len() != sizes.i || v_words.len() != sizes.cells() {
            return Err(SimError::Alphabet("codebook word counts do not match the index sizes".into()));
        }
        if u_words.iter().chain(&v_words).any(|w| w.len() != n) {
            return Err(SimError::Alphabet(format!("every codeword must have length {n}")));
        }
        Ok(Self {
            n,
            sizes,
            u_words: u_words.concat(),
            v_words: v_words.concat(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sizes(&self) -> IndexSizes {
        self.sizes
    }

    pub fn u_word(&self, i: usize) -> &[u8] {
        &self.u_words[i * self.n..(i + 1) * self.n]
    }

    pub fn cell(&self, i: usize, j: usize, k: usize, m: usize) -> usize {
        let s = self.sizes;
        ((i * s.j + j) * s.k + k) * s.m + m
    }

    pub fn v_word(&self, i: usize, j: usize, k: usize, m: usize) -> &[u8] {
        let c = self.cell(i, j, k, m);
        &self.v_words[c * self.n..(c + 1) * self.n]
    }
}

pub(crate) fn sample(rng: &mut ChaCha8Rng, probs: &[f64]) -> usize {
    let r: f64 = rng.random();
    let total: f64 = probs.iter().sum();
    let mut acc = 0.0;
    let target = r * total;
    for (i, &p) in probs.iter().enumerate() {
        acc += p;
        if target < acc {
            return i;
        }
    }
    probs.iter().rposition(|&p| p > 0.0).unwrap_or(0)
}

/// `u(i) ~ q_U^n` i.i.d., then `v(i,j,k,m) ~ q^n_{V|U=u(i)}` per cell, from
/// stream 0 of `cfg.seed`.
pub fn generate_codebook(q_u: &FinitePmf, q_v_given_u: &CondKernel, cfg: &SimConfig) -> Result<Codebook, SimError> {
    cfg.validate()?;
    if q_v_given_u.input_shape() != [q_u.len()] {
        return Err(SimError::Alphabet("q(v|u) must be indexed by u".into()));
    }
    if q_u.len() > 256 || q_v_given_u.output_size() > 256 {
        return Err(SimError::Alphabet("auxiliary alphabets above 256 symbols are not supported".into()));
    }
    let sizes = cfg.sizes();
    let n = cfg.n;
    let stored = sizes
        .cells()
        .checked_add(sizes.i)
        .and_then(|c| c.checked_mul(n))
        .filter(|&c| c <= CODEBOOK_BUDGET)
        .ok_or(SimError::Budget {
            what: "codebook",
            budget: CODEBOOK_BUDGET,
        })?;
    let _ = stored;
    let mut rng = stream(cfg.seed, 0);
    let mut u_words = Vec::with_capacity(sizes.i * n);
    for _ in 0..sizes.i * n {
        u_words.push(sample(&mut rng, q_u.probs()) as u8);
    }
    let mut v_words = Vec::with_capacity(sizes.cells() * n);
    for i in 0..sizes.i {
        for _ in 0..sizes.j * sizes.k * sizes.m {
            for t in 0..n {
                let u = u_words[i * n + t] as usize;
                v_words.push(sample(&mut rng, q_v_given_u.row(u).probs()) as u8);
            }
        }
    }
    Ok(Codebook {
        n,
        sizes,
        u_words,
        v_words,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EncodeResult {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub x_seq: Vec<u8>,
    /// Every likelihood weight was zero; indices fell back to `(0, 0, 0)` and
    /// the input was drawn from `q(x|s)`.
    pub failed: bool,
}

/// Likelihood weight `Π_t q(s_t | u_t(i), v_t(i,j,k,m))` of every `(i, j, k)`,
/// flattened as `(i·|J| + j)·|K| + k`.
pub fn likelihood_weights(cb: &Codebook, laws: &CodeLaws, m: usize, s_seq: &[u8]) -> Vec<f64> {
    let sz = cb.sizes();
    let mut w = Vec::with_capacity(sz.i * sz.j * sz.k);
    for i in 0..sz.i {
        let uw = cb.u_word(i);
        for j in 0..sz.j {
            for k in 0..sz.k {
                let vw = cb.v_word(i, j, k, m);
                let mut p = 1.0;
                for t in 0..cb.n() {
                    p *= laws.s_given_uv(uw[t] as usize, vw[t] as usize, s_seq[t] as usize);
                    if p == 0.0 {
                        break;
                    }
                }
                w.push(p);
            }
        }
    }
    w
}

/// Picks `(i, j, k)` with probability proportional to its likelihood weight,
/// then draws `x_t ~ q(x | u_t, v_t, s_t)`.
pub fn likelihood_encode(
    cb: &Codebook,
    laws: &CodeLaws,
    m: usize,
    s_seq: &[u8],
    rng: &mut ChaCha8Rng,
) -> EncodeResult {
    let sz = cb.sizes();
    let w = likelihood_weights(cb, laws, m, s_seq);
    let total: f64 = w.iter().sum();
    if !(total > 0.0) {
        let x_seq = s_seq
            .iter()
            .map(|&s| sample(rng, laws.x_row_given_s(s as usize)) as u8)
            .collect();
        return EncodeResult {
            i: 0,
            j: 0,
            k: 0,
            x_seq,
            failed: true,
        };
    }
    let c = if w.len() == 1 { 0 } else { sample(rng, &w) };
    let (i, j, k) = (c / (sz.j * sz.k), (c / sz.k) % sz.j, c % sz.k);
    let (uw, vw) = (cb.u_word(i), cb.v_word(i, j, k, m));
    let x_seq = (0..cb.n())
        .map(|t| sample(rng, laws.x_row(uw[t] as usize, vw[t] as usize, s_seq[t] as usize)) as u8)
        .collect();
    EncodeResult {
        i,
        j,
        k,
        x_seq,
        failed: false,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DecodeResult {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub m: usize,
    /// Number of jointly typical cells; anything but 1 yields `(0, 0, 0, 0)`.
    pub matches: usize,
}

impl DecodeResult {
    pub fn unique(&self) -> bool {
        self.matches == 1
    }
}

/// Letter typicality: `|ν(a) − p(a)| ≤ eps · p(a)` for every symbol `a`.
pub fn is_letter_typical(counts: &[u32], n: usize, p: &[f64], eps: f64) -> bool {
    counts
        .iter()
        .zip(p)
        .all(|(&c, &q)| (c as f64 / n as f64 - q).abs() <= eps * q)
}

/// Looks for the unique cell whose `(u, v, y)` triple sequence is letter
/// typical for `q_{U,V,Y}`.
pub fn typicality_decode(cb: &Codebook, laws: &CodeLaws, y_seq: &[u8], eps: f64) -> DecodeResult {
    let sz = cb.sizes();
    let (cv, cy) = (laws.card_v, laws.card_y);
    let mut counts = vec![0u32; laws.q_uvy.len()];
    let mut found = None;
    let mut matches = 0;
    for i in 0..sz.i {
        let uw = cb.u_word(i);
        for j in 0..sz.j {
            for k in 0..sz.k {
                for m in 0..sz.m {
                    let vw = cb.v_word(i, j, k, m);
                    counts.iter_mut().for_each(|c| *c = 0);
                    for t in 0..cb.n() {
                        counts[(uw[t] as usize * cv + vw[t] as usize) * cy + y_seq[t] as usize] += 1;
                    }
                    if is_letter_typical(&counts, cb.n(), &laws.q_uvy, eps) {
                        matches += 1;
                        found = Some((i, j, k, m));
                    }
                }
            }
        }
    }
    match (matches, found) {
        (1, Some((i, j, k, m))) => DecodeResult { i, j, k, m, matches },
        _ => DecodeResult {
            i: 0,
            j: 0,
            k: 0,
            m: 0,
            matches,
        },
    }
}
