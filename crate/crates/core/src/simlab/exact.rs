use serde::{Deserialize, Serialize};

use crate::probkit::{entropy_bits, Auxiliary, SdWtc};

use super::{generate_codebook, likelihood_weights, CodeLaws, Codebook, SimConfig, SimError};

/// Largest enumeration `|M||K||I||J| · |S|^n · |Z|^n` the exact metrics accept.
pub const EXACT_BUDGET: usize = 10_000_000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExactMetrics {
    /// `I(M, K; Z^n)` under a uniform message.
    pub leakage_bits: f64,
    /// `max_{m,k} D(p_{Z^n|M=m,K=k,I} || q^n_{Z|U} | p_{I|M=m,K=k})`.
    pub ss_divergence: f64,
    /// `TV(p_{K|M=m}, uniform)` for every message.
    pub key_tv: Vec<f64>,
}

fn enumeration_size(cb: &Codebook, card_s: usize, card_z: usize) -> Option<usize> {
    let s = cb.sizes();
    let pow = |b: usize| (0..cb.n()).try_fold(1usize, |acc, _| acc.checked_mul(b));
    s.cells().checked_mul(pow(card_s)?)?.checked_mul(pow(card_z)?)
}

/// Visits every `(m, s^n)` with its probability and the encoder's law over
/// cells `(i, j, k)`; an encoding failure shows up as `None` with weight 1.
fn for_each_encoding(
    laws: &CodeLaws,
    cb: &Codebook,
    mut f: impl FnMut(usize, &[u8], f64, &[(Option<(usize, usize, usize)>, f64)]),
) {
    let sz = cb.sizes();
    let (n, cs) = (cb.n(), laws.card_s);
    let mut s_seq = vec![0u8; n];
    let mut cells = Vec::new();
    for m in 0..sz.m {
        s_seq.iter_mut().for_each(|s| *s = 0);
        loop {
            let ps: f64 = s_seq.iter().map(|&s| laws.state[s as usize]).product();
            if ps > 0.0 {
                let w = likelihood_weights(cb, laws, m, &s_seq);
                let total: f64 = w.iter().sum();
                cells.clear();
                if total > 0.0 {
                    for (c, &x) in w.iter().enumerate() {
                        if x > 0.0 {
                            cells.push((Some((c / (sz.j * sz.k), (c / sz.k) % sz.j, c % sz.k)), x / total));
                        }
                    }
                } else {
                    cells.push((None, 1.0));
                }
                f(m, &s_seq, ps, &cells);
            }
            let mut t = n;
            loop {
                if t == 0 {
                    break;
                }
                t -= 1;
                s_seq[t] += 1;
                if (s_seq[t] as usize) < cs {
                    break;
                }
                s_seq[t] = 0;
            }
            if s_seq.iter().all(|&s| s == 0) {
                break;
            }
        }
    }
}

fn kron(acc: &mut Vec<f64>, row: &[f64]) {
    let mut next = Vec::with_capacity(acc.len() * row.len());
    for &a in acc.iter() {
        next.extend(row.iter().map(|&r| a * r));
    }
    *acc = next;
}

fn tv_to_uniform(p: &[f64]) -> f64 {
    let total: f64 = p.iter().sum();
    let u = 1.0 / p.len() as f64;
    0.5 * p.iter().map(|&x| (x / total - u).abs()).sum::<f64>()
}

/// Exact leakage, divergence surrogate and key uniformity of a fixed codebook,
/// by enumerating every state sequence and eavesdropper output.
pub fn exact_metrics(laws: &CodeLaws, cb: &Codebook) -> Result<ExactMetrics, SimError> {
    let budget_err = SimError::Budget {
        what: "exact enumeration",
        budget: EXACT_BUDGET,
    };
    match enumeration_size(cb, laws.card_s, laws.card_z) {
        Some(c) if c <= EXACT_BUDGET => {}
        _ => return Err(budget_err),
    }
    let sz = cb.sizes();
    let (n, cs, cx, cy, cz) = (cb.n(), laws.card_s, laws.card_x, laws.card_y, laws.card_z);
    let zn = cz.pow(n as u32);
    let p_m = 1.0 / sz.m as f64;

    // Eavesdropper letter law when the encoder gave up and sent x ~ q(x|s).
    let mut z_fallback = vec![0.0; cs * cz];
    for s in 0..cs {
        for (x, &px) in laws.x_row_given_s(s).iter().enumerate().take(cx) {
            let row = laws.channel_row(s, x);
            for y in 0..cy {
                for z in 0..cz {
                    z_fallback[s * cz + z] += px * row[y * cz + z];
                }
            }
        }
    }

    // acc[((m·|K| + k)·|I| + i)·|Z|^n + z^n]
    let mut acc = vec![0.0; sz.m * sz.k * sz.i * zn];
    let mut zvec = Vec::with_capacity(zn);
    for_each_encoding(laws, cb, |m, s_seq, ps, cells| {
        for &(cell, w) in cells {
            zvec.clear();
            zvec.push(p_m * ps * w);
            let (i, k) = match cell {
                Some((i, j, k)) => {
                    let (uw, vw) = (cb.u_word(i), cb.v_word(i, j, k, m));
                    for t in 0..n {
                        kron(&mut zvec, laws.z_row(uw[t] as usize, vw[t] as usize, s_seq[t] as usize));
                    }
                    (i, k)
                }
                None => {
                    for &s in s_seq {
                        kron(&mut zvec, &z_fallback[s as usize * cz..(s as usize + 1) * cz]);
                    }
                    (0, 0)
                }
            };
            let base = ((m * sz.k + k) * sz.i + i) * zn;
            for (a, &p) in acc[base..base + zn].iter_mut().zip(&zvec) {
                *a += p;
            }
        }
    });

    let mk = sz.m * sz.k;
    let mut p_mk = vec![0.0; mk];
    let mut p_z = vec![0.0; zn];
    let mut p_mkz = vec![0.0; mk * zn];
    for c in 0..mk {
        for i in 0..sz.i {
            let b = (c * sz.i + i) * zn;
            for z in 0..zn {
                p_mkz[c * zn + z] += acc[b + z];
                p_z[z] += acc[b + z];
            }
        }
        p_mk[c] = p_mkz[c * zn..(c + 1) * zn].iter().sum();
    }
    let leakage_bits = (entropy_bits(&p_mk) + entropy_bits(&p_z) - entropy_bits(&p_mkz)).max(0.0);

    // q(z|u) = Σ_{v,s} q(v|u) q(s|u,v) q(z|u,v,s)
    let (cu, cv) = (laws.card_u, laws.card_v);
    let mut z_given_u = vec![0.0; cu * cz];
    for u in 0..cu {
        for v in 0..cv {
            for s in 0..cs {
                let w = laws.q_v_given_u[u * cv + v] * laws.s_given_uv(u, v, s);
                if w > 0.0 {
                    for (z, &p) in laws.z_row(u, v, s).iter().enumerate() {
                        z_given_u[u * cz + z] += w * p;
                    }
                }
            }
        }
    }
    let mut ss_divergence: f64 = 0.0;
    let mut reference = Vec::with_capacity(zn);
    for c in 0..mk {
        if p_mk[c] <= 0.0 {
            continue;
        }
        let mut d = 0.0;
        for i in 0..sz.i {
            let b = (c * sz.i + i) * zn;
            let slice = &acc[b..b + zn];
            let p_i: f64 = slice.iter().sum();
            if p_i <= 0.0 {
                continue;
            }
            reference.clear();
            reference.push(1.0);
            for &u in cb.u_word(i) {
                kron(&mut reference, &z_given_u[u as usize * cz..(u as usize + 1) * cz]);
            }
            for (&p, &q) in slice.iter().zip(&reference) {
                if p > 0.0 {
                    d += if q > 0.0 { p / p_mk[c] * ((p / p_i) / q).log2() } else { f64::INFINITY };
                }
            }
        }
        ss_divergence = ss_divergence.max(d.max(0.0));
    }

    let key_tv = (0..sz.m).map(|m| tv_to_uniform(&p_mk[m * sz.k..(m + 1) * sz.k])).collect();
    Ok(ExactMetrics {
        leakage_bits,
        ss_divergence,
        key_tv,
    })
}

/// `TV(p_{K|M=m}, uniform)` per message for the codebook `cfg` generates.
pub fn key_uniformity_exact(wtc: &SdWtc, aux: &Auxiliary, cfg: &SimConfig) -> Result<Vec<f64>, SimError> {
    cfg.validate()?;
    let laws = CodeLaws::new(wtc, aux)?;
    let cb = generate_codebook(&laws.q_u_pmf()?, &laws.q_v_given_u_kernel()?, cfg)?;
    match enumeration_size(&cb, laws.card_s, 1) {
        Some(c) if c <= EXACT_BUDGET => {}
        _ => {
            return Err(SimError::Budget {
                what: "exact enumeration",
                budget: EXACT_BUDGET,
            })
        }
    }
    let sz = cb.sizes();
    let mut p_k = vec![0.0; sz.m * sz.k];
    for_each_encoding(&laws, &cb, |m, _, ps, cells| {
        for &(cell, w) in cells {
            let k = cell.map_or(0, |c| c.2);
            p_k[m * sz.k + k] += ps * w;
        }
    });
    Ok((0..sz.m).map(|m| tv_to_uniform(&p_k[m * sz.k..(m + 1) * sz.k])).collect())
}
