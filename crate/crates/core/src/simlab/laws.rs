use crate::probkit::{Auxiliary, CondKernel, FinitePmf, SdWtc};

use super::SimError;

/// Single-letter laws the code is built from, all derived from
/// `W_S(s) q(u,v,x|s) W(y,z|s,x)`.
#[derive(Debug, Clone)]
pub struct CodeLaws {
    pub card_s: usize,
    pub card_u: usize,
    pub card_v: usize,
    pub card_x: usize,
    pub card_y: usize,
    pub card_z: usize,
    pub state: Vec<f64>,
    pub q_u: Vec<f64>,
    /// `[u][v]`.
    pub q_v_given_u: Vec<f64>,
    /// `[u][v][s]`; rows of zero-probability pairs are all zero.
    pub q_s_given_uv: Vec<f64>,
    /// `[u][v][s][x]`; undefined rows fall back to `q(x|s)`.
    pub q_x_given_uvs: Vec<f64>,
    /// `[s][x]`.
    pub q_x_given_s: Vec<f64>,
    /// Joint `[u][v][y]` the decoder tests against.
    pub q_uvy: Vec<f64>,
    /// `[u][v][s][z]`: the eavesdropper's view of one letter given the codeword pair.
    pub z_given_uvs: Vec<f64>,
    /// Single-letter `q(z)`.
    pub q_z: Vec<f64>,
    /// Channel `[s][x][y * |Z| + z]`.
    pub channel: Vec<f64>,
}

impl CodeLaws {
    pub fn new(wtc: &SdWtc, aux: &Auxiliary) -> Result<Self, SimError> {
        if aux.card_s() != wtc.card_s() || aux.card_x() != wtc.card_x() {
            return Err(SimError::Alphabet(format!(
                "auxiliary is for |S| = {}, |X| = {}; channel has {}, {}",
                aux.card_s(),
                aux.card_x(),
                wtc.card_s(),
                wtc.card_x()
            )));
        }
        let (cs, cu, cv, cx, cy, cz) = (
            wtc.card_s(),
            aux.card_u(),
            aux.card_v(),
            wtc.card_x(),
            wtc.card_y(),
            wtc.card_z(),
        );
        let state = wtc.state_law().probs().to_vec();
        let mut j = vec![0.0; cu * cv * cs * cx];
        for s in 0..cs {
            for u in 0..cu {
                for v in 0..cv {
                    for x in 0..cx {
                        j[((u * cv + v) * cs + s) * cx + x] = state[s] * aux.prob(s, u, v, x);
                    }
                }
            }
        }
        let mut q_uvs = vec![0.0; cu * cv * cs];
        for (i, m) in q_uvs.iter_mut().enumerate() {
            *m = j[i * cx..(i + 1) * cx].iter().sum();
        }
        let mut q_uv = vec![0.0; cu * cv];
        for (i, m) in q_uv.iter_mut().enumerate() {
            *m = q_uvs[i * cs..(i + 1) * cs].iter().sum();
        }
        let q_u: Vec<f64> = (0..cu).map(|u| q_uv[u * cv..(u + 1) * cv].iter().sum()).collect();
        let mut q_v_given_u = vec![0.0; cu * cv];
        for u in 0..cu {
            for v in 0..cv {
                q_v_given_u[u * cv + v] = if q_u[u] > 0.0 { q_uv[u * cv + v] / q_u[u] } else { 1.0 / cv as f64 };
            }
        }
        let mut q_s_given_uv = vec![0.0; cu * cv * cs];
        for uv in 0..cu * cv {
            if q_uv[uv] > 0.0 {
                for s in 0..cs {
                    q_s_given_uv[uv * cs + s] = q_uvs[uv * cs + s] / q_uv[uv];
                }
            }
        }
        let mut q_x_given_s = vec![0.0; cs * cx];
        for s in 0..cs {
            for x in 0..cx {
                q_x_given_s[s * cx + x] = (0..cu * cv).map(|uv| aux.prob(s, uv / cv, uv % cv, x)).sum();
            }
        }
        let mut q_x_given_uvs = vec![0.0; cu * cv * cs * cx];
        for i in 0..cu * cv * cs {
            let s = i % cs;
            for x in 0..cx {
                q_x_given_uvs[i * cx + x] = if q_uvs[i] > 0.0 {
                    j[i * cx + x] / q_uvs[i]
                } else {
                    q_x_given_s[s * cx + x]
                };
            }
        }
        let channel: Vec<f64> = (0..cs * cx).flat_map(|r| wtc.kernel().row(r).probs().to_vec()).collect();
        let mut q_uvy = vec![0.0; cu * cv * cy];
        let mut z_given_uvs = vec![0.0; cu * cv * cs * cz];
        let mut q_z = vec![0.0; cz];
        for uv in 0..cu * cv {
            for s in 0..cs {
                let i = uv * cs + s;
                for x in 0..cx {
                    let px = q_x_given_uvs[i * cx + x];
                    let w = &channel[(s * cx + x) * cy * cz..(s * cx + x + 1) * cy * cz];
                    for y in 0..cy {
                        for z in 0..cz {
                            let p = w[y * cz + z];
                            q_uvy[uv * cy + y] += j[i * cx + x] * p;
                            q_z[z] += j[i * cx + x] * p;
                            z_given_uvs[i * cz + z] += px * p;
                        }
                    }
                }
            }
        }
        Ok(Self {
            card_s: cs,
            card_u: cu,
            card_v: cv,
            card_x: cx,
            card_y: cy,
            card_z: cz,
            state,
            q_u,
            q_v_given_u,
            q_s_given_uv,
            q_x_given_uvs,
            q_x_given_s,
            q_uvy,
            z_given_uvs,
            q_z,
            channel,
        })
    }

    pub fn q_u_pmf(&self) -> Result<FinitePmf, SimError> {
        Ok(FinitePmf::new(self.q_u.clone())?)
    }

    pub fn q_v_given_u_kernel(&self) -> Result<CondKernel, SimError> {
        let cv = self.card_v;
        Ok(CondKernel::from_fn(vec![self.card_u], cv, |u, v| self.q_v_given_u[u * cv + v])?)
    }

    pub(crate) fn s_given_uv(&self, u: usize, v: usize, s: usize) -> f64 {
        self.q_s_given_uv[(u * self.card_v + v) * self.card_s + s]
    }

    pub(crate) fn x_row(&self, u: usize, v: usize, s: usize) -> &[f64] {
        let i = (u * self.card_v + v) * self.card_s + s;
        &self.q_x_given_uvs[i * self.card_x..(i + 1) * self.card_x]
    }

    pub(crate) fn x_row_given_s(&self, s: usize) -> &[f64] {
        &self.q_x_given_s[s * self.card_x..(s + 1) * self.card_x]
    }

    pub(crate) fn channel_row(&self, s: usize, x: usize) -> &[f64] {
        let n = self.card_y * self.card_z;
        &self.channel[(s * self.card_x + x) * n..(s * self.card_x + x + 1) * n]
    }

    pub(crate) fn z_row(&self, u: usize, v: usize, s: usize) -> &[f64] {
        let i = (u * self.card_v + v) * self.card_s + s;
        &self.z_given_uvs[i * self.card_z..(i + 1) * self.card_z]
    }
}
