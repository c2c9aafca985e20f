use serde::Serialize;

use crate::probkit::{axes, entropy_bits, JointPmf, SdWtc};

use super::bounds::{Cap, RegionBounds};
use super::RegionError;

/// The six unconditional MI values every scheme's bounds are built from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InfoTerms {
    pub uv_y: f64,
    pub u_y: f64,
    pub uv_s: f64,
    pub u_s: f64,
    pub uv_z: f64,
    pub u_z: f64,
}

impl InfoTerms {
    pub fn from_joint(j: &JointPmf) -> Result<Self, RegionError> {
        require_axes(j, &[axes::S, axes::U, axes::V, axes::Y, axes::Z])?;
        let uv = [axes::U, axes::V];
        let u = [axes::U];
        Ok(Self {
            uv_y: j.mutual_information(&uv, &[axes::Y], &[])?,
            u_y: j.mutual_information(&u, &[axes::Y], &[])?,
            uv_s: j.mutual_information(&uv, &[axes::S], &[])?,
            u_s: j.mutual_information(&u, &[axes::S], &[])?,
            uv_z: j.mutual_information(&uv, &[axes::Z], &[])?,
            u_z: j.mutual_information(&u, &[axes::Z], &[])?,
        })
    }

    /// `[uv_y, u_y, uv_s, u_s, uv_z, u_z]`.
    pub fn as_array(&self) -> [f64; 6] {
        [self.uv_y, self.u_y, self.uv_s, self.u_s, self.uv_z, self.u_z]
    }

    /// `I(V;Y|U)` by the chain rule.
    pub fn v_y_given_u(&self) -> f64 {
        self.uv_y - self.u_y
    }

    /// `I(V;Z|U)` by the chain rule.
    pub fn v_z_given_u(&self) -> f64 {
        self.uv_z - self.u_z
    }

    pub fn region_a(&self) -> RegionBounds {
        let b1 = self.uv_y - self.uv_s;
        let b2 = self.v_y_given_u() - self.v_z_given_u();
        let b3 = self.uv_y - self.v_z_given_u() - self.u_s;
        RegionBounds::new(b1, b2, b3)
    }

    pub fn region_per(&self) -> RegionBounds {
        RegionBounds {
            b1: self.uv_y - self.uv_s,
            b2: self.v_y_given_u() - self.v_z_given_u(),
            b3: Cap::Unbounded,
        }
    }
}

pub(crate) fn require_axes(j: &JointPmf, names: &[&str]) -> Result<(), RegionError> {
    for n in names {
        if !j.has_axis(n) {
            return Err(RegionError::MissingAxis(n.to_string()));
        }
    }
    Ok(())
}

/// Evaluates [`InfoTerms`] directly from a channel and a flat auxiliary
/// table `a[s][u][v][x]` without materializing the six-axis joint, and
/// differentiates any linear combination of them with respect to `a`.
///
/// Used in the search inner loop; agrees with the joint route to rounding.
pub(crate) struct FastEval {
    cs: usize,
    cx: usize,
    cy: usize,
    cz: usize,
    ws: Vec<f64>,
    wy: Vec<f64>,
    wz: Vec<f64>,
}

/// Marginal tables of the last evaluation.
pub(crate) struct Workspace {
    cu: usize,
    cv: usize,
    uvs: Tables,
    uvy: Tables,
    uvz: Tables,
}

struct Tables {
    cc: usize,
    t: Vec<f64>,
    uv: Vec<f64>,
    u: Vec<f64>,
    c: Vec<f64>,
    uc: Vec<f64>,
    d: Vec<f64>,
}

impl Tables {
    fn new(cu: usize, cv: usize, cc: usize) -> Self {
        Self {
            cc,
            t: vec![0.0; cu * cv * cc],
            uv: vec![0.0; cu * cv],
            u: vec![0.0; cu],
            c: vec![0.0; cc],
            uc: vec![0.0; cu * cc],
            d: vec![0.0; cu * cv * cc],
        }
    }

    /// `(I(U,V;C), I(U;C))`.
    fn mi(&mut self, cu: usize, cv: usize) -> (f64, f64) {
        let cc = self.cc;
        self.uv.iter_mut().for_each(|v| *v = 0.0);
        self.c.iter_mut().for_each(|v| *v = 0.0);
        self.uc.iter_mut().for_each(|v| *v = 0.0);
        for u in 0..cu {
            for v in 0..cv {
                let r = &self.t[(u * cv + v) * cc..(u * cv + v + 1) * cc];
                for (c, &m) in r.iter().enumerate() {
                    self.uv[u * cv + v] += m;
                    self.c[c] += m;
                    self.uc[u * cc + c] += m;
                }
            }
        }
        for u in 0..cu {
            self.u[u] = self.uv[u * cv..(u + 1) * cv].iter().sum();
        }
        let h_c = entropy_bits(&self.c);
        let uv_c = entropy_bits(&self.uv) + h_c - entropy_bits(&self.t);
        let u_c = entropy_bits(&self.u) + h_c - entropy_bits(&self.uc);
        (uv_c.max(0.0), u_c.max(0.0))
    }

    /// Fills `d[uv][c] = ∂(k_uv I(U,V;C) + k_u I(U;C)) / ∂t[uv][c]`, up to a
    /// constant that cancels inside every simplex row.
    fn slopes(&mut self, cu: usize, cv: usize, k_uv: f64, k_u: f64) {
        let cc = self.cc;
        for u in 0..cu {
            for v in 0..cv {
                let uv = u * cv + v;
                for c in 0..cc {
                    let i = uv * cc + c;
                    let mut g = 0.0;
                    if k_uv != 0.0 {
                        g += k_uv * log_ratio(self.t[i], self.uv[uv] * self.c[c]);
                    }
                    if k_u != 0.0 {
                        g += k_u * log_ratio(self.uc[u * cc + c], self.u[u] * self.c[c]);
                    }
                    self.d[i] = g;
                }
            }
        }
    }
}

const LOG_FLOOR: f64 = -40.0;

fn log_ratio(num: f64, den: f64) -> f64 {
    if num <= 0.0 || den <= 0.0 {
        LOG_FLOOR
    } else {
        (num / den).log2().max(LOG_FLOOR)
    }
}

impl FastEval {
    pub(crate) fn new(wtc: &SdWtc) -> Self {
        Self {
            cs: wtc.card_s(),
            cx: wtc.card_x(),
            cy: wtc.card_y(),
            cz: wtc.card_z(),
            ws: wtc.state_law().probs().to_vec(),
            wy: wtc.legit_table(),
            wz: wtc.eve_table(),
        }
    }

    pub(crate) fn workspace(&self, cu: usize, cv: usize) -> Workspace {
        Workspace {
            cu,
            cv,
            uvs: Tables::new(cu, cv, self.cs),
            uvy: Tables::new(cu, cv, self.cy),
            uvz: Tables::new(cu, cv, self.cz),
        }
    }

    pub(crate) fn terms(&self, cu: usize, cv: usize, aux: &[f64]) -> InfoTerms {
        let mut ws = self.workspace(cu, cv);
        self.eval(&mut ws, aux)
    }

    pub(crate) fn eval(&self, w: &mut Workspace, aux: &[f64]) -> InfoTerms {
        let (cs, cx, cy, cz) = (self.cs, self.cx, self.cy, self.cz);
        let (cu, cv) = (w.cu, w.cv);
        let nuv = cu * cv;
        for t in [&mut w.uvs.t, &mut w.uvy.t, &mut w.uvz.t] {
            t.iter_mut().for_each(|v| *v = 0.0);
        }
        for s in 0..cs {
            let ws = self.ws[s];
            if ws == 0.0 {
                continue;
            }
            let row = &aux[s * nuv * cx..(s + 1) * nuv * cx];
            for uv in 0..nuv {
                for x in 0..cx {
                    let q = ws * row[uv * cx + x];
                    if q == 0.0 {
                        continue;
                    }
                    w.uvs.t[uv * cs + s] += q;
                    let wy = &self.wy[(s * cx + x) * cy..(s * cx + x + 1) * cy];
                    for (acc, &p) in w.uvy.t[uv * cy..(uv + 1) * cy].iter_mut().zip(wy) {
                        *acc += q * p;
                    }
                    let wz = &self.wz[(s * cx + x) * cz..(s * cx + x + 1) * cz];
                    for (acc, &p) in w.uvz.t[uv * cz..(uv + 1) * cz].iter_mut().zip(wz) {
                        *acc += q * p;
                    }
                }
            }
        }
        let (uv_s, u_s) = w.uvs.mi(cu, cv);
        let (uv_y, u_y) = w.uvy.mi(cu, cv);
        let (uv_z, u_z) = w.uvz.mi(cu, cv);
        InfoTerms {
            uv_y,
            u_y,
            uv_s,
            u_s,
            uv_z,
            u_z,
        }
    }

    /// Gradient of `Σ k_i term_i` (terms ordered as [`InfoTerms::as_array`])
    /// with respect to `a[s][u][v][x]`, at the point of the last [`Self::eval`].
    pub(crate) fn gradient(&self, w: &mut Workspace, k: &[f64; 6], out: &mut [f64]) {
        let (cs, cx, cy, cz) = (self.cs, self.cx, self.cy, self.cz);
        let (cu, cv) = (w.cu, w.cv);
        let nuv = cu * cv;
        w.uvy.slopes(cu, cv, k[0], k[1]);
        w.uvs.slopes(cu, cv, k[2], k[3]);
        w.uvz.slopes(cu, cv, k[4], k[5]);
        for s in 0..cs {
            let ws = self.ws[s];
            for uv in 0..nuv {
                let ds = w.uvs.d[uv * cs + s];
                let dy = &w.uvy.d[uv * cy..(uv + 1) * cy];
                let dz = &w.uvz.d[uv * cz..(uv + 1) * cz];
                for x in 0..cx {
                    let wy = &self.wy[(s * cx + x) * cy..(s * cx + x + 1) * cy];
                    let wz = &self.wz[(s * cx + x) * cz..(s * cx + x + 1) * cz];
                    let gy: f64 = wy.iter().zip(dy).map(|(a, b)| a * b).sum();
                    let gz: f64 = wz.iter().zip(dz).map(|(a, b)| a * b).sum();
                    out[(s * nuv + uv) * cx + x] = ws * (ds + gy + gz);
                }
            }
        }
    }
}
