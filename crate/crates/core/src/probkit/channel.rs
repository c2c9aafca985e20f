use serde::{Deserialize, Serialize};

use super::joint::{checked_cells, JointPmf};
use super::pmf::{CondKernel, FinitePmf};
use super::ProbError;

/// Canonical axis names of an assembled joint.
pub mod axes {
    pub const S: &str = "S";
    pub const U: &str = "U";
    pub const V: &str = "V";
    pub const X: &str = "X";
    pub const Y: &str = "Y";
    pub const Z: &str = "Z";
}

/// Declares that the state alphabet is the product `L × S_core` (key first).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct StateFactors {
    #[serde(rename = "L")]
    pub key: usize,
    #[serde(rename = "S_core")]
    pub core: usize,
}

/// Discrete memoryless state-dependent wiretap channel `W_S`, `W_{Y,Z|S,X}`.
///
/// The kernel is indexed by input `(s, x)` and output `y * |Z| + z`.
#[derive(Debug, Clone, PartialEq)]
pub struct SdWtc {
    card_s: usize,
    card_x: usize,
    card_y: usize,
    card_z: usize,
    state_law: FinitePmf,
    kernel: CondKernel,
    factors: Option<StateFactors>,
}

impl SdWtc {
    pub fn new(
        state_law: FinitePmf,
        kernel: CondKernel,
        card_y: usize,
        card_z: usize,
    ) -> Result<Self, ProbError> {
        let shape = kernel.input_shape();
        if shape.len() != 2 || shape[0] != state_law.len() {
            return Err(ProbError::DimensionMismatch {
                axis: "S",
                left: state_law.len(),
                right: shape.first().copied().unwrap_or(0),
            });
        }
        if kernel.output_size() != card_y * card_z {
            return Err(ProbError::DimensionMismatch {
                axis: "Y×Z",
                left: card_y * card_z,
                right: kernel.output_size(),
            });
        }
        Ok(Self {
            card_s: shape[0],
            card_x: shape[1],
            card_y,
            card_z,
            state_law,
            kernel,
            factors: None,
        })
    }

    /// Builds the kernel from `f(s, x, y, z)`.
    pub fn from_fn(
        state_law: FinitePmf,
        card_x: usize,
        card_y: usize,
        card_z: usize,
        mut f: impl FnMut(usize, usize, usize, usize) -> f64,
    ) -> Result<Self, ProbError> {
        let card_s = state_law.len();
        let kernel = CondKernel::from_fn(vec![card_s, card_x], card_y * card_z, |row, out| {
            f(row / card_x, row % card_x, out / card_z, out % card_z)
        })?;
        Self::new(state_law, kernel, card_y, card_z)
    }

    pub fn with_factors(mut self, factors: StateFactors) -> Result<Self, ProbError> {
        if factors.key * factors.core != self.card_s {
            return Err(ProbError::DimensionMismatch {
                axis: "S (factors)",
                left: factors.key * factors.core,
                right: self.card_s,
            });
        }
        self.factors = Some(factors);
        Ok(self)
    }

    pub fn card_s(&self) -> usize {
        self.card_s
    }
    pub fn card_x(&self) -> usize {
        self.card_x
    }
    pub fn card_y(&self) -> usize {
        self.card_y
    }
    pub fn card_z(&self) -> usize {
        self.card_z
    }
    pub fn state_law(&self) -> &FinitePmf {
        &self.state_law
    }
    pub fn kernel(&self) -> &CondKernel {
        &self.kernel
    }
    pub fn factors(&self) -> Option<StateFactors> {
        self.factors
    }

    /// `W(y, z | s, x)`.
    pub fn prob(&self, s: usize, x: usize, y: usize, z: usize) -> f64 {
        self.kernel.get(s * self.card_x + x, y * self.card_z + z)
    }

    /// Legitimate marginal `W(y | s, x)` as a flat `[s][x][y]` table.
    pub fn legit_table(&self) -> Vec<f64> {
        let mut t = vec![0.0; self.card_s * self.card_x * self.card_y];
        for row in 0..self.card_s * self.card_x {
            let r = self.kernel.row(row).probs();
            for y in 0..self.card_y {
                t[row * self.card_y + y] = r[y * self.card_z..(y + 1) * self.card_z].iter().sum();
            }
        }
        t
    }

    /// Eavesdropper marginal `W(z | s, x)` as a flat `[s][x][z]` table.
    pub fn eve_table(&self) -> Vec<f64> {
        let mut t = vec![0.0; self.card_s * self.card_x * self.card_z];
        for row in 0..self.card_s * self.card_x {
            let r = self.kernel.row(row).probs();
            for y in 0..self.card_y {
                for z in 0..self.card_z {
                    t[row * self.card_z + z] += r[y * self.card_z + z];
                }
            }
        }
        t
    }
}

/// Auxiliary kernel `q_{U,V,X|S}`; output index `(u * |V| + v) * |X| + x`.
#[derive(Debug, Clone, PartialEq)]
pub struct Auxiliary {
    card_u: usize,
    card_v: usize,
    card_x: usize,
    kernel: CondKernel,
}

impl Auxiliary {
    pub fn new(card_u: usize, card_v: usize, card_x: usize, kernel: CondKernel) -> Result<Self, ProbError> {
        if kernel.input_shape().len() != 1 {
            return Err(ProbError::DimensionMismatch {
                axis: "S",
                left: 1,
                right: kernel.input_shape().len(),
            });
        }
        if kernel.output_size() != card_u * card_v * card_x {
            return Err(ProbError::DimensionMismatch {
                axis: "U×V×X",
                left: card_u * card_v * card_x,
                right: kernel.output_size(),
            });
        }
        Ok(Self {
            card_u,
            card_v,
            card_x,
            kernel,
        })
    }

    /// Builds the kernel from `f(s, u, v, x)`.
    pub fn from_fn(
        card_s: usize,
        card_u: usize,
        card_v: usize,
        card_x: usize,
        mut f: impl FnMut(usize, usize, usize, usize) -> f64,
    ) -> Result<Self, ProbError> {
        let kernel = CondKernel::from_fn(vec![card_s], card_u * card_v * card_x, |s, out| {
            let x = out % card_x;
            let uv = out / card_x;
            f(s, uv / card_v, uv % card_v, x)
        })?;
        Self::new(card_u, card_v, card_x, kernel)
    }

    pub fn card_s(&self) -> usize {
        self.kernel.input_shape()[0]
    }
    pub fn card_u(&self) -> usize {
        self.card_u
    }
    pub fn card_v(&self) -> usize {
        self.card_v
    }
    pub fn card_x(&self) -> usize {
        self.card_x
    }
    pub fn kernel(&self) -> &CondKernel {
        &self.kernel
    }

    /// `q(u, v, x | s)`.
    pub fn prob(&self, s: usize, u: usize, v: usize, x: usize) -> f64 {
        self.kernel.get(s, (u * self.card_v + v) * self.card_x + x)
    }
}

/// Joint `W_S(s) q(u,v,x|s) W(y,z|s,x)` over axes `(S, U, V, X, Y, Z)`.
pub fn assemble_joint(wtc: &SdWtc, aux: &Auxiliary) -> Result<JointPmf, ProbError> {
    if aux.card_s() != wtc.card_s() {
        return Err(ProbError::DimensionMismatch {
            axis: "S",
            left: wtc.card_s(),
            right: aux.card_s(),
        });
    }
    if aux.card_x() != wtc.card_x() {
        return Err(ProbError::DimensionMismatch {
            axis: "X",
            left: wtc.card_x(),
            right: aux.card_x(),
        });
    }
    let (cs, cu, cv, cx, cy, cz) = (
        wtc.card_s(),
        aux.card_u(),
        aux.card_v(),
        wtc.card_x(),
        wtc.card_y(),
        wtc.card_z(),
    );
    let cells = checked_cells(&[cs, cu, cv, cx, cy, cz])?;
    let mut mass = Vec::with_capacity(cells);
    let yz = cy * cz;
    for s in 0..cs {
        let ws = wtc.state_law().get(s);
        for u in 0..cu {
            for v in 0..cv {
                for x in 0..cx {
                    let a = ws * aux.prob(s, u, v, x);
                    let row = wtc.kernel().row(s * cx + x).probs();
                    if a == 0.0 {
                        mass.extend(std::iter::repeat_n(0.0, yz));
                    } else {
                        mass.extend(row.iter().map(|&w| a * w));
                    }
                }
            }
        }
    }
    JointPmf::new(
        vec![
            (axes::S, cs),
            (axes::U, cu),
            (axes::V, cv),
            (axes::X, cx),
            (axes::Y, cy),
            (axes::Z, cz),
        ],
        mass,
    )
}
