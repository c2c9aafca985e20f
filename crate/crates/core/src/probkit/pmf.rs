use serde::{Deserialize, Serialize};

use super::ProbError;

/// Mass sums further than this from one are rejected outright.
pub const STOCHASTIC_TOL: f64 = 1e-9;

/// Below this deviation a sum is treated as floating-point noise and the
/// entries are stored untouched, so that emit/parse cycles are exact.
const NOISE_TOL: f64 = 1e-12;

/// A probability mass function over `{0, .., len-1}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct FinitePmf {
    probs: Vec<f64>,
}

impl FinitePmf {
    /// Validates and (if needed) renormalizes `probs`.
    pub fn new(probs: Vec<f64>) -> Result<Self, ProbError> {
        Ok(Self {
            probs: normalize_row(probs)?,
        })
    }

    pub fn uniform(size: usize) -> Result<Self, ProbError> {
        if size == 0 {
            return Err(ProbError::EmptySupport);
        }
        Ok(Self {
            probs: vec![1.0 / size as f64; size],
        })
    }

    pub fn point(size: usize, at: usize) -> Result<Self, ProbError> {
        if at >= size {
            return Err(ProbError::IndexOutOfRange { index: at, size });
        }
        let mut probs = vec![0.0; size];
        probs[at] = 1.0;
        Ok(Self { probs })
    }

    /// `Ber(p)` as the vector `(1-p, p)`.
    pub fn bernoulli(p: f64) -> Result<Self, ProbError> {
        if !(0.0..=1.0).contains(&p) {
            return Err(ProbError::OutOfUnitInterval(p));
        }
        Ok(Self {
            probs: vec![1.0 - p, p],
        })
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn get(&self, i: usize) -> f64 {
        self.probs[i]
    }

    /// Shannon entropy in bits.
    pub fn entropy(&self) -> f64 {
        entropy_bits(&self.probs)
    }

    /// Product law `self × other`, indexed `a * other.len() + b`.
    pub fn product(&self, other: &FinitePmf) -> FinitePmf {
        let mut probs = Vec::with_capacity(self.len() * other.len());
        for &a in &self.probs {
            for &b in &other.probs {
                probs.push(a * b);
            }
        }
        FinitePmf { probs }
    }
}

impl TryFrom<Vec<f64>> for FinitePmf {
    type Error = ProbError;

    fn try_from(v: Vec<f64>) -> Result<Self, Self::Error> {
        FinitePmf::new(v)
    }
}

impl From<FinitePmf> for Vec<f64> {
    fn from(p: FinitePmf) -> Self {
        p.probs
    }
}

pub(crate) fn normalize_row(mut probs: Vec<f64>) -> Result<Vec<f64>, ProbError> {
    if probs.is_empty() {
        return Err(ProbError::EmptySupport);
    }
    let mut total = 0.0;
    for (index, &p) in probs.iter().enumerate() {
        if !p.is_finite() || p < 0.0 {
            return Err(ProbError::NegativeMass { index, value: p });
        }
        total += p;
    }
    let dev = (total - 1.0).abs();
    if dev > STOCHASTIC_TOL {
        return Err(ProbError::NotStochastic { sum: total });
    }
    if dev > NOISE_TOL {
        probs.iter_mut().for_each(|p| *p /= total);
    }
    Ok(probs)
}

/// `-Σ p log2 p` with `0 log 0 = 0`.
pub(crate) fn entropy_bits(probs: &[f64]) -> f64 {
    probs
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| -p * p.log2())
        .sum()
}

/// A row-stochastic kernel from a product input alphabet to `{0, .., output_size-1}`.
///
/// Rows are stored in row-major order of the input tuple (first coordinate
/// most significant).
#[derive(Debug, Clone, PartialEq)]
pub struct CondKernel {
    input_shape: Vec<usize>,
    output_size: usize,
    rows: Vec<FinitePmf>,
}

impl CondKernel {
    pub fn new(
        input_shape: Vec<usize>,
        output_size: usize,
        rows: Vec<Vec<f64>>,
    ) -> Result<Self, ProbError> {
        let expected: usize = input_shape.iter().product();
        if input_shape.iter().any(|&d| d == 0) || output_size == 0 {
            return Err(ProbError::EmptySupport);
        }
        if rows.len() != expected {
            return Err(ProbError::ShapeMismatch {
                what: "kernel rows",
                expected,
                found: rows.len(),
            });
        }
        let rows = rows
            .into_iter()
            .enumerate()
            .map(|(row, r)| {
                if r.len() != output_size {
                    return Err(ProbError::ShapeMismatch {
                        what: "kernel row length",
                        expected: output_size,
                        found: r.len(),
                    });
                }
                FinitePmf::new(r).map_err(|e| ProbError::BadRow {
                    row,
                    source: Box::new(e),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self {
            input_shape,
            output_size,
            rows,
        })
    }

    /// Builds a kernel from a closure `f(input_index, output) -> mass`.
    pub fn from_fn(
        input_shape: Vec<usize>,
        output_size: usize,
        mut f: impl FnMut(usize, usize) -> f64,
    ) -> Result<Self, ProbError> {
        let n_rows: usize = input_shape.iter().product();
        let rows = (0..n_rows)
            .map(|r| (0..output_size).map(|o| f(r, o)).collect())
            .collect();
        Self::new(input_shape, output_size, rows)
    }

    pub fn input_shape(&self) -> &[usize] {
        &self.input_shape
    }

    pub fn output_size(&self) -> usize {
        self.output_size
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[FinitePmf] {
        &self.rows
    }

    pub fn row(&self, input_index: usize) -> &FinitePmf {
        &self.rows[input_index]
    }

    /// Flat row index of an input tuple.
    pub fn input_index(&self, input: &[usize]) -> usize {
        debug_assert_eq!(input.len(), self.input_shape.len());
        input
            .iter()
            .zip(&self.input_shape)
            .fold(0, |acc, (&i, &d)| acc * d + i)
    }

    pub fn get(&self, input_index: usize, output: usize) -> f64 {
        self.rows[input_index].probs[output]
    }

    /// Smallest strictly positive entry.
    pub fn min_positive(&self) -> Option<f64> {
        self.rows
            .iter()
            .flat_map(|r| r.probs.iter().copied())
            .filter(|&p| p > 0.0)
            .min_by(f64::total_cmp)
    }
}
