use std::collections::HashSet;

use super::pmf::{entropy_bits, STOCHASTIC_TOL};
use super::ProbError;

/// Largest dense product alphabet a joint may span.
pub const CELL_BUDGET: usize = 10_000_000;

/// MI values this close below zero are floating-point noise.
const MI_CLAMP: f64 = 1e-12;

/// A dense joint PMF over an ordered list of named finite alphabets.
///
/// Cells are stored row-major: the first axis is the most significant.
#[derive(Debug, Clone, PartialEq)]
pub struct JointPmf {
    names: Vec<String>,
    sizes: Vec<usize>,
    mass: Vec<f64>,
}

impl JointPmf {
    pub fn new<S: Into<String>>(axes: Vec<(S, usize)>, mass: Vec<f64>) -> Result<Self, ProbError> {
        let (names, sizes): (Vec<String>, Vec<usize>) =
            axes.into_iter().map(|(n, s)| (n.into(), s)).unzip();
        let mut seen = HashSet::new();
        for n in &names {
            if !seen.insert(n.as_str()) {
                return Err(ProbError::DuplicateAxis(n.clone()));
            }
        }
        if sizes.iter().any(|&s| s == 0) {
            return Err(ProbError::EmptySupport);
        }
        let cells = checked_cells(&sizes)?;
        if cells != mass.len() {
            return Err(ProbError::ShapeMismatch {
                what: "joint cells",
                expected: cells,
                found: mass.len(),
            });
        }
        let mut total = 0.0;
        for (index, &m) in mass.iter().enumerate() {
            if !m.is_finite() || m < 0.0 {
                return Err(ProbError::NegativeMass { index, value: m });
            }
            total += m;
        }
        if (total - 1.0).abs() > STOCHASTIC_TOL {
            return Err(ProbError::NotStochastic { sum: total });
        }
        let mass = if (total - 1.0).abs() > 1e-12 {
            mass.into_iter().map(|m| m / total).collect()
        } else {
            mass
        };
        Ok(Self { names, sizes, mass })
    }

    /// Builds a joint from `f(multi_index) -> mass`.
    pub fn from_fn<S: Into<String>>(
        axes: Vec<(S, usize)>,
        mut f: impl FnMut(&[usize]) -> f64,
    ) -> Result<Self, ProbError> {
        let axes: Vec<(String, usize)> = axes.into_iter().map(|(n, s)| (n.into(), s)).collect();
        let sizes: Vec<usize> = axes.iter().map(|a| a.1).collect();
        let cells = checked_cells(&sizes)?;
        let mut mass = Vec::with_capacity(cells);
        let mut idx = vec![0usize; sizes.len()];
        for _ in 0..cells {
            mass.push(f(&idx));
            increment(&mut idx, &sizes);
        }
        Self::new(axes, mass)
    }

    pub fn axis_names(&self) -> impl Iterator<Item = &str> {
        self.names.iter().map(String::as_str)
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn mass(&self) -> &[f64] {
        &self.mass
    }

    pub fn axis_size(&self, name: &str) -> Result<usize, ProbError> {
        Ok(self.sizes[self.axis_index(name)?])
    }

    pub fn axis_index(&self, name: &str) -> Result<usize, ProbError> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| ProbError::UnknownAxis(name.to_string()))
    }

    pub fn has_axis(&self, name: &str) -> bool {
        self.names.iter().any(|n| n == name)
    }

    fn resolve(&self, set: &[&str]) -> Result<Vec<usize>, ProbError> {
        let mut out = Vec::with_capacity(set.len());
        for name in set {
            let i = self.axis_index(name)?;
            if out.contains(&i) {
                return Err(ProbError::OverlappingAxes(name.to_string()));
            }
            out.push(i);
        }
        Ok(out)
    }

    /// Sums out every axis not in `keep`; the result keeps the original axis order.
    pub fn marginal(&self, keep: &[&str]) -> Result<JointPmf, ProbError> {
        let mut kept = self.resolve(keep)?;
        kept.sort_unstable();
        let mass = self.marginal_table(&kept);
        Ok(JointPmf {
            names: kept.iter().map(|&i| self.names[i].clone()).collect(),
            sizes: kept.iter().map(|&i| self.sizes[i]).collect(),
            mass,
        })
    }

    /// Dense marginal over the axes `kept` (in ascending axis order).
    fn marginal_table(&self, kept: &[usize]) -> Vec<f64> {
        if kept.len() == self.sizes.len() {
            return self.mass.clone();
        }
        let mut out_stride = vec![0usize; self.sizes.len()];
        let mut stride = 1;
        for &a in kept.iter().rev() {
            out_stride[a] = stride;
            stride *= self.sizes[a];
        }
        let mut out = vec![0.0; stride];
        if kept.is_empty() {
            out[0] = self.mass.iter().sum();
            return out;
        }
        // Innermost axis handled as a tight loop.
        let last = self.sizes.len() - 1;
        let inner = self.sizes[last];
        let inner_stride = out_stride[last];
        let mut idx = vec![0usize; self.sizes.len()];
        let mut base = 0usize;
        for chunk in self.mass.chunks_exact(inner) {
            if inner_stride == 0 {
                out[base] += chunk.iter().sum::<f64>();
            } else {
                for (t, &m) in chunk.iter().enumerate() {
                    out[base + t * inner_stride] += m;
                }
            }
            // advance all but the innermost axis
            let mut a = last;
            while a > 0 {
                a -= 1;
                idx[a] += 1;
                base += out_stride[a];
                if idx[a] < self.sizes[a] {
                    break;
                }
                base -= out_stride[a] * self.sizes[a];
                idx[a] = 0;
            }
        }
        out
    }

    fn set_entropy(&self, axes: &[usize]) -> f64 {
        if axes.is_empty() {
            return 0.0;
        }
        let mut sorted = axes.to_vec();
        sorted.sort_unstable();
        entropy_bits(&self.marginal_table(&sorted))
    }

    /// Conditional entropy `H(A|C)` in bits.
    pub fn entropy(&self, a: &[&str], c: &[&str]) -> Result<f64, ProbError> {
        if a.is_empty() {
            return Err(ProbError::EmptyAxisSet);
        }
        let ai = self.resolve(a)?;
        let ci = self.resolve(c)?;
        disjoint(&[(&ai, a), (&ci, c)])?;
        let ac: Vec<usize> = ai.iter().chain(&ci).copied().collect();
        let h = self.set_entropy(&ac) - self.set_entropy(&ci);
        Ok(if h < 0.0 && h > -MI_CLAMP { 0.0 } else { h })
    }

    /// Conditional mutual information `I(A;B|C)` in bits; `C` may be empty.
    pub fn mutual_information(&self, a: &[&str], b: &[&str], c: &[&str]) -> Result<f64, ProbError> {
        let ai = self.resolve(a)?;
        let bi = self.resolve(b)?;
        let ci = self.resolve(c)?;
        disjoint(&[(&ai, a), (&bi, b), (&ci, c)])?;
        if ai.is_empty() || bi.is_empty() {
            return Ok(0.0);
        }
        let ac: Vec<usize> = ai.iter().chain(&ci).copied().collect();
        let bc: Vec<usize> = bi.iter().chain(&ci).copied().collect();
        let abc: Vec<usize> = ac.iter().chain(&bi).copied().collect();
        let mi = self.set_entropy(&ac) + self.set_entropy(&bc)
            - self.set_entropy(&abc)
            - self.set_entropy(&ci);
        Ok(if mi < 0.0 && mi > -MI_CLAMP { 0.0 } else { mi })
    }

    /// Replaces the axes in `group` by one composite axis `name`, indexed
    /// row-major in the order given. The composite takes the position of the
    /// earliest group member.
    pub fn merge_axes(&self, group: &[&str], name: &str) -> Result<JointPmf, ProbError> {
        let gi = self.resolve(group)?;
        if gi.is_empty() {
            return Err(ProbError::EmptyAxisSet);
        }
        if self
            .names
            .iter()
            .enumerate()
            .any(|(i, n)| n == name && !gi.contains(&i))
        {
            return Err(ProbError::DuplicateAxis(name.to_string()));
        }
        let first = *gi.iter().min().unwrap();
        let mut new_names = Vec::new();
        let mut new_sizes = Vec::new();
        // position of each original axis in the new layout, plus its weight
        // inside the composite (or 1 for untouched axes)
        let mut target = vec![(0usize, 1usize); self.sizes.len()];
        for (i, n) in self.names.iter().enumerate() {
            if i == first {
                new_names.push(name.to_string());
                new_sizes.push(gi.iter().map(|&g| self.sizes[g]).product());
            }
            if !gi.contains(&i) {
                target[i] = (new_names.len(), 1);
                new_names.push(n.clone());
                new_sizes.push(self.sizes[i]);
            }
        }
        let composite_pos = new_names.iter().position(|n| n == name).unwrap();
        let mut w = 1;
        for &g in gi.iter().rev() {
            target[g] = (composite_pos, w);
            w *= self.sizes[g];
        }
        let mut strides = vec![0usize; new_sizes.len()];
        let mut s = 1;
        for k in (0..new_sizes.len()).rev() {
            strides[k] = s;
            s *= new_sizes[k];
        }
        let mut mass = vec![0.0; s];
        let mut idx = vec![0usize; self.sizes.len()];
        for &m in &self.mass {
            let pos: usize = idx
                .iter()
                .enumerate()
                .map(|(a, &v)| strides[target[a].0] * target[a].1 * v)
                .sum();
            mass[pos] += m;
            increment(&mut idx, &self.sizes);
        }
        Ok(JointPmf {
            names: new_names,
            sizes: new_sizes,
            mass,
        })
    }

    pub fn rename_axis(mut self, from: &str, to: &str) -> Result<JointPmf, ProbError> {
        let i = self.axis_index(from)?;
        if from != to && self.has_axis(to) {
            return Err(ProbError::DuplicateAxis(to.to_string()));
        }
        self.names[i] = to.to_string();
        Ok(self)
    }
}

fn disjoint(sets: &[(&Vec<usize>, &[&str])]) -> Result<(), ProbError> {
    for (i, (a, names)) in sets.iter().enumerate() {
        for (b, _) in &sets[i + 1..] {
            if let Some(pos) = a.iter().position(|x| b.contains(x)) {
                return Err(ProbError::OverlappingAxes(names[pos].to_string()));
            }
        }
    }
    Ok(())
}

pub(crate) fn checked_cells(sizes: &[usize]) -> Result<usize, ProbError> {
    let mut cells: usize = 1;
    for &s in sizes {
        cells = cells
            .checked_mul(s)
            .filter(|&c| c <= CELL_BUDGET)
            .ok_or(ProbError::CellBudget {
                budget: CELL_BUDGET,
            })?;
    }
    Ok(cells)
}

pub(crate) fn increment(idx: &mut [usize], sizes: &[usize]) {
    for a in (0..idx.len()).rev() {
        idx[a] += 1;
        if idx[a] < sizes[a] {
            return;
        }
        idx[a] = 0;
    }
}
