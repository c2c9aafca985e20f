use super::pmf::{CondKernel, FinitePmf};
use super::ProbError;

/// Binary entropy `h(p)` in bits.
pub fn binary_entropy(p: f64) -> Result<f64, ProbError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(ProbError::OutOfUnitInterval(p));
    }
    Ok(h2(p))
}

fn h2(p: f64) -> f64 {
    let term = |t: f64| if t > 0.0 { -t * t.log2() } else { 0.0 };
    term(p) + term(1.0 - p)
}

/// Inverse of `h` restricted to `[0, 0.5]`, by bisection.
pub fn binary_entropy_inv(v: f64) -> Result<f64, ProbError> {
    if !(0.0..=1.0).contains(&v) {
        return Err(ProbError::OutOfUnitInterval(v));
    }
    if v == 0.0 {
        return Ok(0.0);
    }
    if v == 1.0 {
        return Ok(0.5);
    }
    // h is strictly increasing on [0, 0.5]
    let (mut lo, mut hi) = (0.0_f64, 0.5_f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if h2(mid) < v {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// `½ Σ |p(x) − q(x)|`.
pub fn tv_distance(p: &FinitePmf, q: &FinitePmf) -> Result<f64, ProbError> {
    if p.len() != q.len() {
        return Err(ProbError::ShapeMismatch {
            what: "support size",
            expected: p.len(),
            found: q.len(),
        });
    }
    Ok(tv_slices(p.probs(), q.probs()))
}

pub(crate) fn tv_slices(p: &[f64], q: &[f64]) -> f64 {
    0.5 * p.iter().zip(q).map(|(a, b)| (a - b).abs()).sum::<f64>()
}

/// `D(p || q)` in bits; `f64::INFINITY` when `p` puts mass where `q` has none.
pub fn kl_divergence(p: &FinitePmf, q: &FinitePmf) -> Result<f64, ProbError> {
    if p.len() != q.len() {
        return Err(ProbError::ShapeMismatch {
            what: "support size",
            expected: p.len(),
            found: q.len(),
        });
    }
    Ok(kl_slices(p.probs(), q.probs()))
}

pub(crate) fn kl_slices(p: &[f64], q: &[f64]) -> f64 {
    let mut d = 0.0;
    for (&a, &b) in p.iter().zip(q) {
        if a > 0.0 {
            if b == 0.0 {
                return f64::INFINITY;
            }
            d += a * (a / b).log2();
        }
    }
    d.max(0.0)
}

/// Terms of the total-variation bound on conditional relative entropy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lemma5Terms {
    /// `D(p_{Y|X} || q^n_{Y|X} | p_X)`
    pub divergence: f64,
    /// `|| p_X p_{Y|X} − p_X q^n_{Y|X} ||_TV`
    pub tv: f64,
    /// smallest positive single-letter entry of `q_{Y|X}`
    pub xi: f64,
    /// `tv · (n log|Y| + log(1/tv) + n log(1/xi))`, zero when `tv = 0`
    pub bound: f64,
}

impl Lemma5Terms {
    pub fn gap(&self) -> f64 {
        self.bound - self.divergence
    }
}

/// Evaluates both sides of the TV-dominates-divergence inequality.
///
/// `p_ygx` is a block kernel with input shape `[|X|; n]` and output size
/// `|Y|^n`, both row-major with the first letter most significant.
pub fn lemma5_terms(
    p_x: &FinitePmf,
    p_ygx: &CondKernel,
    q_ygx: &CondKernel,
    n: usize,
) -> Result<Lemma5Terms, ProbError> {
    if q_ygx.input_shape().len() != 1 {
        return Err(ProbError::ShapeMismatch {
            what: "single-letter kernel inputs",
            expected: 1,
            found: q_ygx.input_shape().len(),
        });
    }
    let cx = q_ygx.input_shape()[0];
    let cy = q_ygx.output_size();
    let blocks_x = cx.pow(n as u32);
    let blocks_y = cy.pow(n as u32);
    if p_x.len() != blocks_x || p_ygx.n_rows() != blocks_x {
        return Err(ProbError::ShapeMismatch {
            what: "input blocks",
            expected: blocks_x,
            found: p_ygx.n_rows(),
        });
    }
    if p_ygx.output_size() != blocks_y {
        return Err(ProbError::ShapeMismatch {
            what: "output blocks",
            expected: blocks_y,
            found: p_ygx.output_size(),
        });
    }
    let xi = q_ygx.min_positive().ok_or(ProbError::EmptySupport)?;

    let mut divergence = 0.0;
    let mut tv = 0.0;
    let mut qn = vec![0.0; blocks_y];
    for xb in 0..blocks_x {
        let px = p_x.get(xb);
        product_row(q_ygx, xb, n, &mut qn);
        let prow = p_ygx.row(xb).probs();
        if px > 0.0 {
            let d = kl_slices(prow, &qn);
            if d.is_infinite() {
                return Err(ProbError::NotAbsolutelyContinuous { row: xb });
            }
            divergence += px * d;
        }
        tv += px * tv_slices(prow, &qn);
    }
    let nf = n as f64;
    let bound = if tv > 0.0 {
        tv * (nf * (cy as f64).log2() + (1.0 / tv).log2() + nf * (1.0 / xi).log2())
    } else {
        0.0
    };
    Ok(Lemma5Terms {
        divergence,
        tv,
        xi,
        bound,
    })
}

/// `bound − divergence`; nonnegative whenever the inequality holds.
pub fn lemma5_gap(
    p_x: &FinitePmf,
    p_ygx: &CondKernel,
    q_ygx: &CondKernel,
    n: usize,
) -> Result<f64, ProbError> {
    lemma5_terms(p_x, p_ygx, q_ygx, n).map(|t| t.gap())
}

/// Fills `out` with `q^n(· | x-block)`.
pub(crate) fn product_row(q: &CondKernel, x_block: usize, n: usize, out: &mut [f64]) {
    let cx = q.input_shape()[0];
    let cy = q.output_size();
    let mut letters = vec![0usize; n];
    let mut rem = x_block;
    for t in (0..n).rev() {
        letters[t] = rem % cx;
        rem /= cx;
    }
    out[0] = 1.0;
    let mut len = 1;
    for &x in &letters {
        let row = q.row(x).probs();
        // expand in place from the back so earlier letters stay most significant
        for i in (0..len).rev() {
            let base = out[i];
            for y in (0..cy).rev() {
                out[i * cy + y] = base * row[y];
            }
        }
        len *= cy;
    }
}

/// `q^n` as a block kernel; handy for building perturbed block laws.
pub fn product_kernel(q: &CondKernel, n: usize) -> Result<CondKernel, ProbError> {
    let cx = q.input_shape()[0];
    let cy = q.output_size();
    let blocks_y = cy.pow(n as u32);
    let mut rows = Vec::with_capacity(cx.pow(n as u32));
    for xb in 0..cx.pow(n as u32) {
        let mut r = vec![0.0; blocks_y];
        product_row(q, xb, n, &mut r);
        rows.push(r);
    }
    CondKernel::new(vec![cx; n], blocks_y, rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binary_entropy_reference_points() {
        assert_eq!(binary_entropy(0.5).unwrap(), 1.0);
        assert_eq!(binary_entropy(0.0).unwrap(), 0.0);
        assert_eq!(binary_entropy(1.0).unwrap(), 0.0);
        // -0.125 log2 0.125 - 0.875 log2 0.875
        let direct = 0.375 - 0.875 * 0.875_f64.log2();
        assert!((binary_entropy(0.125).unwrap() - direct).abs() < 1e-15);
        assert!((binary_entropy(0.125).unwrap() - 0.543_564).abs() < 1e-6);
        assert!(binary_entropy(1.5).is_err());
        assert!(binary_entropy(-0.1).is_err());
    }

    #[test]
    fn inverse_entropy_reference_points() {
        assert_eq!(binary_entropy_inv(1.0).unwrap(), 0.5);
        assert_eq!(binary_entropy_inv(0.0).unwrap(), 0.0);
        let p = binary_entropy_inv(0.603218).unwrap();
        assert!((p - 0.147_369_445).abs() < 1e-8, "{p}");
        assert!((h2(p) - 0.603218).abs() < 1e-10);
        assert!(binary_entropy_inv(1.01).is_err());
    }

    #[test]
    fn tv_reference_points() {
        let p = FinitePmf::new(vec![0.7, 0.3]).unwrap();
        let q = FinitePmf::uniform(2).unwrap();
        assert!((tv_distance(&p, &q).unwrap() - 0.2).abs() < 1e-15);
        assert_eq!(tv_distance(&p, &p).unwrap(), 0.0);
        let a = FinitePmf::point(3, 0).unwrap();
        let b = FinitePmf::point(3, 2).unwrap();
        assert_eq!(tv_distance(&a, &b).unwrap(), 1.0);
        assert!(tv_distance(&a, &p).is_err());
    }

    #[test]
    fn kl_signals_infinity() {
        let p = FinitePmf::new(vec![0.5, 0.5]).unwrap();
        let q = FinitePmf::point(2, 0).unwrap();
        assert_eq!(kl_divergence(&p, &q).unwrap(), f64::INFINITY);
        assert_eq!(kl_divergence(&q, &p).unwrap(), 1.0);
    }

    #[test]
    fn lemma5_identical_laws() {
        let q = CondKernel::new(vec![2], 2, vec![vec![0.9, 0.1], vec![0.3, 0.7]]).unwrap();
        let pk = product_kernel(&q, 2).unwrap();
        let px = FinitePmf::uniform(4).unwrap();
        let t = lemma5_terms(&px, &pk, &q, 2).unwrap();
        assert_eq!(t.divergence, 0.0);
        assert_eq!(t.tv, 0.0);
        assert_eq!(t.gap(), 0.0);
    }

    #[test]
    fn lemma5_rejects_support_escape() {
        let q = CondKernel::new(vec![1], 2, vec![vec![1.0, 0.0]]).unwrap();
        let p = CondKernel::new(vec![1], 2, vec![vec![0.5, 0.5]]).unwrap();
        let px = FinitePmf::uniform(1).unwrap();
        assert!(matches!(
            lemma5_gap(&px, &p, &q, 1),
            Err(ProbError::NotAbsolutelyContinuous { row: 0 })
        ));
    }

    #[test]
    fn product_row_is_row_major() {
        let q = CondKernel::new(vec![2], 2, vec![vec![0.9, 0.1], vec![0.3, 0.7]]).unwrap();
        let mut out = vec![0.0; 4];
        // x = (1, 0)
        product_row(&q, 2, 2, &mut out);
        let expect = [0.3 * 0.9, 0.3 * 0.1, 0.7 * 0.9, 0.7 * 0.1];
        for (a, b) in out.iter().zip(expect) {
            assert!((a - b).abs() < 1e-15);
        }
    }
}
