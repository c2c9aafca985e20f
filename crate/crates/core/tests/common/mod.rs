#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::Exp1;
use sdwtc::probkit::{Auxiliary, CondKernel, FinitePmf, JointPmf, SdWtc};

pub fn simplex(rng: &mut ChaCha8Rng, len: usize) -> Vec<f64> {
    let raw: Vec<f64> = (0..len).map(|_| rng.sample::<f64, _>(Exp1)).collect();
    let z: f64 = raw.iter().sum();
    raw.into_iter().map(|v| v / z).collect()
}

pub fn random_wtc(rng: &mut ChaCha8Rng, cs: usize, cx: usize, cy: usize, cz: usize) -> SdWtc {
    let state = FinitePmf::new(simplex(rng, cs)).unwrap();
    let rows = (0..cs * cx).map(|_| simplex(rng, cy * cz)).collect();
    SdWtc::new(state, CondKernel::new(vec![cs, cx], cy * cz, rows).unwrap(), cy, cz).unwrap()
}

pub fn random_aux(rng: &mut ChaCha8Rng, cs: usize, cu: usize, cv: usize, cx: usize) -> Auxiliary {
    let rows = (0..cs).map(|_| simplex(rng, cu * cv * cx)).collect();
    Auxiliary::new(cu, cv, cx, CondKernel::new(vec![cs], cu * cv * cx, rows).unwrap()).unwrap()
}

/// `q(u) q(v,x|u,s)`: inner layer independent of the state.
pub fn random_independent_aux(rng: &mut ChaCha8Rng, cs: usize, cu: usize, cv: usize, cx: usize) -> Auxiliary {
    let qu = simplex(rng, cu);
    let rest: Vec<Vec<f64>> = (0..cs * cu).map(|_| simplex(rng, cv * cx)).collect();
    Auxiliary::from_fn(cs, cu, cv, cx, |s, u, v, x| qu[u] * rest[s * cu + u][v * cx + x]).unwrap()
}

/// Entropy in bits of the marginal on the axis positions `keep`, by direct
/// summation over the dense table.
pub fn entropy_of(j: &JointPmf, keep: &[usize]) -> f64 {
    let sizes = j.sizes();
    let mut table = std::collections::HashMap::<Vec<usize>, f64>::new();
    let mut idx = vec![0usize; sizes.len()];
    for &m in j.mass() {
        let key: Vec<usize> = keep.iter().map(|&k| idx[k]).collect();
        *table.entry(key).or_default() += m;
        for a in (0..sizes.len()).rev() {
            idx[a] += 1;
            if idx[a] < sizes[a] {
                break;
            }
            idx[a] = 0;
        }
    }
    table.values().filter(|&&p| p > 0.0).map(|&p| -p * p.log2()).sum()
}

/// `I(A;B|C) = H(A,C) + H(B,C) − H(A,B,C) − H(C)`.
pub fn cmi_of(j: &JointPmf, a: &[usize], b: &[usize], c: &[usize]) -> f64 {
    let cat = |x: &[usize], y: &[usize]| -> Vec<usize> { x.iter().chain(y).copied().collect() };
    entropy_of(j, &cat(a, c)) + entropy_of(j, &cat(b, c)) - entropy_of(j, &cat(&cat(a, b), c)) - entropy_of(j, c)
}

// positions in an assembled joint
pub const S: usize = 0;
pub const U: usize = 1;
pub const V: usize = 2;
pub const Y: usize = 4;
pub const Z: usize = 5;

/// `(b1, b2, b3)` from the entropy oracle.
pub fn region_oracle(j: &JointPmf) -> (f64, f64, f64) {
    let uv_y = cmi_of(j, &[U, V], &[Y], &[]);
    let uv_s = cmi_of(j, &[U, V], &[S], &[]);
    let v_y_u = cmi_of(j, &[V], &[Y], &[U]);
    let v_z_u = cmi_of(j, &[V], &[Z], &[U]);
    let u_s = cmi_of(j, &[U], &[S], &[]);
    (uv_y - uv_s, v_y_u - v_z_u, uv_y - v_z_u - u_s)
}
