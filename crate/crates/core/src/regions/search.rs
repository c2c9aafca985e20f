use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Gamma};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::probkit::{Auxiliary, CondKernel, SdWtc, CELL_BUDGET};

use super::bounds::RegionBounds;
use super::schemes::CONSTRAINT_TOL;
use super::terms::{FastEval, InfoTerms};
use super::RegionError;

/// Achievability scheme whose rates a search maximizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Scheme {
    /// Full message-key region over arbitrary `q(u,v,x|s)`.
    A,
    /// Inner layer independent of the state, two constraints.
    Per,
    /// Secret-message rate `min(b1, b2, b3)`, reused as a total secrecy budget.
    Gcp,
    /// Key rate of the joint source-channel scheme: Markov `U – V – (S, X)`.
    BassiJoint,
    /// Key rate of the separated scheme: `U = (Q, Ũ)`, `V = (T, Ṽ)` with a
    /// state-driven source part and a state-independent channel part.
    BassiSep,
    /// Plain state-dependent channel coding, `I(U;Y) − I(U;S)` with `V` trivial.
    Gp,
}

impl Scheme {
    pub const ALL: [Scheme; 6] = [
        Scheme::A,
        Scheme::Per,
        Scheme::Gcp,
        Scheme::BassiJoint,
        Scheme::BassiSep,
        Scheme::Gp,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Scheme::A => "A",
            Scheme::Per => "PER",
            Scheme::Gcp => "GCP",
            Scheme::BassiJoint => "BASSI_JOINT",
            Scheme::BassiSep => "BASSI_SEP",
            Scheme::Gp => "GP",
        }
    }

    /// Clamped intercepts and the raw climbing signals of one candidate.
    fn score(self, t: &InfoTerms) -> Score {
        let v = t.as_array();
        let b1 = Lin::of(&v, [1.0, 0.0, -1.0, 0.0, 0.0, 0.0]);
        let b2 = Lin::of(&v, [1.0, -1.0, 0.0, 0.0, -1.0, 1.0]);
        let b3 = Lin::of(&v, [1.0, 0.0, 0.0, -1.0, -1.0, 1.0]);
        match self {
            Scheme::A | Scheme::Per => {
                let b = if self == Scheme::A {
                    t.region_a()
                } else {
                    t.region_per()
                };
                let cap = if self == Scheme::A { b2.min(b3) } else { b2 };
                Score {
                    rm: b.rm_intercept(),
                    sum: b.sum_intercept(),
                    raw_rm: b1.min(cap),
                    raw_sum: cap.add(b1.min(Lin::ZERO)),
                }
            }
            Scheme::Gcp => {
                let g = b1.min(b2).min(b3);
                Score::same(g.v.max(0.0), g)
            }
            Scheme::Gp => {
                let g = Lin::of(&v, [0.0, 1.0, 0.0, -1.0, 0.0, 0.0]);
                Score::same(g.v.max(0.0), g)
            }
            Scheme::BassiJoint => {
                let c1 = Lin::of(&v, [0.0, -1.0, 0.0, 1.0, 0.0, 0.0]);
                let c2 = Lin::of(&v, [-1.0, 1.0, 1.0, -1.0, 0.0, 0.0]);
                Score::key_only(b2, c1.max(Lin::ZERO).add(c2.max(Lin::ZERO)))
            }
            Scheme::BassiSep => {
                let c1 = Lin::of(&v, [0.0, -1.0, 0.0, 1.0, 0.0, 0.0]);
                let c2 = b1.scale(-1.0);
                Score::key_only(b2.min(b3), c1.max(Lin::ZERO).add(c2.max(Lin::ZERO)))
            }
        }
    }

    fn bounds(self, t: &InfoTerms) -> RegionBounds {
        match self {
            Scheme::Per => t.region_per(),
            _ => t.region_a(),
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scheme {
    type Err = RegionError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let up = s.trim().to_ascii_uppercase().replace('-', "_");
        Scheme::ALL
            .into_iter()
            .find(|sc| sc.name() == up)
            .ok_or_else(|| RegionError::UnknownScheme(s.to_string()))
    }
}

/// A value that is locally linear in the six information terms, carrying
/// its coefficients so the climber can follow the active piece.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Lin {
    v: f64,
    k: [f64; 6],
}

impl Lin {
    const ZERO: Lin = Lin { v: 0.0, k: [0.0; 6] };

    fn of(terms: &[f64; 6], k: [f64; 6]) -> Self {
        Self {
            v: terms.iter().zip(&k).map(|(a, b)| a * b).sum(),
            k,
        }
    }

    fn min(self, o: Lin) -> Lin {
        if o.v < self.v {
            o
        } else {
            self
        }
    }

    fn max(self, o: Lin) -> Lin {
        if o.v > self.v {
            o
        } else {
            self
        }
    }

    fn add(self, o: Lin) -> Lin {
        let mut k = self.k;
        k.iter_mut().zip(o.k).for_each(|(a, b)| *a += b);
        Lin { v: self.v + o.v, k }
    }

    fn scale(self, c: f64) -> Lin {
        Lin {
            v: c * self.v,
            k: self.k.map(|a| c * a),
        }
    }

    fn blend(g: f64, a: Lin, b: Lin) -> Lin {
        a.scale(g).add(b.scale(1.0 - g))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Score {
    rm: f64,
    sum: f64,
    raw_rm: Lin,
    raw_sum: Lin,
}

impl Score {
    fn same(clamped: f64, raw: Lin) -> Self {
        Self {
            rm: clamped,
            sum: clamped,
            raw_rm: raw,
            raw_sum: raw,
        }
    }

    fn key_only(key: Lin, violation: Lin) -> Self {
        let feasible = violation.v <= CONSTRAINT_TOL;
        let raw = if feasible {
            key
        } else {
            key.min(Lin::ZERO).add(violation.scale(-1.0))
        };
        Self {
            rm: 0.0,
            sum: if feasible { key.v.max(0.0) } else { 0.0 },
            raw_rm: raw,
            raw_sum: raw,
        }
    }

    fn objective(&self, weight: f64) -> f64 {
        weight * self.rm + (1.0 - weight) * self.sum
    }

    fn guide(&self, g: f64) -> Lin {
        Lin::blend(g, self.raw_rm, self.raw_sum)
    }
}

/// Search parameters. `card_u`/`card_v` size the auxiliaries; for
/// [`Scheme::BassiSep`] they size `Ũ`/`Ṽ` and the channel part uses
/// `|Q| = |T| = |X|`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub card_u: usize,
    pub card_v: usize,
    pub restarts: usize,
    pub steps: usize,
    pub seed: u64,
    pub weight: f64,
    /// Only offer candidates with `I(U;Z) ≥ max{I(U;Y), I(U;S)}` for selection.
    #[serde(default)]
    pub prune_remark3: bool,
    #[serde(default = "default_budget")]
    pub cell_budget: usize,
}

fn default_budget() -> usize {
    CELL_BUDGET
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            card_u: 4,
            card_v: 8,
            restarts: 200,
            steps: 4000,
            seed: 0,
            weight: 0.5,
            prune_remark3: false,
            cell_budget: CELL_BUDGET,
        }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<(), RegionError> {
        if self.card_u == 0 || self.card_v == 0 {
            return Err(RegionError::InvalidConfig("cardinalities must be at least 1".into()));
        }
        if self.restarts == 0 || self.steps == 0 {
            return Err(RegionError::InvalidConfig("restarts and steps must be at least 1".into()));
        }
        if !(0.0..=1.0).contains(&self.weight) {
            return Err(RegionError::InvalidConfig(format!("weight {} outside [0, 1]", self.weight)));
        }
        Ok(())
    }
}

/// Best auxiliary found for one scheme and one weight.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchOutcome {
    pub scheme: Scheme,
    pub weight: f64,
    #[serde(skip)]
    pub aux: Auxiliary,
    pub bounds: RegionBounds,
    pub terms: InfoTerms,
    pub rm_intercept: f64,
    pub sum_intercept: f64,
    pub objective: f64,
    pub evaluations: u64,
}

/// Searches with scheme [`Scheme::A`].
pub fn search(wtc: &SdWtc, cfg: &SearchConfig) -> Result<SearchOutcome, RegionError> {
    search_scheme(wtc, Scheme::A, cfg)
}

pub fn search_scheme(wtc: &SdWtc, scheme: Scheme, cfg: &SearchConfig) -> Result<SearchOutcome, RegionError> {
    cfg.validate()?;
    let mut v = search_multi(wtc, scheme, cfg, &[cfg.weight])?;
    Ok(v.remove(0))
}

/// One pass over the candidate stream, selecting a winner for every weight.
pub fn search_multi(
    wtc: &SdWtc,
    scheme: Scheme,
    cfg: &SearchConfig,
    weights: &[f64],
) -> Result<Vec<SearchOutcome>, RegionError> {
    let base = SearchConfig {
        weight: weights.first().copied().unwrap_or(0.0),
        ..cfg.clone()
    };
    base.validate()?;
    if weights.is_empty() || weights.iter().any(|w| !(0.0..=1.0).contains(w)) {
        return Err(RegionError::InvalidConfig("weights must lie in [0, 1]".into()));
    }
    let family = Family::new(scheme, wtc, cfg.card_u, cfg.card_v);
    let (cu, cv) = (family.card_u, family.card_v);
    let cells = [wtc.card_s(), cu, cv, wtc.card_x(), wtc.card_y(), wtc.card_z()]
        .iter()
        .try_fold(1usize, |acc, &d| acc.checked_mul(d))
        .unwrap_or(usize::MAX);
    if cells > cfg.cell_budget {
        return Err(RegionError::Budget {
            cells,
            budget: cfg.cell_budget,
        });
    }
    let eval = FastEval::new(wtc);
    let per_restart: Vec<(Vec<Option<Best>>, u64)> = (0..cfg.restarts)
        .into_par_iter()
        .map(|r| climb(&family, &eval, scheme, cfg, weights, r))
        .collect();

    let mut best: Vec<Option<Best>> = vec![None; weights.len()];
    let mut evaluations = 0;
    for (cands, n) in per_restart {
        evaluations += n;
        for (slot, cand) in best.iter_mut().zip(cands) {
            if let Some(c) = cand {
                if slot.as_ref().is_none_or(|b| c.beats(b)) {
                    *slot = Some(c);
                }
            }
        }
    }
    weights
        .iter()
        .zip(best)
        .map(|(&w, b)| {
            let b = b.expect("every restart offers its initial point");
            let aux = family.auxiliary(wtc.card_s(), &b.aux)?;
            let terms = eval.terms(cu, cv, &b.aux);
            Ok(SearchOutcome {
                scheme,
                weight: w,
                aux,
                bounds: scheme.bounds(&terms),
                terms,
                rm_intercept: b.score.rm,
                sum_intercept: b.score.sum,
                objective: b.objective,
                evaluations,
            })
        })
        .collect()
}

#[derive(Debug, Clone)]
struct Best {
    objective: f64,
    score: Score,
    aux: Vec<f64>,
}

impl Best {
    /// Higher objective wins; ties go to the lexicographically smaller kernel.
    fn beats(&self, other: &Best) -> bool {
        match self.objective.total_cmp(&other.objective) {
            Ordering::Greater => true,
            Ordering::Less => false,
            Ordering::Equal => lex_cmp(&self.aux, &other.aux) == Ordering::Less,
        }
    }
}

fn lex_cmp(a: &[f64], b: &[f64]) -> Ordering {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.total_cmp(y))
        .find(|o| o.is_ne())
        .unwrap_or_else(|| a.len().cmp(&b.len()))
}

/// Guide weights cycled over restarts; climbing never looks at the
/// selection weights.
const GUIDES: [f64; 3] = [1.0, 0.0, 0.5];
/// Dirichlet concentrations for the starting points, cycled every
/// `GUIDES.len()` restarts; small values start near sparse kernels.
const ALPHAS: [f64; 2] = [1.0, 0.2];
const SHRINK_LEVELS: u32 = 10;

/// Random restart: Dirichlet rows, then mass transfers between two
/// entries of one row, accepted when the guide improves. Odd proposals pick
/// the pair along the guide's gradient, even ones at random. After
/// `patience` consecutive rejections the transfer fraction halves.
fn climb(
    family: &Family,
    eval: &FastEval,
    scheme: Scheme,
    cfg: &SearchConfig,
    weights: &[f64],
    restart: usize,
) -> (Vec<Option<Best>>, u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(restart as u64 + 1);
    let g = GUIDES[restart % GUIDES.len()];
    let mut ws = eval.workspace(family.card_u, family.card_v);
    let mut params = family.random_params(&mut rng, ALPHAS[(restart / GUIDES.len()) % ALPHAS.len()]);
    let mut aux = vec![0.0; family.aux_len];
    let mut best: Vec<Option<Best>> = vec![None; weights.len()];
    let mut evaluations = 0u64;

    let mut evaluate = |params: &[f64], aux: &mut Vec<f64>, ws: &mut _, best: &mut Vec<Option<Best>>| {
        family.materialize(params, aux);
        let t = eval.eval(ws, aux);
        let score = scheme.score(&t);
        evaluations += 1;
        let offered = !cfg.prune_remark3 || t.u_z + CONSTRAINT_TOL >= t.u_y.max(t.u_s);
        if offered {
            for (slot, &w) in best.iter_mut().zip(weights) {
                let objective = score.objective(w);
                if slot.as_ref().is_none_or(|b| objective > b.objective) {
                    *slot = Some(Best {
                        objective,
                        score,
                        aux: aux.clone(),
                    });
                }
            }
        }
        score.guide(g)
    };

    let mut current = evaluate(&params, &mut aux, &mut ws, &mut best);
    let movable: Vec<usize> = (0..family.rows.len()).filter(|&r| family.rows[r].1 >= 2).collect();
    if movable.is_empty() {
        return (best, evaluations);
    }
    let mut grad_aux = vec![0.0; family.aux_len];
    let mut grad = vec![0.0; family.param_len];
    let mut stale = true;
    let patience = family.param_len.max(16);
    let mut step = 1.0;
    let mut shrinks = 0;
    let mut misses = 0;
    let mut trial = params.clone();
    for it in 1..cfg.steps {
        let (off, len) = family.rows[movable[rng.random_range(0..movable.len())]];
        let mut pair = None;
        if it % 2 == 1 {
            if stale {
                // re-evaluate at the accepted point to refresh the tables
                family.materialize(&params, &mut aux);
                eval.eval(&mut ws, &aux);
                eval.gradient(&mut ws, &current.k, &mut grad_aux);
                family.param_gradient(&params, &grad_aux, &mut grad);
                stale = false;
            }
            pair = steepest_pair(&params[off..off + len], &grad[off..off + len]);
        }
        let (from, to) = match pair {
            Some((f, t)) => (off + f, off + t),
            None => {
                let i = rng.random_range(0..len);
                let mut j = rng.random_range(0..len - 1);
                if j >= i {
                    j += 1;
                }
                if params[off + i] > 0.0 {
                    (off + i, off + j)
                } else {
                    (off + j, off + i)
                }
            }
        };
        let mut improved = false;
        if params[from] > 0.0 {
            trial.copy_from_slice(&params);
            let amount = step * trial[from];
            trial[from] -= amount;
            trial[to] += amount;
            let cand = evaluate(&trial, &mut aux, &mut ws, &mut best);
            if cand.v > current.v {
                current = cand;
                std::mem::swap(&mut params, &mut trial);
                improved = true;
                stale = true;
            }
        }
        if improved {
            misses = 0;
        } else {
            misses += 1;
            if misses >= patience {
                misses = 0;
                shrinks += 1;
                if shrinks > SHRINK_LEVELS {
                    break;
                }
                step *= 0.5;
            }
        }
    }
    (best, evaluations)
}

/// `(from, to)`: lowest-slope entry holding mass and highest-slope entry.
fn steepest_pair(p: &[f64], grad: &[f64]) -> Option<(usize, usize)> {
    let to = (0..p.len()).max_by(|&a, &b| grad[a].total_cmp(&grad[b]))?;
    let from = (0..p.len())
        .filter(|&i| p[i] > 0.0 && i != to)
        .min_by(|&a, &b| grad[a].total_cmp(&grad[b]))?;
    (grad[to] > grad[from]).then_some((from, to))
}

/// A family of auxiliaries whose every entry `a[s][u][v][x]` is a product of
/// `arity` parameters, each parameter belonging to one simplex row.
struct Family {
    card_u: usize,
    card_v: usize,
    cx: usize,
    rows: Vec<(usize, usize)>,
    param_len: usize,
    aux_len: usize,
    arity: usize,
    factors: Vec<usize>,
}

impl Family {
    fn new(scheme: Scheme, wtc: &SdWtc, cu: usize, cv: usize) -> Self {
        let (cs, cx) = (wtc.card_s(), wtc.card_x());
        let mut b = Builder::default();
        match scheme {
            Scheme::A | Scheme::Gcp | Scheme::Gp => {
                let cv = if scheme == Scheme::Gp { 1 } else { cv };
                let r: Vec<usize> = (0..cs).map(|_| b.row(cu * cv * cx)).collect();
                b.finish(cs, cu, cv, cx, 1, |s, u, v, x, f| f.push(r[s] + (u * cv + v) * cx + x))
            }
            Scheme::Per => {
                // q(u) q(v,x|u,s)
                let ru = b.row(cu);
                let r: Vec<usize> = (0..cu * cs).map(|_| b.row(cv * cx)).collect();
                b.finish(cs, cu, cv, cx, 2, |s, u, v, x, f| {
                    f.push(ru + u);
                    f.push(r[u * cs + s] + v * cx + x);
                })
            }
            Scheme::BassiJoint => {
                // q(v,x|s) q(u|v)
                let rvx: Vec<usize> = (0..cs).map(|_| b.row(cv * cx)).collect();
                let ru: Vec<usize> = (0..cv).map(|_| b.row(cu)).collect();
                b.finish(cs, cu, cv, cx, 2, |s, u, v, x, f| {
                    f.push(rvx[s] + v * cx + x);
                    f.push(ru[v] + u);
                })
            }
            Scheme::BassiSep => {
                // q(ṽ|s) q(ũ|ṽ) q(q,t) q(x|t), U = (Q, Ũ), V = (T, Ṽ)
                let (cq, ct) = (cx, cx);
                let rv: Vec<usize> = (0..cs).map(|_| b.row(cv)).collect();
                let ru: Vec<usize> = (0..cv).map(|_| b.row(cu)).collect();
                let rqt = b.row(cq * ct);
                let rx: Vec<usize> = (0..ct).map(|_| b.row(cx)).collect();
                b.finish(cs, cq * cu, ct * cv, cx, 4, |s, u, v, x, f| {
                    let (q, ut) = (u / cu, u % cu);
                    let (t, vt) = (v / cv, v % cv);
                    f.push(rv[s] + vt);
                    f.push(ru[vt] + ut);
                    f.push(rqt + q * ct + t);
                    f.push(rx[t] + x);
                })
            }
        }
    }

    /// Independent Dirichlet(`alpha`) rows.
    fn random_params(&self, rng: &mut ChaCha8Rng, alpha: f64) -> Vec<f64> {
        let gamma = Gamma::new(alpha, 1.0).expect("positive shape");
        let mut p = vec![0.0; self.param_len];
        for &(off, len) in &self.rows {
            let row = &mut p[off..off + len];
            for v in row.iter_mut() {
                *v = gamma.sample(rng);
            }
            let z: f64 = row.iter().sum();
            if z > 0.0 {
                row.iter_mut().for_each(|v| *v /= z);
            } else {
                row.fill(1.0 / len as f64);
            }
        }
        p
    }

    /// Writes `a[s][u][v][x]`.
    fn materialize(&self, p: &[f64], a: &mut [f64]) {
        for (e, f) in a.iter_mut().zip(self.factors.chunks_exact(self.arity)) {
            *e = f.iter().map(|&i| p[i]).product();
        }
    }

    fn param_gradient(&self, p: &[f64], grad_aux: &[f64], out: &mut [f64]) {
        out.iter_mut().for_each(|v| *v = 0.0);
        for (&g, f) in grad_aux.iter().zip(self.factors.chunks_exact(self.arity)) {
            for (j, &i) in f.iter().enumerate() {
                let rest: f64 = f.iter().enumerate().filter(|&(l, _)| l != j).map(|(_, &k)| p[k]).product();
                out[i] += g * rest;
            }
        }
    }

    fn auxiliary(&self, cs: usize, a: &[f64]) -> Result<Auxiliary, RegionError> {
        let n = self.card_u * self.card_v * self.cx;
        let rows = (0..cs).map(|s| a[s * n..(s + 1) * n].to_vec()).collect();
        let k = CondKernel::new(vec![cs], n, rows)?;
        Ok(Auxiliary::new(self.card_u, self.card_v, self.cx, k)?)
    }
}

#[derive(Default)]
struct Builder {
    rows: Vec<(usize, usize)>,
    len: usize,
}

impl Builder {
    fn row(&mut self, len: usize) -> usize {
        let off = self.len;
        self.rows.push((off, len));
        self.len += len;
        off
    }

    fn finish(
        self,
        cs: usize,
        cu: usize,
        cv: usize,
        cx: usize,
        arity: usize,
        mut f: impl FnMut(usize, usize, usize, usize, &mut Vec<usize>),
    ) -> Family {
        let mut factors = Vec::with_capacity(cs * cu * cv * cx * arity);
        for s in 0..cs {
            for u in 0..cu {
                for v in 0..cv {
                    for x in 0..cx {
                        f(s, u, v, x, &mut factors);
                    }
                }
            }
        }
        Family {
            card_u: cu,
            card_v: cv,
            cx,
            rows: self.rows,
            param_len: self.len,
            aux_len: cs * cu * cv * cx,
            arity,
            factors,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::probkit::assemble_joint;
    use crate::regions::region_a;

    fn bsc_wtc() -> SdWtc {
        let ws = crate::probkit::FinitePmf::new(vec![0.5, 0.5]).unwrap();
        SdWtc::from_fn(ws, 2, 2, 2, |s, x, y, z| {
            let py = if y == (x ^ s) { 0.9 } else { 0.1 };
            let pz = if z == x { 0.7 } else { 0.3 };
            py * pz
        })
        .unwrap()
    }

    #[test]
    fn families_materialize_stochastic_kernels() {
        let w = bsc_wtc();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for scheme in Scheme::ALL {
            let f = Family::new(scheme, &w, 2, 3);
            let p = f.random_params(&mut rng, 1.0);
            let mut a = vec![0.0; f.aux_len];
            f.materialize(&p, &mut a);
            let aux = f.auxiliary(2, &a).unwrap();
            assert!(assemble_joint(&w, &aux).is_ok(), "{scheme}");
        }
    }

    #[test]
    fn fast_terms_match_joint_route() {
        let w = bsc_wtc();
        let f = Family::new(Scheme::A, &w, 2, 3);
        let eval = FastEval::new(&w);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..20 {
            let p = f.random_params(&mut rng, 1.0);
            let mut a = vec![0.0; f.aux_len];
            f.materialize(&p, &mut a);
            let fast = eval.terms(2, 3, &a).region_a();
            let j = assemble_joint(&w, &f.auxiliary(2, &a).unwrap()).unwrap();
            let slow = region_a(&j).unwrap();
            assert!((fast.b1 - slow.b1).abs() < 1e-12);
            assert!((fast.b2 - slow.b2).abs() < 1e-12);
            assert!((fast.b3.value() - slow.b3.value()).abs() < 1e-12);
        }
    }

    #[test]
    fn independent_family_has_u_independent_of_s() {
        let w = bsc_wtc();
        let f = Family::new(Scheme::Per, &w, 3, 2);
        let eval = FastEval::new(&w);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let p = f.random_params(&mut rng, 1.0);
        let mut a = vec![0.0; f.aux_len];
        f.materialize(&p, &mut a);
        assert!(eval.terms(3, 2, &a).u_s < 1e-12);
    }

    #[test]
    fn scheme_names_parse() {
        for s in Scheme::ALL {
            assert_eq!(s.name().parse::<Scheme>().unwrap(), s);
        }
        assert_eq!("bassi-sep".parse::<Scheme>().unwrap(), Scheme::BassiSep);
        assert!("XYZ".parse::<Scheme>().is_err());
    }
}
