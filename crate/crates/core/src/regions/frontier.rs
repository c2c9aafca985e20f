use serde::Serialize;

use crate::probkit::SdWtc;

use super::search::{search_multi, Scheme, SearchConfig, SearchOutcome};
use super::RegionError;

#[derive(Debug, Clone, Serialize)]
pub struct FrontierPoint {
    pub weight: f64,
    pub rm_intercept: f64,
    pub sum_intercept: f64,
    pub objective: f64,
}

/// Swept intercepts plus the convex hull of every winner's region polygon,
/// as `(R_M, R_K)` vertices in counter-clockwise order.
#[derive(Debug, Clone, Serialize)]
pub struct Frontier {
    pub points: Vec<FrontierPoint>,
    pub hull: Vec<[f64; 2]>,
    #[serde(skip)]
    pub outcomes: Vec<SearchOutcome>,
}

pub fn sweep_weights() -> Vec<f64> {
    (0..=10).map(|i| i as f64 / 10.0).collect()
}

pub fn pareto_frontier(wtc: &SdWtc, scheme: Scheme, cfg: &SearchConfig) -> Result<Frontier, RegionError> {
    let outcomes = search_multi(wtc, scheme, cfg, &sweep_weights())?;
    let points = outcomes
        .iter()
        .map(|o| FrontierPoint {
            weight: o.weight,
            rm_intercept: o.rm_intercept,
            sum_intercept: o.sum_intercept,
            objective: o.objective,
        })
        .collect();
    let mut verts = vec![[0.0, 0.0]];
    for o in &outcomes {
        verts.extend(o.bounds.vertices());
    }
    Ok(Frontier {
        points,
        hull: convex_hull(verts),
        outcomes,
    })
}

/// Monotone-chain hull, counter-clockwise, collinear points dropped.
pub fn convex_hull(mut pts: Vec<[f64; 2]>) -> Vec<[f64; 2]> {
    pts.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let cross = |o: [f64; 2], a: [f64; 2], b: [f64; 2]| (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
    let mut lower: Vec<[f64; 2]> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 1e-15 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<[f64; 2]> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 1e-15 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hull_of_union_of_trapezoids() {
        let pts = vec![
            [0.0, 0.0],
            [0.5, 0.0],
            [0.5, 0.1],
            [0.0, 0.6],
            [0.2, 0.0],
            [0.2, 0.7],
            [0.0, 0.9],
            [0.1, 0.1],
        ];
        let h = convex_hull(pts);
        assert_eq!(h, vec![[0.0, 0.0], [0.5, 0.0], [0.5, 0.1], [0.2, 0.7], [0.0, 0.9]]);
    }
}
