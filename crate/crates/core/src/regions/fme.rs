use serde::Serialize;

use crate::probkit::JointPmf;

use super::terms::InfoTerms;
use super::RegionError;

/// Codebook redundancy rates `(R_1, R_2)` certifying a target `(R_M, R_K)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FmeWitness {
    pub r1: f64,
    pub r2: f64,
    pub slack: f64,
}

/// Looks for `(r1, r2) ≥ 0` with
///
/// ```text
/// r1                 ≥ I(U;S)     + slack
/// r1 + r2 + r_k      ≥ I(U,V;S)   + slack
/// r_m + r_k + r2     ≤ I(V;Y|U)   − slack
/// r_m + r_k + r1 + r2 ≤ I(U,V;Y)  − slack
/// r2                 ≥ I(V;Z|U)   + slack
/// ```
///
/// The system has two unknowns: `r2` lives in an interval and `r1` only has
/// a lower bound, so feasibility reduces to comparing interval endpoints and
/// the smallest feasible point is returned.
pub fn fme_witness(
    j: &JointPmf,
    r_m: f64,
    r_k: f64,
    slack: f64,
) -> Result<Option<FmeWitness>, RegionError> {
    if !(slack > 0.0) {
        return Err(RegionError::InvalidConfig(format!("slack must be positive, got {slack}")));
    }
    let t = InfoTerms::from_joint(j)?;
    Ok(witness_from_terms(&t, r_m, r_k, slack))
}

pub(crate) fn witness_from_terms(t: &InfoTerms, r_m: f64, r_k: f64, slack: f64) -> Option<FmeWitness> {
    let r2_lo = (t.v_z_given_u() + slack).max(0.0);
    let r2_hi = t.v_y_given_u() - r_m - r_k - slack;
    if r2_lo > r2_hi {
        return None;
    }
    let r1_lo = (t.u_s + slack).max(0.0);
    let sum_lo = t.uv_s - r_k + slack;
    let sum_hi = t.uv_y - r_m - r_k - slack;
    // r2 at its floor leaves the most room for r1 + r2
    let r2 = r2_lo;
    let r1 = r1_lo.max(sum_lo - r2);
    if r1 + r2 > sum_hi {
        return None;
    }
    Some(FmeWitness { r1, r2, slack })
}
