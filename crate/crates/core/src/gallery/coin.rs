use serde::Serialize;

use crate::probkit::{assemble_joint, axes, Auxiliary, FinitePmf, JointPmf, SdWtc};

use super::GalleryError;

/// Two fair coins `S = (A, B)` indexed `2a + b`; a private bit pipe `X = Ψ`;
/// the decoder sees `Y = (T, Q, Ψ)` indexed `4t + 2q + ψ` where `T` is coin
/// `A` or `B` as picked by a fair `Q`; the eavesdropper sees `Z = A ⊕ B`.
pub fn coin_channel() -> SdWtc {
    SdWtc::from_fn(FinitePmf::uniform(4).expect("nonempty"), 2, 8, 2, |s, x, y, z| {
        let (a, b) = (s / 2, s % 2);
        let (t, q, psi) = (y / 4, (y / 2) % 2, y % 2);
        let shown = if q == 0 { a } else { b };
        if psi == x && t == shown && z == (a ^ b) {
            0.5
        } else {
            0.0
        }
    })
    .expect("coin channel is stochastic")
}

/// `Ψ ~ Ber(½)` independent of the coins, `U = A ⊕ B`, `V = (A, B, Ψ)` indexed `4a + 2b + ψ`.
pub fn coin_aux() -> Auxiliary {
    Auxiliary::from_fn(4, 2, 8, 2, |s, u, v, x| {
        let (a, b) = (s / 2, s % 2);
        if u == (a ^ b) && v == 4 * a + 2 * b + x {
            0.5
        } else {
            0.0
        }
    })
    .expect("coin auxiliary is stochastic")
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CoinReport {
    /// `I(V;Y|U) − I(V;Z|U)` at the prescribed auxiliaries.
    pub r_zib: f64,
    /// Common-randomness bound `R + I(S;T,Q)` with pipe rate `R = 1`.
    pub cr_upper_bound: f64,
    /// `I(S;T,Q)`.
    pub state_information: f64,
    /// `I(V;Y) − I(V;S)`; nonnegative means the auxiliaries are admissible.
    pub feasibility_margin: f64,
    /// The claimed key rate reaches the common-randomness bound, which the
    /// secrecy requirement makes unattainable.
    pub contradiction: bool,
}

pub fn coin_counterexample_report() -> Result<CoinReport, GalleryError> {
    let j = assemble_joint(&coin_channel(), &coin_aux())?;
    let (u, v, y, z, s) = ([axes::U], [axes::V], [axes::Y], [axes::Z], [axes::S]);
    let r_zib = j.mutual_information(&v, &y, &u)? - j.mutual_information(&v, &z, &u)?;
    let feasibility_margin = j.mutual_information(&v, &y, &[])? - j.mutual_information(&v, &s, &[])?;
    let state_information = decoder_side_information(&j)?;
    let cr_upper_bound = 1.0 + state_information;
    Ok(CoinReport {
        r_zib,
        cr_upper_bound,
        state_information,
        feasibility_margin,
        contradiction: r_zib >= cr_upper_bound - 1e-12,
    })
}

/// `I(S; T, Q)` after splitting `Y` into `(T, Q)` and `Ψ`.
fn decoder_side_information(j: &JointPmf) -> Result<f64, GalleryError> {
    let sy = j.marginal(&[axes::S, axes::Y])?;
    let split = JointPmf::from_fn(vec![("S", 4), ("TQ", 4), ("PSI", 2)], |i| {
        sy.mass()[i[0] * 8 + i[1] * 2 + i[2]]
    })?;
    Ok(split.mutual_information(&["S"], &["TQ"], &[])?)
}
