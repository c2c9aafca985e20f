use crate::probkit::{Auxiliary, FinitePmf, SdWtc};

use super::GalleryError;

/// Binary wiretap channel for simulation: `S ~ Ber(1/2)`, `Y = X`, and `Z` is
/// `X` through a BSC(`flip`). The state only enters through the auxiliary.
pub fn micro_wiretap(flip: f64) -> Result<SdWtc, GalleryError> {
    if !(0.0..=1.0).contains(&flip) {
        return Err(GalleryError::OutOfRange { name: "flip", value: flip });
    }
    Ok(SdWtc::from_fn(FinitePmf::uniform(2)?, 2, 2, 2, |_, x, y, z| {
        let pz = if z == x { 1.0 - flip } else { flip };
        if y == x { pz } else { 0.0 }
    })?)
}

/// `|U| = 1`, `V = X`, and `V` agrees with the state with probability `agree`.
pub fn micro_aux(agree: f64) -> Result<Auxiliary, GalleryError> {
    if !(0.0..=1.0).contains(&agree) {
        return Err(GalleryError::OutOfRange { name: "agree", value: agree });
    }
    Ok(Auxiliary::from_fn(2, 1, 2, 2, |s, _, v, x| {
        if x != v {
            0.0
        } else if v == s {
            agree
        } else {
            1.0 - agree
        }
    })?)
}
