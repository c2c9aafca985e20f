//! Randomized search for a good auxiliary on a noisy binary channel with a
//! state-dependent flip.

use sdwtc::probkit::{FinitePmf, SdWtc};
use sdwtc::regions::{search_scheme, Scheme, SearchConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // Y = X ⊕ S ⊕ N1, Z = X ⊕ N2 with N1 ~ Ber(0.05), N2 ~ Ber(0.3), S ~ Ber(0.2)
    let wtc = SdWtc::from_fn(FinitePmf::bernoulli(0.2)?, 2, 2, 2, |s, x, y, z| {
        let py = if y == x ^ s { 0.95 } else { 0.05 };
        let pz = if z == x { 0.7 } else { 0.3 };
        py * pz
    })?;
    for scheme in [Scheme::A, Scheme::Gcp, Scheme::Per] {
        let cfg = SearchConfig {
            card_u: 2,
            card_v: 4,
            restarts: 30,
            steps: 1500,
            weight: 0.0,
            ..Default::default()
        };
        let o = search_scheme(&wtc, scheme, &cfg)?;
        println!(
            "{scheme:>4}: sum {:.4}  message {:.4}  vertices {:?}",
            o.sum_intercept,
            o.rm_intercept,
            o.bounds.vertices()
        );
    }
    Ok(())
}
