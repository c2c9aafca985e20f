//! Best message rate of the state-independent inner layer against the full
//! scheme on the stuck-at example.

use sdwtc::gallery::build_msaf_example;
use sdwtc::regions::{search_multi, Scheme, SearchConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (wtc, _, analytics) = build_msaf_example(0.25)?;
    let cfg = SearchConfig {
        card_u: 4,
        card_v: 6,
        restarts: 60,
        seed: 1,
        ..Default::default()
    };
    println!("capacity {:.6}", analytics.capacity);
    for scheme in [Scheme::A, Scheme::Per] {
        let o = search_multi(&wtc, scheme, &cfg, &[1.0, 0.0])?;
        println!(
            "{scheme:>4}: message-only {:.6}  message+key {:.6}",
            o[0].rm_intercept, o[1].sum_intercept
        );
    }
    Ok(())
}
