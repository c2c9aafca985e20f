//! Sweeps the selection weight and prints the hull of the best intercepts.

use sdwtc::gallery::build_msaf_example;
use sdwtc::regions::{pareto_frontier, Scheme, SearchConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (wtc, _, _) = build_msaf_example(0.25)?;
    let cfg = SearchConfig {
        card_u: 2,
        card_v: 4,
        restarts: 30,
        steps: 2000,
        ..Default::default()
    };
    let f = pareto_frontier(&wtc, Scheme::A, &cfg)?;
    for p in &f.points {
        println!("{p:?}");
    }
    println!("hull {:?}", f.hull);
    Ok(())
}
