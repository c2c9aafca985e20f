//! Stuck-at memory with a shared key: closed-form capacity against the region
//! of the reference auxiliary.

use sdwtc::gallery::{build_msaf_example, msaf_reference_aux};
use sdwtc::probkit::assemble_joint;
use sdwtc::regions::region_a;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for sigma in [0.1, 0.25, 0.4] {
        let (wtc, params, analytics) = build_msaf_example(sigma)?;
        let bounds = region_a(&assemble_joint(&wtc, &msaf_reference_aux(&params))?)?;
        println!(
            "sigma={sigma:.2} eps={:.6} lambda={:.6} capacity={:.6} region sum={:.6} no-CSI bound={:.6}",
            params.epsilon,
            params.lambda,
            analytics.capacity,
            bounds.sum_intercept(),
            analytics.causal_bound
        );
    }
    Ok(())
}
