//! Checks a few rate pairs against the region and shows the auxiliary rates
//! that realize them.

use sdwtc::gallery::{build_msaf_example, msaf_reference_aux};
use sdwtc::probkit::assemble_joint;
use sdwtc::regions::{fme_witness, region_a};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (wtc, params, _) = build_msaf_example(0.25)?;
    let j = assemble_joint(&wtc, &msaf_reference_aux(&params))?;
    let b = region_a(&j)?;
    for (rm, rk) in [(0.1, 0.1), (0.3, 0.25), (0.5, 0.05), (0.4, 0.3)] {
        let inside = b.contains(rm, rk)?;
        match fme_witness(&j, rm, rk, 1e-6)? {
            Some(w) => println!("({rm}, {rk}) inside={inside} R1={:.4} R2={:.4}", w.r1, w.r2),
            None => println!("({rm}, {rk}) inside={inside} no witness"),
        }
    }
    Ok(())
}
