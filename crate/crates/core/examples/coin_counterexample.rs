//! The two-coin channel where the key-agreement rate exceeds the claimed
//! upper bound.

use sdwtc::gallery::coin_counterexample_report;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let r = coin_counterexample_report()?;
    println!("R_zib                 {:.12}", r.r_zib);
    println!("upper bound           {:.12}", r.cr_upper_bound);
    println!("I(S;T,Q)              {:.12}", r.state_information);
    println!("feasibility margin    {:.12}", r.feasibility_margin);
    println!("contradiction         {}", r.contradiction);
    Ok(())
}
