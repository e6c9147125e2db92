//! E1 and von Neumann entropy approaching 2 log2(S+1) as the block grows.
//!
//! `cargo run --example saturation_sweep -- 3`

use aklt_entanglement::{EntanglementReport, SpinParams};

fn main() -> aklt_entanglement::Result<()> {
    let s = std::env::args().nth(1).map_or(2, |a| a.parse().expect("integer spin"));
    let spin = SpinParams::new(s)?;
    println!("{:>4} {:>10} {:>10} {:>12} {:>12} {:>6}", "L", "E1", "S_vN", "E1 gap", "S_vN gap", "sigma*");
    for length in (1..=10).chain([20, 40, 80]) {
        let r = EntanglementReport::new(spin, length)?;
        println!(
            "{:>4} {:>10.6} {:>10.6} {:>12.3e} {:>12.3e} {:>6}",
            length, r.e1_bits, r.vn_entropy_bits, r.e1_gap_bits, r.vn_gap_bits, r.largest_sigma
        );
    }
    println!("asymptote 2 log2(S+1) = {}", EntanglementReport::new(spin, 1)?.asymptote_bits);
    Ok(())
}
