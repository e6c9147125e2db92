//! Which multiplet carries the largest eigenvalue, closed form against contraction.
//!
//! `cargo run --example parity_audit`

use aklt_entanglement::{oracle, spectrum, SpinParams};

fn main() -> aklt_entanglement::Result<()> {
    for s in 1..=4 {
        let spin = SpinParams::new(s)?;
        let mut row = Vec::new();
        for length in 1..=12 {
            let (sigma, _) = spectrum::spectrum(spin, length)?.largest();
            let (check, _) = oracle::end_pair_argmax(spin, length, 1e-12)?;
            assert_eq!(sigma, check, "S={s} L={length}");
            row.push(sigma.to_string());
        }
        println!("S={s}: sigma* for L=1..12 = {}", row.join(" "));
    }
    Ok(())
}
