//! Deterministic LOCC conversion of a block to an M x M maximally entangled state.
//!
//! `cargo run --example distillation`

use aklt_entanglement::majorization::{e1_bits, expand, max_distillable_dim, nielsen_max_entangled_check};
use aklt_entanglement::{spectrum, SpinParams};

fn main() -> aklt_entanglement::Result<()> {
    for (s, length) in [(1, 2), (1, 4), (2, 3), (3, 6)] {
        let spin = SpinParams::new(s)?;
        let schmidt = expand(&spectrum::spectrum(spin, length)?);
        let m = max_distillable_dim(&schmidt);
        let above = nielsen_max_entangled_check(&schmidt, m + 1)?;
        println!(
            "S={s} L={length}: E1={:.4} bits, largest M={m}, M={} fails at K={}",
            e1_bits(&schmidt),
            m + 1,
            above.witness_k.expect("conversion above the maximum fails")
        );
    }
    Ok(())
}
