//! Spin coherent states and the overlap law |<n|m>| = ((1 + n.m)/2)^S.
//!
//! `cargo run --example coherent_states`

use std::f64::consts::PI;

use aklt_entanglement::oracle::coherent::{angle_grid, coherent_state, max_overlap_deviation, overlap};
use aklt_entanglement::{oracle, SpinParams};

fn main() -> aklt_entanglement::Result<()> {
    let spin = SpinParams::new(2)?;
    let a = coherent_state(spin, 0.3, 0.0);
    let b = coherent_state(spin, 1.1, PI / 3.0);
    println!("numeric   {:.15}", overlap(&a, &b).norm());
    println!("geometric {:.15}", oracle::geometric_overlap(spin, (0.3, 0.0), (1.1, PI / 3.0)));

    let grid = angle_grid(5, 5);
    for s in 1..=4 {
        println!("S={s}: max deviation on 5x5 grid {:.1e}", max_overlap_deviation(SpinParams::new(s)?, &grid));
    }
    Ok(())
}
