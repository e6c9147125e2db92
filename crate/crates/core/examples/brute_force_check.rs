//! Compare the closed form with an explicitly constructed chain.
//!
//! `cargo run --release --example brute_force_check`

use aklt_entanglement::majorization::expand;
use aklt_entanglement::{exact, oracle, spectrum, SpinParams};

fn main() -> aklt_entanglement::Result<()> {
    for (s, n) in [(1, 4), (1, 6), (2, 4)] {
        let spin = SpinParams::new(s)?;
        let dense = oracle::block_spectrum(spin, n, 1, n)?;
        let closed: Vec<f64> = expand(&spectrum::spectrum(spin, n)?).probs().iter().map(exact::to_f64).collect();
        let deviation = dense.iter().zip(&closed).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        let residual = oracle::ground_state_residual(&oracle::build_vbs(spin, n)?, spin)?.max();
        println!(
            "S={s} N={n}: {} eigenvalues, max deviation {deviation:.1e}, projector residual {residual:.1e}",
            dense.len()
        );
    }

    // the end-pair contraction reaches lengths beyond the dense state
    let spin = SpinParams::new(3)?;
    let p = oracle::end_pair_multiplets(spin, 20)?;
    println!("S=3 N=20 multiplets by contraction: {p:?}");
    Ok(())
}
