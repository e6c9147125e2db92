//! Exact multiplet-resolved block spectrum.
//!
//! `cargo run --example spectrum -- 2 3`

use aklt_entanglement::{exact, spectrum, SpinParams};

fn main() -> aklt_entanglement::Result<()> {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<u32>().expect("integer argument"));
    let spin = SpinParams::new(args.next().unwrap_or(1))?;
    let length = args.next().unwrap_or(2);

    let spec = spectrum::spectrum(spin, length)?;
    println!("S={} L={} trace={}", spin.get(), length, exact::display(&spec.trace()));
    for level in &spec.levels {
        println!(
            "sigma={} x{}  p={}  ({:.6})",
            level.sigma,
            level.degeneracy,
            exact::display(&level.eigenvalue),
            exact::to_f64(&level.eigenvalue)
        );
    }
    let (sigma, p) = spec.largest();
    println!("largest: sigma={sigma} p={}", exact::display(p));
    Ok(())
}
