//! Exact entanglement of the spin-`S` valence-bond-solid (AKLT) chain.
//!
//! A block of `L` contiguous spins in the open chain with spin-`S/2` ends has
//! a reduced density matrix whose spectrum is known in closed form. This crate
//! evaluates that spectrum in exact rational arithmetic and derives from it
//!
//! * the single-copy entanglement `E₁ = −log₂ Λ₁`,
//! * the von Neumann entropy, and
//! * whether the block can be converted with certainty into an `M × M`
//!   maximally entangled pair by local operations (majorization).
//!
//! Both `E₁` and the entropy approach `2 log₂(S+1)` exponentially in `L`.
//! The [`oracle`] module rebuilds the state as a dense vector for small
//! chains and checks the closed form against direct diagonalization.
//!
//! ```
//! use aklt_entanglement::{spectrum, SpinParams};
//!
//! let spin = SpinParams::new(1).unwrap();
//! let spec = spectrum::spectrum(spin, 2).unwrap();
//! assert_eq!(spec.largest().1.to_string(), "1/3");
//! ```

pub mod cli;
pub mod error;
pub mod exact;
pub mod majorization;
pub mod oracle;
pub mod params;
pub mod spectrum;

pub use error::{Error, Result};
pub use exact::Rational;
pub use majorization::{ConversionVerdict, SchmidtSpectrum};
pub use params::{BlockSpec, LogBase, SpinParams};
pub use spectrum::{BoundarySpectrum, ChannelWeights, EntanglementReport, MultipletLevel};
