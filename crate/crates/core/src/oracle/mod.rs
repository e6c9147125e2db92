//! Brute-force reference: the valence-bond-solid chain built explicitly as
//! a dense state vector and diagonalized directly.
//!
//! Everything here is double precision and independent of the closed-form
//! pipeline in [`crate::spectrum`].

pub mod angular;
pub mod coherent;
pub mod contraction;
pub mod state;

pub use angular::{aklt_projector, clebsch_gordan, singlet_pair, symmetric_projector, Spin, SpinOperatorTriple};
pub use coherent::{coherent_state, geometric_overlap, max_overlap_deviation};
pub use contraction::{end_pair_argmax, end_pair_density, end_pair_multiplets, end_pair_spectrum};
pub use state::{
    block_spectrum, build_vbs, build_vbs_with, ground_state_residual, reduced_spectrum, verify_ground_state,
    BlockSelection, DenseState, GroundStateResidual, OracleLimits,
};
