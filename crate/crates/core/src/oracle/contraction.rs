//! Density matrix of the two end spins by exact site-by-site contraction.
//!
//! For a chain whose bulk is entirely the block (`L = N`), the two bare end
//! spins are the complement, so their `(S+1)² × (S+1)²` density matrix carries
//! the block's full nonzero spectrum. Tracing out one bulk site at a time
//! keeps the work independent of `N`, which lets the oracle reach lengths
//! where the dense state vector would not fit. Nothing is truncated.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64 as C64;

use super::angular::{aklt_projector, singlet_pair, symmetric_projector, Spin};
use super::state::ZERO_EIGENVALUE;
use crate::error::{param_err, Result};
use crate::params::SpinParams;

/// `ρ` on (left end, right end) for `bulk_sites` bulk spins, unit trace.
/// Row index is `left · (S+1) + right`.
pub fn end_pair_density(spin: SpinParams, bulk_sites: u32) -> Result<DMatrix<C64>> {
    if bulk_sites == 0 {
        return param_err("chain needs at least one bulk site");
    }
    let s = spin.get();
    let half = Spin::from_twice(s);
    let v = half.dim();
    let p = 2 * s as usize + 1;
    let bond = singlet_pair(half);
    let proj = symmetric_projector(s);

    // site[phys][(a, c)] = Σ_b P[phys, (a, b)] singlet[(b, c)]
    let site: Vec<DMatrix<C64>> = (0..p)
        .map(|phys| DMatrix::from_fn(v, v, |a, c| (0..v).map(|b| proj[(phys, a * v + b)] * bond[b * v + c]).sum()))
        .collect();

    // rho[(e, a), (e', a')] with `a` the open virtual spin
    let b0 = DMatrix::from_fn(v * v, 1, |i, _| bond[i]);
    let mut rho = &b0 * b0.adjoint();
    for _ in 0..bulk_sites {
        let mut next = DMatrix::<C64>::zeros(v * v, v * v);
        for a_site in &site {
            // (1 ⊗ A) ρ (1 ⊗ A)†
            let lift = DMatrix::<C64>::identity(v, v).kronecker(&a_site.transpose());
            next += &lift * &rho * lift.adjoint();
        }
        rho = next;
    }
    let trace: C64 = rho.trace();
    Ok(rho / trace)
}

/// `p_σ = tr(P_σ ρ) / (2σ+1)` for the two end spins, `σ = 0..=S`.
pub fn end_pair_multiplets(spin: SpinParams, bulk_sites: u32) -> Result<Vec<f64>> {
    let rho = end_pair_density(spin, bulk_sites)?;
    let half = Spin::from_twice(spin.get());
    (0..=spin.get())
        .map(|sigma| {
            let total = Spin::integer(sigma);
            let proj = aklt_projector(half, half, total)?;
            Ok((proj * &rho).trace().re / total.dim() as f64)
        })
        .collect()
}

/// Nonzero eigenvalues of the end-pair density matrix, sorted nonincreasing.
pub fn end_pair_spectrum(spin: SpinParams, bulk_sites: u32) -> Result<Vec<f64>> {
    let rho = end_pair_density(spin, bulk_sites)?;
    let mut eig: Vec<f64> =
        SymmetricEigen::new(rho).eigenvalues.iter().copied().filter(|&x| x >= ZERO_EIGENVALUE).collect();
    eig.sort_by(|a, b| b.total_cmp(a));
    Ok(eig)
}

/// Multiplet with the largest `p_σ`; values within `tie_tol` of the maximum
/// resolve to the smaller `σ`.
pub fn end_pair_argmax(spin: SpinParams, bulk_sites: u32, tie_tol: f64) -> Result<(u32, f64)> {
    let levels = end_pair_multiplets(spin, bulk_sites)?;
    let max = levels.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let sigma = levels.iter().position(|&p| p >= max - tie_tol).expect("nonempty");
    Ok((sigma as u32, levels[sigma]))
}
