use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64 as C64;

use super::angular::{aklt_projector, singlet_pair, symmetric_projector, totals_between, Spin};
use crate::error::{param_err, Error, Result};
use crate::params::SpinParams;

/// Environment variable overriding [`OracleLimits::DEFAULT_MAX_AMPLITUDES`].
pub const MAX_AMPLITUDES_ENV: &str = "AKLT_ORACLE_MAX_AMPLITUDES";

/// Eigenvalues below this are treated as zero.
pub const ZERO_EIGENVALUE: f64 = 1e-12;

/// Annihilation tolerance used by [`verify_ground_state`].
pub const ANNIHILATION_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleLimits {
    pub max_amplitudes: u128,
}

impl OracleLimits {
    pub const DEFAULT_MAX_AMPLITUDES: u128 = 10_000_000;

    /// Reads [`MAX_AMPLITUDES_ENV`], falling back to the default when unset
    /// or unparsable.
    pub fn from_env() -> Self {
        let max_amplitudes = std::env::var(MAX_AMPLITUDES_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .unwrap_or(Self::DEFAULT_MAX_AMPLITUDES);
        Self { max_amplitudes }
    }

    pub fn check(&self, spin: SpinParams, sites: u32) -> Result<()> {
        let needed = vbs_amplitude_count(spin, sites);
        if needed > self.max_amplitudes {
            return Err(Error::Resource { needed, limit: self.max_amplitudes });
        }
        Ok(())
    }
}

impl Default for OracleLimits {
    fn default() -> Self {
        Self { max_amplitudes: Self::DEFAULT_MAX_AMPLITUDES }
    }
}

/// `(S+1)² (2S+1)^N`, saturating.
pub fn vbs_amplitude_count(spin: SpinParams, sites: u32) -> u128 {
    let s = u128::from(spin.get());
    (2 * s + 1).checked_pow(sites).and_then(|bulk| bulk.checked_mul((s + 1) * (s + 1))).unwrap_or(u128::MAX)
}

/// Pure state on a row of sites; site 0 is the most significant index.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseState {
    pub site_dims: Vec<usize>,
    pub amplitudes: DVector<C64>,
}

impl DenseState {
    pub fn new(site_dims: Vec<usize>, amplitudes: DVector<C64>) -> Result<Self> {
        let total: usize = site_dims.iter().product();
        if total != amplitudes.len() {
            return param_err(format!("{} amplitudes for a space of dimension {total}", amplitudes.len()));
        }
        Ok(Self { site_dims, amplitudes })
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.norm()
    }

    pub fn normalize(&mut self) {
        let n = self.norm();
        self.amplitudes /= C64::from(n);
    }

    fn span(&self, range: std::ops::Range<usize>) -> usize {
        self.site_dims[range].iter().product()
    }

    /// `op` acting on sites `site` and `site + 1`.
    pub fn apply_two_site(&self, site: usize, op: &DMatrix<C64>) -> DVector<C64> {
        let mid = self.site_dims[site] * self.site_dims[site + 1];
        assert_eq!(op.shape(), (mid, mid), "operator does not match sites {site}, {}", site + 1);
        let left = self.span(0..site);
        let right = self.span(site + 2..self.site_dims.len());
        let mut out = DVector::zeros(self.amplitudes.len());
        let mut slice = DVector::<C64>::zeros(mid);
        for l in 0..left {
            for r in 0..right {
                let at = |x: usize| (l * mid + x) * right + r;
                for x in 0..mid {
                    slice[x] = self.amplitudes[at(x)];
                }
                let image = op * &slice;
                for x in 0..mid {
                    out[at(x)] = image[x];
                }
            }
        }
        out
    }
}

/// Contiguous bulk sites `first..=last` of a chain with `N` bulk sites
/// numbered `1..=N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BlockSelection {
    first: usize,
    last: usize,
}

impl BlockSelection {
    pub fn new(first: usize, last: usize, bulk_sites: usize) -> Result<Self> {
        if first < 1 || first > last || last > bulk_sites {
            return param_err(format!("block {first}..={last} not inside bulk sites 1..={bulk_sites}"));
        }
        Ok(Self { first, last })
    }

    pub fn length(&self) -> usize {
        self.last - self.first + 1
    }
}

/// Valence-bond-solid state with `N` bulk spins `S` and two bare `S/2` ends:
/// one singlet of spin `S/2` per bond, each bulk site projected onto total
/// spin `S`.
pub fn build_vbs(spin: SpinParams, bulk_sites: u32) -> Result<DenseState> {
    build_vbs_with(spin, bulk_sites, OracleLimits::from_env())
}

pub fn build_vbs_with(spin: SpinParams, bulk_sites: u32, limits: OracleLimits) -> Result<DenseState> {
    if bulk_sites == 0 {
        return param_err("chain needs at least one bulk site");
    }
    limits.check(spin, bulk_sites)?;
    let s = spin.get();
    let half = Spin::from_twice(s);
    let v = half.dim();
    let p = 2 * s as usize + 1;
    let bond = singlet_pair(half);
    let proj = symmetric_projector(s);

    // site[(phys, a, c)] = Σ_b P[phys, (a, b)] · singlet[(b, c)]
    let mut site = vec![C64::from(0.0); p * v * v];
    for phys in 0..p {
        for a in 0..v {
            for c in 0..v {
                site[(phys * v + a) * v + c] = (0..v).map(|b| proj[(phys, a * v + b)] * bond[b * v + c]).sum();
            }
        }
    }

    // amplitudes with a dangling virtual index as the fastest one
    let mut open: Vec<C64> = bond.iter().copied().collect();
    for _ in 0..bulk_sites {
        let prefix = open.len() / v;
        let mut next = vec![C64::from(0.0); prefix * p * v];
        for pre in 0..prefix {
            for a in 0..v {
                let amp = open[pre * v + a];
                if amp == C64::from(0.0) {
                    continue;
                }
                for phys in 0..p {
                    let row = &site[(phys * v + a) * v..(phys * v + a + 1) * v];
                    let dst = &mut next[(pre * p + phys) * v..(pre * p + phys + 1) * v];
                    for (d, w) in dst.iter_mut().zip(row) {
                        *d += amp * w;
                    }
                }
            }
        }
        open = next;
    }

    let mut dims = vec![v];
    dims.extend(std::iter::repeat_n(p, bulk_sites as usize));
    dims.push(v);
    let mut state = DenseState::new(dims, DVector::from_vec(open))?;
    state.normalize();
    Ok(state)
}

/// Largest `‖P ψ‖` over the Hamiltonian's projectors.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GroundStateResidual {
    /// Bulk bonds, `J ∈ [S+1, 2S]`.
    pub bulk: f64,
    /// End pairs `(S/2, S)`, `J ∈ [S/2+1, 3S/2]`.
    pub boundary: f64,
}

impl GroundStateResidual {
    pub fn max(&self) -> f64 {
        self.bulk.max(self.boundary)
    }
}

/// Evaluate every Hamiltonian projector on a state laid out like
/// [`build_vbs`] output.
pub fn ground_state_residual(state: &DenseState, spin: SpinParams) -> Result<GroundStateResidual> {
    let s = spin.get();
    let end = Spin::from_twice(s);
    let bulk_spin = Spin::integer(s);
    let n = state.site_dims.len();
    if n < 3
        || state.site_dims[0] != end.dim()
        || state.site_dims[n - 1] != end.dim()
        || state.site_dims[1..n - 1].iter().any(|&d| d != bulk_spin.dim())
    {
        return param_err("state does not have the open-chain layout for this spin");
    }
    let norm_of = |site: usize, op: &DMatrix<C64>| state.apply_two_site(site, op).norm();

    let mut bulk: f64 = 0.0;
    for total in totals_between(2 * s + 2, 4 * s) {
        let op = aklt_projector(bulk_spin, bulk_spin, total)?;
        for site in 1..n - 2 {
            bulk = bulk.max(norm_of(site, &op));
        }
    }

    let mut boundary: f64 = 0.0;
    for total in totals_between(s + 2, 3 * s) {
        let left = aklt_projector(end, bulk_spin, total)?;
        let right = aklt_projector(bulk_spin, end, total)?;
        boundary = boundary.max(norm_of(0, &left)).max(norm_of(n - 2, &right));
    }
    Ok(GroundStateResidual { bulk, boundary })
}

/// True when the explicit VBS for `(S, N)` is annihilated by every bond and
/// boundary projector to within [`ANNIHILATION_TOL`].
pub fn verify_ground_state(spin: SpinParams, bulk_sites: u32) -> Result<bool> {
    let state = build_vbs(spin, bulk_sites)?;
    Ok(ground_state_residual(&state, spin)?.max() <= ANNIHILATION_TOL)
}

/// Nonzero eigenvalues of the block's reduced density matrix, sorted
/// nonincreasing. Diagonalizes whichever side of the cut is smaller.
pub fn reduced_spectrum(state: &DenseState, block: BlockSelection) -> Result<Vec<f64>> {
    let sites = state.site_dims.len();
    if block.last + 1 >= sites {
        return param_err("block selection reaches past the bulk sites of this state");
    }
    let left = state.span(0..block.first);
    let inner = state.span(block.first..block.last + 1);
    let right = state.span(block.last + 1..sites);
    let env = left * right;

    // rows: block index, columns: (left, right) environment index
    let m = DMatrix::from_fn(inner, env, |b, e| {
        let (l, r) = (e / right, e % right);
        state.amplitudes[(l * inner + b) * right + r]
    });
    let gram = if inner <= env { &m * m.adjoint() } else { m.adjoint() * &m };
    let mut eig: Vec<f64> =
        SymmetricEigen::new(gram).eigenvalues.iter().copied().filter(|&x| x >= ZERO_EIGENVALUE).collect();
    eig.sort_by(|a, b| b.total_cmp(a));
    Ok(eig)
}

/// Reduced spectrum of bulk sites `first..first+length` in a freshly built
/// chain of `bulk_sites` sites.
pub fn block_spectrum(spin: SpinParams, bulk_sites: u32, first: u32, length: u32) -> Result<Vec<f64>> {
    if length == 0 {
        return param_err("block length must be at least 1");
    }
    let block = BlockSelection::new(first as usize, (first + length - 1) as usize, bulk_sites as usize)?;
    let state = build_vbs(spin, bulk_sites)?;
    reduced_spectrum(&state, block)
}
