//! Closed-form block spectrum of the spin-S valence-bond-solid chain.
//!
//! The reduced density matrix of `L` contiguous bulk spins has the same
//! nonzero spectrum as the state of the two effective boundary spins `S/2`
//! that sit at the block edges. That state is diagonal in their total spin
//! `σ ∈ {0, …, S}`, giving `S + 1` multiplets of degeneracy `2σ + 1`.
//!
//! Each multiplet eigenvalue is a finite sum over isotropic tensor channels
//! `j = 0..=S`: channel `j` decays as `λ(j)^(L+1)` and is shaped in `σ` by the
//! boundary polynomial `Ĩ_j(X(σ))`, where `X(σ) = s₀·s_{L+1}`. All of this
//! is evaluated in exact rational arithmetic; floats appear only when
//! taking logarithms.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{param_err, Result};
use crate::exact::{self, factorial, frac, int, pow, Rational};
use crate::params::{check_length, SpinParams};

/// `λ(l) = (-1)^l S!(S+1)! / ((S-l)!(S+l+1)!)`, the decay factor of tensor
/// channel `l` per bond.
pub fn transfer_eigenvalue(spin: SpinParams, l: u32) -> Result<Rational> {
    spin.check_index("channel l", l)?;
    let s = spin.get();
    let magnitude = Rational::new(factorial(s) * factorial(s + 1), factorial(s - l) * factorial(s + l + 1));
    Ok(if l.is_multiple_of(2) { magnitude } else { -magnitude })
}

/// Coefficient of `P_l(x)` in `((1 + x)/2)^S`:
/// `(2l+1) S!S! / ((S-l)!(S+l+1)!)`.
pub fn legendre_coefficient(spin: SpinParams, l: u32) -> Result<Rational> {
    spin.check_index("channel l", l)?;
    let s = spin.get();
    Ok(Rational::new(BigInt::from(2 * l + 1) * factorial(s) * factorial(s), factorial(s - l) * factorial(s + l + 1)))
}

/// Legendre polynomial `P_l(x)` by Bonnet's recurrence, exactly.
pub fn legendre_p(l: u32, x: &Rational) -> Rational {
    let mut prev = Rational::one();
    if l == 0 {
        return prev;
    }
    let mut cur = x.clone();
    for n in 1..l {
        let n = i64::from(n);
        let next = (frac(2 * n + 1, n + 1) * x * &cur) - (frac(n, n + 1) * &prev);
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// All boundary polynomials `Ĩ_0(X), …, Ĩ_S(X)` at once.
///
/// `Ĩ_j = 4π I_j`, so `Ĩ_0 = 1` and `Ĩ_1 = 3X/(S/2+1)²`, continued by the
/// three-term recursion
///
/// ```text
/// Ĩ_{j+1} = (2j+3)/(S+j+2)² · (4X/(j+1) + j) · Ĩ_j
///         − j/(j+1) · (2j+3)/(2j−1) · ((S−j+1)/(S+j+2))² · Ĩ_{j−1}
/// ```
pub fn boundary_polynomials(spin: SpinParams, x: &Rational) -> Vec<Rational> {
    let s = i64::from(spin.get());
    let mut out = Vec::with_capacity(spin.multiplets() as usize);
    out.push(Rational::one());
    let half_plus_one = frac(s + 2, 2);
    out.push(int(3) * x / (&half_plus_one * &half_plus_one));
    for j in 1..s {
        let lead = frac(2 * j + 3, (s + j + 2) * (s + j + 2)) * (int(4) * x / int(j + 1) + int(j));
        let ratio = frac(s - j + 1, s + j + 2);
        let tail = frac(j, j + 1) * frac(2 * j + 3, 2 * j - 1) * &ratio * &ratio;
        let j = j as usize;
        let next = lead * &out[j] - tail * &out[j - 1];
        out.push(next);
    }
    out.truncate(spin.multiplets() as usize);
    out
}

/// Single boundary polynomial `Ĩ_j(X)`.
pub fn boundary_polynomial(spin: SpinParams, j: u32, x: &Rational) -> Result<Rational> {
    spin.check_index("polynomial order j", j)?;
    Ok(boundary_polynomials(spin, x).swap_remove(j as usize))
}

/// `X(σ) = s₀·s_{L+1} = σ(σ+1)/2 − (S/2)(S/2+1)` for two spins `S/2`
/// coupled to total spin `σ`.
pub fn multiplet_x(spin: SpinParams, sigma: u32) -> Result<Rational> {
    spin.check_index("sigma", sigma)?;
    let sigma = i64::from(sigma);
    let s = i64::from(spin.get());
    Ok(frac(sigma * (sigma + 1), 2) - frac(s * (s + 2), 4))
}

/// How each tensor channel is weighted when summing the multiplet
/// distribution.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ChannelWeights {
    /// `w_j = (2j+1) / ((S+1)² Ĩ_j(X(S)))`. This makes the `σ = S` level
    /// equal `Σ_j (2j+1) λ(j)^(L+1) / (S+1)²` and reproduces brute-force
    /// diagonalization exactly.
    #[default]
    Reconciled,
    /// `w_j = (S+j+1)!(S-j)! / ((S+1)!)²` as commonly printed. Its raw trace
    /// is `S + 1` and, even after normalization, the σ-dependence is wrong
    /// for `S ≥ 1`. Kept for auditing only.
    AsPrinted,
}

impl ChannelWeights {
    fn weights(self, spin: SpinParams) -> Vec<Rational> {
        let s = spin.get();
        match self {
            ChannelWeights::Reconciled => {
                let top = multiplet_x(spin, s).expect("σ = S in range");
                let norm = int(i64::from(s) + 1).pow(2);
                boundary_polynomials(spin, &top)
                    .into_iter()
                    .enumerate()
                    .map(|(j, at_top)| {
                        assert!(!at_top.is_zero(), "Ĩ_{j}(X(S)) vanished for S = {s}");
                        int(2 * j as i64 + 1) / (&norm * at_top)
                    })
                    .collect()
            }
            ChannelWeights::AsPrinted => {
                let den = factorial(s + 1) * factorial(s + 1);
                (0..=s).map(|j| Rational::new(factorial(s + j + 1) * factorial(s - j), den.clone())).collect()
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultipletLevel {
    pub sigma: u32,
    pub degeneracy: u32,
    /// Eigenvalue `p_σ` of a single state in the multiplet.
    #[serde(serialize_with = "serialize_rational")]
    pub eigenvalue: Rational,
}

fn serialize_rational<S: serde::Serializer>(x: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&exact::display(x))
}

/// Multiplet-resolved spectrum of a block reduced density matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundarySpectrum {
    pub spin: SpinParams,
    pub length: u32,
    /// One entry per `σ = 0..=S`, in order.
    pub levels: Vec<MultipletLevel>,
    /// `Σ_σ (2σ+1) r_σ` before normalization. Equal to 1 for
    /// [`ChannelWeights::Reconciled`].
    pub raw_trace: Rational,
}

impl BoundarySpectrum {
    /// Build a spectrum from explicit per-multiplet eigenvalues, checking
    /// positivity and the trace.
    pub fn from_levels(spin: SpinParams, length: u32, eigenvalues: Vec<Rational>) -> Result<Self> {
        if eigenvalues.len() != spin.multiplets() as usize {
            return param_err(format!(
                "expected {} multiplet eigenvalues, got {}",
                spin.multiplets(),
                eigenvalues.len()
            ));
        }
        let levels: Vec<_> = eigenvalues
            .into_iter()
            .zip(0u32..)
            .map(|(eigenvalue, sigma)| MultipletLevel { sigma, degeneracy: 2 * sigma + 1, eigenvalue })
            .collect();
        if let Some(bad) = levels.iter().find(|l| l.eigenvalue.is_negative()) {
            return param_err(format!("negative eigenvalue at sigma = {}", bad.sigma));
        }
        let spec = Self { spin, length, levels, raw_trace: Rational::one() };
        if !spec.trace().is_one() {
            return param_err(format!("trace is {}, not 1", exact::display(&spec.trace())));
        }
        Ok(spec)
    }

    /// `Σ_σ (2σ+1) p_σ`, exactly.
    pub fn trace(&self) -> Rational {
        self.levels.iter().map(|l| int(i64::from(l.degeneracy)) * &l.eigenvalue).sum()
    }

    pub fn eigenvalue_count(&self) -> u64 {
        self.levels.iter().map(|l| u64::from(l.degeneracy)).sum()
    }

    /// Largest eigenvalue, compared exactly; ties go to the smaller `σ`.
    pub fn largest(&self) -> (u32, &Rational) {
        let mut best = &self.levels[0];
        for level in &self.levels[1..] {
            if level.eigenvalue > best.eigenvalue {
                best = level;
            }
        }
        (best.sigma, &best.eigenvalue)
    }

    /// `−log₂ Λ₁`.
    pub fn single_copy_entanglement_bits(&self) -> f64 {
        -exact::log2(self.largest().1)
    }

    /// `−Σ_σ (2σ+1) p_σ log₂ p_σ`, skipping empty multiplets.
    pub fn von_neumann_entropy_bits(&self) -> f64 {
        self.levels
            .iter()
            .filter(|l| !l.eigenvalue.is_zero())
            .map(|l| -f64::from(l.degeneracy) * exact::to_f64(&l.eigenvalue) * exact::log2(&l.eigenvalue))
            .sum()
    }

    /// `E₁ − 2log₂(S+1) = −log₂((S+1)² Λ₁)`, computed from the exact excess
    /// so it stays accurate when the gap is far below double epsilon.
    pub fn e1_gap_bits(&self) -> f64 {
        let scale = self.flat_scale();
        -exact::log2_1p(&(scale * self.largest().1 - Rational::one()))
    }

    /// `S_vN − 2log₂(S+1) = −Σ (2σ+1) p_σ log₂((S+1)² p_σ)`.
    pub fn vn_gap_bits(&self) -> f64 {
        let scale = self.flat_scale();
        self.levels
            .iter()
            .filter(|l| !l.eigenvalue.is_zero())
            .map(|l| {
                let excess = &scale * &l.eigenvalue - Rational::one();
                -f64::from(l.degeneracy) * exact::to_f64(&l.eigenvalue) * exact::log2_1p(&excess)
            })
            .sum()
    }

    fn flat_scale(&self) -> Rational {
        int(self.spin.schmidt_rank() as i64)
    }
}

/// Multiplet spectrum of a block of `length` bulk spins.
pub fn spectrum(spin: SpinParams, length: u32) -> Result<BoundarySpectrum> {
    spectrum_with(spin, length, ChannelWeights::Reconciled)
}

/// Multiplet spectrum with a chosen channel weighting. The raw multiplet
/// values are divided by their exact trace; a non-unit trace is logged.
pub fn spectrum_with(spin: SpinParams, length: u32, weights: ChannelWeights) -> Result<BoundarySpectrum> {
    check_length(length)?;
    let s = spin.get();
    let decayed: Vec<Rational> = weights
        .weights(spin)
        .into_iter()
        .zip(0..=s)
        .map(|(w, j)| w * pow(&transfer_eigenvalue(spin, j).expect("j ≤ S"), length + 1))
        .collect();

    let raw: Vec<Rational> = (0..=s)
        .map(|sigma| {
            let x = multiplet_x(spin, sigma).expect("σ ≤ S");
            boundary_polynomials(spin, &x).iter().zip(&decayed).map(|(poly, d)| poly * d).sum()
        })
        .collect();

    let raw_trace: Rational = raw.iter().zip(0i64..).map(|(r, sigma)| int(2 * sigma + 1) * r).sum();
    if !raw_trace.is_one() {
        log::warn!(
            "multiplet distribution for S={s}, L={length} has raw trace {}; renormalizing",
            exact::display(&raw_trace)
        );
    }

    let levels = raw
        .into_iter()
        .zip(0u32..)
        .map(|(r, sigma)| MultipletLevel { sigma, degeneracy: 2 * sigma + 1, eigenvalue: r / &raw_trace })
        .collect();
    Ok(BoundarySpectrum { spin, length, levels, raw_trace })
}

/// Argmax `(σ*, Λ₁)` of a spectrum.
pub fn largest_eigenvalue(spec: &BoundarySpectrum) -> (u32, Rational) {
    let (sigma, value) = spec.largest();
    (sigma, value.clone())
}

/// `E₁ = −log₂ Λ₁` in bits.
pub fn single_copy_entanglement(spin: SpinParams, length: u32) -> Result<f64> {
    Ok(spectrum(spin, length)?.single_copy_entanglement_bits())
}

/// Block von Neumann entropy in bits.
pub fn von_neumann_entropy(spin: SpinParams, length: u32) -> Result<f64> {
    Ok(spectrum(spin, length)?.von_neumann_entropy_bits())
}

/// Saturation value `2 log₂(S+1)` shared by `E₁` and the entropy.
pub fn asymptotic_e1(spin: SpinParams) -> f64 {
    2.0 * f64::from(spin.multiplets()).log2()
}

/// Everything the sweep reports for one `(S, L)`.
#[derive(Clone, Debug, PartialEq)]
pub struct EntanglementReport {
    pub spin: SpinParams,
    pub length: u32,
    pub e1_bits: f64,
    pub vn_entropy_bits: f64,
    pub largest_sigma: u32,
    pub largest_eigenvalue: Rational,
    pub asymptote_bits: f64,
    /// `|E₁ − asymptote|`
    pub e1_gap_bits: f64,
    /// `|S_vN − asymptote|`
    pub vn_gap_bits: f64,
}

impl EntanglementReport {
    pub fn new(spin: SpinParams, length: u32) -> Result<Self> {
        Ok(Self::from_spectrum(&spectrum(spin, length)?))
    }

    pub fn from_spectrum(spec: &BoundarySpectrum) -> Self {
        let (largest_sigma, largest) = spec.largest();
        Self {
            spin: spec.spin,
            length: spec.length,
            e1_bits: spec.single_copy_entanglement_bits(),
            vn_entropy_bits: spec.von_neumann_entropy_bits(),
            largest_sigma,
            largest_eigenvalue: largest.clone(),
            asymptote_bits: asymptotic_e1(spec.spin),
            e1_gap_bits: spec.e1_gap_bits().abs(),
            vn_gap_bits: spec.vn_gap_bits().abs(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spin(s: u32) -> SpinParams {
        SpinParams::new(s).unwrap()
    }

    fn eigenvalues(spec: &BoundarySpectrum) -> Vec<Rational> {
        spec.levels.iter().map(|l| l.eigenvalue.clone()).collect()
    }

    #[test]
    fn transfer_eigenvalue_examples() {
        for s in 1..6 {
            assert_eq!(transfer_eigenvalue(spin(s), 0).unwrap(), int(1));
        }
        assert_eq!(transfer_eigenvalue(spin(1), 1).unwrap(), frac(-1, 3));
        assert_eq!(transfer_eigenvalue(spin(2), 2).unwrap(), frac(1, 10));
        assert_eq!(transfer_eigenvalue(spin(2), 1).unwrap(), frac(-1, 2));
        assert!(transfer_eigenvalue(spin(2), 3).is_err());
    }

    #[test]
    fn legendre_coefficient_examples() {
        assert_eq!(legendre_coefficient(spin(1), 0).unwrap(), frac(1, 2));
        assert_eq!(legendre_coefficient(spin(1), 1).unwrap(), frac(1, 2));
        assert!(legendre_coefficient(spin(1), 2).is_err());
        for s in 1..=10 {
            let total: Rational = (0..=s).map(|l| legendre_coefficient(spin(s), l).unwrap()).sum();
            assert_eq!(total, int(1), "S = {s}");
        }
    }

    #[test]
    fn legendre_polynomials_low_order() {
        let x = frac(1, 3);
        assert_eq!(legendre_p(0, &x), int(1));
        assert_eq!(legendre_p(1, &x), x);
        // P2 = (3x² − 1)/2, P3 = (5x³ − 3x)/2
        assert_eq!(legendre_p(2, &x), frac(-1, 3));
        assert_eq!(legendre_p(3, &x), (int(5) * pow(&x, 3) - int(3) * &x) / int(2));
        for l in 0..8 {
            assert_eq!(legendre_p(l, &int(1)), int(1));
        }
    }

    #[test]
    fn boundary_polynomial_examples() {
        assert_eq!(boundary_polynomial(spin(3), 0, &frac(7, 5)).unwrap(), int(1));
        assert_eq!(boundary_polynomial(spin(1), 1, &frac(1, 4)).unwrap(), frac(1, 3));
        assert_eq!(boundary_polynomial(spin(2), 2, &int(1)).unwrap(), frac(1, 20));
        assert!(boundary_polynomial(spin(2), 3, &int(1)).is_err());
    }

    #[test]
    fn boundary_polynomial_degree() {
        // Ĩ_j is a degree-j polynomial: its (j+1)-th finite difference on an
        // integer grid vanishes.
        let s = spin(4);
        for j in 0..=4u32 {
            let samples: Vec<Rational> =
                (0..(j as i64 + 2)).map(|k| boundary_polynomial(s, j, &int(k)).unwrap()).collect();
            let mut diffs = samples;
            for _ in 0..=j {
                diffs = diffs.windows(2).map(|w| &w[1] - &w[0]).collect();
            }
            assert!(diffs.iter().all(Zero::is_zero), "j = {j}");
        }
    }

    #[test]
    fn multiplet_x_examples() {
        assert_eq!(multiplet_x(spin(1), 0).unwrap(), frac(-3, 4));
        assert_eq!(multiplet_x(spin(1), 1).unwrap(), frac(1, 4));
        assert_eq!(multiplet_x(spin(2), 2).unwrap(), int(1));
        assert!(multiplet_x(spin(2), 3).is_err());
    }

    #[test]
    fn spin_one_block_of_two() {
        let spec = spectrum(spin(1), 2).unwrap();
        assert_eq!(eigenvalues(&spec), vec![frac(1, 3), frac(2, 9)]);
        assert_eq!(spec.levels[1].degeneracy, 3);
        assert_eq!(spec.raw_trace, int(1));
        assert_eq!(largest_eigenvalue(&spec), (0, frac(1, 3)));
    }

    #[test]
    fn spin_one_closed_form() {
        // Two spin-1/2 ends: p_σ = 1/4 + 3 X(σ) (−1/3)^(L+1)
        for length in 1..20 {
            let spec = spectrum(spin(1), length).unwrap();
            let decay = pow(&frac(-1, 3), length + 1);
            assert_eq!(spec.levels[0].eigenvalue, frac(1, 4) - frac(9, 4) * &decay);
            assert_eq!(spec.levels[1].eigenvalue, frac(1, 4) + frac(3, 4) * &decay);
        }
    }

    #[test]
    fn frozen_brute_force_values() {
        // reference values from dense diagonalization of explicit chains
        assert_eq!(eigenvalues(&spectrum(spin(2), 1).unwrap()), vec![int(0), int(0), frac(1, 5)]);
        assert_eq!(eigenvalues(&spectrum(spin(2), 3).unwrap()), vec![frac(7, 100), frac(9, 100), frac(33, 250)]);
        assert_eq!(
            eigenvalues(&spectrum(spin(3), 2).unwrap()),
            vec![frac(1, 7), frac(4, 35), frac(12, 175), frac(6, 245)]
        );
        assert_eq!(largest_eigenvalue(&spectrum(spin(2), 3).unwrap()), (2, frac(33, 250)));
    }

    #[test]
    fn top_multiplet_matches_channel_sum() {
        // p_S = Σ_j (2j+1) λ(j)^(L+1) / (S+1)²
        for s in 1..=6 {
            for length in 1..=8 {
                let sp = spin(s);
                let expected: Rational = (0..=s)
                    .map(|j| int(2 * j as i64 + 1) * pow(&transfer_eigenvalue(sp, j).unwrap(), length + 1))
                    .sum::<Rational>()
                    / int(sp.schmidt_rank() as i64);
                let spec = spectrum(sp, length).unwrap();
                assert_eq!(spec.levels[s as usize].eigenvalue, expected, "S={s} L={length}");
            }
        }
    }

    #[test]
    fn printed_weights_have_trace_s_plus_one() {
        for s in 1..=5 {
            let spec = spectrum_with(spin(s), 4, ChannelWeights::AsPrinted).unwrap();
            assert_eq!(spec.raw_trace, int(i64::from(s) + 1));
            assert_eq!(spec.trace(), int(1));
            assert_ne!(spec, spectrum(spin(s), 4).unwrap());
        }
    }

    #[test]
    fn spectrum_rejects_bad_length() {
        assert!(spectrum(spin(1), 0).is_err());
    }

    #[test]
    fn entanglement_of_spin_one_pair() {
        let e1 = single_copy_entanglement(spin(1), 2).unwrap();
        assert!((e1 - 3f64.log2()).abs() < 1e-14);
        let vn = von_neumann_entropy(spin(1), 2).unwrap();
        let expected = 3f64.log2() / 3.0 + 2.0 / 3.0 * 4.5f64.log2();
        assert!((vn - expected).abs() < 1e-14);
        assert!((vn - 1.974_937_501_201_927).abs() < 1e-12);
    }

    #[test]
    fn saturation_values() {
        assert_eq!(asymptotic_e1(spin(1)), 2.0);
        assert_eq!(asymptotic_e1(spin(3)), 4.0);
        assert!((asymptotic_e1(spin(2)) - 2.0 * 3f64.log2()).abs() < 1e-15);
        assert!((single_copy_entanglement(spin(1), 80).unwrap() - 2.0).abs() < 1e-12);
        assert!((single_copy_entanglement(spin(3), 150).unwrap() - 4.0).abs() < 1e-12);
        assert!((von_neumann_entropy(spin(1), 80).unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn single_level_entropy() {
        // S=1, L=1: only the triplet survives, p = 1/3
        let spec = spectrum(spin(1), 1).unwrap();
        assert_eq!(eigenvalues(&spec), vec![int(0), frac(1, 3)]);
        assert!((spec.von_neumann_entropy_bits() - 3f64.log2()).abs() < 1e-14);
        let manual = BoundarySpectrum::from_levels(spin(2), 1, vec![int(0), int(0), frac(1, 5)]).unwrap();
        assert!((manual.von_neumann_entropy_bits() - 5f64.log2()).abs() < 1e-14);
    }

    #[test]
    fn uniform_spectrum_tie_break() {
        for s in 1..=4 {
            let sp = spin(s);
            let flat = Rational::new(BigInt::one(), BigInt::from(sp.schmidt_rank()));
            let spec = BoundarySpectrum::from_levels(sp, 1, vec![flat.clone(); s as usize + 1]).unwrap();
            assert_eq!(largest_eigenvalue(&spec), (0, flat));
            assert_eq!(spec.e1_gap_bits(), 0.0);
        }
    }

    #[test]
    fn from_levels_validates() {
        assert!(BoundarySpectrum::from_levels(spin(1), 1, vec![frac(1, 2), frac(1, 2)]).is_err());
        assert!(BoundarySpectrum::from_levels(spin(1), 1, vec![frac(1, 4)]).is_err());
        assert!(BoundarySpectrum::from_levels(spin(1), 1, vec![frac(-1, 2), frac(1, 2)]).is_err());
    }

    #[test]
    fn gaps_agree_with_direct_difference() {
        for (s, length) in [(1, 3), (2, 4), (3, 5), (4, 2)] {
            let report = EntanglementReport::new(spin(s), length).unwrap();
            assert!((report.e1_gap_bits - (report.asymptote_bits - report.e1_bits).abs()).abs() < 1e-12);
            assert!((report.vn_gap_bits - (report.asymptote_bits - report.vn_entropy_bits).abs()).abs() < 1e-12);
        }
    }
}
