//! Majorization and deterministic LOCC convertibility of bipartite pure
//! states, described by their Schmidt spectra.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{param_err, Error, Result};
use crate::exact::{self, int, Rational};
use crate::spectrum::BoundarySpectrum;

/// Squared Schmidt coefficients, stored nonincreasing and summing to 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchmidtSpectrum {
    probs: Vec<Rational>,
}

impl SchmidtSpectrum {
    /// Sorts the entries and checks nonnegativity and normalization.
    pub fn new(mut probs: Vec<Rational>) -> Result<Self> {
        if probs.is_empty() {
            return param_err("Schmidt spectrum must have at least one entry");
        }
        if probs.iter().any(|p| !exact::is_nonnegative(p)) {
            return param_err("Schmidt coefficients must be nonnegative");
        }
        let total: Rational = probs.iter().sum();
        if !total.is_one() {
            return param_err(format!("Schmidt coefficients sum to {}, not 1", exact::display(&total)));
        }
        probs.sort_by(|a, b| b.cmp(a));
        Ok(Self { probs })
    }

    /// `M` copies of `1/M`: the spectrum of the `M × M` maximally entangled
    /// state.
    pub fn uniform(dim: u64) -> Result<Self> {
        if dim == 0 {
            return param_err("dimension must be at least 1");
        }
        let p = Rational::new(BigInt::one(), BigInt::from(dim));
        Ok(Self { probs: vec![p; dim as usize] })
    }

    pub fn probs(&self) -> &[Rational] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    /// Largest coefficient `α↓₁`.
    pub fn leading(&self) -> &Rational {
        &self.probs[0]
    }

    /// Running sums over the first `len` entries, zero-padded.
    fn prefix_sums(&self, len: usize) -> Vec<Rational> {
        let mut acc = Rational::zero();
        let mut out = Vec::with_capacity(len);
        for k in 0..len {
            if let Some(p) = self.probs.get(k) {
                acc += p;
            }
            out.push(acc.clone());
        }
        out
    }
}

/// Expand a multiplet spectrum into its `(S+1)²` individual eigenvalues.
pub fn expand(spec: &BoundarySpectrum) -> SchmidtSpectrum {
    let mut probs: Vec<Rational> =
        spec.levels.iter().flat_map(|l| std::iter::repeat_n(l.eigenvalue.clone(), l.degeneracy as usize)).collect();
    probs.sort_by(|a, b| b.cmp(a));
    SchmidtSpectrum { probs }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConversionVerdict {
    pub possible: bool,
    /// First prefix length `K` at which `Σ_{k≤K} α↓_k > K/M`.
    pub witness_k: Option<u64>,
}

/// Can the state be turned into the `M × M` maximally entangled state by
/// LOCC with certainty?
///
/// Runs the full prefix test `Σ_{k≤K} α↓_k ≤ K/M` for `K = 1..=M` and
/// cross-checks it against `α↓₁ ≤ 1/M`.
pub fn nielsen_max_entangled_check(spec: &SchmidtSpectrum, target: u64) -> Result<ConversionVerdict> {
    if target == 0 {
        return param_err("target dimension M must be at least 1");
    }
    let m = int(target as i64);
    // for M > len the prefix at K = len already fails, so later K never matter
    let checked = usize::try_from(target).unwrap_or(usize::MAX).min(spec.len());
    let witness_k =
        spec.prefix_sums(checked).into_iter().zip(1u64..).find(|(sum, k)| sum * &m > int(*k as i64)).map(|(_, k)| k);
    let possible = witness_k.is_none();

    let shortcut = spec.leading() * &m <= Rational::one();
    if shortcut != possible {
        return Err(Error::CriterionMismatch { target });
    }
    Ok(ConversionVerdict { possible, witness_k })
}

/// Largest `M` with `α↓₁ ≤ 1/M`, i.e. `⌊1/α↓₁⌋`.
pub fn max_distillable_dim(spec: &SchmidtSpectrum) -> u64 {
    let lead = spec.leading();
    let (q, _) = lead.denom().div_rem(lead.numer());
    q.to_u64().expect("1/α↓₁ ≤ Schmidt rank fits in u64")
}

/// Continuous single-copy entanglement `−log₂ α↓₁`.
pub fn e1_bits(spec: &SchmidtSpectrum) -> f64 {
    -exact::log2(spec.leading())
}

/// Integer singlet count `log₂ ⌊1/α↓₁⌋`.
pub fn e1_integer_bits(spec: &SchmidtSpectrum) -> f64 {
    (max_distillable_dim(spec) as f64).log2()
}

/// `a ≺ b`: every prefix sum of `a` is at most the matching prefix sum of
/// `b`, so the state with spectrum `a` converts to the one with spectrum `b`.
/// Shorter spectra are zero-padded.
pub fn majorizes(a: &SchmidtSpectrum, b: &SchmidtSpectrum) -> bool {
    let len = a.len().max(b.len());
    a.prefix_sums(len).iter().zip(b.prefix_sums(len).iter()).all(|(sa, sb)| sa <= sb)
}
