use rayon::prelude::*;

use super::table::{Cell, Table};
use crate::error::{param_err, Result};
use crate::exact;
use crate::majorization::{self, ConversionVerdict};
use crate::oracle::{self, coherent, OracleLimits};
use crate::params::{check_length, LogBase, SpinParams};
use crate::spectrum::{self, EntanglementReport};

/// Inclusive `start..=end` stepping by `step`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LengthRange {
    start: u32,
    end: u32,
    step: u32,
}

impl LengthRange {
    pub fn new(start: u32, end: u32, step: u32) -> Result<Self> {
        check_length(start)?;
        if step == 0 {
            return param_err("length step must be at least 1");
        }
        if start > end {
            return param_err(format!("empty length range {start}..={end}"));
        }
        Ok(Self { start, end, step })
    }

    pub fn single(length: u32) -> Result<Self> {
        Self::new(length, length, 1)
    }

    pub fn first(&self) -> u32 {
        self.start
    }

    pub fn last(&self) -> u32 {
        self.iter().last().unwrap_or(self.start)
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> {
        (self.start..=self.end).step_by(self.step as usize)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    /// Closed form vs. dense diagonalization, per eigenvalue.
    pub oracle: f64,
    /// `‖P ψ‖` for Hamiltonian projectors.
    pub annihilation: f64,
    /// Coherent-state overlap law.
    pub overlap: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { oracle: 1e-10, annihilation: 1e-10, overlap: 1e-12 }
    }
}

impl Tolerances {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("oracle", self.oracle), ("annihilation", self.annihilation), ("overlap", self.overlap)] {
            if !(v > 0.0 && v.is_finite()) {
                return param_err(format!("{name} tolerance must be positive, got {v}"));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
    Text,
}

/// Validated parameters for one command invocation.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub spin: SpinParams,
    pub lengths: LengthRange,
    /// Total bulk sites for oracle runs; defaults to the largest block length.
    pub total_sites: Option<u32>,
    pub target: Option<u64>,
    pub format: Format,
    pub units: LogBase,
    pub tolerances: Tolerances,
    pub limits: OracleLimits,
}

impl RunConfig {
    pub fn new(spin: u32, lengths: LengthRange) -> Result<Self> {
        Ok(Self {
            spin: SpinParams::new(spin)?,
            lengths,
            total_sites: None,
            target: None,
            format: Format::default(),
            units: LogBase::default(),
            tolerances: Tolerances::default(),
            limits: OracleLimits::default(),
        })
    }
}

fn frac_cells(x: &exact::Rational) -> [Cell; 3] {
    [Cell::BigInt(x.numer().to_string()), Cell::BigInt(x.denom().to_string()), Cell::Float(exact::to_f64(x))]
}

/// One row per multiplet: spin, length, σ, degeneracy, exact and decimal
/// eigenvalue.
pub fn cmd_spectrum(config: &RunConfig) -> Result<Table> {
    let mut table =
        Table::new(["spin", "length", "sigma", "degeneracy", "eigenvalue_num", "eigenvalue_den", "eigenvalue"]);
    for length in config.lengths.iter() {
        let spec = spectrum::spectrum(config.spin, length)?;
        for level in &spec.levels {
            let mut row = vec![
                Cell::Int(config.spin.get().into()),
                Cell::Int(length.into()),
                Cell::Int(level.sigma.into()),
                Cell::Int(level.degeneracy.into()),
            ];
            row.extend(frac_cells(&level.eigenvalue));
            table.push(row);
        }
    }
    Ok(table)
}

/// Per length: `E₁`, entropy, asymptote, both gaps and the argmax multiplet.
/// Rows are computed in parallel and emitted in length order.
pub fn cmd_sweep(config: &RunConfig) -> Result<Table> {
    let u = config.units;
    let suffix = u.suffix();
    let mut table = Table::new([
        "spin".to_string(),
        "length".into(),
        format!("e1_{suffix}"),
        format!("vn_{suffix}"),
        format!("asymptote_{suffix}"),
        "e1_gap".into(),
        "vn_gap".into(),
        "sigma_star".into(),
    ]);
    let lengths: Vec<u32> = config.lengths.iter().collect();
    let reports: Vec<EntanglementReport> =
        lengths.par_iter().map(|&l| EntanglementReport::new(config.spin, l)).collect::<Result<_>>()?;
    for r in reports {
        table.push(vec![
            Cell::Int(r.spin.get().into()),
            Cell::Int(r.length.into()),
            Cell::Float(u.from_bits(r.e1_bits)),
            Cell::Float(u.from_bits(r.vn_entropy_bits)),
            Cell::Float(u.from_bits(r.asymptote_bits)),
            Cell::Float(u.from_bits(r.e1_gap_bits)),
            Cell::Float(u.from_bits(r.vn_gap_bits)),
            Cell::Int(r.largest_sigma.into()),
        ]);
    }
    Ok(table)
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckOutcome {
    pub name: String,
    pub detail: String,
    pub max_deviation: f64,
    pub tolerance: f64,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.max_deviation <= self.tolerance
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct VerifyReport {
    pub checks: Vec<CheckOutcome>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(CheckOutcome::passed)
    }

    pub fn table(&self) -> Table {
        let mut t = Table::new(["check", "detail", "passed", "max_deviation", "tolerance"]);
        for c in &self.checks {
            t.push(vec![
                Cell::Text(c.name.clone()),
                Cell::Text(c.detail.clone()),
                Cell::Bool(c.passed()),
                Cell::Float(c.max_deviation),
                Cell::Float(c.tolerance),
            ]);
        }
        t
    }
}

/// Largest entrywise difference between two sorted spectra; a length
/// mismatch counts as an infinite deviation.
pub fn spectrum_deviation(a: &[f64], b: &[f64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// Closed-form eigenvalues expanded by degeneracy, zeros dropped, sorted
/// nonincreasing; the shape the oracle returns.
pub fn closed_form_nonzero(spin: SpinParams, length: u32) -> Result<Vec<f64>> {
    let expanded = majorization::expand(&spectrum::spectrum(spin, length)?);
    Ok(expanded.probs().iter().map(exact::to_f64).filter(|&p| p >= oracle::state::ZERO_EIGENVALUE).collect())
}

/// Runs the brute-force checks up to `config.lengths.last()` sites.
pub fn cmd_verify(config: &RunConfig) -> Result<VerifyReport> {
    let spin = config.spin;
    let max_n = config.total_sites.unwrap_or(config.lengths.last()).max(config.lengths.last());
    config.limits.check(spin, max_n)?;
    let tol = config.tolerances;
    let build = |n: u32| oracle::build_vbs_with(spin, n, config.limits);
    let mut checks = Vec::new();

    let mut worst: f64 = 0.0;
    for n in config.lengths.iter() {
        let state = build(n)?;
        let brute = oracle::reduced_spectrum(&state, oracle::BlockSelection::new(1, n as usize, n as usize)?)?;
        worst = worst.max(spectrum_deviation(&brute, &closed_form_nonzero(spin, n)?));
    }
    checks.push(CheckOutcome {
        name: "oracle-equivalence".into(),
        detail: format!("S={spin} L=N in {}..={}", config.lengths.first(), config.lengths.last()),
        max_deviation: worst,
        tolerance: tol.oracle,
    });

    let mut worst: f64 = 0.0;
    for n in config.lengths.iter() {
        worst = worst.max(oracle::ground_state_residual(&build(n)?, spin)?.max());
    }
    checks.push(CheckOutcome {
        name: "ground-state".into(),
        detail: format!("S={spin} N in {}..={}", config.lengths.first(), config.lengths.last()),
        max_deviation: worst,
        tolerance: tol.annihilation,
    });

    let block = config.lengths.first().max(max_n.min(3));
    let reference =
        oracle::reduced_spectrum(&build(block)?, oracle::BlockSelection::new(1, block as usize, block as usize)?)?;
    let mut worst: f64 = 0.0;
    for n in block + 1..=max_n {
        let ev = oracle::reduced_spectrum(&build(n)?, oracle::BlockSelection::new(1, block as usize, n as usize)?)?;
        worst = worst.max(spectrum_deviation(&ev, &reference));
    }
    checks.push(CheckOutcome {
        name: "n-independence".into(),
        detail: format!("S={spin} L={block} N in {block}..={max_n}"),
        max_deviation: worst,
        tolerance: tol.oracle,
    });

    checks.push(CheckOutcome {
        name: "coherent-overlap".into(),
        detail: format!("S={spin} 5x5 angle grid, all pairs"),
        max_deviation: coherent::max_overlap_deviation(spin, &coherent::angle_grid(5, 5)),
        tolerance: tol.overlap,
    });

    Ok(VerifyReport { checks })
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConvertReport {
    pub spin: SpinParams,
    pub length: u32,
    pub target: u64,
    pub verdict: ConversionVerdict,
    pub max_dim: u64,
    pub e1_bits: f64,
    pub e1_integer_bits: f64,
}

impl ConvertReport {
    pub fn table(&self, units: LogBase) -> Table {
        let s = units.suffix();
        let mut t = Table::new([
            "spin".to_string(),
            "length".into(),
            "target".into(),
            "possible".into(),
            "witness_k".into(),
            "max_distillable_dim".into(),
            format!("e1_{s}"),
            format!("e1_integer_{s}"),
        ]);
        t.push(vec![
            Cell::Int(self.spin.get().into()),
            Cell::Int(self.length.into()),
            Cell::Int(self.target as i64),
            Cell::Bool(self.verdict.possible),
            self.verdict.witness_k.map_or(Cell::Missing, |k| Cell::Int(k as i64)),
            Cell::Int(self.max_dim as i64),
            Cell::Float(units.from_bits(self.e1_bits)),
            Cell::Float(units.from_bits(self.e1_integer_bits)),
        ]);
        t
    }
}

/// Deterministic conversion of the `(S, L)` block into an `M × M` maximally
/// entangled state.
pub fn cmd_convert(config: &RunConfig) -> Result<ConvertReport> {
    let Some(target) = config.target else {
        return param_err("convert needs a target dimension");
    };
    let length = config.lengths.first();
    let schmidt = majorization::expand(&spectrum::spectrum(config.spin, length)?);
    Ok(ConvertReport {
        spin: config.spin,
        length,
        target,
        verdict: majorization::nielsen_max_entangled_check(&schmidt, target)?,
        max_dim: majorization::max_distillable_dim(&schmidt),
        e1_bits: majorization::e1_bits(&schmidt),
        e1_integer_bits: majorization::e1_integer_bits(&schmidt),
    })
}
