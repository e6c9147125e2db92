//! Command-line front end: `spectrum`, `sweep`, `verify` and `convert`.
//!
//! Exit codes: 0 success, 1 a verification check failed (or I/O failed),
//! 2 bad parameters, 3 oracle size guard exceeded.

mod commands;
mod table;

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

pub use commands::{
    closed_form_nonzero, cmd_convert, cmd_spectrum, cmd_sweep, cmd_verify, spectrum_deviation, CheckOutcome,
    ConvertReport, Format, LengthRange, RunConfig, Tolerances, VerifyReport,
};
pub use table::{format_decimal, Cell, Table};

use crate::error::{Error, Result};
use crate::exact;
use crate::oracle::OracleLimits;
use crate::params::LogBase;
use crate::spectrum;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_BAD_PARAMS: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "aklt", version, about = "Exact block entanglement of spin-S valence-bond-solid chains")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Multiplet-resolved block spectrum for one block length.
    Spectrum(SpectrumArgs),
    /// E1, entropy and distance to saturation over a range of lengths.
    Sweep(SweepArgs),
    /// Brute-force checks against explicitly constructed chains.
    Verify(VerifyArgs),
    /// Deterministic conversion to an M x M maximally entangled state.
    Convert(ConvertArgs),
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write to this file instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = LogBase::Bits)]
    pub units: LogBase,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[arg(long)]
    pub spin: u32,
    #[arg(long)]
    pub length: u32,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub spin: u32,
    #[arg(long, default_value_t = 1)]
    pub lmin: u32,
    #[arg(long)]
    pub lmax: u32,
    #[arg(long, default_value_t = 1)]
    pub step: u32,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub spin: u32,
    /// Largest chain / block length checked.
    #[arg(long, default_value_t = 6)]
    pub max_length: u32,
    #[arg(long, default_value_t = 1e-10)]
    pub oracle_tol: f64,
    #[arg(long, default_value_t = 1e-10)]
    pub annihilation_tol: f64,
    #[arg(long, default_value_t = 1e-12)]
    pub overlap_tol: f64,
    /// Dense amplitude budget; overrides AKLT_ORACLE_MAX_AMPLITUDES.
    #[arg(long)]
    pub max_amplitudes: Option<u128>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ConvertArgs {
    #[arg(long)]
    pub spin: u32,
    #[arg(long)]
    pub length: u32,
    /// Dimension M of the target maximally entangled state.
    #[arg(long)]
    pub target: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

impl Command {
    fn output(&self) -> &OutputArgs {
        match self {
            Command::Spectrum(a) => &a.output,
            Command::Sweep(a) => &a.output,
            Command::Verify(a) => &a.output,
            Command::Convert(a) => &a.output,
        }
    }

    /// Validate arguments into a [`RunConfig`].
    pub fn config(&self) -> Result<RunConfig> {
        let out = self.output();
        let (mut config, default_format) = match self {
            Command::Spectrum(a) => (RunConfig::new(a.spin, LengthRange::single(a.length)?)?, Format::Csv),
            Command::Sweep(a) => (RunConfig::new(a.spin, LengthRange::new(a.lmin, a.lmax, a.step)?)?, Format::Csv),
            Command::Verify(a) => {
                let mut c = RunConfig::new(a.spin, LengthRange::new(1, a.max_length, 1)?)?;
                c.tolerances =
                    Tolerances { oracle: a.oracle_tol, annihilation: a.annihilation_tol, overlap: a.overlap_tol };
                c.tolerances.validate()?;
                c.limits = a
                    .max_amplitudes
                    .map_or_else(OracleLimits::from_env, |max_amplitudes| OracleLimits { max_amplitudes });
                (c, Format::Text)
            }
            Command::Convert(a) => {
                let mut c = RunConfig::new(a.spin, LengthRange::single(a.length)?)?;
                if a.target == 0 {
                    return Err(Error::Parameter("target dimension M must be at least 1".into()));
                }
                c.target = Some(a.target);
                (c, Format::Text)
            }
        };
        config.format = out.format.unwrap_or(default_format);
        config.units = out.units;
        Ok(config)
    }
}

fn render_table(table: &Table, format: Format, extra: serde_json::Value, out: &mut dyn Write) -> Result<()> {
    match format {
        Format::Csv => table.write_csv(out),
        Format::Text => table.write_text(out),
        Format::Json => {
            let mut doc = extra;
            doc["rows"] = table.json_rows();
            serde_json::to_writer_pretty(&mut *out, &doc).map_err(std::io::Error::from)?;
            writeln!(out)?;
            Ok(())
        }
    }
}

/// Execute a parsed command, writing results to `out`. Returns the exit code.
pub fn execute(command: &Command, out: &mut dyn Write) -> Result<i32> {
    let config = command.config()?;
    match command {
        Command::Spectrum(_) => {
            let table = cmd_spectrum(&config)?;
            let spec = spectrum::spectrum(config.spin, config.lengths.first())?;
            let extra = json!({
                "spin": config.spin.get(),
                "length": config.lengths.first(),
                "trace": exact::display(&spec.trace()),
            });
            render_table(&table, config.format, extra, out)?;
            Ok(EXIT_OK)
        }
        Command::Sweep(_) => {
            let table = cmd_sweep(&config)?;
            let extra = json!({ "spin": config.spin.get(), "units": config.units.suffix() });
            render_table(&table, config.format, extra, out)?;
            Ok(EXIT_OK)
        }
        Command::Verify(_) => {
            let report = cmd_verify(&config)?;
            match config.format {
                Format::Text => {
                    for c in &report.checks {
                        writeln!(
                            out,
                            "{} {}: {} max_deviation={} tol={}",
                            if c.passed() { "PASS" } else { "FAIL" },
                            c.name,
                            c.detail,
                            format_decimal(c.max_deviation),
                            format_decimal(c.tolerance)
                        )?;
                    }
                }
                other => render_table(&report.table(), other, json!({ "spin": config.spin.get() }), out)?,
            }
            Ok(if report.all_passed() { EXIT_OK } else { EXIT_CHECK_FAILED })
        }
        Command::Convert(_) => {
            let report = cmd_convert(&config)?;
            let u = config.units;
            match config.format {
                Format::Text => {
                    writeln!(
                        out,
                        "S={} L={} -> {}x{} maximally entangled: {}",
                        report.spin,
                        report.length,
                        report.target,
                        report.target,
                        if report.verdict.possible { "possible" } else { "impossible" }
                    )?;
                    if let Some(k) = report.verdict.witness_k {
                        writeln!(out, "first violated prefix K={k}")?;
                    }
                    writeln!(out, "max distillable dimension: {}", report.max_dim)?;
                    writeln!(out, "E1 ({}): {}", u.suffix(), format_decimal(u.from_bits(report.e1_bits)))?;
                    writeln!(
                        out,
                        "E1 integer ({}): {}",
                        u.suffix(),
                        format_decimal(u.from_bits(report.e1_integer_bits))
                    )?;
                }
                other => render_table(&report.table(u), other, json!({}), out)?,
            }
            Ok(EXIT_OK)
        }
    }
}

fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::Parameter(_) => EXIT_BAD_PARAMS,
        Error::Resource { .. } => EXIT_RESOURCE,
        Error::CriterionMismatch { .. } | Error::Io(_) => EXIT_CHECK_FAILED,
    }
}

/// Parse `args` (including the program name), run, and return the exit code.
/// Normal output goes to `stdout` unless `--out` is given.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(stderr, "{}", e.render());
                return EXIT_BAD_PARAMS;
            }
            let _ = write!(stdout, "{}", e.render());
            return EXIT_OK;
        }
    };
    let result = match &cli.command.output().out {
        Some(path) => File::create(path).map_err(Error::from).and_then(|f| {
            let mut w = BufWriter::new(f);
            let code = execute(&cli.command, &mut w)?;
            w.flush()?;
            Ok(code)
        }),
        None => execute(&cli.command, stdout),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code_for(&e)
        }
    }
}
