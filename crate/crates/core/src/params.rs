use std::fmt;

use serde::Serialize;

use crate::error::{param_err, Result};

/// Bulk spin magnitude `S` of the chain. The two boundary spins carry `S/2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct SpinParams(u32);

impl SpinParams {
    pub fn new(spin: u32) -> Result<Self> {
        if spin == 0 {
            return param_err("spin S must be a positive integer");
        }
        Ok(Self(spin))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    /// Number of multiplets `S + 1` of the two boundary spins, one per total
    /// spin `σ = 0..=S`.
    pub fn multiplets(self) -> u32 {
        self.0 + 1
    }

    /// `(S + 1)^2`, the rank of every block reduced density matrix.
    pub fn schmidt_rank(self) -> u64 {
        let d = u64::from(self.0) + 1;
        d * d
    }

    pub(crate) fn check_index(self, what: &str, value: u32) -> Result<()> {
        if value > self.0 {
            return param_err(format!("{what} = {value} outside [0, {}]", self.0));
        }
        Ok(())
    }
}

impl fmt::Display for SpinParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Spin and block length together.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BlockSpec {
    pub spin: SpinParams,
    pub length: u32,
}

impl BlockSpec {
    pub fn new(spin: u32, length: u32) -> Result<Self> {
        let spin = SpinParams::new(spin)?;
        check_length(length)?;
        Ok(Self { spin, length })
    }
}

pub(crate) fn check_length(length: u32) -> Result<()> {
    if length == 0 {
        return param_err("block length L must be at least 1");
    }
    Ok(())
}

/// Output unit for entropies.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum LogBase {
    #[default]
    Bits,
    Nats,
}

impl LogBase {
    pub fn from_bits(self, bits: f64) -> f64 {
        match self {
            LogBase::Bits => bits,
            LogBase::Nats => bits * std::f64::consts::LN_2,
        }
    }

    pub fn suffix(self) -> &'static str {
        match self {
            LogBase::Bits => "bits",
            LogBase::Nats => "nats",
        }
    }
}
