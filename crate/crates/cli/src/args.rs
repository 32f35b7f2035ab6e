use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use ergokit::SweepFamily;

/// Ergotropic gap, separability bounds and dimension witnesses for
/// bipartite quantum states.
#[derive(Debug, Parser)]
#[command(name = "ergokit", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Write the result here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,

    /// Eigenvalue tolerance used by gap clamping and verdict margins.
    #[arg(long, global = true, env = "ERGOKIT_TOL_EIG", value_parser = positive_f64)]
    pub tol_eig: Option<f64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Global and local ergotropies and the ergotropic gap of a state file.
    Gap {
        /// JSON state file.
        state: PathBuf,
    },
    /// Compare the gap with the separable bound and report a verdict.
    Certify {
        /// JSON state file.
        state: PathBuf,
    },
    /// Separable-gap bound for given dimensions, optionally for a spectrum.
    Bound {
        #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
        d1: u32,
        #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
        d2: u32,
        /// Comma-separated eigenvalues of the global state (d1*d2 entries).
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        spectrum: Option<Vec<f64>>,
    },
    /// Smallest local dimension compatible with a measured gap.
    WitnessDim {
        #[arg(long, allow_negative_numbers = true)]
        gap: f64,
        /// Level spacing of the local ladders.
        #[arg(long, default_value_t = 1.0)]
        spacing: f64,
    },
    /// Sample a state family and tabulate gaps, bounds and verdicts.
    Sweep {
        #[arg(long, value_enum)]
        family: Family,
        /// Local dimensions as `D1xD2`.
        #[arg(long, default_value = "2x2", value_parser = parse_dims)]
        dims: (usize, usize),
        /// Number of samples (grid points for `werner`).
        #[arg(long, default_value_t = 100)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Werner,
    Separable,
    Haar,
}

impl From<Family> for SweepFamily {
    fn from(f: Family) -> Self {
        match f {
            Family::Werner => SweepFamily::WernerGrid,
            Family::Separable => SweepFamily::Separable,
            Family::Haar => SweepFamily::HaarPure,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

fn positive_f64(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
        Ok(v) => Err(format!("{v} is not a positive finite number")),
        Err(e) => Err(e.to_string()),
    }
}

fn parse_dims(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("expected D1xD2, got `{s}`"))?;
    let d1: usize = a.trim().parse().map_err(|e| format!("`{a}`: {e}"))?;
    let d2: usize = b.trim().parse().map_err(|e| format!("`{b}`: {e}"))?;
    if d1 < 2 || d2 < 2 {
        return Err(format!("dimensions must be at least 2, got {d1}x{d2}"));
    }
    Ok((d1, d2))
}
