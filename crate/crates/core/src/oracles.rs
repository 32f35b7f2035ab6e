//! Independent reference computations and sampling sweeps.
//!
//! Nothing in this module calls the closed forms it is meant to check: the
//! PPT test works on the partially transposed matrix, passive energies are
//! found by exhaustive search over assignments, and the uniform-marginal
//! value of `M` is summed level by level from an explicitly enumerated
//! energy grid.

use itertools::Itertools;
use nalgebra::DMatrix;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{certify_entanglement, Verdict};
use crate::error::{Error, Result};
use crate::linalg::{
    hermitian_eigenvalues, hermitian_spectrum, ComplexMatrix, Subsystem, Tolerances,
};
use crate::majorization::nielsen_kempe_holds;
use crate::states::{
    haar_random_pure, random_separable, seeded_rng, werner_state, BipartiteSystem,
};

/// Longest input for which [`brute_passive_energy`] enumerates permutations.
pub const BRUTE_FORCE_MAX_LEN: usize = 8;

/// `rho^{T_B}`: transposes the second factor.
pub fn partial_transpose_b(sys: &BipartiteSystem) -> ComplexMatrix {
    let (d1, d2) = (sys.d1(), sys.d2());
    let m = sys.rho().matrix().inner();
    let n = d1 * d2;
    ComplexMatrix::from_inner(DMatrix::from_fn(n, n, |r, c| {
        let (a, b) = (r / d2, r % d2);
        let (ap, bp) = (c / d2, c % d2);
        m[(a * d2 + bp, ap * d2 + b)]
    }))
}

/// Positivity of the partial transpose. Only offered for 2x2 and 2x3,
/// where it decides separability exactly.
pub fn ppt_separable(sys: &BipartiteSystem, tol: &Tolerances) -> Result<bool> {
    if !matches!((sys.d1(), sys.d2()), (2, 2) | (2, 3)) {
        return Err(Error::UnsupportedDimension {
            d1: sys.d1(),
            d2: sys.d2(),
        });
    }
    let eig = hermitian_eigenvalues(&partial_transpose_b(sys))?;
    Ok(eig[0] >= -tol.psd)
}

/// Minimum of `sum_i x_{pi(i)} e_i` over permutations `pi`.
///
/// Exhaustive up to [`BRUTE_FORCE_MAX_LEN`] entries; longer inputs fall back to
/// pairing descending populations with ascending energies (rearrangement
/// inequality).
pub fn brute_passive_energy(x: &[f64], energies: &[f64]) -> Result<f64> {
    if x.len() != energies.len() {
        return Err(Error::LengthMismatch {
            left: x.len(),
            right: energies.len(),
        });
    }
    if x.len() <= BRUTE_FORCE_MAX_LEN {
        let best = (0..x.len())
            .permutations(x.len())
            .map(|perm| {
                perm.iter()
                    .zip(energies)
                    .map(|(&i, e)| x[i] * e)
                    .sum::<f64>()
            })
            .fold(f64::INFINITY, f64::min);
        return Ok(if x.is_empty() { 0.0 } else { best });
    }
    let mut xs = x.to_vec();
    xs.sort_by(|a, b| b.total_cmp(a));
    let mut es = energies.to_vec();
    es.sort_by(f64::total_cmp);
    Ok(xs.iter().zip(&es).map(|(a, b)| a * b).sum())
}

/// `M(d1, d2)` evaluated directly from maximally mixed marginals:
/// `sum_i i/d1 + sum_t (t - level_t)/d2` over `t = 1..d2-1`, where `level_t`
/// is the `t`-th entry of the sorted unit-spaced energy grid. These are the
/// anti-diagonal weights the bound subtracts from the `B` side.
pub fn uniform_marginal_oracle(d1: usize, d2: usize) -> Result<f64> {
    if d1 < 2 || d2 < d1 {
        return Err(Error::DimensionError { d1, d2 });
    }
    let mut grid: Vec<usize> = (0..d1)
        .cartesian_product(0..d2)
        .map(|(a, b)| a + b)
        .collect();
    grid.sort_unstable();
    let p = 1.0 / d1 as f64;
    let q = 1.0 / d2 as f64;
    let local_a: f64 = (1..d1).map(|i| i as f64 * p).sum();
    let local_b: f64 = (1..d2).map(|i| i as f64 * q).sum();
    let r: f64 = (1..d2).map(|t| grid[t] as f64 * q).sum();
    Ok(local_a + local_b - r)
}

/// State family drawn by [`violation_sweep`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SweepFamily {
    /// Flat-Dirichlet mixtures of Haar product states; `param` is the number
    /// of product terms.
    Separable,
    /// Haar-random pure states; `param` is the Schmidt rank.
    HaarPure,
    /// Werner states on an even grid of `p` over `[0, 1]`; `param` is `p`.
    WernerGrid,
}

impl std::str::FromStr for SweepFamily {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "separable" => Ok(Self::Separable),
            "haar" | "haar-pure" => Ok(Self::HaarPure),
            "werner" | "werner-grid" => Ok(Self::WernerGrid),
            other => Err(format!("unknown family `{other}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub family: SweepFamily,
    pub d1: usize,
    pub d2: usize,
    pub n_samples: usize,
    pub seed: u64,
}

/// One sampled state with everything the criteria say about it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub seed: u64,
    pub d1: usize,
    pub d2: usize,
    pub param: f64,
    pub spectrum: Vec<f64>,
    pub gap: f64,
    pub bound_spectral: f64,
    pub bound_dimensional: f64,
    pub bound: f64,
    pub nk_holds: bool,
    pub ppt_separable: Option<bool>,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct SweepSummary {
    pub samples: usize,
    pub entangled: usize,
    pub separable: usize,
    pub inconclusive: usize,
    pub nk_failures: usize,
    pub ppt_entangled: usize,
}

impl SweepSummary {
    pub fn of(records: &[SweepRecord]) -> Self {
        records.iter().fold(Self::default(), |mut s, r| {
            s.samples += 1;
            match r.verdict {
                Verdict::Entangled => s.entangled += 1,
                Verdict::Separable => s.separable += 1,
                Verdict::Inconclusive => s.inconclusive += 1,
            }
            s.nk_failures += usize::from(!r.nk_holds);
            s.ppt_entangled += usize::from(r.ppt_separable == Some(false));
            s
        })
    }
}

/// Seed of sample `index` under root seed `root`.
pub fn sample_seed(root: u64, index: usize) -> u64 {
    root.wrapping_add(index as u64)
}

fn sample(cfg: &SweepConfig, index: usize) -> Result<(u64, f64, BipartiteSystem)> {
    let seed = sample_seed(cfg.seed, index);
    match cfg.family {
        SweepFamily::WernerGrid => {
            let p = if cfg.n_samples <= 1 {
                0.0
            } else {
                index as f64 / (cfg.n_samples - 1) as f64
            };
            Ok((seed, p, werner_state(p)?))
        }
        SweepFamily::Separable => {
            let max_terms = (cfg.d1 * cfg.d2).pow(2);
            let n_terms = seeded_rng(seed ^ 0x5eed_7e57).random_range(1..=max_terms);
            Ok((
                seed,
                n_terms as f64,
                random_separable(cfg.d1, cfg.d2, n_terms, seed)?,
            ))
        }
        SweepFamily::HaarPure => {
            let sys = haar_random_pure(cfg.d1, cfg.d2, seed)?;
            let rank = hermitian_spectrum(&sys.marginal(Subsystem::A)?)?.rank(1e-9);
            Ok((seed, rank as f64, sys))
        }
    }
}

/// Evaluates one system against every criterion.
pub fn evaluate(
    sys: &BipartiteSystem,
    seed: u64,
    param: f64,
    tol: &Tolerances,
) -> Result<SweepRecord> {
    let report = certify_entanglement(sys, tol)?;
    let ppt = match ppt_separable(sys, tol) {
        Ok(v) => Some(v),
        Err(Error::UnsupportedDimension { .. }) => None,
        Err(e) => return Err(e),
    };
    Ok(SweepRecord {
        seed,
        d1: sys.d1(),
        d2: sys.d2(),
        param,
        spectrum: hermitian_spectrum(sys.rho())?.into(),
        gap: report.gap,
        bound_spectral: report.bound.spectral_bound,
        bound_dimensional: report.bound.dimension_bound,
        bound: report.bound.bound,
        nk_holds: nielsen_kempe_holds(sys, tol)?,
        ppt_separable: ppt,
        verdict: report.verdict,
    })
}

/// Draws `n_samples` states of one family and records gap, bounds, the
/// Nielsen-Kempe test, PPT (where exact) and the verdict.
///
/// Samples run in parallel; sample `i` uses seed `root + i`, and records come
/// back in index order, so the output does not depend on scheduling.
pub fn violation_sweep(cfg: &SweepConfig, tol: &Tolerances) -> Result<Vec<SweepRecord>> {
    if cfg.family == SweepFamily::WernerGrid && (cfg.d1, cfg.d2) != (2, 2) {
        return Err(Error::DimensionError {
            d1: cfg.d1,
            d2: cfg.d2,
        });
    }
    if cfg.d1 < 2 || cfg.d2 < 2 {
        return Err(Error::DimensionError {
            d1: cfg.d1,
            d2: cfg.d2,
        });
    }
    (0..cfg.n_samples)
        .into_par_iter()
        .map(|i| {
            let (seed, param, sys) = sample(cfg, i)?;
            evaluate(&sys, seed, param, tol)
        })
        .collect()
}
