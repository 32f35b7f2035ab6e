//! Upper bounds on the ergotropic gap of separable states, entanglement
//! certification, the dimension witness and the mutual-information gap.
//!
//! The bounds assume both local Hamiltonians are linear ladders with the same
//! spacing `E`. All closed forms are evaluated at `E = 1` and scaled.
//!
//! Two quantities bound a separable state's gap:
//!
//! * the spectral bound `(Y - Z) E`, where `Y` caps the local passive energies
//!   through the majorization inequalities and `Z` is the global passive
//!   energy written as a sum over the anti-diagonals of the `d1 x d2` energy
//!   grid (level `t` holds `min(t + 1, d1, d1 + d2 - 1 - t)` states);
//! * the dimensional bound `M(d1, d2) E`, attained by maximally mixed marginals.

use serde::{Deserialize, Serialize};

use crate::ergotropy::ergotropic_gap;
use crate::error::{Error, Result};
use crate::linalg::{
    hermitian_spectrum, von_neumann_entropy, ComplexMatrix, Spectrum, Subsystem, Tolerances,
};
use crate::states::BipartiteSystem;

/// Entrywise distance from `I/2` below which a qubit marginal counts as
/// maximally mixed.
pub const MAX_MIXED_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BoundCase {
    CaseI,
    CaseII,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Entangled,
    Inconclusive,
    Separable,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Entangled => "Entangled",
            Verdict::Inconclusive => "Inconclusive",
            Verdict::Separable => "Separable",
        })
    }
}

/// `M(d1, d2)` at unit spacing with the integers that select its branch.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DimensionBound {
    pub value: f64,
    pub case: BoundCase,
    pub lm: Option<(usize, usize)>,
    pub kj: Option<(usize, usize)>,
}

/// Bound fields for one spectrum, without a gap or verdict.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeparableBound {
    pub y: f64,
    pub z: f64,
    pub spectral_bound: f64,
    pub lm: Option<(usize, usize)>,
    pub kj: Option<(usize, usize)>,
    pub case: BoundCase,
    pub m_value: f64,
    pub dimension_bound: f64,
    pub bound: f64,
}

/// Full certification result.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    #[serde(flatten)]
    pub bound: SeparableBound,
    pub gap: f64,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MutualInformationGap {
    /// `I(A:B)` in bits.
    pub mutual_information: f64,
    /// `I(A:B) / beta`.
    pub delta: f64,
    /// `min(log2 d1, log2 d2) / beta`.
    pub bound: f64,
    pub flagged: bool,
}

/// `d1 (d1 - 1) / 2 + (d1 - 1)`: last index of the triangular block of the
/// energy grid.
fn d1_offset(d1: usize) -> usize {
    d1 * (d1 - 1) / 2 + (d1 - 1)
}

fn check_spectrum_dims(x: &Spectrum, d1: usize, d2: usize) -> Result<(usize, usize)> {
    if x.len() != d1 * d2 {
        return Err(Error::LengthMismatch {
            left: x.len(),
            right: d1 * d2,
        });
    }
    if d1 == 0 || d2 == 0 {
        return Err(Error::DimensionError { d1, d2 });
    }
    Ok((d1.min(d2), d1.max(d2)))
}

/// Majorization cap on the local passive energies (unit spacing).
pub fn spectral_y(x: &Spectrum, d1: usize, d2: usize) -> Result<f64> {
    let (d1, d2) = check_spectrum_dims(x, d1, d2)?;
    let x = x.values();
    let weighted = |n: usize| -> f64 { x[..n].iter().enumerate().map(|(i, v)| i as f64 * v).sum() };
    let tail = |from: usize| -> f64 { x[from..].iter().sum() };
    Ok(weighted(d1) + weighted(d2) + (d1 - 1) as f64 * tail(d1) + (d2 - 1) as f64 * tail(d2))
}

/// Global passive energy for unit-spaced ladders, as the three anti-diagonal
/// sums: the growing triangle, the band of width `d1`, the shrinking triangle.
pub fn global_passive_z(x: &Spectrum, d1: usize, d2: usize) -> Result<f64> {
    let (d1, d2) = check_spectrum_dims(x, d1, d2)?;
    let x = x.values();
    let big_d1 = d1_offset(d1);
    let big_d2 = big_d1 + (d2 - d1) * d1;

    let rising: f64 = (1..d1)
        .map(|i| {
            let start = i * (i + 1) / 2;
            i as f64 * x[start..=start + i].iter().sum::<f64>()
        })
        .sum();
    let band: f64 = (1..=d2 - d1)
        .map(|k| {
            let start = big_d1 + (k - 1) * d1 + 1;
            (d1 - 1 + k) as f64 * x[start..start + d1].iter().sum::<f64>()
        })
        .sum();
    let falling: f64 = (1..d1)
        .map(|i| {
            let start = big_d2 + (i - 1) * d1 - i * (i - 1) / 2 + 1;
            (d2 - 1 + i) as f64 * x[start..start + d1 - i].iter().sum::<f64>()
        })
        .sum();
    Ok(rising + band + falling)
}

/// Unique `(l, m)` with `l (l + 1) / 2 + m = d2 - 1`, `0 <= m <= l`.
pub fn solve_lm(d2: usize) -> Result<(usize, usize)> {
    if d2 < 2 {
        return Err(Error::DimensionError { d1: d2, d2 });
    }
    let target = d2 - 1;
    let mut l = 0;
    while (l + 1) * (l + 2) / 2 <= target {
        l += 1;
    }
    Ok((l, target - l * (l + 1) / 2))
}

/// Unique `(k, j)` with `D1 + (k - 1) d1 + j = d2 - 1`, `1 <= j <= d1`,
/// defined only when `d2 - 1 > D1`.
pub fn solve_kj(d1: usize, d2: usize) -> Result<(usize, usize)> {
    if d1 < 2 || d2 < d1 {
        return Err(Error::DimensionError { d1, d2 });
    }
    let big_d1 = d1_offset(d1);
    if d2 - 1 <= big_d1 {
        return Err(Error::CaseMismatch { d1, d2 });
    }
    let r = d2 - 1 - big_d1;
    Ok(((r - 1) / d1 + 1, (r - 1) % d1 + 1))
}

/// Largest gap any separable `d1 x d2` state can reach at unit spacing.
///
/// Case II's last partial block of `j` entries all sit on level `d1 - 1 + k`,
/// so it contributes `j (d1 - 1 + k) / d2`.
pub fn dimension_bound_m(d1: usize, d2: usize) -> Result<DimensionBound> {
    if d1 < 2 || d2 < d1 {
        return Err(Error::DimensionError { d1, d2 });
    }
    let (f1, f2) = (d1 as f64, d2 as f64);
    if d2 - 1 <= d1_offset(d1) {
        let (l, m) = solve_lm(d2)?;
        let lf = l as f64;
        let value = (f1 - 1.0) / 2.0 + (f2 - 1.0) / 2.0
            - lf / f2 * ((lf * lf - 1.0) / 3.0 + m as f64 + 1.0);
        Ok(DimensionBound {
            value,
            case: BoundCase::CaseI,
            lm: Some((l, m)),
            kj: None,
        })
    } else {
        let (k, j) = solve_kj(d1, d2)?;
        let (kf, jf) = (k as f64, j as f64);
        let value = (f1 + f2) / 2.0
            - 1.0
            - f1 / f2 * ((f1 * f1 - 1.0) / 3.0 + (kf - 1.0) * (f1 - 1.0 + kf / 2.0))
            - jf * (f1 - 1.0 + kf) / f2;
        Ok(DimensionBound {
            value,
            case: BoundCase::CaseII,
            lm: None,
            kj: Some((k, j)),
        })
    }
}

/// `min{(Y - Z) E, M(d1, d2) E}` for a global spectrum `x`.
pub fn separable_gap_bound(
    x: &Spectrum,
    d1: usize,
    d2: usize,
    spacing: f64,
) -> Result<SeparableBound> {
    if !(spacing > 0.0) || !spacing.is_finite() {
        return Err(Error::InvalidSpacing(spacing));
    }
    let (d1, d2) = check_spectrum_dims(x, d1, d2)?;
    let m = dimension_bound_m(d1, d2)?;
    let y = spectral_y(x, d1, d2)? * spacing;
    let z = global_passive_z(x, d1, d2)? * spacing;
    let spectral_bound = y - z;
    let dimension_bound = m.value * spacing;
    Ok(SeparableBound {
        y,
        z,
        spectral_bound,
        lm: m.lm,
        kj: m.kj,
        case: m.case,
        m_value: m.value,
        dimension_bound,
        bound: spectral_bound.min(dimension_bound),
    })
}

/// Common spacing of the two local ladders, or why there is none.
pub fn common_spacing(sys: &BipartiteSystem) -> Result<f64> {
    let (a, b) = match (sys.ham_a().spacing(), sys.ham_b().spacing()) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(Error::NonLinearHamiltonian),
    };
    if (a - b).abs() > 1e-12 * a.max(b) {
        return Err(Error::UnequalSpacing { a, b });
    }
    Ok(a)
}

fn is_maximally_mixed_qubit(rho: &crate::linalg::DensityMatrix) -> bool {
    rho.dim() == 2
        && rho
            .matrix()
            .max_abs_diff(&ComplexMatrix::identity(2).scale(0.5))
            <= MAX_MIXED_TOL
}

/// Compares the ergotropic gap with the separable bound.
///
/// A gap above the bound certifies entanglement. For two qubits with
/// maximally mixed marginals the test is also sufficient, so a gap at or
/// below the bound yields `Separable`; everywhere else it yields
/// `Inconclusive`.
pub fn certify_entanglement(sys: &BipartiteSystem, tol: &Tolerances) -> Result<BoundReport> {
    let spacing = common_spacing(sys)?;
    let x = hermitian_spectrum(sys.rho())?;
    let bound = separable_gap_bound(&x, sys.d1(), sys.d2(), spacing)?;
    let gap = ergotropic_gap(sys, tol)?.gap;
    let verdict = if gap > bound.bound + tol.eig {
        Verdict::Entangled
    } else if sys.d1() == 2
        && sys.d2() == 2
        && is_maximally_mixed_qubit(&sys.marginal(Subsystem::A)?)
        && is_maximally_mixed_qubit(&sys.marginal(Subsystem::B)?)
    {
        Verdict::Separable
    } else {
        Verdict::Inconclusive
    };
    Ok(BoundReport {
        bound,
        gap,
        verdict,
    })
}

/// Smallest local dimension `D` compatible with `gap`, i.e. the least `D`
/// with `(D - 1) E >= gap`; 1 for a vanishing gap and at least 2 otherwise.
pub fn dimension_witness(gap: f64, spacing: f64, tol: &Tolerances) -> Result<usize> {
    if !(spacing > 0.0) || !spacing.is_finite() {
        return Err(Error::RangeError {
            name: "spacing",
            value: spacing,
        });
    }
    if !gap.is_finite() || gap < -tol.eig {
        return Err(Error::RangeError {
            name: "gap",
            value: gap,
        });
    }
    if gap <= tol.eig {
        return Ok(1);
    }
    let levels = (gap / spacing - tol.eig).ceil().max(1.0);
    Ok(levels as usize + 1)
}

/// Work difference between global and local thermal operations,
/// `I(A:B) / beta`, against the separable cap `min(log2 d1, log2 d2) / beta`.
pub fn mutual_information_gap(
    sys: &BipartiteSystem,
    beta: f64,
    tol: &Tolerances,
) -> Result<MutualInformationGap> {
    if !(beta > 0.0) || !beta.is_finite() {
        return Err(Error::RangeError {
            name: "beta",
            value: beta,
        });
    }
    let s_a = von_neumann_entropy(&sys.marginal(Subsystem::A)?)?;
    let s_b = von_neumann_entropy(&sys.marginal(Subsystem::B)?)?;
    let s_ab = von_neumann_entropy(sys.rho())?;
    let mi = (s_a + s_b - s_ab).max(0.0);
    let delta = mi / beta;
    let bound = (sys.d1().min(sys.d2()) as f64).log2() / beta;
    Ok(MutualInformationGap {
        mutual_information: mi,
        delta,
        bound,
        flagged: delta > bound + tol.eig,
    })
}
