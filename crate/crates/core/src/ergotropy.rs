//! Passive-state energies, ergotropy and the ergotropic gap.
//!
//! Everything here is spectral: the passive state of `rho` under a diagonal
//! Hamiltonian puts the largest eigenvalue on the lowest level, the next on the
//! next level, and so on. Because `Tr(rho_p H)` is unchanged by rotations inside
//! degenerate energy subspaces, degeneracies need no special treatment.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hamiltonian::{product_basis_energies, HamiltonianSpec};
use crate::linalg::{hermitian_spectrum, DensityMatrix, Spectrum, Subsystem, Tolerances};
use crate::states::BipartiteSystem;

/// Global and local work figures for one bipartite state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GapReport {
    pub energy_initial: f64,
    pub global_ergotropy: f64,
    pub local_ergotropy_a: f64,
    pub local_ergotropy_b: f64,
    pub gap: f64,
}

/// Snaps values in `[-tol, 0)` to zero.
fn clamp_small_negative(x: f64, tol: f64) -> f64 {
    if x < 0.0 && x >= -tol {
        0.0
    } else {
        x
    }
}

/// Energy of the passive state with populations `spectrum` on the ladder
/// `energies`: `sum_k lambda_k^down * eps_k^up`.
pub fn passive_energy(spectrum: &Spectrum, energies: &[f64]) -> Result<f64> {
    if spectrum.len() != energies.len() {
        return Err(Error::LengthMismatch {
            left: spectrum.len(),
            right: energies.len(),
        });
    }
    let mut ladder = energies.to_vec();
    ladder.sort_by(f64::total_cmp);
    Ok(spectrum
        .values()
        .iter()
        .zip(&ladder)
        .map(|(p, e)| p * e)
        .sum())
}

/// `Tr(rho H)` for `H` diagonal with entries `energies`.
pub fn mean_energy(rho: &DensityMatrix, energies: &[f64]) -> Result<f64> {
    if rho.dim() != energies.len() {
        return Err(Error::DimensionMismatch {
            expected: energies.len(),
            got: rho.dim(),
        });
    }
    Ok(rho
        .populations()
        .iter()
        .zip(energies)
        .map(|(p, e)| p * e)
        .sum())
}

/// Maximal work extractable by a cyclic unitary: `Tr(rho H) - Tr(rho_p H)`.
///
/// `energies` is the diagonal of `H` in the basis `rho` is written in. Values
/// within `tol.eig` below zero are clamped to zero.
pub fn ergotropy(rho: &DensityMatrix, energies: &[f64], tol: &Tolerances) -> Result<f64> {
    let e = mean_energy(rho, energies)?;
    let passive = passive_energy(&hermitian_spectrum(rho)?, energies)?;
    Ok(clamp_small_negative(e - passive, tol.eig))
}

/// True when no unitary can lower the energy by more than `tol`.
pub fn is_passive(rho: &DensityMatrix, energies: &[f64], tol: f64) -> Result<bool> {
    let t = Tolerances::default().with_eig(tol);
    Ok(ergotropy(rho, energies, &t)? <= tol)
}

/// Global ergotropy, the two local ergotropies and their difference.
///
/// The gap is evaluated as the sum of the marginal passive energies minus the
/// global passive energy; the initial energy cancels exactly in that form.
pub fn ergotropic_gap(sys: &BipartiteSystem, tol: &Tolerances) -> Result<GapReport> {
    let global_energies = product_basis_energies(sys.ham_a(), sys.ham_b());
    let rho_a = sys.marginal(Subsystem::A)?;
    let rho_b = sys.marginal(Subsystem::B)?;

    let energy_initial = mean_energy(sys.rho(), &global_energies)?;
    let passive_global = passive_energy(&hermitian_spectrum(sys.rho())?, &global_energies)?;
    let energy_a = mean_energy(&rho_a, sys.ham_a().energies())?;
    let passive_a = passive_energy(&hermitian_spectrum(&rho_a)?, sys.ham_a().energies())?;
    let energy_b = mean_energy(&rho_b, sys.ham_b().energies())?;
    let passive_b = passive_energy(&hermitian_spectrum(&rho_b)?, sys.ham_b().energies())?;

    Ok(GapReport {
        energy_initial,
        global_ergotropy: clamp_small_negative(energy_initial - passive_global, tol.eig),
        local_ergotropy_a: clamp_small_negative(energy_a - passive_a, tol.eig),
        local_ergotropy_b: clamp_small_negative(energy_b - passive_b, tol.eig),
        gap: clamp_small_negative(passive_a + passive_b - passive_global, tol.eig),
    })
}

/// Ergotropic gap of a pure state from its Schmidt coefficients:
/// `sum_j lambda_j (eps^A_j + eps^B_j)`, the global passive state being the
/// ground state.
pub fn pure_gap(
    schmidt: &Spectrum,
    ham_a: &HamiltonianSpec,
    ham_b: &HamiltonianSpec,
) -> Result<f64> {
    let dmin = ham_a.dim().min(ham_b.dim());
    let nonzero = schmidt.rank(0.0);
    if nonzero > dmin {
        return Err(Error::LengthError(format!(
            "{nonzero} Schmidt coefficients exceed the smaller local dimension {dmin}"
        )));
    }
    Ok(schmidt
        .values()
        .iter()
        .zip(ham_a.energies().iter().zip(ham_b.energies()))
        .map(|(l, (ea, eb))| l * (ea + eb))
        .sum())
}
