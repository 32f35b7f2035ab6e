//! Diagonal local Hamiltonians and the global (non-interacting) energy ladder.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Energy ladder of a local Hamiltonian in its eigenbasis.
///
/// Energies are non-decreasing with the ground level pinned at zero. A ladder
/// built by [`HamiltonianSpec::linear`] remembers its spacing; the separability
/// bounds only accept such ladders.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HamiltonianSpec {
    energies: Vec<f64>,
    spacing: Option<f64>,
}

impl HamiltonianSpec {
    /// Equally spaced ladder `(0, E, 2E, ..., (d-1)E)`.
    pub fn linear(d: usize, spacing: f64) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidHamiltonian(
                "dimension must be at least 1".into(),
            ));
        }
        if !(spacing > 0.0) || !spacing.is_finite() {
            return Err(Error::InvalidSpacing(spacing));
        }
        Ok(Self {
            energies: (0..d).map(|j| j as f64 * spacing).collect(),
            spacing: Some(spacing),
        })
    }

    /// Arbitrary ladder. Linearity is detected when every level is an exact
    /// integer multiple of the first gap.
    pub fn from_energies(energies: Vec<f64>) -> Result<Self> {
        if energies.is_empty() {
            return Err(Error::InvalidHamiltonian("no energy levels".into()));
        }
        if energies[0] != 0.0 {
            return Err(Error::InvalidHamiltonian(format!(
                "ground energy is {}, expected 0",
                energies[0]
            )));
        }
        if energies.iter().any(|e| !e.is_finite()) {
            return Err(Error::InvalidHamiltonian("non-finite energy".into()));
        }
        if energies.windows(2).any(|w| w[1] < w[0]) {
            return Err(Error::InvalidHamiltonian(
                "energies must be ascending".into(),
            ));
        }
        let spacing = match energies.get(1) {
            Some(&e1) if e1 > 0.0 => energies
                .iter()
                .enumerate()
                .all(|(j, &e)| e == j as f64 * e1)
                .then_some(e1),
            _ => None,
        };
        Ok(Self { energies, spacing })
    }

    pub fn energies(&self) -> &[f64] {
        &self.energies
    }

    pub fn dim(&self) -> usize {
        self.energies.len()
    }

    pub fn is_linear(&self) -> bool {
        self.spacing.is_some()
    }

    /// Level spacing for linear ladders.
    pub fn spacing(&self) -> Option<f64> {
        self.spacing
    }

    /// Expectation value of `H` for populations in its eigenbasis.
    pub fn mean_energy(&self, populations: &[f64]) -> f64 {
        self.energies
            .iter()
            .zip(populations)
            .map(|(e, p)| e * p)
            .sum()
    }
}

/// Sorted spectrum of `H_A (x) I + I (x) H_B`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GlobalEnergyLadder(Vec<f64>);

impl GlobalEnergyLadder {
    pub fn energies(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Diagonal of the global Hamiltonian in the product basis `|a b>`, index
/// `a * d_B + b` (unsorted).
pub fn product_basis_energies(ham_a: &HamiltonianSpec, ham_b: &HamiltonianSpec) -> Vec<f64> {
    ham_a
        .energies
        .iter()
        .flat_map(|ea| ham_b.energies.iter().map(move |eb| ea + eb))
        .collect()
}

/// Multiset of pairwise sums `e_A + e_B`, sorted ascending.
pub fn global_ladder(ham_a: &HamiltonianSpec, ham_b: &HamiltonianSpec) -> GlobalEnergyLadder {
    let mut e = product_basis_energies(ham_a, ham_b);
    e.sort_by(f64::total_cmp);
    GlobalEnergyLadder(e)
}
