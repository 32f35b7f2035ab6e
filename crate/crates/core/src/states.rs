//! Bipartite systems and the named state families used throughout the crate.
//!
//! All random constructors take an explicit seed and draw from a local
//! ChaCha stream, so identical seeds give identical matrices on every
//! platform and thread.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Exp1, StandardNormal};

use crate::error::{Error, Result};
use crate::hamiltonian::HamiltonianSpec;
use crate::linalg::{partial_trace, ComplexMatrix, DensityMatrix, Spectrum, Subsystem};

/// Joint state of two parties with their local Hamiltonians.
///
/// The smaller factor is always stored first (`d1 <= d2`); a constructor that
/// has to exchange the factors records it in [`BipartiteSystem::swapped`].
#[derive(Debug, Clone, PartialEq)]
pub struct BipartiteSystem {
    d1: usize,
    d2: usize,
    rho: DensityMatrix,
    ham_a: HamiltonianSpec,
    ham_b: HamiltonianSpec,
    swapped: bool,
}

impl BipartiteSystem {
    /// Dimensions are read off the Hamiltonians.
    pub fn new(rho: DensityMatrix, ham_a: HamiltonianSpec, ham_b: HamiltonianSpec) -> Result<Self> {
        let (da, db) = (ham_a.dim(), ham_b.dim());
        if rho.dim() != da * db {
            return Err(Error::DimensionMismatch {
                expected: da * db,
                got: rho.dim(),
            });
        }
        if da <= db {
            return Ok(Self {
                d1: da,
                d2: db,
                rho,
                ham_a,
                ham_b,
                swapped: false,
            });
        }
        let rho = swap_factors(&rho, da, db);
        Ok(Self {
            d1: db,
            d2: da,
            rho,
            ham_a: ham_b,
            ham_b: ham_a,
            swapped: true,
        })
    }

    /// Attaches `(0, 1, 2, ...)` ladders on both sides.
    pub fn with_unit_spacing(rho: DensityMatrix, d1: usize, d2: usize) -> Result<Self> {
        Self::new(
            rho,
            HamiltonianSpec::linear(d1, 1.0)?,
            HamiltonianSpec::linear(d2, 1.0)?,
        )
    }

    /// Replaces the local Hamiltonians, given in canonical (`d1 <= d2`) order.
    pub fn with_hamiltonians(self, ham_a: HamiltonianSpec, ham_b: HamiltonianSpec) -> Result<Self> {
        if ham_a.dim() != self.d1 {
            return Err(Error::DimensionMismatch {
                expected: self.d1,
                got: ham_a.dim(),
            });
        }
        if ham_b.dim() != self.d2 {
            return Err(Error::DimensionMismatch {
                expected: self.d2,
                got: ham_b.dim(),
            });
        }
        Ok(Self {
            ham_a,
            ham_b,
            ..self
        })
    }

    pub fn d1(&self) -> usize {
        self.d1
    }

    pub fn d2(&self) -> usize {
        self.d2
    }

    pub fn rho(&self) -> &DensityMatrix {
        &self.rho
    }

    pub fn ham_a(&self) -> &HamiltonianSpec {
        &self.ham_a
    }

    pub fn ham_b(&self) -> &HamiltonianSpec {
        &self.ham_b
    }

    pub fn swapped(&self) -> bool {
        self.swapped
    }

    pub fn marginal(&self, keep: Subsystem) -> Result<DensityMatrix> {
        partial_trace(&self.rho, self.d1, self.d2, keep)
    }
}

/// Reorders `|a b>` into `|b a>`.
fn swap_factors(rho: &DensityMatrix, da: usize, db: usize) -> DensityMatrix {
    let m = rho.matrix().inner();
    let n = da * db;
    let old = |i: usize| {
        let (b, a) = (i / da, i % da);
        a * db + b
    };
    let swapped = DMatrix::from_fn(n, n, |i, j| m[(old(i), old(j))]);
    DensityMatrix::trusted(ComplexMatrix::from_inner(swapped))
}

fn basis_vector(n: usize, k: usize) -> Vec<Complex64> {
    let mut v = vec![Complex64::new(0.0, 0.0); n];
    v[k] = Complex64::new(1.0, 0.0);
    v
}

/// The four two-qubit Bell vectors in the order
/// `phi+`, `phi-`, `psi+`, `psi-`.
pub fn bell_vectors() -> [Vec<Complex64>; 4] {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let v = |a: f64, b: f64, c: f64, d: f64| {
        vec![
            Complex64::new(a * s, 0.0),
            Complex64::new(b * s, 0.0),
            Complex64::new(c * s, 0.0),
            Complex64::new(d * s, 0.0),
        ]
    };
    [
        v(1.0, 0.0, 0.0, 1.0),
        v(1.0, 0.0, 0.0, -1.0),
        v(0.0, 1.0, 1.0, 0.0),
        v(0.0, 1.0, -1.0, 0.0),
    ]
}

fn two_qubits(rho: DensityMatrix) -> Result<BipartiteSystem> {
    BipartiteSystem::with_unit_spacing(rho, 2, 2)
}

/// `p |psi-><psi-| + (1 - p) I/4` with unit-spaced qubit Hamiltonians.
pub fn werner_state(p: f64) -> Result<BipartiteSystem> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::RangeError {
            name: "p",
            value: p,
        });
    }
    let singlet = DensityMatrix::from_pure(&bell_vectors()[3])?;
    two_qubits(singlet.mix(&DensityMatrix::maximally_mixed(4), p)?)
}

/// Two-qubit state diagonal in the Bell basis with weights
/// `(x0, x1, x2, x3)` on `phi+`, `phi-`, `psi+`, `psi-`.
pub fn bell_diagonal(x: &Spectrum) -> Result<BipartiteSystem> {
    if x.len() != 4 {
        return Err(Error::SpectrumError(format!(
            "Bell-diagonal state needs 4 weights, got {}",
            x.len()
        )));
    }
    let mut m = ComplexMatrix::zeros(4, 4);
    for (w, v) in x.values().iter().zip(bell_vectors().iter()) {
        m = m.add(&ComplexMatrix::outer(v).scale(*w));
    }
    two_qubits(DensityMatrix::trusted(m))
}

/// Pure state `sum_i sqrt(lambda_i) |i i>` with unit-spaced ladders.
pub fn pure_from_schmidt(coeffs: &[f64], d1: usize, d2: usize) -> Result<BipartiteSystem> {
    let dmin = d1.min(d2);
    if coeffs.len() > dmin {
        return Err(Error::SchmidtRankTooLarge {
            rank: coeffs.len(),
            dim: dmin,
        });
    }
    if let Some(&c) = coeffs.iter().find(|&&c| !(c >= 0.0)) {
        return Err(Error::RangeError {
            name: "Schmidt coefficient",
            value: c,
        });
    }
    let sum: f64 = coeffs.iter().sum();
    if (sum - 1.0).abs() > 1e-9 {
        return Err(Error::NormalizationError { sum });
    }
    let mut psi = vec![Complex64::new(0.0, 0.0); d1 * d2];
    for (i, &c) in coeffs.iter().enumerate() {
        psi[i * d2 + i] = Complex64::new(c.sqrt(), 0.0);
    }
    BipartiteSystem::with_unit_spacing(DensityMatrix::from_pure(&psi)?, d1, d2)
}

/// Product of two states, unit-spaced ladders.
pub fn product_state(sigma: &DensityMatrix, tau: &DensityMatrix) -> Result<BipartiteSystem> {
    BipartiteSystem::with_unit_spacing(sigma.tensor(tau), sigma.dim(), tau.dim())
}

/// Gibbs state `exp(-beta H) / Z` of a diagonal Hamiltonian.
pub fn thermal_state(ham: &HamiltonianSpec, beta: f64) -> Result<DensityMatrix> {
    if !(beta >= 0.0) || !beta.is_finite() {
        return Err(Error::RangeError {
            name: "beta",
            value: beta,
        });
    }
    let weights: Vec<f64> = ham.energies().iter().map(|e| (-beta * e).exp()).collect();
    let z: f64 = weights.iter().sum();
    let probs: Vec<f64> = weights.iter().map(|w| w / z).collect();
    Ok(DensityMatrix::trusted(ComplexMatrix::from_diagonal(&probs)))
}

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Normalized complex Gaussian vector, i.e. a Haar-random pure state.
pub fn haar_vector<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<Complex64> {
    loop {
        let v: Vec<Complex64> = (0..n)
            .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect();
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-300 {
            return v.into_iter().map(|z| z / norm).collect();
        }
    }
}

/// Haar-random unitary from the QR decomposition of a Ginibre matrix, with
/// the phases of `R`'s diagonal absorbed into `Q`.
pub fn haar_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix {
    let g = DMatrix::from_fn(n, n, |_, _| {
        Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    });
    let qr = g.qr();
    let (mut q, r) = (qr.q(), qr.r());
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 {
            d / d.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        for i in 0..n {
            q[(i, j)] *= phase;
        }
    }
    ComplexMatrix::from_inner(q)
}

/// Flat Dirichlet(1, ..., 1) weights.
fn dirichlet_weights<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<f64> {
    let raw: Vec<f64> = (0..n).map(|_| rng.sample::<f64, _>(Exp1)).collect();
    let total: f64 = raw.iter().sum();
    raw.into_iter().map(|w| w / total).collect()
}

/// Convex mixture of `n_terms` Haar-random pure product states with flat
/// Dirichlet weights.
pub fn random_separable(
    d1: usize,
    d2: usize,
    n_terms: usize,
    seed: u64,
) -> Result<BipartiteSystem> {
    if n_terms == 0 {
        return Err(Error::RangeError {
            name: "n_terms",
            value: 0.0,
        });
    }
    let mut rng = seeded_rng(seed);
    let weights = dirichlet_weights(n_terms, &mut rng);
    let mut m = ComplexMatrix::zeros(d1 * d2, d1 * d2);
    for w in weights {
        let a = haar_vector(d1, &mut rng);
        let b = haar_vector(d2, &mut rng);
        let psi: Vec<Complex64> = a
            .iter()
            .flat_map(|x| b.iter().map(move |y| x * y))
            .collect();
        m = m.add(&ComplexMatrix::outer(&psi).scale(w));
    }
    BipartiteSystem::with_unit_spacing(DensityMatrix::trusted(m), d1, d2)
}

/// Haar-random pure state on `d1 x d2`.
pub fn haar_random_pure(d1: usize, d2: usize, seed: u64) -> Result<BipartiteSystem> {
    let mut rng = seeded_rng(seed);
    let psi = haar_vector(d1 * d2, &mut rng);
    BipartiteSystem::with_unit_spacing(DensityMatrix::from_pure(&psi)?, d1, d2)
}

/// Random full-rank mixed state `G G^dagger / Tr(G G^dagger)` with `G`
/// complex Ginibre (Hilbert-Schmidt measure).
pub fn ginibre_mixed(d1: usize, d2: usize, seed: u64) -> Result<BipartiteSystem> {
    let mut rng = seeded_rng(seed);
    let n = d1 * d2;
    let g = ComplexMatrix::from_inner(DMatrix::from_fn(n, n, |_, _| {
        Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    }));
    let m = g.mul(&g.adjoint());
    let t = m.trace().re;
    let m = m.scale(1.0 / t);
    let herm = m.add(&m.adjoint()).scale(0.5);
    BipartiteSystem::with_unit_spacing(DensityMatrix::trusted(herm), d1, d2)
}

/// `p |00><00| + (1 - p) |psi-><psi-|`, the degenerate-subspace example.
pub fn ground_singlet_mixture(p: f64) -> Result<BipartiteSystem> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::RangeError {
            name: "p",
            value: p,
        });
    }
    let ground = DensityMatrix::from_pure(&basis_vector(4, 0))?;
    let singlet = DensityMatrix::from_pure(&bell_vectors()[3])?;
    two_qubits(ground.mix(&singlet, p)?)
}
