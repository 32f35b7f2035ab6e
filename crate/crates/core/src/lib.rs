//! # ergokit
//!
//! Work extraction from bipartite quantum states.
//!
//! The crate computes the *ergotropy* of a state (the largest energy a cyclic
//! unitary can remove), the local ergotropies of its marginals, and the
//! *ergotropic gap* between global and local extraction. A separable state's
//! gap obeys a closed-form bound built from its spectrum and the local
//! dimensions; exceeding that bound certifies entanglement, and the gap of a
//! `d x d` state lower-bounds the local dimension.
//!
//! ## Layout
//!
//! - [`linalg`]: density-matrix validation, Hermitian spectra, partial trace, entropy.
//! - [`hamiltonian`]: local energy ladders and the global ladder.
//! - [`states`]: [`BipartiteSystem`] and named families (Werner, Bell-diagonal,
//!   Schmidt-form pure states, seeded random samplers).
//! - [`ergotropy`]: passive energies, ergotropy, the gap.
//! - [`majorization`]: majorization and the Nielsen-Kempe disorder test.
//! - [`bounds`]: separable bounds, certification, dimension witness,
//!   mutual-information gap.
//! - [`oracles`]: brute-force cross-checks and sampling sweeps.
//!
//! All operations are pure functions of their inputs.

// `!(x > 0.0)` is used on purpose: it rejects NaN along with non-positive values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod ergotropy;
pub mod error;
pub mod hamiltonian;
pub mod linalg;
pub mod majorization;
pub mod oracles;
pub mod states;

pub use bounds::{
    certify_entanglement, dimension_bound_m, dimension_witness, global_passive_z,
    mutual_information_gap, separable_gap_bound, solve_kj, solve_lm, spectral_y, BoundCase,
    BoundReport, DimensionBound, MutualInformationGap, SeparableBound, Verdict,
};
pub use ergotropy::{ergotropic_gap, ergotropy, is_passive, passive_energy, pure_gap, GapReport};
pub use error::{Error, Result};
pub use hamiltonian::{global_ladder, GlobalEnergyLadder, HamiltonianSpec};
pub use linalg::{
    hermitian_spectrum, partial_trace, validate_density, von_neumann_entropy, ComplexMatrix,
    DensityMatrix, Spectrum, Subsystem, Tolerances,
};
pub use majorization::{majorizes, nielsen_kempe_holds, MajorizationVerdict};
pub use oracles::{
    brute_passive_energy, ppt_separable, uniform_marginal_oracle, violation_sweep, SweepConfig,
    SweepFamily, SweepRecord, SweepSummary,
};
pub use states::{
    bell_diagonal, haar_random_pure, pure_from_schmidt, random_separable, werner_state,
    BipartiteSystem,
};

pub use num_complex::Complex64;
