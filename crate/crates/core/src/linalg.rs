//! Complex-matrix primitives: validated density matrices, Hermitian spectra,
//! partial traces and von Neumann entropy.
//!
//! Eigendecomposition is delegated to `nalgebra`'s Hermitian solver. Every
//! quantity computed downstream depends only on eigenvalues, so no ordering
//! or phase convention is imposed on eigenvectors within degenerate blocks.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Iteration cap handed to the Hermitian eigensolver.
const EIGEN_MAX_ITER: usize = 10_000;

/// Numerical tolerances shared by validation and verdict logic.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Entrywise bound on `|M - M^dagger|`.
    pub herm: f64,
    /// Allowed deviation of the trace from 1.
    pub trace: f64,
    /// Most negative eigenvalue accepted (and clipped to zero).
    pub psd: f64,
    /// Slack for comparisons between computed energies and bounds.
    pub eig: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            herm: 1e-10,
            trace: 1e-9,
            psd: 1e-9,
            eig: 1e-9,
        }
    }
}

impl Tolerances {
    pub fn with_eig(mut self, eig: f64) -> Self {
        self.eig = eig;
        self
    }
}

/// Dense complex matrix, row-major at the I/O boundary.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix(DMatrix<Complex64>);

impl ComplexMatrix {
    pub fn from_row_major(rows: usize, cols: usize, entries: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 || entries.len() != rows * cols {
            return Err(Error::ShapeMismatch {
                expected: rows * cols,
                got: entries.len(),
            });
        }
        Ok(Self(DMatrix::from_row_slice(rows, cols, &entries)))
    }

    /// Builds a matrix from separate real and imaginary row-major arrays.
    pub fn from_re_im(rows: usize, cols: usize, re: &[f64], im: &[f64]) -> Result<Self> {
        if re.len() != im.len() {
            return Err(Error::ShapeMismatch {
                expected: re.len(),
                got: im.len(),
            });
        }
        let entries = re
            .iter()
            .zip(im)
            .map(|(&r, &i)| Complex64::new(r, i))
            .collect();
        Self::from_row_major(rows, cols, entries)
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let entries = rows
            .iter()
            .flatten()
            .map(|&x| Complex64::new(x, 0.0))
            .collect();
        Self::from_row_major(r, c, entries)
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self(DMatrix::zeros(rows, cols))
    }

    pub fn identity(n: usize) -> Self {
        Self(DMatrix::identity(n, n))
    }

    /// Outer product `|v><v|`.
    pub fn outer(v: &[Complex64]) -> Self {
        let n = v.len();
        Self(DMatrix::from_fn(n, n, |i, j| v[i] * v[j].conj()))
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        let n = diag.len();
        Self(DMatrix::from_fn(n, n, |i, j| {
            if i == j {
                Complex64::new(diag[i], 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        }))
    }

    pub fn rows(&self) -> usize {
        self.0.nrows()
    }

    pub fn cols(&self) -> usize {
        self.0.ncols()
    }

    pub fn is_square(&self) -> bool {
        self.rows() == self.cols()
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.0[(i, j)]
    }

    pub fn inner(&self) -> &DMatrix<Complex64> {
        &self.0
    }

    pub fn into_inner(self) -> DMatrix<Complex64> {
        self.0
    }

    pub fn from_inner(m: DMatrix<Complex64>) -> Self {
        Self(m)
    }

    pub fn to_row_major(&self) -> Vec<Complex64> {
        (0..self.rows())
            .flat_map(|i| (0..self.cols()).map(move |j| (i, j)))
            .map(|(i, j)| self.0[(i, j)])
            .collect()
    }

    pub fn adjoint(&self) -> Self {
        Self(self.0.adjoint())
    }

    pub fn kron(&self, other: &Self) -> Self {
        Self(self.0.kronecker(&other.0))
    }

    pub fn scale(&self, s: f64) -> Self {
        Self(self.0.map(|z| z * s))
    }

    pub fn add(&self, other: &Self) -> Self {
        Self(&self.0 + &other.0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self(&self.0 * &other.0)
    }

    pub fn trace(&self) -> Complex64 {
        self.0.trace()
    }

    /// Largest entrywise modulus of `M - M^dagger`.
    pub fn hermitian_violation(&self) -> f64 {
        let n = self.rows();
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self.0[(i, j)] - self.0[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    fn hermitian_part(&self) -> DMatrix<Complex64> {
        (&self.0 + self.0.adjoint()).map(|z| z * 0.5)
    }
}

/// Which tensor factor of a bipartite space to keep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Subsystem {
    A,
    B,
}

/// Hermitian, positive-semidefinite, unit-trace matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    /// Diagonal entries in the computational (energy) basis.
    pub fn populations(&self) -> Vec<f64> {
        (0..self.dim()).map(|i| self.matrix.get(i, i).re).collect()
    }

    /// `|psi><psi|` for a state vector, normalized on the way in.
    pub fn from_pure(psi: &[Complex64]) -> Result<Self> {
        let norm = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if psi.is_empty() || !(norm > 0.0) || !norm.is_finite() {
            return Err(Error::NormalizationError { sum: norm * norm });
        }
        let v: Vec<Complex64> = psi.iter().map(|z| z / norm).collect();
        Ok(Self::trusted(ComplexMatrix::outer(&v)))
    }

    /// Maximally mixed state `I / d`.
    pub fn maximally_mixed(d: usize) -> Self {
        Self::trusted(ComplexMatrix::identity(d).scale(1.0 / d as f64))
    }

    pub fn tensor(&self, other: &Self) -> Self {
        Self::trusted(self.matrix.kron(&other.matrix))
    }

    /// Convex combination `w * self + (1 - w) * other`.
    pub fn mix(&self, other: &Self, w: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&w) {
            return Err(Error::RangeError {
                name: "weight",
                value: w,
            });
        }
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: other.dim(),
            });
        }
        Ok(Self::trusted(
            self.matrix.scale(w).add(&other.matrix.scale(1.0 - w)),
        ))
    }

    /// `U rho U^dagger`; `u` must be unitary.
    pub fn conjugate(&self, u: &ComplexMatrix) -> Result<Self> {
        if u.rows() != self.dim() || !u.is_square() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: u.rows(),
            });
        }
        let m = u.mul(&self.matrix).mul(&u.adjoint());
        Ok(Self::trusted(ComplexMatrix(m.hermitian_part())))
    }

    /// Wraps a matrix already known to be a state (closed-form constructors,
    /// partial traces, products of states).
    pub(crate) fn trusted(matrix: ComplexMatrix) -> Self {
        Self { matrix }
    }
}

/// Probability vector sorted in non-increasing order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct Spectrum(Vec<f64>);

impl Spectrum {
    /// Accepts a non-increasing probability vector. Entries within the PSD
    /// tolerance below zero are clipped and the vector is renormalized.
    pub fn new(values: Vec<f64>) -> Result<Self> {
        let tol = Tolerances::default();
        if values.is_empty() {
            return Err(Error::SpectrumError("empty".into()));
        }
        if let Some(bad) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::SpectrumError(format!("non-finite entry {bad}")));
        }
        if let Some(w) = values.windows(2).position(|w| w[1] > w[0]) {
            return Err(Error::SpectrumError(format!(
                "entries {} and {} are increasing",
                w,
                w + 1
            )));
        }
        if let Some(&neg) = values.iter().find(|&&v| v < -tol.psd) {
            return Err(Error::SpectrumError(format!("negative entry {neg}")));
        }
        let sum: f64 = values.iter().sum();
        if (sum - 1.0).abs() > tol.trace {
            return Err(Error::NotNormalized { sum });
        }
        let clipped: Vec<f64> = values.iter().map(|v| v.max(0.0)).collect();
        let total: f64 = clipped.iter().sum();
        if (total - 1.0).abs() <= 4.0 * f64::EPSILON {
            return Ok(Self(clipped));
        }
        Ok(Self(clipped.into_iter().map(|v| v / total).collect()))
    }

    /// Sorts into non-increasing order, then validates as [`Spectrum::new`].
    pub fn from_unsorted(mut values: Vec<f64>) -> Result<Self> {
        values.sort_by(|a, b| b.total_cmp(a));
        Self::new(values)
    }

    /// Uniform distribution over `n` outcomes.
    pub fn uniform(n: usize) -> Self {
        Self(vec![1.0 / n as f64; n])
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Shannon entropy in bits, `0 log 0 = 0`.
    pub fn entropy_bits(&self) -> f64 {
        -self
            .0
            .iter()
            .filter(|&&p| p > 0.0)
            .map(|&p| p * p.log2())
            .sum::<f64>()
    }

    /// Number of entries strictly above `threshold`.
    pub fn rank(&self, threshold: f64) -> usize {
        self.0.iter().filter(|&&p| p > threshold).count()
    }
}

impl TryFrom<Vec<f64>> for Spectrum {
    type Error = Error;

    fn try_from(values: Vec<f64>) -> Result<Self> {
        Spectrum::new(values)
    }
}

impl From<Spectrum> for Vec<f64> {
    fn from(s: Spectrum) -> Self {
        s.0
    }
}

/// Eigenvalues (ascending) and eigenvectors of a Hermitian matrix.
///
/// The input is symmetrized first, so any residual anti-Hermitian part is
/// discarded.
pub fn hermitian_eigh(m: &ComplexMatrix) -> Result<(Vec<f64>, ComplexMatrix)> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let eig = SymmetricEigen::try_new(m.hermitian_part(), f64::EPSILON, EIGEN_MAX_ITER)
        .ok_or(Error::EigensolverFailure)?;
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let n = m.rows();
    let vectors = DMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::EigensolverFailure);
    }
    Ok((values, ComplexMatrix(vectors)))
}

/// Eigenvalues of a Hermitian matrix in ascending order.
pub fn hermitian_eigenvalues(m: &ComplexMatrix) -> Result<Vec<f64>> {
    hermitian_eigh(m).map(|(v, _)| v)
}

/// Validates `m` as a density matrix.
///
/// Eigenvalues slightly below zero (within `tol.psd`) are clipped and the
/// matrix is rebuilt from its eigendecomposition; a trace within `tol.trace`
/// of one is renormalized to exactly one.
pub fn validate_density(m: ComplexMatrix, tol: &Tolerances) -> Result<DensityMatrix> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let violation = m.hermitian_violation();
    if !(violation <= tol.herm) {
        return Err(Error::NotHermitian { violation });
    }
    let trace = m.trace().re;
    if !((trace - 1.0).abs() <= tol.trace) {
        return Err(Error::TraceError { trace });
    }
    let (values, vectors) = hermitian_eigh(&m)?;
    let min = values[0];
    if min < -tol.psd {
        return Err(Error::NotPositive { eigenvalue: min });
    }
    let herm = ComplexMatrix(m.hermitian_part());
    let rebuilt = if min < 0.0 {
        let clipped: Vec<f64> = values.iter().map(|v| v.max(0.0)).collect();
        let d = ComplexMatrix::from_diagonal(&clipped);
        ComplexMatrix(vectors.mul(&d).mul(&vectors.adjoint()).hermitian_part())
    } else {
        herm
    };
    let t = rebuilt.trace().re;
    Ok(DensityMatrix::trusted(rebuilt.scale(1.0 / t)))
}

/// Eigenvalues of a state in non-increasing order, clipped at zero and
/// renormalized.
pub fn hermitian_spectrum(rho: &DensityMatrix) -> Result<Spectrum> {
    let mut values = hermitian_eigenvalues(rho.matrix())?;
    values.reverse();
    let clipped: Vec<f64> = values.iter().map(|v| v.clamp(0.0, 1.0)).collect();
    let total: f64 = clipped.iter().sum();
    if !(total > 0.0) {
        return Err(Error::EigensolverFailure);
    }
    Ok(Spectrum(clipped.into_iter().map(|v| v / total).collect()))
}

/// Reduced state of a `d1 x d2` bipartite state on the kept factor.
pub fn partial_trace(
    rho: &DensityMatrix,
    d1: usize,
    d2: usize,
    keep: Subsystem,
) -> Result<DensityMatrix> {
    if d1 == 0 || d2 == 0 || rho.dim() != d1 * d2 {
        return Err(Error::DimensionMismatch {
            expected: d1 * d2,
            got: rho.dim(),
        });
    }
    let m = rho.matrix().inner();
    let reduced = match keep {
        Subsystem::A => DMatrix::from_fn(d1, d1, |a, ap| {
            (0..d2).map(|b| m[(a * d2 + b, ap * d2 + b)]).sum()
        }),
        Subsystem::B => DMatrix::from_fn(d2, d2, |b, bp| {
            (0..d1).map(|a| m[(a * d2 + b, a * d2 + bp)]).sum()
        }),
    };
    Ok(DensityMatrix::trusted(ComplexMatrix(reduced)))
}

/// Von Neumann entropy in bits.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<f64> {
    Ok(hermitian_spectrum(rho)?.entropy_bits())
}
