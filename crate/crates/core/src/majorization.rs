//! Majorization of probability vectors and the Nielsen-Kempe disorder test.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::linalg::{hermitian_spectrum, Spectrum, Subsystem, Tolerances};
use crate::states::BipartiteSystem;

/// Outcome of comparing the partial sums of two spectra.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MajorizationVerdict {
    pub holds: bool,
    /// Length `k` of the first prefix whose partial-sum inequality fails.
    pub first_violation_index: Option<usize>,
    /// `sum_{i<=k} q_i - sum_{i<=k} p_i` for every prefix length `k`.
    pub cumulative_margin: Vec<f64>,
}

/// Does `q` majorize `p` (`p ≺ q`)?
///
/// The shorter vector is padded with zeros. Each prefix margin may dip to
/// `-tol.eig`; the final margin must vanish within `tol.trace`.
pub fn majorizes(q: &Spectrum, p: &Spectrum, tol: &Tolerances) -> MajorizationVerdict {
    let n = q.len().max(p.len());
    let at = |s: &Spectrum, i: usize| s.values().get(i).copied().unwrap_or(0.0);
    let mut margins = Vec::with_capacity(n);
    let (mut sq, mut sp) = (0.0, 0.0);
    let mut first = None;
    for i in 0..n {
        sq += at(q, i);
        sp += at(p, i);
        let m = sq - sp;
        margins.push(m);
        let ok = if i + 1 == n {
            m.abs() <= tol.trace
        } else {
            m >= -tol.eig
        };
        if !ok && first.is_none() {
            first = Some(i + 1);
        }
    }
    MajorizationVerdict {
        holds: first.is_none(),
        first_violation_index: first,
        cumulative_margin: margins,
    }
}

/// Both marginal spectra majorize the global spectrum.
pub fn nielsen_kempe_holds(sys: &BipartiteSystem, tol: &Tolerances) -> Result<bool> {
    let global = hermitian_spectrum(sys.rho())?;
    for keep in [Subsystem::A, Subsystem::B] {
        let local = hermitian_spectrum(&sys.marginal(keep)?)?;
        if !majorizes(&local, &global, tol).holds {
            return Ok(false);
        }
    }
    Ok(true)
}
