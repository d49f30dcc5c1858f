//! Entanglement and transport metrics: Wootters concurrence, Uhlmann
//! fidelity, trajectory metric series and peak extraction.
//!
//! Two fidelity normalizations circulate in the literature. `fidelity`
//! returns the squared form (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2, which
//! is 1/2 for a pure state against the maximally mixed qubit.
//! `transport_fidelity` returns the unsquared trace, which is the quantity
//! the transport figures report (peaking near 0.951 for the chiral Bell
//! baseline). For pure references the two are related by a square root of
//! the overlap <psi|rho|psi>.

use ndarray::Array2;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hilbert::{DensityMatrix, KetVector, SpaceLayout};
use crate::linalg;
use crate::states::partial_trace;

type C64 = Complex64;

/// Eigenvalues of rho*rho_tilde with real part above this threshold are
/// clamped to zero before the square root; more negative values are
/// floating-point noise at rank-deficient states.
const EIG_CLAMP_TOL: f64 = 1e-10;

/// Location and value of a series maximum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PeakResult {
    pub t_star: f64,
    pub value: f64,
    /// Whether three-point quadratic refinement was applied.
    pub refined: bool,
}

/// Wootters concurrence of a two-qubit state: max(0, l1 - l2 - l3 - l4)
/// with l_i the decreasingly ordered square roots of the eigenvalues of
/// rho * rho_tilde, rho_tilde = (sy x sy) rho^* (sy x sy).
///
/// The eigenvalues of the non-Hermitian product rho*rho_tilde are obtained
/// from the similar Hermitian matrix sqrt(rho_tilde) rho sqrt(rho_tilde)
/// (eig(XY) = eig(YX)), avoiding nested matrix square roots.
pub fn concurrence(rho: &DensityMatrix) -> Result<f64> {
    if rho.dim() != 4 {
        return Err(Error::DimensionMismatch { left: rho.dim(), right: 4 });
    }
    let m = rho.matrix();
    let defect = linalg::hermiticity_defect(m);
    if defect > 1e-8 {
        return Err(Error::InvalidDensityMatrix(format!(
            "concurrence input hermiticity defect {defect:.3e}"
        )));
    }
    let tilde = spin_flip(m);
    let sqrt_tilde = linalg::sqrt_psd(&tilde);
    let similar = sqrt_tilde.dot(m).dot(&sqrt_tilde);
    let mut lambdas: Vec<f64> = linalg::hermitian_eigenvalues(&similar)
        .into_iter()
        .map(|e| if e > 0.0 { e.sqrt() } else { debug_assert!(e > -EIG_CLAMP_TOL * 10.0); 0.0 })
        .collect();
    lambdas.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let c = lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3];
    Ok(c.clamp(0.0, 1.0))
}

/// rho_tilde = (sigma_y x sigma_y) conj(rho) (sigma_y x sigma_y).
///
/// In the occupation basis |gg>,|ge>,|eg>,|ee>, (sy x sy) has entries
/// -1 at (0,3),(3,0) and +1 at (1,2),(2,1), so the conjugation is a
/// flip-and-sign permutation applied entrywise.
fn spin_flip(rho: &Array2<C64>) -> Array2<C64> {
    let sign = |i: usize| -> f64 {
        match i {
            0 | 3 => -1.0,
            _ => 1.0,
        }
    };
    let flip = |i: usize| 3 - i;
    let mut out = Array2::<C64>::zeros((4, 4));
    for i in 0..4 {
        for j in 0..4 {
            out[[i, j]] =
                C64::new(sign(i) * sign(j), 0.0) * rho[[flip(i), flip(j)]].conj();
        }
    }
    out
}

fn fidelity_trace_root(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch { left: rho.dim(), right: sigma.dim() });
    }
    let sqrt_rho = linalg::sqrt_psd(rho.matrix());
    let inner = sqrt_rho.dot(sigma.matrix()).dot(&sqrt_rho);
    let sum: f64 = linalg::hermitian_eigenvalues(&inner)
        .into_iter()
        .map(|e| e.max(0.0).sqrt())
        .sum();
    Ok(sum.clamp(0.0, 1.0))
}

/// Uhlmann fidelity F(rho, sigma) = (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2,
/// symmetric in its arguments; equals <psi|sigma|psi> when rho = |psi><psi|.
pub fn fidelity(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    let root = fidelity_trace_root(rho, sigma)?;
    Ok(root * root)
}

/// The unsquared fidelity Tr sqrt(sqrt(rho) sigma sqrt(rho)) reported by
/// the transport figures.
pub fn transport_fidelity(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    fidelity_trace_root(rho, sigma)
}

/// Transport fidelity against a pure reference: sqrt(<psi|rho|psi>).
/// Cheap enough to run per sample on large sector bases.
pub fn transport_fidelity_pure(reference: &KetVector, rho: &DensityMatrix) -> Result<f64> {
    let overlap = reference.quadratic_form(rho)?;
    Ok(overlap.clamp(0.0, 1.0).sqrt())
}

/// Grid argmax with three-point quadratic refinement at interior maxima.
pub fn peak(times: &[f64], series: &[f64]) -> Result<PeakResult> {
    if series.is_empty() || times.len() != series.len() {
        return Err(Error::EmptySeries);
    }
    let mut best = 0usize;
    for (i, &v) in series.iter().enumerate() {
        if v > series[best] {
            best = i;
        }
    }
    if best == 0 || best == series.len() - 1 {
        return Ok(PeakResult { t_star: times[best], value: series[best], refined: false });
    }
    let (tm, t0, tp) = (times[best - 1], times[best], times[best + 1]);
    let (ym, y0, yp) = (series[best - 1], series[best], series[best + 1]);
    // Fit y = a (t - t0)^2 + b (t - t0) + y0 on the three points
    // (uniform or mildly nonuniform grids both handled).
    let hm = tm - t0;
    let hp = tp - t0;
    let denom = hm * hp * (hm - hp);
    if denom.abs() < 1e-300 {
        return Ok(PeakResult { t_star: t0, value: y0, refined: false });
    }
    let a = (hp * (ym - y0) - hm * (yp - y0)) / denom;
    let b = (hm * hm * (yp - y0) - hp * hp * (ym - y0)) / denom;
    if a >= 0.0 {
        // not locally concave; keep the grid point
        return Ok(PeakResult { t_star: t0, value: y0, refined: false });
    }
    let dt = -b / (2.0 * a);
    let value = y0 + b * dt + a * dt * dt;
    Ok(PeakResult { t_star: t0 + dt, value: value.max(y0), refined: true })
}

/// Per-sample node metrics over a stored trajectory: reduce each sample to
/// the node qubits, then concurrence (two-qubit nodes only) and transport
/// fidelity against the reference state.
pub fn transport_metrics(
    traj: &crate::dynamics::Trajectory,
    layout: &SpaceLayout,
    node_qubits: &[usize],
    reference: &DensityMatrix,
) -> Result<(Vec<f64>, Vec<f64>)> {
    let states = traj
        .states
        .as_ref()
        .ok_or_else(|| Error::InvalidState("trajectory has no stored states".into()))?;
    let node_dim = 1usize << node_qubits.len();
    if reference.dim() != node_dim {
        return Err(Error::DimensionMismatch { left: reference.dim(), right: node_dim });
    }
    let mut conc = Vec::with_capacity(states.len());
    let mut fid = Vec::with_capacity(states.len());
    for rho in states {
        let reduced = partial_trace(rho, layout, node_qubits)?;
        if node_qubits.len() == 2 {
            conc.push(concurrence(&reduced)?);
        }
        fid.push(transport_fidelity(reference, &reduced)?);
    }
    Ok((conc, fid))
}
