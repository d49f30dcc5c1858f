//! Time integration of the Lindblad master equation, plus an exact dense
//! superoperator route used as a cross-validation oracle.

use ndarray::{Array1, Array2, Zip};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hilbert::{DensityMatrix, SparseOperator};
use crate::linalg;
use crate::model::LindbladModel;

type C64 = Complex64;

/// Guard on the dense superoperator: dim^2 must not exceed this.
pub const SUPEROP_GUARD: usize = 4096;

/// Fixed-step integrator configuration. Times are in units of the inverse
/// right-moving decay rate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct IntegratorSettings {
    pub dt: f64,
    pub t_max: f64,
    /// Steps between stored samples.
    pub record_stride: usize,
    pub trace_tol: f64,
    pub herm_tol: f64,
    pub pos_tol: f64,
}

impl Default for IntegratorSettings {
    fn default() -> Self {
        IntegratorSettings {
            dt: 1e-3,
            t_max: 20.0,
            record_stride: 10,
            trace_tol: 1e-8,
            herm_tol: 1e-10,
            pos_tol: 1e-8,
        }
    }
}

impl IntegratorSettings {
    pub fn validate(&self) -> Result<()> {
        if !(self.dt > 0.0) {
            return Err(Error::InvalidConfig("integrator dt must be positive".into()));
        }
        if self.t_max < self.dt {
            return Err(Error::InvalidConfig("t_max must be at least dt".into()));
        }
        if self.record_stride == 0 {
            return Err(Error::InvalidConfig("record_stride must be >= 1".into()));
        }
        if !(self.trace_tol > 0.0 && self.herm_tol > 0.0 && self.pos_tol > 0.0) {
            return Err(Error::InvalidConfig("tolerances must be positive".into()));
        }
        Ok(())
    }

    pub fn n_steps(&self) -> usize {
        (self.t_max / self.dt).round().max(1.0) as usize
    }
}

/// Worst-case invariant drift observed over the recorded samples of a run.
#[derive(Debug, Clone, Copy, Default, Serialize, Deserialize)]
pub struct EvolutionDiagnostics {
    pub max_trace_drift: f64,
    pub max_hermiticity_defect: f64,
    pub samples: usize,
}

/// Time grid with stored density matrices and/or derived scalar series.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Option<Vec<DensityMatrix>>,
    pub observables: Vec<(String, Vec<f64>)>,
    pub diagnostics: EvolutionDiagnostics,
}

/// out += coeff * (op . x)
fn add_left_mul(op: &SparseOperator, x: &Array2<C64>, out: &mut Array2<C64>, coeff: C64) {
    for (r, c, v) in op.entries() {
        let f = coeff * v;
        let src = x.row(c);
        let mut dst = out.row_mut(r);
        dst.zip_mut_with(&src, |d, s| *d += f * s);
    }
}

/// out += coeff * (x . op)
fn add_right_mul(op: &SparseOperator, x: &Array2<C64>, out: &mut Array2<C64>, coeff: C64) {
    for (r, c, v) in op.entries() {
        let f = coeff * v;
        let src = x.column(r);
        let mut dst = out.column_mut(c);
        dst.zip_mut_with(&src, |d, s| *d += f * s);
    }
}

/// Prepared generator with the adjoints and L^dag L products cached.
pub(crate) struct Generator<'m> {
    h: &'m SparseOperator,
    collapse: Vec<(&'m SparseOperator, SparseOperator, SparseOperator)>,
}

impl<'m> Generator<'m> {
    pub(crate) fn new(model: &'m LindbladModel) -> Self {
        let collapse = model
            .collapse_ops
            .iter()
            .map(|l| {
                let ldag = l.adjoint();
                let m = ldag.mul(l).expect("matching dims");
                (l, ldag, m)
            })
            .collect();
        Generator { h: &model.hamiltonian, collapse }
    }

    /// out = -i[H, rho] + sum_k L_k rho L_k^dag - (1/2){L_k^dag L_k, rho}
    pub(crate) fn rhs_into(
        &self,
        rho: &Array2<C64>,
        scratch: &mut Array2<C64>,
        out: &mut Array2<C64>,
    ) {
        out.fill(C64::new(0.0, 0.0));
        let minus_i = C64::new(0.0, -1.0);
        let plus_i = C64::new(0.0, 1.0);
        add_left_mul(self.h, rho, out, minus_i);
        add_right_mul(self.h, rho, out, plus_i);
        let half = C64::new(-0.5, 0.0);
        let one = C64::new(1.0, 0.0);
        for (l, ldag, m) in &self.collapse {
            scratch.fill(C64::new(0.0, 0.0));
            add_left_mul(l, rho, scratch, one);
            add_right_mul(ldag, scratch, out, one);
            add_left_mul(m, rho, out, half);
            add_right_mul(m, rho, out, half);
        }
    }
}

/// Right-hand side of the master equation for a single state. The output
/// is Hermitian and traceless (within rounding) whenever `rho` is Hermitian.
pub fn lindblad_rhs(model: &LindbladModel, rho: &DensityMatrix) -> Result<Array2<C64>> {
    if rho.dim() != model.dim() {
        return Err(Error::DimensionMismatch { left: rho.dim(), right: model.dim() });
    }
    let gen = Generator::new(model);
    let n = model.dim();
    let mut scratch = Array2::<C64>::zeros((n, n));
    let mut out = Array2::<C64>::zeros((n, n));
    gen.rhs_into(rho.matrix(), &mut scratch, &mut out);
    Ok(out)
}

/// Classical fixed-step RK4 over the master equation, driving a sample
/// callback at every recorded step (step index, time, state). Invariants
/// (finiteness, trace drift, Hermiticity, positivity) are checked at each
/// recorded sample against the configured tolerances; violations abort.
pub(crate) fn integrate<F>(
    model: &LindbladModel,
    rho0: &DensityMatrix,
    settings: &IntegratorSettings,
    mut on_sample: F,
) -> Result<EvolutionDiagnostics>
where
    F: FnMut(usize, f64, &Array2<C64>) -> Result<()>,
{
    settings.validate()?;
    if rho0.dim() != model.dim() {
        return Err(Error::DimensionMismatch { left: rho0.dim(), right: model.dim() });
    }
    let n = model.dim();
    let gen = Generator::new(model);
    let n_steps = settings.n_steps();
    let dt = settings.dt;

    let mut rho = rho0.matrix().clone();
    let mut k = Array2::<C64>::zeros((n, n));
    let mut stage = Array2::<C64>::zeros((n, n));
    let mut acc = Array2::<C64>::zeros((n, n));
    let mut scratch = Array2::<C64>::zeros((n, n));

    let mut diag = EvolutionDiagnostics::default();
    let mut check_and_emit = |step: usize,
                              rho: &Array2<C64>,
                              diag: &mut EvolutionDiagnostics|
     -> Result<()> {
        if rho.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite { step });
        }
        let tr: C64 = (0..n).map(|i| rho[[i, i]]).sum();
        let drift = ((tr.re - 1.0).powi(2) + tr.im.powi(2)).sqrt();
        if drift > settings.trace_tol {
            return Err(Error::InvariantViolation {
                step,
                what: format!("trace drift {drift:.3e} > {:.1e}", settings.trace_tol),
            });
        }
        let herm = linalg::hermiticity_defect(rho);
        if herm > settings.herm_tol {
            return Err(Error::InvariantViolation {
                step,
                what: format!("hermiticity defect {herm:.3e} > {:.1e}", settings.herm_tol),
            });
        }
        if !linalg::is_psd_within(rho, settings.pos_tol) {
            return Err(Error::InvariantViolation {
                step,
                what: format!("minimum eigenvalue below -{:.1e}", settings.pos_tol),
            });
        }
        diag.max_trace_drift = diag.max_trace_drift.max(drift);
        diag.max_hermiticity_defect = diag.max_hermiticity_defect.max(herm);
        diag.samples += 1;
        on_sample(step, step as f64 * dt, rho)
    };

    check_and_emit(0, &rho, &mut diag)?;
    let mut stage2 = Array2::<C64>::zeros((n, n));
    for step in 1..=n_steps {
        // k1
        gen.rhs_into(&rho, &mut scratch, &mut k);
        Zip::from(&mut acc).and(&rho).and(&k).for_each(|a, r, kk| {
            *a = r + kk * (dt / 6.0);
        });
        Zip::from(&mut stage).and(&rho).and(&k).for_each(|s, r, kk| {
            *s = r + kk * (dt / 2.0);
        });
        // k2
        gen.rhs_into(&stage, &mut scratch, &mut k);
        Zip::from(&mut acc).and(&k).for_each(|a, kk| *a += kk * (dt / 3.0));
        Zip::from(&mut stage2).and(&rho).and(&k).for_each(|s, r, kk| {
            *s = r + kk * (dt / 2.0);
        });
        // k3
        gen.rhs_into(&stage2, &mut scratch, &mut k);
        Zip::from(&mut acc).and(&k).for_each(|a, kk| *a += kk * (dt / 3.0));
        Zip::from(&mut stage).and(&rho).and(&k).for_each(|s, r, kk| {
            *s = r + kk * dt;
        });
        // k4
        gen.rhs_into(&stage, &mut scratch, &mut k);
        Zip::from(&mut acc).and(&k).for_each(|a, kk| *a += kk * (dt / 6.0));

        std::mem::swap(&mut rho, &mut acc);
        if step % settings.record_stride == 0 || step == n_steps {
            check_and_emit(step, &rho, &mut diag)?;
        }
    }
    Ok(diag)
}

/// Integrate and store the sampled density matrices.
pub fn evolve(
    model: &LindbladModel,
    rho0: &DensityMatrix,
    settings: &IntegratorSettings,
) -> Result<Trajectory> {
    let mut times = Vec::new();
    let mut states = Vec::new();
    let diagnostics = integrate(model, rho0, settings, |_, t, rho| {
        times.push(t);
        states.push(DensityMatrix::from_matrix_unchecked(rho.clone()));
        Ok(())
    })?;
    Ok(Trajectory { times, states: Some(states), observables: Vec::new(), diagnostics })
}

/// Integrate, keeping only named scalar observables computed per sample.
pub fn evolve_observed<F>(
    model: &LindbladModel,
    rho0: &DensityMatrix,
    settings: &IntegratorSettings,
    names: &[&str],
    mut observe: F,
) -> Result<Trajectory>
where
    F: FnMut(f64, &Array2<C64>) -> Result<Vec<f64>>,
{
    let mut times = Vec::new();
    let mut series: Vec<Vec<f64>> = names.iter().map(|_| Vec::new()).collect();
    let diagnostics = integrate(model, rho0, settings, |_, t, rho| {
        let vals = observe(t, rho)?;
        debug_assert_eq!(vals.len(), names.len());
        times.push(t);
        for (dst, v) in series.iter_mut().zip(vals) {
            dst.push(v);
        }
        Ok(())
    })?;
    let observables = names
        .iter()
        .map(|n| n.to_string())
        .zip(series)
        .collect();
    Ok(Trajectory { times, states: None, observables, diagnostics })
}

/// Dense superoperator L with column-stacking convention:
/// vec(d rho/dt) = L vec(rho), vec(X)[i + dim*j] = X[i, j].
pub fn liouvillian_matrix(model: &LindbladModel) -> Result<Array2<C64>> {
    let d = model.dim();
    let d2 = d * d;
    if d2 > SUPEROP_GUARD {
        return Err(Error::GuardExceeded { dim_sq: d2, guard: SUPEROP_GUARD });
    }
    let mut sup = Array2::<C64>::zeros((d2, d2));
    let minus_i = C64::new(0.0, -1.0);
    let plus_i = C64::new(0.0, 1.0);
    // -i (I (x) H) vec: [(i + d j), (k + d j)] += -i H[i, k]
    for (i, kcol, v) in model.hamiltonian.entries() {
        for j in 0..d {
            sup[[i + d * j, kcol + d * j]] += minus_i * v;
        }
    }
    // +i (H^T (x) I) vec: [(i + d c), (i + d r)] += +i H[r, c]
    for (r, c, v) in model.hamiltonian.entries() {
        for i in 0..d {
            sup[[i + d * c, i + d * r]] += plus_i * v;
        }
    }
    for l in &model.collapse_ops {
        // L rho L^dag: [(i + d j), (k + d l)] += L[i,k] conj(L[j,l])
        let entries: Vec<_> = l.entries().collect();
        for &(i, k, v1) in &entries {
            for &(j, ll, v2) in &entries {
                sup[[i + d * j, k + d * ll]] += v1 * v2.conj();
            }
        }
        let m = l.adjoint().mul(l)?;
        let half = C64::new(-0.5, 0.0);
        for (i, k, v) in m.entries() {
            for j in 0..d {
                sup[[i + d * j, k + d * j]] += half * v;
            }
        }
        for (r, c, v) in m.entries() {
            for i in 0..d {
                sup[[i + d * c, i + d * r]] += half * v;
            }
        }
    }
    Ok(sup)
}

fn vec_column_stacked(m: &Array2<C64>) -> Array1<C64> {
    let d = m.nrows();
    let mut v = Array1::<C64>::zeros(d * d);
    for j in 0..d {
        for i in 0..d {
            v[i + d * j] = m[[i, j]];
        }
    }
    v
}

fn unvec_column_stacked(v: &Array1<C64>, d: usize) -> Array2<C64> {
    let mut m = Array2::<C64>::zeros((d, d));
    for j in 0..d {
        for i in 0..d {
            m[[i, j]] = v[i + d * j];
        }
    }
    m
}

/// Exact propagation rho(t) = unvec(expm(L t) vec(rho0)) through the dense
/// superoperator. Subject to the same dimension guard as
/// [`liouvillian_matrix`].
pub fn evolve_exact(model: &LindbladModel, rho0: &DensityMatrix, t: f64) -> Result<DensityMatrix> {
    if rho0.dim() != model.dim() {
        return Err(Error::DimensionMismatch { left: rho0.dim(), right: model.dim() });
    }
    let sup = liouvillian_matrix(model)?;
    let propagator = linalg::expm(&sup.mapv(|z| z * t));
    let v0 = vec_column_stacked(rho0.matrix());
    let vt = propagator.dot(&v0);
    Ok(DensityMatrix::from_matrix_unchecked(unvec_column_stacked(&vt, model.dim())))
}
