//! Composite qubit/boson Hilbert spaces and sparse operator algebra.
//!
//! A [`SpaceLayout`] enumerates the basis of an ordered list of subsystems,
//! optionally restricted to a total-excitation sector. The sector restriction
//! is what makes 20-qubit-per-node runs tractable: the dynamics conserve
//! total excitation and dissipation only lowers it, so a state starting with
//! k excitations never leaves the union of sectors 0..=k.

use std::collections::HashMap;

use ndarray::{Array1, Array2};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg;

type C64 = Complex64;

/// Entries with magnitude below this are dropped from sparse operators.
pub const SPARSE_PRUNE_TOL: f64 = 1e-15;

/// Kind of a local subsystem.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubsystemKind {
    Qubit,
    Boson,
}

/// One subsystem of a composite space: a qubit or a truncated bosonic mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SubsystemSpec {
    pub kind: SubsystemKind,
    /// Maximum occupation for bosons; ignored for qubits.
    pub cutoff: usize,
}

impl SubsystemSpec {
    pub fn qubit() -> Self {
        SubsystemSpec { kind: SubsystemKind::Qubit, cutoff: 1 }
    }

    pub fn boson(cutoff: usize) -> Self {
        SubsystemSpec { kind: SubsystemKind::Boson, cutoff }
    }

    /// Local Hilbert-space dimension: 2 for qubits, cutoff+1 for bosons.
    pub fn local_dim(&self) -> usize {
        match self.kind {
            SubsystemKind::Qubit => 2,
            SubsystemKind::Boson => self.cutoff + 1,
        }
    }

    /// Maximum occupation number for this subsystem.
    pub fn max_occupation(&self) -> usize {
        self.local_dim() - 1
    }
}

/// Ordered list of subsystems with a deterministic basis enumeration,
/// optionally capped at a total excitation number.
///
/// The basis is the set of occupation tuples (one entry per subsystem)
/// with each entry below the local dimension and, when a cap is set, a
/// total at most the cap. Enumeration is lexicographic in the tuple, which
/// fixes the index map once and for all.
#[derive(Debug, Clone)]
pub struct SpaceLayout {
    subsystems: Vec<SubsystemSpec>,
    excitation_cap: Option<usize>,
    configs: Vec<Vec<u8>>,
    index: HashMap<Vec<u8>, usize>,
}

impl SpaceLayout {
    /// Build a layout. Errors on an empty subsystem list or a boson with
    /// cutoff zero.
    pub fn build(
        subsystems: Vec<SubsystemSpec>,
        excitation_cap: Option<usize>,
    ) -> Result<Self> {
        if subsystems.is_empty() {
            return Err(Error::EmptyLayout);
        }
        for s in &subsystems {
            if s.kind == SubsystemKind::Boson && s.cutoff == 0 {
                return Err(Error::BosonCutoffZero);
            }
        }
        let mut configs = Vec::new();
        let mut current = vec![0u8; subsystems.len()];
        enumerate(&subsystems, excitation_cap, 0, 0, &mut current, &mut configs);
        let index = configs
            .iter()
            .enumerate()
            .map(|(i, c)| (c.clone(), i))
            .collect();
        Ok(SpaceLayout { subsystems, excitation_cap, configs, index })
    }

    pub fn dim(&self) -> usize {
        self.configs.len()
    }

    pub fn n_subsystems(&self) -> usize {
        self.subsystems.len()
    }

    pub fn subsystems(&self) -> &[SubsystemSpec] {
        &self.subsystems
    }

    pub fn excitation_cap(&self) -> Option<usize> {
        self.excitation_cap
    }

    /// Occupation tuple of basis state `i`.
    pub fn config(&self, i: usize) -> &[u8] {
        &self.configs[i]
    }

    /// Basis index of an occupation tuple, if it is in the enumerated basis.
    pub fn index_of(&self, config: &[u8]) -> Option<usize> {
        self.index.get(config).copied()
    }

    /// Total excitation of basis state `i`.
    pub fn excitation(&self, i: usize) -> usize {
        self.configs[i].iter().map(|&n| n as usize).sum()
    }

    /// Sum of number operators over all subsystems.
    pub fn total_excitation_op(&self) -> SparseOperator {
        let triplets = (0..self.dim())
            .map(|i| (i, i, C64::new(self.excitation(i) as f64, 0.0)))
            .collect();
        SparseOperator::from_triplets(self.dim(), triplets)
    }

    fn check_subsystem(&self, index: usize) -> Result<()> {
        if index >= self.subsystems.len() {
            return Err(Error::SubsystemIndex { index, count: self.subsystems.len() });
        }
        Ok(())
    }
}

fn enumerate(
    subs: &[SubsystemSpec],
    cap: Option<usize>,
    pos: usize,
    used: usize,
    current: &mut Vec<u8>,
    out: &mut Vec<Vec<u8>>,
) {
    if pos == subs.len() {
        out.push(current.clone());
        return;
    }
    let local_max = subs[pos].max_occupation();
    let allowed = match cap {
        Some(c) => local_max.min(c - used),
        None => local_max,
    };
    for n in 0..=allowed {
        current[pos] = n as u8;
        enumerate(subs, cap, pos + 1, used + n, current, out);
    }
    current[pos] = 0;
}

/// Complex sparse matrix in CSR form with a canonical (sorted, merged,
/// pruned) entry layout.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseOperator {
    dim: usize,
    row_ptr: Vec<usize>,
    cols: Vec<usize>,
    vals: Vec<C64>,
}

impl SparseOperator {
    /// Build from (row, col, value) triplets: sorts, merges duplicates and
    /// prunes entries below [`SPARSE_PRUNE_TOL`].
    pub fn from_triplets(dim: usize, mut triplets: Vec<(usize, usize, C64)>) -> Self {
        for &(r, c, _) in &triplets {
            assert!(r < dim && c < dim, "triplet ({r},{c}) out of range for dim {dim}");
        }
        triplets.sort_by_key(|&(r, c, _)| (r, c));
        let mut row_ptr = vec![0usize; dim + 1];
        let mut cols = Vec::with_capacity(triplets.len());
        let mut vals: Vec<C64> = Vec::with_capacity(triplets.len());
        let mut rows_acc: Vec<usize> = Vec::with_capacity(triplets.len());
        for (r, c, v) in triplets {
            if let (Some(&lr), Some(&lc)) = (rows_acc.last(), cols.last()) {
                if lr == r && lc == c {
                    *vals.last_mut().unwrap() += v;
                    continue;
                }
            }
            rows_acc.push(r);
            cols.push(c);
            vals.push(v);
        }
        // Prune and count per row.
        let mut kept_cols = Vec::with_capacity(cols.len());
        let mut kept_vals = Vec::with_capacity(vals.len());
        let mut kept_rows = Vec::with_capacity(rows_acc.len());
        for ((r, c), v) in rows_acc.into_iter().zip(cols).zip(vals) {
            if v.norm() > SPARSE_PRUNE_TOL {
                kept_rows.push(r);
                kept_cols.push(c);
                kept_vals.push(v);
            }
        }
        for &r in &kept_rows {
            row_ptr[r + 1] += 1;
        }
        for i in 0..dim {
            row_ptr[i + 1] += row_ptr[i];
        }
        SparseOperator { dim, row_ptr, cols: kept_cols, vals: kept_vals }
    }

    pub fn zero(dim: usize) -> Self {
        SparseOperator::from_triplets(dim, Vec::new())
    }

    pub fn identity(dim: usize) -> Self {
        let triplets = (0..dim).map(|i| (i, i, C64::new(1.0, 0.0))).collect();
        SparseOperator::from_triplets(dim, triplets)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    /// Iterate entries as (row, col, value) in canonical order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, C64)> + '_ {
        (0..self.dim).flat_map(move |r| {
            (self.row_ptr[r]..self.row_ptr[r + 1])
                .map(move |k| (r, self.cols[k], self.vals[k]))
        })
    }

    fn check_dim(&self, other: &SparseOperator) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: other.dim });
        }
        Ok(())
    }

    pub fn add(&self, other: &SparseOperator) -> Result<SparseOperator> {
        self.check_dim(other)?;
        let mut triplets: Vec<(usize, usize, C64)> = self.entries().collect();
        triplets.extend(other.entries());
        Ok(SparseOperator::from_triplets(self.dim, triplets))
    }

    pub fn scale(&self, factor: C64) -> SparseOperator {
        let triplets = self.entries().map(|(r, c, v)| (r, c, v * factor)).collect();
        SparseOperator::from_triplets(self.dim, triplets)
    }

    /// Sparse matrix product self * other.
    pub fn mul(&self, other: &SparseOperator) -> Result<SparseOperator> {
        self.check_dim(other)?;
        let mut triplets = Vec::new();
        for r in 0..self.dim {
            let mut acc: HashMap<usize, C64> = HashMap::new();
            for k in self.row_ptr[r]..self.row_ptr[r + 1] {
                let mid = self.cols[k];
                let v = self.vals[k];
                for k2 in other.row_ptr[mid]..other.row_ptr[mid + 1] {
                    *acc.entry(other.cols[k2]).or_insert(C64::new(0.0, 0.0)) +=
                        v * other.vals[k2];
                }
            }
            for (c, v) in acc {
                triplets.push((r, c, v));
            }
        }
        Ok(SparseOperator::from_triplets(self.dim, triplets))
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> SparseOperator {
        let triplets = self.entries().map(|(r, c, v)| (c, r, v.conj())).collect();
        SparseOperator::from_triplets(self.dim, triplets)
    }

    /// Largest entrywise deviation from the adjoint: 0 for Hermitian operators.
    pub fn hermiticity_defect(&self) -> f64 {
        let diff = self.add(&self.adjoint().scale(C64::new(-1.0, 0.0))).unwrap();
        diff.vals.iter().fold(0.0f64, |m, v| m.max(v.norm()))
    }

    pub fn to_dense(&self) -> Array2<C64> {
        let mut out = Array2::<C64>::zeros((self.dim, self.dim));
        for (r, c, v) in self.entries() {
            out[[r, c]] = v;
        }
        out
    }

    /// Dense product A * X for dense X.
    pub fn apply_left(&self, x: &Array2<C64>) -> Array2<C64> {
        let n = self.dim;
        let mut out = Array2::<C64>::zeros((n, x.ncols()));
        for r in 0..n {
            for k in self.row_ptr[r]..self.row_ptr[r + 1] {
                let c = self.cols[k];
                let v = self.vals[k];
                let src = x.row(c);
                let mut dst = out.row_mut(r);
                dst.zip_mut_with(&src, |d, s| *d += v * s);
            }
        }
        out
    }

    /// Dense product X * A for dense X.
    pub fn apply_right(&self, x: &Array2<C64>) -> Array2<C64> {
        let n = self.dim;
        let mut out = Array2::<C64>::zeros((x.nrows(), n));
        for r in 0..n {
            for k in self.row_ptr[r]..self.row_ptr[r + 1] {
                let c = self.cols[k];
                let v = self.vals[k];
                let src = x.column(r);
                let mut dst = out.column_mut(c);
                dst.zip_mut_with(&src, |d, s| *d += s * v);
            }
        }
        out
    }

    /// Apply to a ket: A |v>.
    pub fn apply_vector(&self, v: &Array1<C64>) -> Array1<C64> {
        let mut out = Array1::<C64>::zeros(self.dim);
        for (r, c, val) in self.entries() {
            out[r] += val * v[c];
        }
        out
    }

    /// Tr(self * rho): real within ~1e-10 for Hermitian self.
    pub fn expectation(&self, rho: &DensityMatrix) -> Result<C64> {
        if self.dim != rho.dim() {
            return Err(Error::DimensionMismatch { left: self.dim, right: rho.dim() });
        }
        let m = rho.matrix();
        let mut acc = C64::new(0.0, 0.0);
        for (r, c, v) in self.entries() {
            acc += v * m[[c, r]];
        }
        Ok(acc)
    }
}

/// Annihilation-type operator on one subsystem: matrix element sqrt(n)
/// between configurations that differ by one quantum on that subsystem
/// (sqrt(n) is 1 for qubits). Transitions leaving the sector basis vanish.
pub fn lowering_op(layout: &SpaceLayout, subsystem: usize) -> Result<SparseOperator> {
    layout.check_subsystem(subsystem)?;
    let mut triplets = Vec::new();
    for i in 0..layout.dim() {
        let cfg = layout.config(i);
        let n = cfg[subsystem];
        if n == 0 {
            continue;
        }
        let mut tgt = cfg.to_vec();
        tgt[subsystem] = n - 1;
        if let Some(j) = layout.index_of(&tgt) {
            triplets.push((j, i, C64::new((n as f64).sqrt(), 0.0)));
        }
    }
    Ok(SparseOperator::from_triplets(layout.dim(), triplets))
}

/// Adjoint of [`lowering_op`].
pub fn raising_op(layout: &SpaceLayout, subsystem: usize) -> Result<SparseOperator> {
    Ok(lowering_op(layout, subsystem)?.adjoint())
}

/// Diagonal occupation-number operator on one subsystem.
pub fn number_op(layout: &SpaceLayout, subsystem: usize) -> Result<SparseOperator> {
    layout.check_subsystem(subsystem)?;
    let triplets = (0..layout.dim())
        .filter_map(|i| {
            let n = layout.config(i)[subsystem] as f64;
            (n != 0.0).then_some((i, i, C64::new(n, 0.0)))
        })
        .collect();
    Ok(SparseOperator::from_triplets(layout.dim(), triplets))
}

/// Identity on the layout's full space.
pub fn identity_op(layout: &SpaceLayout) -> SparseOperator {
    SparseOperator::identity(layout.dim())
}

/// Normalized state vector over a layout basis.
#[derive(Debug, Clone)]
pub struct KetVector {
    amps: Array1<C64>,
}

impl KetVector {
    /// Wrap amplitudes, requiring unit norm within 1e-12.
    pub fn from_amplitudes(amps: Array1<C64>) -> Result<Self> {
        let norm_sq: f64 = amps.iter().map(|z| z.norm_sqr()).sum();
        if (norm_sq - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidState(format!(
                "ket norm^2 = {norm_sq}, expected 1 within 1e-12"
            )));
        }
        Ok(KetVector { amps })
    }

    /// Normalize and apply the global-phase convention (first nonzero
    /// amplitude real positive).
    pub fn normalized(mut amps: Array1<C64>) -> Result<Self> {
        let norm_sq: f64 = amps.iter().map(|z| z.norm_sqr()).sum();
        if norm_sq <= 0.0 {
            return Err(Error::InvalidState("zero vector".into()));
        }
        let norm = norm_sq.sqrt();
        amps.mapv_inplace(|z| z / norm);
        if let Some(first) = amps.iter().find(|z| z.norm() > 1e-14) {
            let phase = first / first.norm();
            let conj = phase.conj();
            amps.mapv_inplace(|z| z * conj);
        }
        Ok(KetVector { amps })
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &Array1<C64> {
        &self.amps
    }

    /// <self | op | self>.
    pub fn expectation(&self, op: &SparseOperator) -> Result<C64> {
        if op.dim() != self.dim() {
            return Err(Error::DimensionMismatch { left: op.dim(), right: self.dim() });
        }
        let av = op.apply_vector(&self.amps);
        Ok(self.amps.iter().zip(av.iter()).map(|(a, b)| a.conj() * b).sum())
    }

    /// <self | rho | self>, the overlap with a mixed state.
    pub fn quadratic_form(&self, rho: &DensityMatrix) -> Result<f64> {
        if rho.dim() != self.dim() {
            return Err(Error::DimensionMismatch { left: rho.dim(), right: self.dim() });
        }
        let m = rho.matrix();
        let mut acc = C64::new(0.0, 0.0);
        for i in 0..self.dim() {
            if self.amps[i].norm() == 0.0 {
                continue;
            }
            for j in 0..self.dim() {
                acc += self.amps[i].conj() * m[[i, j]] * self.amps[j];
            }
        }
        Ok(acc.re)
    }
}

/// Hermitian, unit-trace, positive-semidefinite dense matrix.
///
/// Stored dense: Lindblad dissipators fill in the sector bases even when
/// the generator stays sparse.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    mat: Array2<C64>,
}

/// Tolerances for the [`DensityMatrix`] construction invariants.
pub const RHO_HERM_TOL: f64 = 1e-10;
pub const RHO_TRACE_TOL: f64 = 1e-9;
pub const RHO_POS_TOL: f64 = 1e-8;

impl DensityMatrix {
    /// Validate Hermiticity (1e-10), unit trace (1e-9) and positivity
    /// (min eigenvalue >= -1e-8) before wrapping.
    pub fn from_matrix(mat: Array2<C64>) -> Result<Self> {
        if mat.nrows() != mat.ncols() {
            return Err(Error::InvalidDensityMatrix("not square".into()));
        }
        let herm = linalg::hermiticity_defect(&mat);
        if herm > RHO_HERM_TOL {
            return Err(Error::InvalidDensityMatrix(format!(
                "hermiticity defect {herm:.3e} > {RHO_HERM_TOL:.0e}"
            )));
        }
        let tr: C64 = (0..mat.nrows()).map(|i| mat[[i, i]]).sum();
        if (tr.re - 1.0).abs() > RHO_TRACE_TOL || tr.im.abs() > RHO_TRACE_TOL {
            return Err(Error::InvalidDensityMatrix(format!(
                "trace {tr} deviates from 1 beyond {RHO_TRACE_TOL:.0e}"
            )));
        }
        if !linalg::is_psd_within(&mat, RHO_POS_TOL) {
            return Err(Error::InvalidDensityMatrix(format!(
                "minimum eigenvalue below -{RHO_POS_TOL:.0e}"
            )));
        }
        Ok(DensityMatrix { mat })
    }

    /// Wrap without validation; for internal evolution buffers where the
    /// integrator performs its own diagnostics.
    pub(crate) fn from_matrix_unchecked(mat: Array2<C64>) -> Self {
        DensityMatrix { mat }
    }

    /// |ket><ket|.
    pub fn pure(ket: &KetVector) -> Self {
        let n = ket.dim();
        let a = ket.amplitudes();
        let mut mat = Array2::<C64>::zeros((n, n));
        for i in 0..n {
            if a[i].norm() == 0.0 {
                continue;
            }
            for j in 0..n {
                mat[[i, j]] = a[i] * a[j].conj();
            }
        }
        DensityMatrix { mat }
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn matrix(&self) -> &Array2<C64> {
        &self.mat
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim()).map(|i| self.mat[[i, i]]).sum()
    }

    pub fn hermiticity_defect(&self) -> f64 {
        linalg::hermiticity_defect(&self.mat)
    }

    /// Smallest eigenvalue (full Hermitian eigendecomposition).
    pub fn min_eigenvalue(&self) -> f64 {
        linalg::min_eigenvalue(&self.mat)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;

    fn kron(a: &Array2<C64>, b: &Array2<C64>) -> Array2<C64> {
        let (ar, ac) = (a.nrows(), a.ncols());
        let (br, bc) = (b.nrows(), b.ncols());
        let mut out = Array2::<C64>::zeros((ar * br, ac * bc));
        for i in 0..ar {
            for j in 0..ac {
                for k in 0..br {
                    for l in 0..bc {
                        out[[i * br + k, j * bc + l]] = a[[i, j]] * b[[k, l]];
                    }
                }
            }
        }
        out
    }

    fn dense_lowering(local_dim: usize) -> Array2<C64> {
        let mut a = Array2::<C64>::zeros((local_dim, local_dim));
        for n in 1..local_dim {
            a[[n - 1, n]] = C64::new((n as f64).sqrt(), 0.0);
        }
        a
    }

    /// Dense Kronecker-product construction of the lowering operator on
    /// subsystem `which` of an uncapped product space.
    fn kron_lowering(dims: &[usize], which: usize) -> Array2<C64> {
        let mut out = array![[C64::new(1.0, 0.0)]];
        for (i, &d) in dims.iter().enumerate() {
            let factor = if i == which {
                dense_lowering(d)
            } else {
                Array2::<C64>::eye(d)
            };
            out = kron(&out, &factor);
        }
        out
    }

    #[test]
    fn layout_dimensions_match_counting() {
        // 2 qubits, no cap -> 4
        let l = SpaceLayout::build(vec![SubsystemSpec::qubit(); 2], None).unwrap();
        assert_eq!(l.dim(), 4);

        // 4 qubits + 2 bosons (cutoff 2), cap 1 -> vacuum + 6 singles = 7
        let mut subs = vec![SubsystemSpec::qubit(); 4];
        subs.push(SubsystemSpec::boson(2));
        subs.push(SubsystemSpec::boson(2));
        let l = SpaceLayout::build(subs, Some(1)).unwrap();
        assert_eq!(l.dim(), 7);

        // 40 qubits + 2 bosons (cutoff 2), cap 1 -> 43
        let mut subs = vec![SubsystemSpec::qubit(); 40];
        subs.push(SubsystemSpec::boson(2));
        subs.push(SubsystemSpec::boson(2));
        let l = SpaceLayout::build(subs, Some(1)).unwrap();
        assert_eq!(l.dim(), 43);
    }

    #[test]
    fn layout_rejects_bad_inputs() {
        assert!(matches!(
            SpaceLayout::build(vec![], None),
            Err(Error::EmptyLayout)
        ));
        assert!(matches!(
            SpaceLayout::build(vec![SubsystemSpec::boson(0)], None),
            Err(Error::BosonCutoffZero)
        ));
    }

    #[test]
    fn index_map_is_bijective_and_lexicographic() {
        let subs = vec![
            SubsystemSpec::qubit(),
            SubsystemSpec::boson(2),
            SubsystemSpec::qubit(),
        ];
        let l = SpaceLayout::build(subs, Some(2)).unwrap();
        for i in 0..l.dim() {
            assert_eq!(l.index_of(l.config(i)), Some(i));
        }
        for i in 1..l.dim() {
            assert!(l.config(i - 1) < l.config(i), "not lexicographic at {i}");
        }
    }

    #[test]
    fn lowering_on_single_boson_matches_ladder_algebra() {
        let l = SpaceLayout::build(vec![SubsystemSpec::boson(2)], None).unwrap();
        let a = lowering_op(&l, 0).unwrap().to_dense();
        // a|2> = sqrt(2)|1>, a|1> = |0>, a|0> = 0
        assert!((a[[1, 2]].re - 2f64.sqrt()).abs() < 1e-15);
        assert!((a[[0, 1]].re - 1.0).abs() < 1e-15);
        for i in 0..3 {
            assert_eq!(a[[i, 0]], C64::new(0.0, 0.0));
        }
    }

    #[test]
    fn lowering_on_qubit() {
        let l = SpaceLayout::build(vec![SubsystemSpec::qubit()], None).unwrap();
        let s = lowering_op(&l, 0).unwrap().to_dense();
        assert_eq!(s[[0, 1]], C64::new(1.0, 0.0));
        assert_eq!(s[[1, 0]], C64::new(0.0, 0.0));
        assert_eq!(s[[0, 0]], C64::new(0.0, 0.0));
    }

    #[test]
    fn lowering_in_capped_layout_annihilates_single_photon_state() {
        // 2 qubits + 1 boson (cutoff 1), cap 1: basis by hand is
        //   (0,0,0), (0,0,1), (0,1,0), (1,0,0)  -> dim 4
        let subs = vec![
            SubsystemSpec::qubit(),
            SubsystemSpec::qubit(),
            SubsystemSpec::boson(1),
        ];
        let l = SpaceLayout::build(subs, Some(1)).unwrap();
        assert_eq!(l.dim(), 4);
        assert_eq!(l.config(0), &[0, 0, 0]);
        assert_eq!(l.config(1), &[0, 0, 1]);
        assert_eq!(l.config(2), &[0, 1, 0]);
        assert_eq!(l.config(3), &[1, 0, 0]);
        let a = lowering_op(&l, 2).unwrap();
        assert_eq!(a.nnz(), 1);
        let entries: Vec<_> = a.entries().collect();
        assert_eq!(entries[0], (0, 1, C64::new(1.0, 0.0)));
    }

    #[test]
    fn raising_is_adjoint_of_lowering() {
        let subs = vec![SubsystemSpec::qubit(), SubsystemSpec::boson(3)];
        let l = SpaceLayout::build(subs, None).unwrap();
        for k in 0..2 {
            let low = lowering_op(&l, k).unwrap();
            let raise = raising_op(&l, k).unwrap();
            assert_eq!(raise, low.adjoint());
        }
    }

    #[test]
    fn number_op_vacuum_and_fock_expectations() {
        let l = SpaceLayout::build(vec![SubsystemSpec::boson(2)], None).unwrap();
        let n = number_op(&l, 0).unwrap();
        let mut vac = Array1::<C64>::zeros(3);
        vac[0] = C64::new(1.0, 0.0);
        let vac = KetVector::from_amplitudes(vac).unwrap();
        let rho = DensityMatrix::pure(&vac);
        assert_eq!(n.expectation(&rho).unwrap(), C64::new(0.0, 0.0));

        let mut one = Array1::<C64>::zeros(3);
        one[1] = C64::new(1.0, 0.0);
        let one = KetVector::from_amplitudes(one).unwrap();
        let rho1 = DensityMatrix::pure(&one);
        assert!((n.expectation(&rho1).unwrap().re - 1.0).abs() < 1e-14);

        let id = identity_op(&l);
        assert!((id.expectation(&rho1).unwrap().re - 1.0).abs() < 1e-14);
    }

    #[test]
    fn raising_times_lowering_equals_number_on_cutoff3_boson() {
        let l = SpaceLayout::build(vec![SubsystemSpec::boson(3)], None).unwrap();
        let a = lowering_op(&l, 0).unwrap();
        let ad = raising_op(&l, 0).unwrap();
        let n = number_op(&l, 0).unwrap();
        let prod = ad.mul(&a).unwrap();
        let diff = prod.add(&n.scale(C64::new(-1.0, 0.0))).unwrap();
        assert_eq!(diff.nnz(), 0, "a^dag a != number op");
    }

    #[test]
    fn total_excitation_commutes_with_hopping_terms() {
        // dim-7 layout: 4 qubits + 2 bosons (cutoff 2), cap 1
        let mut subs = vec![SubsystemSpec::qubit(); 4];
        subs.push(SubsystemSpec::boson(2));
        subs.push(SubsystemSpec::boson(2));
        let l = SpaceLayout::build(subs, Some(1)).unwrap();
        let ntot = l.total_excitation_op();
        for (up, down) in [(4usize, 0usize), (5, 2), (4, 5)] {
            let hop = raising_op(&l, up).unwrap().mul(&lowering_op(&l, down).unwrap()).unwrap();
            let comm = ntot
                .mul(&hop)
                .unwrap()
                .add(&hop.mul(&ntot).unwrap().scale(C64::new(-1.0, 0.0)))
                .unwrap();
            assert_eq!(comm.nnz(), 0, "[N_tot, hop({up},{down})] != 0");
        }
    }

    #[test]
    fn sparse_arithmetic_basics() {
        let l = SpaceLayout::build(vec![SubsystemSpec::boson(3)], None).unwrap();
        let a = lowering_op(&l, 0).unwrap();
        // A + (-1)A = 0
        let z = a.add(&a.scale(C64::new(-1.0, 0.0))).unwrap();
        assert_eq!(z.nnz(), 0);
        // adjoint(adjoint(A)) = A
        assert_eq!(a.adjoint().adjoint(), a);
        // dimension mismatch
        let l2 = SpaceLayout::build(vec![SubsystemSpec::qubit()], None).unwrap();
        let b = lowering_op(&l2, 0).unwrap();
        assert!(a.add(&b).is_err());
        assert!(a.mul(&b).is_err());
    }

    #[test]
    fn operators_match_dense_kronecker_construction() {
        // Uncapped mixed space small enough for the naive dense oracle.
        let subs = vec![
            SubsystemSpec::qubit(),
            SubsystemSpec::boson(2),
            SubsystemSpec::qubit(),
        ];
        let dims: Vec<usize> = subs.iter().map(|s| s.local_dim()).collect();
        let l = SpaceLayout::build(subs, None).unwrap();
        assert_eq!(l.dim(), 12);
        // The layout's lexicographic enumeration coincides with the standard
        // Kronecker ordering (first subsystem slowest) for uncapped spaces,
        // so the operators must agree entrywise.
        for which in 0..3 {
            let sparse = lowering_op(&l, which).unwrap().to_dense();
            let dense = kron_lowering(&dims, which);
            let err = linalg::max_abs(&(sparse - dense));
            assert!(err <= 1e-12, "subsystem {which}: {err}");
        }
        // Products: (a^dag_0 a_1) sparse vs dense
        let s01 = raising_op(&l, 0)
            .unwrap()
            .mul(&lowering_op(&l, 1).unwrap())
            .unwrap()
            .to_dense();
        let d01 = kron_lowering(&dims, 0).t().mapv(|z| z.conj()).dot(&kron_lowering(&dims, 1));
        assert!(linalg::max_abs(&(s01 - d01)) <= 1e-12);
    }

    #[test]
    fn density_matrix_validation() {
        // Valid: maximally mixed qubit.
        let m = Array2::<C64>::eye(2).mapv(|z| z * 0.5);
        assert!(DensityMatrix::from_matrix(m).is_ok());
        // Bad trace.
        let m = Array2::<C64>::eye(2);
        assert!(DensityMatrix::from_matrix(m).is_err());
        // Non-Hermitian.
        let mut m = Array2::<C64>::eye(2).mapv(|z| z * 0.5);
        m[[0, 1]] = C64::new(0.3, 0.1);
        assert!(DensityMatrix::from_matrix(m).is_err());
        // Indefinite.
        let mut m = Array2::<C64>::zeros((2, 2));
        m[[0, 0]] = C64::new(1.5, 0.0);
        m[[1, 1]] = C64::new(-0.5, 0.0);
        assert!(DensityMatrix::from_matrix(m).is_err());
    }

    #[test]
    fn ket_normalization_and_phase_gauge() {
        let amps = array![C64::new(0.0, 0.0), C64::new(0.0, 2.0), C64::new(2.0, 0.0)];
        let ket = KetVector::normalized(amps).unwrap();
        // First nonzero amplitude becomes real positive.
        assert!((ket.amplitudes()[1] - C64::new(1.0 / 2f64.sqrt(), 0.0)).norm() < 1e-14);
        assert!((ket.amplitudes()[2] - C64::new(0.0, -1.0 / 2f64.sqrt())).norm() < 1e-14);
    }
}
