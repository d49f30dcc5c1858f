//! Initial-state families and reductions: Bell states, the one- and
//! two-excitation superposition families, Dicke/W states, embedding of
//! node-local states into the global layout, and partial traces.

use std::f64::consts::PI;

use ndarray::{Array1, Array2};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hilbert::{DensityMatrix, KetVector, SpaceLayout, SubsystemKind};

type C64 = Complex64;

/// The four maximally entangled two-qubit states.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BellState {
    /// (|eg> + |ge>)/sqrt(2)
    PsiPlus,
    /// (|eg> - |ge>)/sqrt(2)
    PsiMinus,
    /// (|gg> + |ee>)/sqrt(2)
    PhiPlus,
    /// (|gg> - |ee>)/sqrt(2)
    PhiMinus,
}

/// Node-local initial state specification.
///
/// Qubit basis order within a node is lexicographic in occupation, with
/// the first qubit as the most significant digit and occupation 1 meaning
/// excited, so for two qubits the order is |gg>, |ge>, |eg>, |ee>.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum NodeStateSpec {
    /// A Bell state on a two-qubit node.
    Bell { state: BellState },
    /// cos(theta)|eg> + e^{i phi} sin(theta)|ge>, theta in [0, pi],
    /// phi in [0, 2 pi].
    PsiAlpha { theta: f64, phi: f64 },
    /// cos(theta)|gg> + e^{i phi} sin(theta)|ee>, theta in [0, 2 pi],
    /// phi in [-pi, pi].
    PsiBeta { theta: f64, phi: f64 },
    /// Equal superposition of all weight-k configurations of n qubits;
    /// dicke(n, 1) is the W state.
    Dicke { n: usize, k: usize },
    /// All n qubits in the ground state.
    Ground { n: usize },
}

impl NodeStateSpec {
    pub fn bell(state: BellState) -> Self {
        NodeStateSpec::Bell { state }
    }

    /// Number of qubits the state is defined on.
    pub fn n_qubits(&self) -> usize {
        match self {
            NodeStateSpec::Bell { .. }
            | NodeStateSpec::PsiAlpha { .. }
            | NodeStateSpec::PsiBeta { .. } => 2,
            NodeStateSpec::Dicke { n, .. } | NodeStateSpec::Ground { n } => *n,
        }
    }

    /// Largest excitation number present in the state; determines the
    /// sector cap and boson cutoff needed to hold the dynamics exactly.
    pub fn max_excitation(&self) -> usize {
        match self {
            NodeStateSpec::Bell { state } => match state {
                BellState::PsiPlus | BellState::PsiMinus => 1,
                BellState::PhiPlus | BellState::PhiMinus => 2,
            },
            NodeStateSpec::PsiAlpha { .. } => 1,
            NodeStateSpec::PsiBeta { theta, .. } => {
                if theta.sin().abs() < 1e-14 {
                    0
                } else {
                    2
                }
            }
            NodeStateSpec::Dicke { k, .. } => *k,
            NodeStateSpec::Ground { .. } => 0,
        }
    }

    fn validate(&self) -> Result<()> {
        match self {
            NodeStateSpec::PsiAlpha { theta, phi } => {
                if !(0.0..=PI).contains(theta) {
                    return Err(Error::InvalidState(format!(
                        "psi_alpha theta {theta} outside [0, pi]"
                    )));
                }
                if !(0.0..=2.0 * PI).contains(phi) {
                    return Err(Error::InvalidState(format!(
                        "psi_alpha phi {phi} outside [0, 2 pi]"
                    )));
                }
            }
            NodeStateSpec::PsiBeta { theta, phi } => {
                if !(0.0..=2.0 * PI).contains(theta) {
                    return Err(Error::InvalidState(format!(
                        "psi_beta theta {theta} outside [0, 2 pi]"
                    )));
                }
                if !(-PI..=PI).contains(phi) {
                    return Err(Error::InvalidState(format!(
                        "psi_beta phi {phi} outside [-pi, pi]"
                    )));
                }
            }
            NodeStateSpec::Dicke { n, k } => {
                if *n == 0 {
                    return Err(Error::InvalidState("dicke requires n >= 1".into()));
                }
                if k > n {
                    return Err(Error::InvalidState(format!(
                        "dicke excitation k={k} exceeds qubit count n={n}"
                    )));
                }
            }
            NodeStateSpec::Ground { n } => {
                if *n == 0 {
                    return Err(Error::InvalidState("ground requires n >= 1".into()));
                }
            }
            NodeStateSpec::Bell { .. } => {}
        }
        Ok(())
    }
}

fn binomial(n: usize, k: usize) -> f64 {
    let k = k.min(n - k);
    let mut acc = 1.0f64;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc
}

/// Build a node-local ket over the node's full 2^N qubit product basis.
pub fn make_node_state(spec: &NodeStateSpec) -> Result<KetVector> {
    spec.validate()?;
    let n = spec.n_qubits();
    let dim = 1usize << n;
    let mut amps = Array1::<C64>::zeros(dim);
    let s2 = std::f64::consts::FRAC_1_SQRT_2;
    match spec {
        NodeStateSpec::Bell { state } => {
            // indices: |gg>=0, |ge>=1, |eg>=2, |ee>=3
            match state {
                BellState::PsiPlus => {
                    amps[2] = C64::new(s2, 0.0);
                    amps[1] = C64::new(s2, 0.0);
                }
                BellState::PsiMinus => {
                    amps[2] = C64::new(s2, 0.0);
                    amps[1] = C64::new(-s2, 0.0);
                }
                BellState::PhiPlus => {
                    amps[0] = C64::new(s2, 0.0);
                    amps[3] = C64::new(s2, 0.0);
                }
                BellState::PhiMinus => {
                    amps[0] = C64::new(s2, 0.0);
                    amps[3] = C64::new(-s2, 0.0);
                }
            }
        }
        NodeStateSpec::PsiAlpha { theta, phi } => {
            amps[2] = C64::new(theta.cos(), 0.0);
            amps[1] = C64::from_polar(theta.sin(), *phi);
        }
        NodeStateSpec::PsiBeta { theta, phi } => {
            amps[0] = C64::new(theta.cos(), 0.0);
            amps[3] = C64::from_polar(theta.sin(), *phi);
        }
        NodeStateSpec::Dicke { n, k } => {
            let amp = C64::new(1.0 / binomial(*n, *k).sqrt(), 0.0);
            for idx in 0..dim {
                if (idx as u32).count_ones() as usize == *k {
                    amps[idx] = amp;
                }
            }
        }
        NodeStateSpec::Ground { .. } => {
            amps[0] = C64::new(1.0, 0.0);
        }
    }
    KetVector::normalized(amps)
}

/// Node partition of a two-node layout: qubits of node 1, cavity 1,
/// qubits of node 2, cavity 2, in that order.
#[derive(Debug, Clone, Copy)]
pub struct NodePartition {
    pub n1: usize,
    pub cavity1: usize,
    pub node2_offset: usize,
    pub n2: usize,
    pub cavity2: usize,
}

impl NodePartition {
    /// Infer the partition from a layout shaped as
    /// [qubits x n1, boson, qubits x n2, boson].
    pub fn infer(layout: &SpaceLayout) -> Result<Self> {
        let subs = layout.subsystems();
        let bosons: Vec<usize> = subs
            .iter()
            .enumerate()
            .filter(|(_, s)| s.kind == SubsystemKind::Boson)
            .map(|(i, _)| i)
            .collect();
        if bosons.len() != 2 || *bosons.last().unwrap() != subs.len() - 1 {
            return Err(Error::InvalidConfig(
                "layout is not [qubits, cavity, qubits, cavity]".into(),
            ));
        }
        let c1 = bosons[0];
        let c2 = bosons[1];
        if c1 == 0 || c2 == c1 + 1 {
            return Err(Error::InvalidConfig(
                "each node needs at least one qubit".into(),
            ));
        }
        Ok(NodePartition {
            n1: c1,
            cavity1: c1,
            node2_offset: c1 + 1,
            n2: c2 - c1 - 1,
            cavity2: c2,
        })
    }

    pub fn node1_qubits(&self) -> Vec<usize> {
        (0..self.n1).collect()
    }

    pub fn node2_qubits(&self) -> Vec<usize> {
        (self.node2_offset..self.node2_offset + self.n2).collect()
    }
}

/// Embed node-local kets into the global layout as a pure global state,
/// with all cavities in vacuum. Errors when a populated configuration
/// exceeds the layout's excitation cap (silent truncation would corrupt
/// normalization).
pub fn embed_global_ket(
    layout: &SpaceLayout,
    node1: &KetVector,
    node2: &KetVector,
) -> Result<KetVector> {
    let part = NodePartition::infer(layout)?;
    if node1.dim() != 1 << part.n1 {
        return Err(Error::DimensionMismatch { left: node1.dim(), right: 1 << part.n1 });
    }
    if node2.dim() != 1 << part.n2 {
        return Err(Error::DimensionMismatch { left: node2.dim(), right: 1 << part.n2 });
    }
    let nonzero = |ket: &KetVector, n: usize| -> Vec<(Vec<u8>, C64)> {
        ket.amplitudes()
            .iter()
            .enumerate()
            .filter(|(_, a)| a.norm() > 0.0)
            .map(|(idx, a)| {
                let cfg: Vec<u8> = (0..n)
                    .map(|b| ((idx >> (n - 1 - b)) & 1) as u8)
                    .collect();
                (cfg, *a)
            })
            .collect()
    };
    let amps1 = nonzero(node1, part.n1);
    let amps2 = nonzero(node2, part.n2);
    let mut global = Array1::<C64>::zeros(layout.dim());
    for (cfg1, a1) in &amps1 {
        for (cfg2, a2) in &amps2 {
            let mut full = Vec::with_capacity(layout.n_subsystems());
            full.extend_from_slice(cfg1);
            full.push(0); // cavity 1 vacuum
            full.extend_from_slice(cfg2);
            full.push(0); // cavity 2 vacuum
            match layout.index_of(&full) {
                Some(idx) => global[idx] = a1 * a2,
                None => {
                    let exc: usize = full.iter().map(|&x| x as usize).sum();
                    return Err(Error::ExcitationExceedsCap {
                        excitation: exc,
                        cap: layout.excitation_cap().unwrap_or(0),
                    });
                }
            }
        }
    }
    KetVector::from_amplitudes(global)
}

/// [`embed_global_ket`] wrapped as a pure density matrix.
pub fn embed_global(
    layout: &SpaceLayout,
    node1: &KetVector,
    node2: &KetVector,
) -> Result<DensityMatrix> {
    Ok(DensityMatrix::pure(&embed_global_ket(layout, node1, node2)?))
}

/// Precomputed partial-trace plan onto a kept subsystem set, expressed in
/// the kept subsystems' sector basis. Building the plan is linear in the
/// parent dimension; applying it per sample costs one pass over each
/// environment-matched index pair.
#[derive(Debug, Clone)]
pub struct ReductionPlan {
    reduced: SpaceLayout,
    /// Environment-matched groups of (global index, reduced index).
    groups: Vec<Vec<(usize, usize)>>,
}

impl ReductionPlan {
    pub fn new(layout: &SpaceLayout, keep: &[usize]) -> Result<Self> {
        if keep.is_empty() {
            return Err(Error::InvalidState(
                "partial trace must keep at least one subsystem".into(),
            ));
        }
        let mut sorted = keep.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != keep.len() {
            return Err(Error::InvalidState("duplicate subsystem in keep set".into()));
        }
        for &k in &sorted {
            if k >= layout.n_subsystems() {
                return Err(Error::SubsystemIndex { index: k, count: layout.n_subsystems() });
            }
        }
        let kept_subs: Vec<_> = sorted.iter().map(|&k| layout.subsystems()[k]).collect();
        let reduced = SpaceLayout::build(kept_subs, layout.excitation_cap())?;
        let keep_mask: Vec<bool> = (0..layout.n_subsystems())
            .map(|i| sorted.binary_search(&i).is_ok())
            .collect();
        let mut by_env: std::collections::HashMap<Vec<u8>, Vec<(usize, usize)>> =
            std::collections::HashMap::new();
        for i in 0..layout.dim() {
            let cfg = layout.config(i);
            let kept: Vec<u8> = sorted.iter().map(|&k| cfg[k]).collect();
            let env: Vec<u8> = cfg
                .iter()
                .enumerate()
                .filter(|(s, _)| !keep_mask[*s])
                .map(|(_, &v)| v)
                .collect();
            let ridx = reduced.index_of(&kept).expect("kept config must be in reduced sector");
            by_env.entry(env).or_default().push((i, ridx));
        }
        let mut keys: Vec<Vec<u8>> = by_env.keys().cloned().collect();
        keys.sort();
        let groups = keys.into_iter().map(|k| by_env.remove(&k).unwrap()).collect();
        Ok(ReductionPlan { reduced, groups })
    }

    pub fn reduced_layout(&self) -> &SpaceLayout {
        &self.reduced
    }

    /// Accumulate the reduced matrix from a parent-space matrix.
    pub fn apply(&self, rho: &Array2<C64>) -> Array2<C64> {
        let mut out = Array2::<C64>::zeros((self.reduced.dim(), self.reduced.dim()));
        for group in &self.groups {
            for &(gi, ri) in group {
                for &(gj, rj) in group {
                    out[[ri, rj]] += rho[[gi, gj]];
                }
            }
        }
        out
    }
}

/// Partial trace onto the kept subsystems, expressed in their sector basis
/// (total occupation capped by the parent layout's cap). Returns the
/// reduced layout alongside the matrix.
pub fn partial_trace_sector(
    rho: &DensityMatrix,
    layout: &SpaceLayout,
    keep: &[usize],
) -> Result<(SpaceLayout, DensityMatrix)> {
    if rho.dim() != layout.dim() {
        return Err(Error::DimensionMismatch { left: rho.dim(), right: layout.dim() });
    }
    let plan = ReductionPlan::new(layout, keep)?;
    let out = plan.apply(rho.matrix());
    Ok((plan.reduced, DensityMatrix::from_matrix_unchecked(out)))
}

/// Embed a sector-basis matrix into the full product basis of the same
/// subsystems (mixed-radix indexing, first subsystem most significant).
/// Entries outside the sector are exactly zero by construction.
pub fn sector_to_product(sector_layout: &SpaceLayout, m: &Array2<C64>) -> Array2<C64> {
    let dims: Vec<usize> = sector_layout.subsystems().iter().map(|s| s.local_dim()).collect();
    let full_dim: usize = dims.iter().product();
    let product_index = |cfg: &[u8]| -> usize {
        cfg.iter().zip(&dims).fold(0usize, |acc, (&n, &d)| acc * d + n as usize)
    };
    let mut out = Array2::<C64>::zeros((full_dim, full_dim));
    for i in 0..sector_layout.dim() {
        let pi = product_index(sector_layout.config(i));
        for j in 0..sector_layout.dim() {
            out[[pi, product_index(sector_layout.config(j))]] = m[[i, j]];
        }
    }
    out
}

/// Restrict a full-product-basis qubit ket to a sector layout over the
/// same qubits. Errors if the ket has weight outside the sector.
pub fn ket_to_sector(sector_layout: &SpaceLayout, ket: &KetVector) -> Result<KetVector> {
    let n = sector_layout.n_subsystems();
    if sector_layout.subsystems().iter().any(|s| s.kind != SubsystemKind::Qubit) {
        return Err(Error::InvalidState("ket_to_sector expects a qubit-only layout".into()));
    }
    if ket.dim() != 1 << n {
        return Err(Error::DimensionMismatch { left: ket.dim(), right: 1 << n });
    }
    let mut amps = Array1::<C64>::zeros(sector_layout.dim());
    let mut captured = 0.0f64;
    for i in 0..sector_layout.dim() {
        let cfg = sector_layout.config(i);
        let idx = cfg.iter().fold(0usize, |acc, &b| acc * 2 + b as usize);
        amps[i] = ket.amplitudes()[idx];
        captured += amps[i].norm_sqr();
    }
    if (captured - 1.0).abs() > 1e-10 {
        return Err(Error::InvalidState(format!(
            "reference state leaks outside the excitation sector (captured norm^2 {captured})"
        )));
    }
    KetVector::from_amplitudes(amps)
}

/// Partial trace onto the kept subsystems, expressed in their full product
/// basis (all occupations up to the local dimension, no sector cap). The
/// sector-basis reduction embeds isometrically, so entries outside the
/// parent's sector are exactly zero.
pub fn partial_trace(
    rho: &DensityMatrix,
    layout: &SpaceLayout,
    keep: &[usize],
) -> Result<DensityMatrix> {
    let (reduced_layout, reduced) = partial_trace_sector(rho, layout, keep)?;
    Ok(DensityMatrix::from_matrix_unchecked(sector_to_product(
        &reduced_layout,
        reduced.matrix(),
    )))
}
