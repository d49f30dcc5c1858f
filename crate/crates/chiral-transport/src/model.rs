//! Translation of a two-node network description into the effective
//! Hamiltonian and collapse operators of the cascaded master equation.
//!
//! Conventions: rates and frequencies are in units of the right-moving
//! decay rate, time in its inverse; positions enter only through the
//! accumulated phase kD with node 1 at the origin; the frame rotates at
//! `frame_freq` so only detunings appear in the Hamiltonian.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hilbert::{
    lowering_op, number_op, SparseOperator, SpaceLayout, SubsystemSpec,
};
use crate::states::NodePartition;

type C64 = Complex64;

/// One node: N qubits coupled to a single cavity mode.
///
/// `couplings` are signed; flipping the sign of half the couplings within
/// a node implements the pi phase difference that turns the antisymmetric
/// Bell state from a dark state into a transportable one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NodeConfig {
    pub n_qubits: usize,
    pub qubit_freqs: Vec<f64>,
    pub cavity_freq: f64,
    pub couplings: Vec<f64>,
    pub qubit_decays: Vec<f64>,
}

impl NodeConfig {
    /// Identical qubits: shared frequency, coupling and decay rate.
    pub fn uniform(n_qubits: usize, qubit_freq: f64, cavity_freq: f64, g: f64, decay: f64) -> Self {
        NodeConfig {
            n_qubits,
            qubit_freqs: vec![qubit_freq; n_qubits],
            cavity_freq,
            couplings: vec![g; n_qubits],
            qubit_decays: vec![decay; n_qubits],
        }
    }

    fn validate(&self, which: &str) -> Result<()> {
        if self.n_qubits == 0 {
            return Err(Error::InvalidConfig(format!("{which}: n_qubits must be >= 1")));
        }
        for (name, v) in [
            ("qubit_freqs", &self.qubit_freqs),
            ("couplings", &self.couplings),
            ("qubit_decays", &self.qubit_decays),
        ] {
            if v.len() != self.n_qubits {
                return Err(Error::InvalidConfig(format!(
                    "{which}.{name}: expected {} entries, got {}",
                    self.n_qubits,
                    v.len()
                )));
            }
            if v.iter().any(|x| !x.is_finite()) {
                return Err(Error::InvalidConfig(format!("{which}.{name}: nonfinite entry")));
            }
        }
        if !self.cavity_freq.is_finite() {
            return Err(Error::InvalidConfig(format!("{which}.cavity_freq nonfinite")));
        }
        if self.qubit_decays.iter().any(|&g| g < 0.0) {
            return Err(Error::InvalidConfig(format!("{which}.qubit_decays: negative rate")));
        }
        Ok(())
    }
}

/// Full physical description of the two-node network.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NetworkConfig {
    pub node1: NodeConfig,
    pub node2: NodeConfig,
    /// Left-moving waveguide decay rate.
    pub gamma_l: f64,
    /// Right-moving waveguide decay rate (the unit rate in the paper's
    /// parametrization).
    pub gamma_r: f64,
    /// Inter-node phase k|x2 - x1|, in [0, 2 pi).
    pub k_d: f64,
    /// Rotating-frame reference frequency.
    pub frame_freq: f64,
}

impl NetworkConfig {
    /// The baseline network: two identical qubits per node on resonance,
    /// g = 0.3, fully chiral right-moving coupling at unit rate, no qubit
    /// decay, kD = 0.
    pub fn baseline() -> Self {
        NetworkConfig {
            node1: NodeConfig::uniform(2, 0.0, 0.0, 0.3, 0.0),
            node2: NodeConfig::uniform(2, 0.0, 0.0, 0.3, 0.0),
            gamma_l: 0.0,
            gamma_r: 1.0,
            k_d: 0.0,
            frame_freq: 0.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.node1.validate("node1")?;
        self.node2.validate("node2")?;
        if !(self.gamma_l.is_finite() && self.gamma_r.is_finite()) {
            return Err(Error::InvalidConfig("waveguide rates must be finite".into()));
        }
        if self.gamma_l < 0.0 || self.gamma_r < 0.0 {
            return Err(Error::InvalidConfig("waveguide rates must be nonnegative".into()));
        }
        if self.gamma_l + self.gamma_r <= 0.0 {
            return Err(Error::InvalidConfig("gamma_l + gamma_r must be positive".into()));
        }
        if !self.k_d.is_finite() || !(0.0..std::f64::consts::TAU).contains(&self.k_d) {
            return Err(Error::InvalidConfig(format!(
                "k_d = {} outside [0, 2 pi)",
                self.k_d
            )));
        }
        if !self.frame_freq.is_finite() {
            return Err(Error::InvalidConfig("frame_freq must be finite".into()));
        }
        Ok(())
    }

    /// chi = (gamma_R - gamma_L)/(gamma_R + gamma_L) of this network.
    pub fn chirality(&self) -> f64 {
        chirality(self.gamma_l, self.gamma_r).expect("validated config")
    }
}

/// Directional asymmetry chi = (gamma_R - gamma_L)/(gamma_R + gamma_L),
/// in [-1, 1]; 1 is purely right-propagating coupling.
pub fn chirality(gamma_l: f64, gamma_r: f64) -> Result<f64> {
    let total = gamma_l + gamma_r;
    if total <= 0.0 {
        return Err(Error::InvalidConfig(
            "chirality undefined: gamma_l + gamma_r must be positive".into(),
        ));
    }
    Ok((gamma_r - gamma_l) / total)
}

/// For a target chirality in [0, 1] with gamma_R fixed at 1, the left rate
/// gamma_L = (1 - chi)/(1 + chi).
pub fn gamma_l_for_chirality(chi: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&chi) {
        return Err(Error::InvalidConfig(format!("chirality {chi} outside [0, 1]")));
    }
    Ok((1.0 - chi) / (1.0 + chi))
}

/// Assembled Lindblad generator: layout, Hermitian Hamiltonian and
/// collapse operators with their rates folded in as sqrt-prefactors.
#[derive(Debug, Clone)]
pub struct LindbladModel {
    pub layout: SpaceLayout,
    pub hamiltonian: SparseOperator,
    pub collapse_ops: Vec<SparseOperator>,
}

impl LindbladModel {
    pub fn dim(&self) -> usize {
        self.layout.dim()
    }
}

/// Layout for a network: node-1 qubits, cavity 1, node-2 qubits, cavity 2.
pub fn network_layout(
    config: &NetworkConfig,
    excitation_cap: Option<usize>,
    boson_cutoff: usize,
) -> Result<SpaceLayout> {
    let mut subs = vec![SubsystemSpec::qubit(); config.node1.n_qubits];
    subs.push(SubsystemSpec::boson(boson_cutoff));
    subs.extend(vec![SubsystemSpec::qubit(); config.node2.n_qubits]);
    subs.push(SubsystemSpec::boson(boson_cutoff));
    SpaceLayout::build(subs, excitation_cap)
}

fn check_layout(config: &NetworkConfig, layout: &SpaceLayout) -> Result<NodePartition> {
    let part = NodePartition::infer(layout)?;
    if part.n1 != config.node1.n_qubits || part.n2 != config.node2.n_qubits {
        return Err(Error::InvalidConfig(format!(
            "layout holds {}+{} qubits but config specifies {}+{}",
            part.n1, part.n2, config.node1.n_qubits, config.node2.n_qubits
        )));
    }
    Ok(part)
}

/// Effective Hamiltonian in the rotating frame: qubit and cavity detuning
/// terms, Jaynes-Cummings couplings, and the waveguide-mediated cascaded
/// interaction with phase e^{ikD}.
pub fn build_hamiltonian(config: &NetworkConfig, layout: &SpaceLayout) -> Result<SparseOperator> {
    config.validate()?;
    let part = check_layout(config, layout)?;
    let dim = layout.dim();
    let mut h = SparseOperator::zero(dim);

    let mut add = |term: SparseOperator| -> Result<()> {
        h = h.add(&term)?;
        Ok(())
    };

    let nodes = [
        (&config.node1, 0usize, part.cavity1),
        (&config.node2, part.node2_offset, part.cavity2),
    ];
    for (node, offset, cavity) in nodes {
        let a = lowering_op(layout, cavity)?;
        let a_dag = a.adjoint();
        let cav_det = node.cavity_freq - config.frame_freq;
        if cav_det != 0.0 {
            add(number_op(layout, cavity)?.scale(C64::new(cav_det, 0.0)))?;
        }
        for l in 0..node.n_qubits {
            let sigma = lowering_op(layout, offset + l)?;
            let det = node.qubit_freqs[l] - config.frame_freq;
            if det != 0.0 {
                add(number_op(layout, offset + l)?.scale(C64::new(det, 0.0)))?;
            }
            let g = node.couplings[l];
            if g != 0.0 {
                // g (a^dag sigma + sigma^dag a)
                let up = a_dag.mul(&sigma)?;
                let jc = up.add(&up.adjoint())?;
                add(jc.scale(C64::new(g, 0.0)))?;
            }
        }
    }

    // Cascaded terms:
    //   -i gamma_L/2 (e^{ikD} a1^dag a2 - H.c.)
    //   -i gamma_R/2 (e^{ikD} a2^dag a1 - H.c.)
    let a1 = lowering_op(layout, part.cavity1)?;
    let a2 = lowering_op(layout, part.cavity2)?;
    let phase = C64::from_polar(1.0, config.k_d);
    if config.gamma_l != 0.0 {
        let t = a1.adjoint().mul(&a2)?.scale(phase);
        let anti = t.add(&t.adjoint().scale(C64::new(-1.0, 0.0)))?;
        add(anti.scale(C64::new(0.0, -config.gamma_l / 2.0)))?;
    }
    if config.gamma_r != 0.0 {
        let t = a2.adjoint().mul(&a1)?.scale(phase);
        let anti = t.add(&t.adjoint().scale(C64::new(-1.0, 0.0)))?;
        add(anti.scale(C64::new(0.0, -config.gamma_r / 2.0)))?;
    }

    Ok(h)
}

/// Collapse operators with rates folded in: the left- and right-moving
/// waveguide combinations (with node 1 at the origin so only kD appears)
/// and one qubit-decay operator per qubit with a positive rate. Zero-rate
/// operators are omitted.
pub fn build_collapse_ops(
    config: &NetworkConfig,
    layout: &SpaceLayout,
) -> Result<Vec<SparseOperator>> {
    config.validate()?;
    let part = check_layout(config, layout)?;
    let a1 = lowering_op(layout, part.cavity1)?;
    let a2 = lowering_op(layout, part.cavity2)?;
    let mut ops = Vec::new();
    if config.gamma_l > 0.0 {
        // sqrt(gamma_L) (a1 + e^{+ikD} a2)
        let combo = a1.add(&a2.scale(C64::from_polar(1.0, config.k_d)))?;
        ops.push(combo.scale(C64::new(config.gamma_l.sqrt(), 0.0)));
    }
    if config.gamma_r > 0.0 {
        // sqrt(gamma_R) (a1 + e^{-ikD} a2)
        let combo = a1.add(&a2.scale(C64::from_polar(1.0, -config.k_d)))?;
        ops.push(combo.scale(C64::new(config.gamma_r.sqrt(), 0.0)));
    }
    let nodes = [(&config.node1, 0usize), (&config.node2, part.node2_offset)];
    for (node, offset) in nodes {
        for l in 0..node.n_qubits {
            let rate = node.qubit_decays[l];
            if rate > 0.0 {
                ops.push(lowering_op(layout, offset + l)?.scale(C64::new(rate.sqrt(), 0.0)));
            }
        }
    }
    Ok(ops)
}

/// Build the full model with an auto-constructed layout. Boson cutoff
/// defaults to the excitation cap (exact under excitation conservation)
/// or 1 when uncapped.
pub fn build_model(config: &NetworkConfig, excitation_cap: Option<usize>) -> Result<LindbladModel> {
    let cutoff = excitation_cap.unwrap_or(1).max(1);
    build_model_with_cutoff(config, excitation_cap, cutoff)
}

/// [`build_model`] with an explicit boson cutoff, for uncapped validation
/// runs against the full tensor basis.
pub fn build_model_with_cutoff(
    config: &NetworkConfig,
    excitation_cap: Option<usize>,
    boson_cutoff: usize,
) -> Result<LindbladModel> {
    config.validate()?;
    let layout = network_layout(config, excitation_cap, boson_cutoff)?;
    let hamiltonian = build_hamiltonian(config, &layout)?;
    let defect = hamiltonian.hermiticity_defect();
    if defect > 1e-12 {
        return Err(Error::InvalidConfig(format!(
            "hamiltonian hermiticity defect {defect:.3e}"
        )));
    }
    let collapse_ops = build_collapse_ops(config, &layout)?;
    for (k, op) in collapse_ops.iter().enumerate() {
        for (r, c, _) in op.entries() {
            if layout.excitation(r) + 1 != layout.excitation(c) {
                return Err(Error::InvalidConfig(format!(
                    "collapse operator {k} does not strictly lower excitation"
                )));
            }
        }
    }
    Ok(LindbladModel { layout, hamiltonian, collapse_ops })
}
