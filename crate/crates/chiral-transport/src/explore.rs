//! Parameter exploration on top of the transport pipeline: sweeps,
//! derivative-free coupling optimization, detuning-robustness Monte Carlo
//! and qubit-loss scans.
//!
//! Every point of a sweep is an independent work item; execution order
//! never affects results, and stochastic axes draw from sample-indexed
//! generators so a run is reproducible under its seed regardless of the
//! worker count.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::dynamics::{integrate, EvolutionDiagnostics, IntegratorSettings};
use crate::error::{Error, Result};
use crate::measures::{concurrence, peak, transport_fidelity_pure, PeakResult};
use crate::model::{build_model, gamma_l_for_chirality, NetworkConfig, NodeConfig};
use crate::states::{
    embed_global, ket_to_sector, make_node_state, sector_to_product, NodePartition,
    NodeStateSpec, ReductionPlan,
};

/// Metric extracted from a transport run at each sweep point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Metric {
    CMax,
    FMax,
}

/// Reference state against which the transported fidelity is computed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReferenceSpec {
    /// The initial node-1 state (pure), as in the Bell-transport figures.
    InitialNode1,
    /// An explicit target-node state, as in cross-node W_M -> W_N mapping.
    NodeState(NodeStateSpec),
}

/// One fully specified transport simulation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunSpec {
    pub network: NetworkConfig,
    pub initial1: NodeStateSpec,
    pub initial2: NodeStateSpec,
    pub reference: ReferenceSpec,
    pub settings: IntegratorSettings,
}

impl RunSpec {
    /// Chiral Bell-state transport at the optimal coupling.
    pub fn baseline() -> Self {
        RunSpec {
            network: NetworkConfig::baseline(),
            initial1: NodeStateSpec::bell(crate::states::BellState::PsiPlus),
            initial2: NodeStateSpec::Ground { n: 2 },
            reference: ReferenceSpec::InitialNode1,
            settings: IntegratorSettings::default(),
        }
    }

    /// Excitation cap needed to hold the initial state exactly.
    pub fn required_cap(&self) -> usize {
        (self.initial1.max_excitation() + self.initial2.max_excitation()).max(1)
    }

    fn validate(&self) -> Result<()> {
        self.network.validate()?;
        self.settings.validate()?;
        if self.initial1.n_qubits() != self.network.node1.n_qubits {
            return Err(Error::InvalidConfig(format!(
                "initial node-1 state is on {} qubits, node has {}",
                self.initial1.n_qubits(),
                self.network.node1.n_qubits
            )));
        }
        if self.initial2.n_qubits() != self.network.node2.n_qubits {
            return Err(Error::InvalidConfig(format!(
                "initial node-2 state is on {} qubits, node has {}",
                self.initial2.n_qubits(),
                self.network.node2.n_qubits
            )));
        }
        let ref_n = match &self.reference {
            ReferenceSpec::InitialNode1 => self.initial1.n_qubits(),
            ReferenceSpec::NodeState(s) => s.n_qubits(),
        };
        if ref_n != self.network.node2.n_qubits {
            return Err(Error::InvalidConfig(format!(
                "fidelity reference is on {ref_n} qubits, target node has {}",
                self.network.node2.n_qubits
            )));
        }
        Ok(())
    }
}

/// Metric series and peaks of one transport run.
#[derive(Debug, Clone)]
pub struct TransportRun {
    pub times: Vec<f64>,
    /// Node-1 concurrence, for two-qubit first nodes.
    pub concurrence_node1: Option<Vec<f64>>,
    /// Node-2 concurrence, for two-qubit second nodes.
    pub concurrence_node2: Option<Vec<f64>>,
    /// Transported fidelity of the node-2 qubits against the reference.
    pub fidelity_node2: Vec<f64>,
    pub concurrence_peak: Option<PeakResult>,
    pub fidelity_peak: PeakResult,
    /// Fidelity sampled at the concurrence grid peak, reported separately
    /// because the figures quote both numbers.
    pub fidelity_at_concurrence_peak: Option<f64>,
    pub diagnostics: EvolutionDiagnostics,
}

impl TransportRun {
    pub fn metric(&self, metric: Metric) -> Result<PeakResult> {
        match metric {
            Metric::FMax => Ok(self.fidelity_peak),
            Metric::CMax => self.concurrence_peak.ok_or_else(|| {
                Error::InvalidConfig("C_max requires a two-qubit target node".into())
            }),
        }
    }
}

/// Run one transport simulation: build the sector-basis model, embed the
/// initial state, integrate, and stream per-sample node metrics.
pub fn simulate_transport(spec: &RunSpec) -> Result<TransportRun> {
    spec.validate()?;
    let cap = spec.required_cap();
    let model = build_model(&spec.network, Some(cap))?;
    let part = NodePartition::infer(&model.layout)?;

    let ket1 = make_node_state(&spec.initial1)?;
    let ket2 = make_node_state(&spec.initial2)?;
    let rho0 = embed_global(&model.layout, &ket1, &ket2)?;

    let plan2 = ReductionPlan::new(&model.layout, &part.node2_qubits())?;
    let reference_full = match &spec.reference {
        ReferenceSpec::InitialNode1 => ket1.clone(),
        ReferenceSpec::NodeState(s) => make_node_state(s)?,
    };
    let reference = ket_to_sector(plan2.reduced_layout(), &reference_full)?;

    let track_c2 = part.n2 == 2;
    let track_c1 = part.n1 == 2;
    let plan1 = if track_c1 {
        Some(ReductionPlan::new(&model.layout, &part.node1_qubits())?)
    } else {
        None
    };

    let mut times = Vec::new();
    let mut c1_series = Vec::new();
    let mut c2_series = Vec::new();
    let mut f_series = Vec::new();

    let diagnostics = integrate(&model, &rho0, &spec.settings, |_, t, rho| {
        times.push(t);
        let red2 = plan2.apply(rho);
        let red2_dm = crate::hilbert::DensityMatrix::from_matrix_unchecked(red2.clone());
        f_series.push(transport_fidelity_pure(&reference, &red2_dm)?);
        if track_c2 {
            let prod = sector_to_product(plan2.reduced_layout(), &red2);
            c2_series.push(concurrence(
                &crate::hilbert::DensityMatrix::from_matrix_unchecked(prod),
            )?);
        }
        if let Some(plan1) = &plan1 {
            let red1 = plan1.apply(rho);
            let prod = sector_to_product(plan1.reduced_layout(), &red1);
            c1_series.push(concurrence(
                &crate::hilbert::DensityMatrix::from_matrix_unchecked(prod),
            )?);
        }
        Ok(())
    })?;

    let fidelity_peak = peak(&times, &f_series)?;
    let (concurrence_peak, fidelity_at_concurrence_peak) = if track_c2 {
        let cp = peak(&times, &c2_series)?;
        let argmax = c2_series
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.partial_cmp(b.1).unwrap())
            .map(|(i, _)| i)
            .unwrap();
        (Some(cp), Some(f_series[argmax]))
    } else {
        (None, None)
    };

    Ok(TransportRun {
        times,
        concurrence_node1: track_c1.then_some(c1_series),
        concurrence_node2: track_c2.then_some(c2_series),
        fidelity_node2: f_series,
        concurrence_peak,
        fidelity_peak,
        fidelity_at_concurrence_peak,
        diagnostics,
    })
}

/// Parameter modified along a sweep axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepParam {
    /// All node-1 couplings.
    G1,
    /// All node-2 couplings.
    G2,
    /// All couplings in both nodes.
    GBoth,
    /// Inter-node phase kD.
    KD,
    /// Left-moving waveguide rate.
    GammaL,
    /// theta of the node-1 superposition family.
    Theta,
    /// phi of the node-1 superposition family.
    Phi,
}

impl SweepParam {
    pub fn name(&self) -> &'static str {
        match self {
            SweepParam::G1 => "g1",
            SweepParam::G2 => "g2",
            SweepParam::GBoth => "g",
            SweepParam::KD => "k_d",
            SweepParam::GammaL => "gamma_l",
            SweepParam::Theta => "theta",
            SweepParam::Phi => "phi",
        }
    }

    fn apply(&self, spec: &mut RunSpec, value: f64) -> Result<()> {
        match self {
            SweepParam::G1 => {
                spec.network.node1.couplings = vec![value; spec.network.node1.n_qubits];
            }
            SweepParam::G2 => {
                spec.network.node2.couplings = vec![value; spec.network.node2.n_qubits];
            }
            SweepParam::GBoth => {
                spec.network.node1.couplings = vec![value; spec.network.node1.n_qubits];
                spec.network.node2.couplings = vec![value; spec.network.node2.n_qubits];
            }
            SweepParam::KD => spec.network.k_d = value,
            SweepParam::GammaL => spec.network.gamma_l = value,
            SweepParam::Theta => match &mut spec.initial1 {
                NodeStateSpec::PsiAlpha { theta, .. } | NodeStateSpec::PsiBeta { theta, .. } => {
                    *theta = value;
                }
                other => {
                    return Err(Error::InvalidConfig(format!(
                        "theta axis requires a psi_alpha/psi_beta initial state, got {other:?}"
                    )))
                }
            },
            SweepParam::Phi => match &mut spec.initial1 {
                NodeStateSpec::PsiAlpha { phi, .. } | NodeStateSpec::PsiBeta { phi, .. } => {
                    *phi = value;
                }
                other => {
                    return Err(Error::InvalidConfig(format!(
                        "phi axis requires a psi_alpha/psi_beta initial state, got {other:?}"
                    )))
                }
            },
        }
        Ok(())
    }
}

/// One sweep axis: a parameter path and its value grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepAxis {
    pub param: SweepParam,
    pub values: Vec<f64>,
}

/// Full sweep specification over one or two axes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub base: RunSpec,
    pub axes: Vec<SweepAxis>,
    pub metric: Metric,
    pub seed: u64,
}

/// Reproducibility record attached to every result.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Provenance {
    pub version: String,
    pub config_sha256: String,
    pub seed: u64,
    pub integrator: IntegratorSettings,
}

impl Provenance {
    pub fn for_spec<T: Serialize>(spec: &T, seed: u64, integrator: IntegratorSettings) -> Self {
        let canonical = serde_json::to_string(spec).expect("spec serialization");
        let digest = Sha256::digest(canonical.as_bytes());
        Provenance {
            version: env!("CARGO_PKG_VERSION").to_string(),
            config_sha256: hex::encode(digest),
            seed,
            integrator,
        }
    }
}

/// Metric table over the axis grid product; row-major with the first axis
/// slowest. Per-point failures are recorded, not fatal.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepResult {
    pub axes: Vec<(String, Vec<f64>)>,
    pub values: Vec<f64>,
    pub peak_times: Vec<f64>,
    pub point_errors: Vec<Option<String>>,
    pub provenance: Provenance,
}

impl SweepResult {
    pub fn shape(&self) -> (usize, usize) {
        match self.axes.len() {
            1 => (self.axes[0].1.len(), 1),
            2 => (self.axes[0].1.len(), self.axes[1].1.len()),
            _ => unreachable!("sweeps have 1-2 axes"),
        }
    }

    pub fn value_at(&self, i: usize, j: usize) -> f64 {
        let (_, cols) = self.shape();
        self.values[i * cols + j]
    }
}

/// Run every grid point of a sweep (in parallel) and tabulate the metric.
pub fn sweep(spec: &SweepSpec) -> Result<SweepResult> {
    if spec.axes.is_empty() || spec.axes.len() > 2 {
        return Err(Error::InvalidConfig("sweep requires 1 or 2 axes".into()));
    }
    for axis in &spec.axes {
        if axis.values.is_empty() || axis.values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "axis {} grid must be nonempty and finite",
                axis.param.name()
            )));
        }
    }
    spec.base.validate()?;

    let rows = spec.axes[0].values.len();
    let cols = spec.axes.get(1).map_or(1, |a| a.values.len());
    let indices: Vec<(usize, usize)> =
        (0..rows).flat_map(|i| (0..cols).map(move |j| (i, j))).collect();

    let outcomes: Vec<(f64, f64, Option<String>)> = indices
        .par_iter()
        .map(|&(i, j)| {
            let mut point = spec.base.clone();
            let mut apply = || -> Result<PeakResult> {
                spec.axes[0].param.apply(&mut point, spec.axes[0].values[i])?;
                if let Some(axis) = spec.axes.get(1) {
                    axis.param.apply(&mut point, axis.values[j])?;
                }
                simulate_transport(&point)?.metric(spec.metric)
            };
            match apply() {
                Ok(p) => (p.value, p.t_star, None),
                Err(e) => (f64::NAN, f64::NAN, Some(e.to_string())),
            }
        })
        .collect();

    let provenance = Provenance::for_spec(spec, spec.seed, spec.base.settings);
    Ok(SweepResult {
        axes: spec
            .axes
            .iter()
            .map(|a| (a.param.name().to_string(), a.values.clone()))
            .collect(),
        values: outcomes.iter().map(|o| o.0).collect(),
        peak_times: outcomes.iter().map(|o| o.1).collect(),
        point_errors: outcomes.into_iter().map(|o| o.2).collect(),
        provenance,
    })
}

/// Distance/chirality scan: C_max of the target node against the
/// inter-node phase kD, one row per chirality value. gamma_L is derived
/// from the chirality with gamma_R fixed at 1.
pub fn distance_scan(
    base: &RunSpec,
    chis: &[f64],
    kd_grid: &[f64],
) -> Result<SweepResult> {
    for &chi in chis {
        gamma_l_for_chirality(chi)?;
    }
    let rows = chis.len();
    let cols = kd_grid.len();
    let indices: Vec<(usize, usize)> =
        (0..rows).flat_map(|i| (0..cols).map(move |j| (i, j))).collect();
    let outcomes: Vec<(f64, f64, Option<String>)> = indices
        .par_iter()
        .map(|&(i, j)| {
            let mut point = base.clone();
            point.network.gamma_l = gamma_l_for_chirality(chis[i]).expect("validated");
            point.network.gamma_r = 1.0;
            point.network.k_d = kd_grid[j];
            match simulate_transport(&point).and_then(|r| r.metric(Metric::CMax)) {
                Ok(p) => (p.value, p.t_star, None),
                Err(e) => (f64::NAN, f64::NAN, Some(e.to_string())),
            }
        })
        .collect();
    let provenance = Provenance::for_spec(&(base, chis, kd_grid), 0, base.settings);
    Ok(SweepResult {
        axes: vec![
            ("chi".to_string(), chis.to_vec()),
            ("k_d".to_string(), kd_grid.to_vec()),
        ],
        values: outcomes.iter().map(|o| o.0).collect(),
        peak_times: outcomes.iter().map(|o| o.1).collect(),
        point_errors: outcomes.into_iter().map(|o| o.2).collect(),
        provenance,
    })
}

/// Set every coupling in both nodes to the same value.
pub fn set_uniform_coupling(spec: &mut RunSpec, g: f64) {
    spec.network.node1.couplings = vec![g; spec.network.node1.n_qubits];
    spec.network.node2.couplings = vec![g; spec.network.node2.n_qubits];
}

/// Result of a 1-D coupling optimization.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OptimizeResult {
    pub g_opt: f64,
    pub f_max: f64,
    /// All (g, F_max) evaluations, coarse scan first.
    pub evaluations: Vec<(f64, f64)>,
    /// False when the coarse scan put the maximum on the bracket boundary,
    /// in which case the boundary point is reported unrefined.
    pub interior: bool,
}

/// Maximize the transported fidelity over a uniform coupling g_1 = g_2 by
/// coarse scan plus golden-section refinement to |delta g| <= 1e-3. A
/// maximum on the bracket boundary is reported with `interior = false`
/// rather than refined.
pub fn optimize_g(spec: &RunSpec, bracket: (f64, f64), coarse_points: usize) -> Result<OptimizeResult> {
    let (lo, hi) = bracket;
    if !(hi > lo) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::InvalidConfig(format!("bad bracket [{lo}, {hi}]")));
    }
    let n = coarse_points.max(3);
    let mut evaluations = Vec::new();
    let objective = |g: f64, evals: &mut Vec<(f64, f64)>| -> Result<f64> {
        let mut point = spec.clone();
        SweepParam::GBoth.apply(&mut point, g)?;
        let f = simulate_transport(&point)?.fidelity_peak.value;
        evals.push((g, f));
        Ok(f)
    };

    // Coarse scan in parallel, then locate the interior maximum.
    let grid: Vec<f64> = (0..n)
        .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
        .collect();
    let coarse: Vec<f64> = grid
        .par_iter()
        .map(|&g| {
            let mut point = spec.clone();
            SweepParam::GBoth.apply(&mut point, g)?;
            Ok(simulate_transport(&point)?.fidelity_peak.value)
        })
        .collect::<Result<Vec<f64>>>()?;
    evaluations.extend(grid.iter().copied().zip(coarse.iter().copied()));
    let best = (0..n).max_by(|&a, &b| coarse[a].partial_cmp(&coarse[b]).unwrap()).unwrap();
    if best == 0 || best == n - 1 {
        return Ok(OptimizeResult {
            g_opt: grid[best],
            f_max: coarse[best],
            evaluations,
            interior: false,
        });
    }

    // Golden-section on the bracketing neighbors.
    let inv_phi = 0.618_033_988_749_894_9_f64;
    let (mut a, mut b) = (grid[best - 1], grid[best + 1]);
    let mut x1 = b - inv_phi * (b - a);
    let mut x2 = a + inv_phi * (b - a);
    let mut f1 = objective(x1, &mut evaluations)?;
    let mut f2 = objective(x2, &mut evaluations)?;
    while b - a > 1e-3 {
        if f1 >= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = objective(x1, &mut evaluations)?;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = objective(x2, &mut evaluations)?;
        }
    }
    let (g_opt, f_max) = if f1 >= f2 { (x1, f1) } else { (x2, f2) };
    Ok(OptimizeResult { g_opt, f_max, evaluations, interior: true })
}

/// Optimal uniform coupling for transporting a Dicke state between
/// identical N-qubit nodes. Errors when the bracket holds no interior
/// maximum (validated by the coarse scan).
pub fn optimize_coupling(
    n_qubits: usize,
    state: &NodeStateSpec,
    bracket: (f64, f64),
    settings: &IntegratorSettings,
) -> Result<OptimizeResult> {
    if state.n_qubits() != n_qubits {
        return Err(Error::InvalidConfig(format!(
            "state is on {} qubits, requested {n_qubits}",
            state.n_qubits()
        )));
    }
    let spec = RunSpec {
        network: NetworkConfig {
            node1: NodeConfig::uniform(n_qubits, 0.0, 0.0, 0.3, 0.0),
            node2: NodeConfig::uniform(n_qubits, 0.0, 0.0, 0.3, 0.0),
            gamma_l: 0.0,
            gamma_r: 1.0,
            k_d: 0.0,
            frame_freq: 0.0,
        },
        initial1: state.clone(),
        initial2: NodeStateSpec::Ground { n: n_qubits },
        reference: ReferenceSpec::InitialNode1,
        settings: *settings,
    };
    let result = optimize_g(&spec, bracket, 9)?;
    if !result.interior {
        return Err(Error::NoInteriorMaximum { lo: bracket.0, hi: bracket.1 });
    }
    Ok(result)
}

/// Which frequencies receive random fluctuations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DetuningTarget {
    Qubit,
    Cavity,
}

/// Statistics of F_max over detuning-fluctuation samples.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RobustnessStats {
    pub delta: f64,
    pub which: DetuningTarget,
    pub mean: f64,
    pub min: f64,
    pub max: f64,
    pub samples: Vec<f64>,
    pub provenance: Provenance,
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Counter-based per-sample seed: independent of worker scheduling.
fn sample_seed(seed: u64, index: u64) -> u64 {
    splitmix64(seed ^ splitmix64(index.wrapping_add(1)))
}

/// Monte Carlo over independent uniform frequency fluctuations in
/// [-delta, delta], drawn per qubit (or per cavity) on both nodes.
/// Deterministic under (seed, sample index) regardless of thread count.
pub fn detuning_robustness(
    base: &RunSpec,
    delta: f64,
    which: DetuningTarget,
    samples: usize,
    seed: u64,
) -> Result<RobustnessStats> {
    if delta < 0.0 || !delta.is_finite() {
        return Err(Error::InvalidConfig(format!("delta {delta} must be >= 0")));
    }
    if samples == 0 {
        return Err(Error::InvalidConfig("samples must be >= 1".into()));
    }
    base.validate()?;
    let values: Vec<f64> = (0..samples)
        .into_par_iter()
        .map(|s| {
            let mut rng = ChaCha8Rng::seed_from_u64(sample_seed(seed, s as u64));
            let draw = |rng: &mut ChaCha8Rng| -> f64 {
                if delta == 0.0 {
                    0.0
                } else {
                    rng.random_range(-delta..=delta)
                }
            };
            let mut point = base.clone();
            match which {
                DetuningTarget::Qubit => {
                    for f in point
                        .network
                        .node1
                        .qubit_freqs
                        .iter_mut()
                        .chain(point.network.node2.qubit_freqs.iter_mut())
                    {
                        *f += draw(&mut rng);
                    }
                }
                DetuningTarget::Cavity => {
                    point.network.node1.cavity_freq += draw(&mut rng);
                    point.network.node2.cavity_freq += draw(&mut rng);
                }
            }
            Ok(simulate_transport(&point)?.fidelity_peak.value)
        })
        .collect::<Result<Vec<f64>>>()?;
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    let min = values.iter().cloned().fold(f64::INFINITY, f64::min);
    let max = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let provenance = Provenance::for_spec(&(base, delta, which, samples), seed, base.settings);
    Ok(RobustnessStats { delta, which, mean, min, max, samples: values, provenance })
}

/// One row of a qubit-loss scan.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LossRow {
    pub gamma: f64,
    pub chiral_g: f64,
    pub chiral_f_max: f64,
    pub nonchiral_g: f64,
    pub nonchiral_f_max: f64,
}

/// Scan of uniform qubit decay Gamma: transported fidelity for the fully
/// chiral network and the non-chiral one at the kD = pi sweet spot,
/// optionally re-optimizing the uniform coupling per point.
pub fn loss_scan(
    base: &RunSpec,
    gammas: &[f64],
    optimize_couplings: bool,
    bracket: (f64, f64),
) -> Result<Vec<LossRow>> {
    for &g in gammas {
        if g < 0.0 || !g.is_finite() {
            return Err(Error::InvalidConfig(format!("qubit decay {g} must be >= 0")));
        }
    }
    gammas
        .par_iter()
        .map(|&gamma| {
            let mut chiral = base.clone();
            chiral.network.gamma_l = 0.0;
            chiral.network.k_d = 0.0;
            let mut nonchiral = base.clone();
            nonchiral.network.gamma_l = 1.0;
            nonchiral.network.k_d = std::f64::consts::PI;
            for spec in [&mut chiral, &mut nonchiral] {
                spec.network.node1.qubit_decays = vec![gamma; spec.network.node1.n_qubits];
                spec.network.node2.qubit_decays = vec![gamma; spec.network.node2.n_qubits];
            }
            let solve = |spec: &RunSpec| -> Result<(f64, f64)> {
                if optimize_couplings {
                    let r = optimize_g(spec, bracket, 9)?;
                    Ok((r.g_opt, r.f_max))
                } else {
                    let g0 = spec.network.node1.couplings[0];
                    Ok((g0, simulate_transport(spec)?.fidelity_peak.value))
                }
            };
            let (cg, cf) = solve(&chiral)?;
            let (ng, nf) = solve(&nonchiral)?;
            Ok(LossRow {
                gamma,
                chiral_g: cg,
                chiral_f_max: cf,
                nonchiral_g: ng,
                nonchiral_f_max: nf,
            })
        })
        .collect()
}
