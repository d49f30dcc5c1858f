//! Declarative experiment configs, task runners and figure presets.
//!
//! Configs are JSON documents validated against a strict schema (unknown
//! keys are fatal) with defaults pinned to the baseline transport setup:
//! gamma_R = 1, gamma_L = 0, g = 0.3, resonance, no qubit decay, kD = 0,
//! dt = 1e-3, t_max = 20. Results are written as CSV (series and tables,
//! one-line header, LF endings, 17 significant digits) plus JSON summaries
//! that embed the fully resolved config and a SHA-256 provenance hash, so
//! any output can be re-run exactly.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::dynamics::IntegratorSettings;
use crate::error::{Error, Result};
use crate::explore::{
    self, detuning_robustness, distance_scan, loss_scan, optimize_coupling, simulate_transport,
    sweep, DetuningTarget, Metric, Provenance, ReferenceSpec, RunSpec, SweepAxis, SweepParam,
    SweepSpec, TransportRun,
};
use crate::model::{NetworkConfig, NodeConfig};
use crate::states::NodeStateSpec;

/// Experiment verb; must agree with the CLI subcommand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Task {
    Simulate,
    Sweep,
    Optimize,
    Robustness,
    LossScan,
    Reproduce,
}

impl Task {
    pub fn name(&self) -> &'static str {
        match self {
            Task::Simulate => "simulate",
            Task::Sweep => "sweep",
            Task::Optimize => "optimize",
            Task::Robustness => "robustness",
            Task::LossScan => "loss_scan",
            Task::Reproduce => "reproduce",
        }
    }
}

/// Scalar broadcast over a node's qubits, or an explicit per-qubit list.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarOrVec {
    Scalar(f64),
    PerQubit(Vec<f64>),
}

impl ScalarOrVec {
    fn expand(&self, n: usize, field: &str) -> Result<Vec<f64>> {
        match self {
            ScalarOrVec::Scalar(v) => Ok(vec![*v; n]),
            ScalarOrVec::PerQubit(v) => {
                if v.len() != n {
                    return Err(Error::Config(format!(
                        "{field}: expected {n} entries, got {}",
                        v.len()
                    )));
                }
                Ok(v.clone())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct NodeSection {
    pub n_qubits: usize,
    pub qubit_freqs: ScalarOrVec,
    pub cavity_freq: f64,
    pub couplings: ScalarOrVec,
    pub qubit_decays: ScalarOrVec,
}

impl Default for NodeSection {
    fn default() -> Self {
        NodeSection {
            n_qubits: 2,
            qubit_freqs: ScalarOrVec::Scalar(0.0),
            cavity_freq: 0.0,
            couplings: ScalarOrVec::Scalar(0.3),
            qubit_decays: ScalarOrVec::Scalar(0.0),
        }
    }
}

impl NodeSection {
    fn resolve(&self, which: &str) -> Result<NodeConfig> {
        Ok(NodeConfig {
            n_qubits: self.n_qubits,
            qubit_freqs: self.qubit_freqs.expand(self.n_qubits, &format!("{which}.qubit_freqs"))?,
            cavity_freq: self.cavity_freq,
            couplings: self.couplings.expand(self.n_qubits, &format!("{which}.couplings"))?,
            qubit_decays: self
                .qubit_decays
                .expand(self.n_qubits, &format!("{which}.qubit_decays"))?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct NetworkSection {
    pub gamma_l: f64,
    pub gamma_r: f64,
    pub k_d: f64,
    pub frame_freq: f64,
    pub node1: NodeSection,
    pub node2: NodeSection,
}

impl Default for NetworkSection {
    fn default() -> Self {
        NetworkSection {
            gamma_l: 0.0,
            gamma_r: 1.0,
            k_d: 0.0,
            frame_freq: 0.0,
            node1: NodeSection::default(),
            node2: NodeSection::default(),
        }
    }
}

impl NetworkSection {
    fn resolve(&self) -> Result<NetworkConfig> {
        let cfg = NetworkConfig {
            node1: self.node1.resolve("node1")?,
            node2: self.node2.resolve("node2")?,
            gamma_l: self.gamma_l,
            gamma_r: self.gamma_r,
            k_d: self.k_d,
            frame_freq: self.frame_freq,
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct InitialSection {
    pub node1: NodeStateSpec,
    /// Defaults to the ground state on the target node's qubits.
    pub node2: Option<NodeStateSpec>,
}

impl Default for InitialSection {
    fn default() -> Self {
        InitialSection {
            node1: NodeStateSpec::bell(crate::states::BellState::PsiPlus),
            node2: None,
        }
    }
}

/// Uniform grid, or an explicit value list.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GridSpec {
    Values(Vec<f64>),
    Linspace { start: f64, stop: f64, count: usize },
}

impl GridSpec {
    pub fn materialize(&self) -> Result<Vec<f64>> {
        match self {
            GridSpec::Values(v) => {
                if v.is_empty() {
                    return Err(Error::Config("grid values must be nonempty".into()));
                }
                Ok(v.clone())
            }
            GridSpec::Linspace { start, stop, count } => {
                if *count < 2 {
                    return Err(Error::Config("linspace count must be >= 2".into()));
                }
                Ok((0..*count)
                    .map(|i| start + (stop - start) * i as f64 / (*count - 1) as f64)
                    .collect())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AxisSection {
    pub param: SweepParam,
    pub grid: GridSpec,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSection {
    pub axes: Vec<AxisSection>,
    #[serde(default = "default_metric")]
    pub metric: Metric,
}

fn default_metric() -> Metric {
    Metric::FMax
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OptimizeSection {
    pub n_qubits: usize,
    #[serde(default = "default_dicke_k")]
    pub dicke_k: usize,
    pub bracket: [f64; 2],
}

fn default_dicke_k() -> usize {
    1
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RobustnessSection {
    pub delta: f64,
    pub which: DetuningTarget,
    #[serde(default = "default_samples")]
    pub samples: usize,
}

fn default_samples() -> usize {
    50
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LossScanSection {
    pub gammas: Vec<f64>,
    #[serde(default = "default_true")]
    pub optimize_g: bool,
    #[serde(default = "default_bracket")]
    pub bracket: [f64; 2],
}

fn default_true() -> bool {
    true
}

fn default_bracket() -> [f64; 2] {
    [0.1, 0.9]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OutputSection {
    pub dir: String,
    /// Basename for output files; defaults to the task or figure name.
    pub basename: Option<String>,
}

impl Default for OutputSection {
    fn default() -> Self {
        OutputSection { dir: "out".to_string(), basename: None }
    }
}

fn default_reference() -> ReferenceSpec {
    ReferenceSpec::InitialNode1
}

/// Declarative experiment description; everything beyond `task` defaults
/// to the baseline chiral Bell-transport configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub task: Task,
    #[serde(default)]
    pub network: NetworkSection,
    #[serde(default)]
    pub initial: InitialSection,
    #[serde(default)]
    pub integrator: IntegratorSettings,
    #[serde(default = "default_reference")]
    pub reference: ReferenceSpec,
    #[serde(default)]
    pub sweep: Option<SweepSection>,
    #[serde(default)]
    pub optimize: Option<OptimizeSection>,
    #[serde(default)]
    pub robustness: Option<RobustnessSection>,
    #[serde(default)]
    pub loss_scan: Option<LossScanSection>,
    /// Figure id for the reproduce task.
    #[serde(default)]
    pub figure: Option<String>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub output: OutputSection,
}

impl ExperimentConfig {
    pub fn simulate_default() -> Self {
        ExperimentConfig {
            task: Task::Simulate,
            network: NetworkSection::default(),
            initial: InitialSection::default(),
            integrator: IntegratorSettings::default(),
            reference: default_reference(),
            sweep: None,
            optimize: None,
            robustness: None,
            loss_scan: None,
            figure: None,
            seed: 0,
            output: OutputSection::default(),
        }
    }

    /// Resolve into a concrete transport run (network + initial + reference).
    pub fn to_run_spec(&self) -> Result<RunSpec> {
        let network = self.network.resolve()?;
        let initial2 = self
            .initial
            .node2
            .clone()
            .unwrap_or(NodeStateSpec::Ground { n: network.node2.n_qubits });
        Ok(RunSpec {
            network,
            initial1: self.initial.node1.clone(),
            initial2,
            reference: self.reference.clone(),
            settings: self.integrator,
        })
    }

    fn provenance(&self) -> Provenance {
        Provenance::for_spec(self, self.seed, self.integrator)
    }
}

/// Parse and validate a JSON experiment config. Syntax errors carry the
/// position, schema violations the offending field, and physics violations
/// surface from the resolved model.
pub fn parse_config(text: &str) -> Result<ExperimentConfig> {
    let config: ExperimentConfig =
        serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
    config.integrator.validate().map_err(reclass_config)?;
    // Resolve eagerly so field errors surface at parse time for the tasks
    // that use the network/initial sections.
    match config.task {
        Task::Simulate | Task::Sweep | Task::Robustness | Task::LossScan => {
            config.to_run_spec().map_err(reclass_config)?;
        }
        Task::Optimize => {
            if config.optimize.is_none() {
                return Err(Error::Config("optimize task requires an `optimize` section".into()));
            }
        }
        Task::Reproduce => {
            let fig = config
                .figure
                .as_deref()
                .ok_or_else(|| Error::Config("reproduce task requires `figure`".into()))?;
            parse_figure(fig)?;
        }
    }
    if let Some(sweep) = &config.sweep {
        if sweep.axes.is_empty() || sweep.axes.len() > 2 {
            return Err(Error::Config("sweep requires 1 or 2 axes".into()));
        }
        for axis in &sweep.axes {
            axis.grid.materialize()?;
        }
    }
    Ok(config)
}

/// Physics-level validation failures found while resolving a config are
/// still configuration mistakes from the caller's point of view.
fn reclass_config(e: Error) -> Error {
    match e {
        Error::InvalidConfig(msg) | Error::InvalidState(msg) => Error::Config(msg),
        other => other,
    }
}

fn fmt_f64(v: f64) -> String {
    if v.is_nan() {
        "nan".to_string()
    } else {
        format!("{v:.16e}")
    }
}

fn write_csv(path: &Path, header: &str, rows: &[Vec<f64>]) -> Result<()> {
    let mut text = String::new();
    text.push_str(header);
    text.push('\n');
    for row in rows {
        let line: Vec<String> = row.iter().map(|&v| fmt_f64(v)).collect();
        text.push_str(&line.join(","));
        text.push('\n');
    }
    fs::write(path, text)?;
    Ok(())
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}

#[derive(Serialize)]
struct SimulateSummary<'a> {
    task: &'static str,
    figure: Option<&'a str>,
    c_max: Option<crate::measures::PeakResult>,
    f_max: crate::measures::PeakResult,
    fidelity_at_concurrence_peak: Option<f64>,
    diagnostics: crate::dynamics::EvolutionDiagnostics,
    provenance: Provenance,
    config: &'a ExperimentConfig,
}

fn write_transport_outputs(
    out_dir: &Path,
    base: &str,
    run: &TransportRun,
    config: &ExperimentConfig,
    figure: Option<&str>,
) -> Result<Vec<PathBuf>> {
    let mut header = String::from("t");
    let n = run.times.len();
    let mut columns: Vec<&[f64]> = Vec::new();
    if let Some(c1) = &run.concurrence_node1 {
        header.push_str(",C_node1");
        columns.push(c1);
    }
    if let Some(c2) = &run.concurrence_node2 {
        header.push_str(",C_node2");
        columns.push(c2);
    }
    header.push_str(",F_node2");
    columns.push(&run.fidelity_node2);
    let rows: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            let mut row = vec![run.times[i]];
            row.extend(columns.iter().map(|c| c[i]));
            row
        })
        .collect();
    let series_path = out_dir.join(format!("{base}_series.csv"));
    write_csv(&series_path, &header, &rows)?;

    let summary = SimulateSummary {
        task: config.task.name(),
        figure,
        c_max: run.concurrence_peak,
        f_max: run.fidelity_peak,
        fidelity_at_concurrence_peak: run.fidelity_at_concurrence_peak,
        diagnostics: run.diagnostics,
        provenance: config.provenance(),
        config,
    };
    let summary_path = out_dir.join(format!("{base}_summary.json"));
    write_json(&summary_path, &summary)?;
    Ok(vec![series_path, summary_path])
}

#[derive(Serialize)]
struct SweepSummary<'a> {
    task: &'static str,
    figure: Option<&'a str>,
    axes: Vec<(String, usize)>,
    failed_points: usize,
    provenance: Provenance,
    config: &'a ExperimentConfig,
}

fn write_sweep_outputs(
    out_dir: &Path,
    base: &str,
    result: &explore::SweepResult,
    config: &ExperimentConfig,
    figure: Option<&str>,
    metric_name: &str,
) -> Result<Vec<PathBuf>> {
    let (rows_n, cols_n) = result.shape();
    let mut header = result.axes.iter().map(|(n, _)| n.clone()).collect::<Vec<_>>().join(",");
    write!(header, ",{metric_name},t_star").unwrap();
    let mut rows = Vec::with_capacity(rows_n * cols_n);
    for i in 0..rows_n {
        for j in 0..cols_n {
            let mut row = vec![result.axes[0].1[i]];
            if result.axes.len() == 2 {
                row.push(result.axes[1].1[j]);
            }
            row.push(result.value_at(i, j));
            row.push(result.peak_times[i * cols_n + j]);
            rows.push(row);
        }
    }
    let table_path = out_dir.join(format!("{base}_table.csv"));
    write_csv(&table_path, &header, &rows)?;
    let summary = SweepSummary {
        task: config.task.name(),
        figure,
        axes: result.axes.iter().map(|(n, v)| (n.clone(), v.len())).collect(),
        failed_points: result.point_errors.iter().filter(|e| e.is_some()).count(),
        provenance: config.provenance(),
        config,
    };
    let summary_path = out_dir.join(format!("{base}_summary.json"));
    write_json(&summary_path, &summary)?;
    Ok(vec![table_path, summary_path])
}

/// Run a parsed experiment config, writing outputs under `out_dir`.
/// Returns the paths written.
pub fn run(config: &ExperimentConfig, out_dir: &Path) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(out_dir)?;
    let base_owned;
    let base = match &config.output.basename {
        Some(b) => b.as_str(),
        None => {
            base_owned = config.task.name().to_string();
            &base_owned
        }
    };
    match config.task {
        Task::Simulate => {
            let spec = config.to_run_spec()?;
            let run = simulate_transport(&spec)?;
            write_transport_outputs(out_dir, base, &run, config, config.figure.as_deref())
        }
        Task::Sweep => {
            let section = config
                .sweep
                .as_ref()
                .ok_or_else(|| Error::Config("sweep task requires a `sweep` section".into()))?;
            let axes = section
                .axes
                .iter()
                .map(|a| {
                    Ok(SweepAxis { param: a.param, values: a.grid.materialize()? })
                })
                .collect::<Result<Vec<_>>>()?;
            let spec = SweepSpec {
                base: config.to_run_spec()?,
                axes,
                metric: section.metric,
                seed: config.seed,
            };
            let result = sweep(&spec)?;
            let metric_name = match section.metric {
                Metric::CMax => "C_max",
                Metric::FMax => "F_max",
            };
            write_sweep_outputs(out_dir, base, &result, config, config.figure.as_deref(), metric_name)
        }
        Task::Optimize => {
            let section = config
                .optimize
                .as_ref()
                .ok_or_else(|| Error::Config("optimize task requires an `optimize` section".into()))?;
            let state = NodeStateSpec::Dicke { n: section.n_qubits, k: section.dicke_k };
            let result = optimize_coupling(
                section.n_qubits,
                &state,
                (section.bracket[0], section.bracket[1]),
                &config.integrator,
            )?;
            let evals_path = out_dir.join(format!("{base}_evaluations.csv"));
            write_csv(
                &evals_path,
                "g,F_max",
                &result.evaluations.iter().map(|&(g, f)| vec![g, f]).collect::<Vec<_>>(),
            )?;
            #[derive(Serialize)]
            struct OptimizeSummary<'a> {
                task: &'static str,
                n_qubits: usize,
                dicke_k: usize,
                g_opt: f64,
                f_max: f64,
                sqrt_n_g_opt: f64,
                provenance: Provenance,
                config: &'a ExperimentConfig,
            }
            let summary_path = out_dir.join(format!("{base}_summary.json"));
            write_json(
                &summary_path,
                &OptimizeSummary {
                    task: config.task.name(),
                    n_qubits: section.n_qubits,
                    dicke_k: section.dicke_k,
                    g_opt: result.g_opt,
                    f_max: result.f_max,
                    sqrt_n_g_opt: (section.n_qubits as f64).sqrt() * result.g_opt,
                    provenance: config.provenance(),
                    config,
                },
            )?;
            Ok(vec![evals_path, summary_path])
        }
        Task::Robustness => {
            let section = config.robustness.as_ref().ok_or_else(|| {
                Error::Config("robustness task requires a `robustness` section".into())
            })?;
            let spec = config.to_run_spec()?;
            let stats =
                detuning_robustness(&spec, section.delta, section.which, section.samples, config.seed)?;
            let samples_path = out_dir.join(format!("{base}_samples.csv"));
            write_csv(
                &samples_path,
                "sample,F_max",
                &stats
                    .samples
                    .iter()
                    .enumerate()
                    .map(|(i, &f)| vec![i as f64, f])
                    .collect::<Vec<_>>(),
            )?;
            #[derive(Serialize)]
            struct RobustnessSummary<'a> {
                task: &'static str,
                delta: f64,
                which: DetuningTarget,
                mean: f64,
                min: f64,
                max: f64,
                samples: usize,
                provenance: Provenance,
                config: &'a ExperimentConfig,
            }
            let summary_path = out_dir.join(format!("{base}_summary.json"));
            write_json(
                &summary_path,
                &RobustnessSummary {
                    task: config.task.name(),
                    delta: stats.delta,
                    which: stats.which,
                    mean: stats.mean,
                    min: stats.min,
                    max: stats.max,
                    samples: stats.samples.len(),
                    provenance: config.provenance(),
                    config,
                },
            )?;
            Ok(vec![samples_path, summary_path])
        }
        Task::LossScan => {
            let section = config.loss_scan.as_ref().ok_or_else(|| {
                Error::Config("loss_scan task requires a `loss_scan` section".into())
            })?;
            let spec = config.to_run_spec()?;
            let rows = loss_scan(
                &spec,
                &section.gammas,
                section.optimize_g,
                (section.bracket[0], section.bracket[1]),
            )?;
            let table_path = out_dir.join(format!("{base}_table.csv"));
            write_csv(
                &table_path,
                "Gamma,g_opt_chiral,F_max_chiral,g_opt_nonchiral,F_max_nonchiral",
                &rows
                    .iter()
                    .map(|r| {
                        vec![r.gamma, r.chiral_g, r.chiral_f_max, r.nonchiral_g, r.nonchiral_f_max]
                    })
                    .collect::<Vec<_>>(),
            )?;
            #[derive(Serialize)]
            struct LossSummary<'a> {
                task: &'static str,
                optimize_g: bool,
                rows: usize,
                provenance: Provenance,
                config: &'a ExperimentConfig,
            }
            let summary_path = out_dir.join(format!("{base}_summary.json"));
            write_json(
                &summary_path,
                &LossSummary {
                    task: config.task.name(),
                    optimize_g: section.optimize_g,
                    rows: rows.len(),
                    provenance: config.provenance(),
                    config,
                },
            )?;
            Ok(vec![table_path, summary_path])
        }
        Task::Reproduce => {
            let fig = config
                .figure
                .as_deref()
                .ok_or_else(|| Error::Config("reproduce task requires `figure`".into()))?;
            reproduce(fig, out_dir)
        }
    }
}

/// Figures with pinned presets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FigureId {
    Fig1b,
    Fig1c,
    Fig2a,
    Fig2b,
    Fig2c,
    Fig2d,
    Fig3a,
    Fig3b,
    Fig3c,
    Fig3d,
    Fig4a,
    Fig4b,
}

pub const ALL_FIGURES: [(&str, FigureId); 12] = [
    ("fig1b", FigureId::Fig1b),
    ("fig1c", FigureId::Fig1c),
    ("fig2a", FigureId::Fig2a),
    ("fig2b", FigureId::Fig2b),
    ("fig2c", FigureId::Fig2c),
    ("fig2d", FigureId::Fig2d),
    ("fig3a", FigureId::Fig3a),
    ("fig3b", FigureId::Fig3b),
    ("fig3c", FigureId::Fig3c),
    ("fig3d", FigureId::Fig3d),
    ("fig4a", FigureId::Fig4a),
    ("fig4b", FigureId::Fig4b),
];

pub fn parse_figure(name: &str) -> Result<FigureId> {
    ALL_FIGURES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, id)| *id)
        .ok_or_else(|| Error::UnknownFigure(name.to_string()))
}

fn preset_config(figure: &str) -> ExperimentConfig {
    let mut config = ExperimentConfig::simulate_default();
    config.task = Task::Reproduce;
    config.figure = Some(figure.to_string());
    config.output.basename = Some(figure.to_string());
    config
}

/// Build and run the preset reproducing one figure. Presets hard-code only
/// caption-stated parameters; everything else comes from the baseline
/// defaults and is recorded in the emitted provenance.
pub fn reproduce(figure: &str, out_dir: &Path) -> Result<Vec<PathBuf>> {
    let id = parse_figure(figure)?;
    fs::create_dir_all(out_dir)?;
    let config = preset_config(figure);
    match id {
        FigureId::Fig1b => {
            let spec = config.to_run_spec()?;
            let run = simulate_transport(&spec)?;
            write_transport_outputs(out_dir, figure, &run, &config, Some(figure))
        }
        FigureId::Fig1c => {
            let mut config = config;
            config.network.gamma_l = 1.0;
            config.network.k_d = std::f64::consts::PI;
            let spec = config.to_run_spec()?;
            let run = simulate_transport(&spec)?;
            write_transport_outputs(out_dir, figure, &run, &config, Some(figure))
        }
        FigureId::Fig2a => {
            let grid = GridSpec::Linspace { start: 0.1, stop: 0.9, count: 41 };
            let mut config = config;
            config.sweep = Some(SweepSection {
                axes: vec![
                    AxisSection { param: SweepParam::G1, grid: grid.clone() },
                    AxisSection { param: SweepParam::G2, grid },
                ],
                metric: Metric::CMax,
            });
            let spec = SweepSpec {
                base: config.to_run_spec()?,
                axes: config
                    .sweep
                    .as_ref()
                    .unwrap()
                    .axes
                    .iter()
                    .map(|a| Ok(SweepAxis { param: a.param, values: a.grid.materialize()? }))
                    .collect::<Result<Vec<_>>>()?,
                metric: Metric::CMax,
                seed: 0,
            };
            let result = sweep(&spec)?;
            write_sweep_outputs(out_dir, figure, &result, &config, Some(figure), "C_max")
        }
        FigureId::Fig2b => {
            let spec = config.to_run_spec()?;
            let chis = [1.0, 0.9, 0.5, 0.0];
            let kd_grid: Vec<f64> =
                (0..40).map(|k| k as f64 * std::f64::consts::PI / 20.0).collect();
            let result = distance_scan(&spec, &chis, &kd_grid)?;
            let mut written = Vec::new();
            let (rows, cols) = result.shape();
            for i in 0..rows {
                let chi = chis[i];
                let rows_csv: Vec<Vec<f64>> = (0..cols)
                    .map(|j| vec![kd_grid[j], result.value_at(i, j)])
                    .collect();
                let path = out_dir.join(format!("{figure}_chi{chi:.2}.csv"));
                write_csv(&path, "k_d,C_max", &rows_csv)?;
                written.push(path);
            }
            #[derive(Serialize)]
            struct Fig2bSummary<'a> {
                task: &'static str,
                figure: &'a str,
                chis: Vec<f64>,
                kd_points: usize,
                provenance: Provenance,
                config: &'a ExperimentConfig,
            }
            let summary_path = out_dir.join(format!("{figure}_summary.json"));
            write_json(
                &summary_path,
                &Fig2bSummary {
                    task: "reproduce",
                    figure,
                    chis: chis.to_vec(),
                    kd_points: kd_grid.len(),
                    provenance: config.provenance(),
                    config: &config,
                },
            )?;
            written.push(summary_path);
            Ok(written)
        }
        FigureId::Fig2c => {
            let mut config = config;
            config.initial.node1 =
                NodeStateSpec::PsiAlpha { theta: std::f64::consts::FRAC_PI_4, phi: 0.0 };
            config.sweep = Some(SweepSection {
                axes: vec![
                    AxisSection {
                        param: SweepParam::Theta,
                        grid: GridSpec::Linspace {
                            start: 0.0,
                            stop: std::f64::consts::PI,
                            count: 41,
                        },
                    },
                    AxisSection {
                        param: SweepParam::Phi,
                        grid: GridSpec::Linspace {
                            start: 0.0,
                            stop: std::f64::consts::TAU,
                            count: 41,
                        },
                    },
                ],
                metric: Metric::FMax,
            });
            let axes = config
                .sweep
                .as_ref()
                .unwrap()
                .axes
                .iter()
                .map(|a| Ok(SweepAxis { param: a.param, values: a.grid.materialize()? }))
                .collect::<Result<Vec<_>>>()?;
            let spec = SweepSpec { base: config.to_run_spec()?, axes, metric: Metric::FMax, seed: 0 };
            let result = sweep(&spec)?;
            write_sweep_outputs(out_dir, figure, &result, &config, Some(figure), "F_max")
        }
        FigureId::Fig2d => {
            let mut config = config;
            config.initial.node1 =
                NodeStateSpec::PsiBeta { theta: std::f64::consts::FRAC_PI_4, phi: 0.0 };
            config.sweep = Some(SweepSection {
                axes: vec![
                    AxisSection {
                        param: SweepParam::Theta,
                        grid: GridSpec::Linspace {
                            start: 0.0,
                            stop: std::f64::consts::TAU,
                            count: 41,
                        },
                    },
                    AxisSection {
                        param: SweepParam::Phi,
                        grid: GridSpec::Linspace {
                            start: -std::f64::consts::PI,
                            stop: std::f64::consts::PI,
                            count: 41,
                        },
                    },
                ],
                metric: Metric::FMax,
            });
            let axes = config
                .sweep
                .as_ref()
                .unwrap()
                .axes
                .iter()
                .map(|a| Ok(SweepAxis { param: a.param, values: a.grid.materialize()? }))
                .collect::<Result<Vec<_>>>()?;
            let spec = SweepSpec { base: config.to_run_spec()?, axes, metric: Metric::FMax, seed: 0 };
            let result = sweep(&spec)?;
            write_sweep_outputs(out_dir, figure, &result, &config, Some(figure), "F_max")
        }
        FigureId::Fig3a => {
            // W_3 and 3D2 at g = 0.248, 4D2 at g = 0.215.
            let cases: [(&str, usize, usize, f64); 3] = [
                ("W3", 3, 1, 0.248),
                ("3D2", 3, 2, 0.248),
                ("4D2", 4, 2, 0.215),
            ];
            let mut written = Vec::new();
            let mut peaks = Vec::new();
            for (label, n, k, g) in cases {
                let mut config = preset_config(figure);
                config.network.node1 = NodeSection {
                    n_qubits: n,
                    couplings: ScalarOrVec::Scalar(g),
                    ..NodeSection::default()
                };
                config.network.node2 = config.network.node1.clone();
                config.initial.node1 = NodeStateSpec::Dicke { n, k };
                config.output.basename = Some(format!("{figure}_{label}"));
                let spec = config.to_run_spec()?;
                let run = simulate_transport(&spec)?;
                peaks.push((label.to_string(), run.fidelity_peak));
                written.extend(write_transport_outputs(
                    out_dir,
                    &format!("{figure}_{label}"),
                    &run,
                    &config,
                    Some(figure),
                )?);
            }
            #[derive(Serialize)]
            struct Fig3aSummary {
                task: &'static str,
                figure: String,
                peaks: Vec<(String, crate::measures::PeakResult)>,
            }
            let summary_path = out_dir.join(format!("{figure}_summary.json"));
            write_json(
                &summary_path,
                &Fig3aSummary { task: "reproduce", figure: figure.to_string(), peaks },
            )?;
            written.push(summary_path);
            Ok(written)
        }
        FigureId::Fig3b => {
            let ns = [2usize, 3, 4, 5, 8, 10, 15, 20];
            let settings = IntegratorSettings::default();
            let rows: Vec<Vec<f64>> = ns
                .iter()
                .map(|&n| {
                    let scale = (n as f64).sqrt();
                    let result = optimize_coupling(
                        n,
                        &NodeStateSpec::Dicke { n, k: 1 },
                        (0.25 / scale, 0.65 / scale),
                        &settings,
                    )?;
                    Ok(vec![n as f64, result.g_opt, scale * result.g_opt, result.f_max])
                })
                .collect::<Result<Vec<_>>>()?;
            let table_path = out_dir.join(format!("{figure}_table.csv"));
            write_csv(&table_path, "N,g_opt,sqrtN_gopt,F_max", &rows)?;
            #[derive(Serialize)]
            struct Fig3bSummary<'a> {
                task: &'static str,
                figure: &'a str,
                provenance: Provenance,
                config: &'a ExperimentConfig,
            }
            let summary_path = out_dir.join(format!("{figure}_summary.json"));
            write_json(
                &summary_path,
                &Fig3bSummary {
                    task: "reproduce",
                    figure,
                    provenance: config.provenance(),
                    config: &config,
                },
            )?;
            Ok(vec![table_path, summary_path])
        }
        FigureId::Fig3c | FigureId::Fig3d => {
            let which = if id == FigureId::Fig3c {
                DetuningTarget::Qubit
            } else {
                DetuningTarget::Cavity
            };
            let mut config = config;
            config.network.node1 = NodeSection {
                n_qubits: 3,
                couplings: ScalarOrVec::Scalar(0.248),
                ..NodeSection::default()
            };
            config.network.node2 = config.network.node1.clone();
            config.initial.node1 = NodeStateSpec::Dicke { n: 3, k: 1 };
            config.seed = 7;
            let spec = config.to_run_spec()?;
            let deltas: Vec<f64> = (0..=10).map(|i| 0.02 * i as f64).collect();
            let rows: Vec<Vec<f64>> = deltas
                .iter()
                .map(|&delta| {
                    let stats = detuning_robustness(&spec, delta, which, 50, config.seed)?;
                    Ok(vec![delta, stats.mean, stats.min, stats.max])
                })
                .collect::<Result<Vec<_>>>()?;
            let table_path = out_dir.join(format!("{figure}_table.csv"));
            write_csv(&table_path, "delta,F_max_mean,F_max_min,F_max_max", &rows)?;
            #[derive(Serialize)]
            struct Fig3cdSummary<'a> {
                task: &'static str,
                figure: &'a str,
                which: DetuningTarget,
                samples_per_point: usize,
                provenance: Provenance,
                config: &'a ExperimentConfig,
            }
            let summary_path = out_dir.join(format!("{figure}_summary.json"));
            write_json(
                &summary_path,
                &Fig3cdSummary {
                    task: "reproduce",
                    figure,
                    which,
                    samples_per_point: 50,
                    provenance: config.provenance(),
                    config: &config,
                },
            )?;
            Ok(vec![table_path, summary_path])
        }
        FigureId::Fig4a => {
            // Chiral transport fidelity series for several qubit decay
            // rates at the per-rate optimal coupling.
            let gammas = [0.0, 0.02, 0.05, 0.1];
            let mut series: Vec<Vec<f64>> = Vec::new();
            let mut times: Vec<f64> = Vec::new();
            let mut gopts = Vec::new();
            for &gamma in &gammas {
                let mut spec = config.to_run_spec()?;
                spec.network.node1.qubit_decays = vec![gamma; 2];
                spec.network.node2.qubit_decays = vec![gamma; 2];
                let opt = explore::optimize_g(&spec, (0.15, 0.9), 9)?;
                let mut best = spec.clone();
                explore::set_uniform_coupling(&mut best, opt.g_opt);
                let run = simulate_transport(&best)?;
                times = run.times.clone();
                series.push(run.fidelity_node2.clone());
                gopts.push(opt.g_opt);
            }
            let header = format!(
                "t,{}",
                gammas
                    .iter()
                    .map(|g| format!("F_Gamma{g:.2}"))
                    .collect::<Vec<_>>()
                    .join(",")
            );
            let rows: Vec<Vec<f64>> = (0..times.len())
                .map(|i| {
                    let mut row = vec![times[i]];
                    row.extend(series.iter().map(|s| s[i]));
                    row
                })
                .collect();
            let series_path = out_dir.join(format!("{figure}_series.csv"));
            write_csv(&series_path, &header, &rows)?;
            #[derive(Serialize)]
            struct Fig4aSummary<'a> {
                task: &'static str,
                figure: &'a str,
                gammas: Vec<f64>,
                g_opt: Vec<f64>,
                provenance: Provenance,
                config: &'a ExperimentConfig,
            }
            let summary_path = out_dir.join(format!("{figure}_summary.json"));
            write_json(
                &summary_path,
                &Fig4aSummary {
                    task: "reproduce",
                    figure,
                    gammas: gammas.to_vec(),
                    g_opt: gopts,
                    provenance: config.provenance(),
                    config: &config,
                },
            )?;
            Ok(vec![series_path, summary_path])
        }
        FigureId::Fig4b => {
            let spec = config.to_run_spec()?;
            let gammas: Vec<f64> = (0..=10).map(|i| 0.01 * i as f64).collect();
            let rows = loss_scan(&spec, &gammas, true, (0.1, 0.9))?;
            let table_path = out_dir.join(format!("{figure}_table.csv"));
            write_csv(
                &table_path,
                "Gamma,g_opt_chiral,F_max_chiral,g_opt_nonchiral,F_max_nonchiral",
                &rows
                    .iter()
                    .map(|r| {
                        vec![r.gamma, r.chiral_g, r.chiral_f_max, r.nonchiral_g, r.nonchiral_f_max]
                    })
                    .collect::<Vec<_>>(),
            )?;
            #[derive(Serialize)]
            struct Fig4bSummary<'a> {
                task: &'static str,
                figure: &'a str,
                provenance: Provenance,
                config: &'a ExperimentConfig,
            }
            let summary_path = out_dir.join(format!("{figure}_summary.json"));
            write_json(
                &summary_path,
                &Fig4bSummary {
                    task: "reproduce",
                    figure,
                    provenance: config.provenance(),
                    config: &config,
                },
            )?;
            Ok(vec![table_path, summary_path])
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn task_only_document_yields_baseline() {
        let config = parse_config(r#"{"task": "simulate"}"#).unwrap();
        assert_eq!(config.task, Task::Simulate);
        let spec = config.to_run_spec().unwrap();
        assert_eq!(spec.network, NetworkConfig::baseline());
        assert_eq!(spec.settings, IntegratorSettings::default());
        assert_eq!(
            spec.initial1,
            NodeStateSpec::bell(crate::states::BellState::PsiPlus)
        );
        assert_eq!(spec.initial2, NodeStateSpec::Ground { n: 2 });
    }

    #[test]
    fn out_of_range_kd_rejected() {
        let err = parse_config(r#"{"task": "simulate", "network": {"k_d": 7.0}}"#);
        assert!(matches!(err, Err(Error::Config(_))), "{err:?}");
    }

    #[test]
    fn unknown_keys_fatal() {
        let err = parse_config(r#"{"task": "simulate", "networks": {}}"#);
        assert!(matches!(err, Err(Error::Config(_))));
        let err = parse_config(r#"{"task": "simulate", "network": {"chirality": 1.0}}"#);
        assert!(matches!(err, Err(Error::Config(_))));
    }

    #[test]
    fn syntax_error_reports_position() {
        let err = parse_config("{\"task\": \"simulate\",\n  bad}");
        match err {
            Err(Error::Config(msg)) => {
                assert!(msg.contains("line"), "position missing from: {msg}")
            }
            other => panic!("expected config error, got {other:?}"),
        }
    }

    #[test]
    fn nonchiral_preset_matches_fig1c_caption() {
        let config = parse_config(
            r#"{"task": "simulate",
                "network": {"gamma_l": 1.0, "gamma_r": 1.0, "k_d": 3.141592653589793}}"#,
        )
        .unwrap();
        let spec = config.to_run_spec().unwrap();
        assert_eq!(spec.network.chirality(), 0.0);
        assert_eq!(spec.network.k_d, std::f64::consts::PI);
    }

    #[test]
    fn config_round_trips_through_json() {
        let mut config = ExperimentConfig::simulate_default();
        config.network.node1.couplings = ScalarOrVec::PerQubit(vec![0.3, -0.3]);
        config.seed = 1234;
        config.sweep = Some(SweepSection {
            axes: vec![AxisSection {
                param: SweepParam::GBoth,
                grid: GridSpec::Linspace { start: 0.1, stop: 0.9, count: 5 },
            }],
            metric: Metric::CMax,
        });
        let text = serde_json::to_string_pretty(&config).unwrap();
        let back = parse_config(&text).unwrap();
        assert_eq!(config, back);
    }

    #[test]
    fn per_qubit_length_mismatch_is_config_error() {
        let err = parse_config(
            r#"{"task": "simulate", "network": {"node1": {"couplings": [0.3, 0.3, 0.3]}}}"#,
        );
        assert!(matches!(err, Err(Error::Config(_))));
    }

    #[test]
    fn zero_rate_network_rejected() {
        let err = parse_config(
            r#"{"task": "simulate", "network": {"gamma_l": 0.0, "gamma_r": 0.0}}"#,
        );
        assert!(matches!(err, Err(Error::Config(_))));
    }

    #[test]
    fn figure_ids_parse() {
        for (name, _) in ALL_FIGURES {
            assert!(parse_figure(name).is_ok());
        }
        assert!(matches!(parse_figure("fig9z"), Err(Error::UnknownFigure(_))));
    }
}
