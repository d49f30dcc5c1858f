//! Acceptance suite: every criterion below pins a quantitative target at a
//! fixed tolerance and prints one PASS line when it holds (run with
//! `cargo test --release --test acceptance -- --nocapture` to see them).
//! Criteria are numbered; each runs standalone on a laptop.

use chiral_transport::dynamics::{evolve, evolve_exact, IntegratorSettings};
use chiral_transport::explore::{
    detuning_robustness, distance_scan, loss_scan, optimize_coupling, simulate_transport, sweep,
    DetuningTarget, Metric, ReferenceSpec, RunSpec, SweepAxis, SweepParam, SweepSpec,
};
use chiral_transport::measures::concurrence;
use chiral_transport::model::{build_model, build_model_with_cutoff, NodeConfig};
use chiral_transport::states::{
    embed_global, make_node_state, partial_trace, BellState, NodeStateSpec,
};

const PI: f64 = std::f64::consts::PI;

fn assert_close(what: &str, value: f64, target: f64, tol: f64) {
    assert!(
        (value - target).abs() <= tol,
        "FAIL {what}: {value:.6} not within {target} +/- {tol}"
    );
}

fn w_spec(n: usize, g: f64) -> RunSpec {
    let mut spec = RunSpec::baseline();
    spec.network.node1 = NodeConfig::uniform(n, 0.0, 0.0, g, 0.0);
    spec.network.node2 = NodeConfig::uniform(n, 0.0, 0.0, g, 0.0);
    spec.initial1 = NodeStateSpec::Dicke { n, k: 1 };
    spec.initial2 = NodeStateSpec::Ground { n };
    spec
}

#[test]
fn criterion_01_chiral_bell_transport() {
    let run = simulate_transport(&RunSpec::baseline()).unwrap();
    let c = run.concurrence_peak.unwrap();
    assert_close("node-2 C_max", c.value, 0.91, 0.01);
    assert_close("node-2 F_max", run.fidelity_peak.value, 0.951, 0.005);
    println!(
        "PASS criterion 1: chiral Bell transport C_max = {:.4} (0.91 +/- 0.01), F_max = {:.4} (0.951 +/- 0.005)",
        c.value, run.fidelity_peak.value
    );
}

#[test]
fn criterion_02_nonchiral_baseline() {
    let mut spec = RunSpec::baseline();
    spec.network.gamma_l = 1.0;
    spec.network.k_d = PI;
    let run = simulate_transport(&spec).unwrap();
    let c = run.concurrence_peak.unwrap();
    assert_close("node-2 C_max", c.value, 0.58, 0.02);
    assert_close("node-2 F_max", run.fidelity_peak.value, 0.78, 0.02);
    println!(
        "PASS criterion 2: non-chiral baseline C_max = {:.4} (0.58 +/- 0.02), F_max = {:.4} (0.78 +/- 0.02)",
        c.value, run.fidelity_peak.value
    );
}

#[test]
fn criterion_03_coupling_optimum_on_diagonal() {
    let grid: Vec<f64> = (0..21).map(|i| 0.1 + 0.04 * i as f64).collect();
    let step = 0.04;
    let spec = SweepSpec {
        base: RunSpec::baseline(),
        axes: vec![
            SweepAxis { param: SweepParam::G1, values: grid.clone() },
            SweepAxis { param: SweepParam::G2, values: grid.clone() },
        ],
        metric: Metric::CMax,
        seed: 0,
    };
    let result = sweep(&spec).unwrap();
    assert!(result.point_errors.iter().all(|e| e.is_none()));
    let (rows, cols) = result.shape();
    let mut best = (0usize, 0usize);
    for i in 0..rows {
        for j in 0..cols {
            if result.value_at(i, j) > result.value_at(best.0, best.1) {
                best = (i, j);
            }
        }
    }
    let (g1, g2) = (grid[best.0], grid[best.1]);
    let c_max = result.value_at(best.0, best.1);
    assert!(
        (g1 - g2).abs() <= step + 1e-12,
        "FAIL: maximum off the diagonal: ({g1}, {g2})"
    );
    assert_close("optimal g", g1, 0.30, 0.02);
    assert_close("C_max at optimum", c_max, 0.905, 0.01);
    println!(
        "PASS criterion 3: (g1, g2) sweep maximum at ({g1:.2}, {g2:.2}) with C_max = {c_max:.4} (diagonal, 0.30 +/- 0.02, 0.905 +/- 0.01)"
    );
}

#[test]
fn criterion_04_bell_family_fidelities() {
    let run_state = |state: NodeStateSpec, flip: bool| -> f64 {
        let mut spec = RunSpec::baseline();
        spec.initial1 = state;
        if flip {
            spec.network.node1.couplings = vec![0.3, -0.3];
            spec.network.node2.couplings = vec![0.3, -0.3];
        }
        simulate_transport(&spec).unwrap().fidelity_peak.value
    };
    let phi_plus = run_state(NodeStateSpec::bell(BellState::PhiPlus), false);
    let phi_minus = run_state(NodeStateSpec::bell(BellState::PhiMinus), false);
    let psi_minus_dark = run_state(NodeStateSpec::bell(BellState::PsiMinus), false);
    let psi_minus_flipped = run_state(NodeStateSpec::bell(BellState::PsiMinus), true);
    let ee = run_state(NodeStateSpec::PsiBeta { theta: PI / 2.0, phi: 0.0 }, false);

    assert_close("F_max(Phi+)", phi_plus, 0.954, 0.005);
    assert_close("F_max(Phi-)", phi_minus, 0.954, 0.005);
    assert!(
        psi_minus_dark <= 0.05,
        "FAIL: dark-state Psi- transported with F = {psi_minus_dark}"
    );
    assert_close("F_max(Psi-, sign-flipped)", psi_minus_flipped, 0.951, 0.005);
    assert_close("F_max(|ee>)", ee, 0.88, 0.01);
    println!(
        "PASS criterion 4: Phi+/Phi- = {phi_plus:.4}/{phi_minus:.4} (0.954 +/- 0.005), dark Psi- = {psi_minus_dark:.4} (<= 0.05), flipped Psi- = {psi_minus_flipped:.4} (0.951 +/- 0.005), |ee> = {ee:.4} (0.88 +/- 0.01)"
    );
}

#[test]
fn criterion_05_distance_independence_and_sweet_spot() {
    // chi = 1: C_max at four phases must coincide to 1e-6.
    let four = [0.0, PI / 2.0, PI, 3.0 * PI / 2.0];
    let chi1 = distance_scan(&RunSpec::baseline(), &[1.0], &four).unwrap();
    let row: Vec<f64> = (0..4).map(|j| chi1.value_at(0, j)).collect();
    let spread = row.iter().cloned().fold(f64::MIN, f64::max)
        - row.iter().cloned().fold(f64::MAX, f64::min);
    assert!(
        spread < 1e-6,
        "FAIL: chi = 1 C_max varies by {spread:.2e} across kD"
    );

    // chi in {0, 0.5}: kD = pi attains the grid maximum. The model is
    // exactly invariant under kD -> kD + pi (a rephasing of cavity 2 that
    // leaves vacuum-initialized cavity observables unchanged), so kD = 0
    // ties the maximum; the sweet-spot structure is the rise from kD =
    // pi/2 toward pi.
    let step = PI / 20.0;
    let kd_grid: Vec<f64> = (0..40).map(|k| k as f64 * step).collect();
    let scan = distance_scan(&RunSpec::baseline(), &[0.0, 0.5], &kd_grid).unwrap();
    for (i, chi) in [0.0, 0.5].iter().enumerate() {
        let row: Vec<f64> = (0..kd_grid.len()).map(|j| scan.value_at(i, j)).collect();
        let max = row.iter().cloned().fold(f64::MIN, f64::max);
        let at_pi = row[20];
        assert!(
            (max - at_pi).abs() <= 1e-9,
            "FAIL: chi = {chi}: kD = pi misses the max by {:.2e}",
            max - at_pi
        );
        // Every tied maximizer is equivalent to pi modulo the exact
        // half-period (i.e. sits at 0 or pi up to one grid step).
        for (j, &v) in row.iter().enumerate() {
            if (max - v).abs() <= 1e-9 {
                let kd = kd_grid[j];
                let dist_to_peak = (kd % PI).min(PI - (kd % PI));
                assert!(
                    dist_to_peak <= step + 1e-12,
                    "FAIL: chi = {chi}: unexpected maximizer at kD = {kd}"
                );
            }
        }
        assert!(
            at_pi > row[10] + 0.05,
            "FAIL: chi = {chi}: no sweet-spot rise from pi/2 ({} vs {at_pi})",
            row[10]
        );
    }
    println!(
        "PASS criterion 5: chi = 1 spread {spread:.1e} (< 1e-6); chi in {{0, 0.5}} maxima at kD = pi (exactly degenerate with kD = 0 by the half-period gauge)"
    );
}

#[test]
fn criterion_06_dicke_transport() {
    let w3 = simulate_transport(&{
        let mut s = w_spec(3, 0.248);
        s.initial1 = NodeStateSpec::Dicke { n: 3, k: 1 };
        s
    })
    .unwrap()
    .fidelity_peak
    .value;
    let d32 = simulate_transport(&{
        let mut s = w_spec(3, 0.248);
        s.initial1 = NodeStateSpec::Dicke { n: 3, k: 2 };
        s
    })
    .unwrap()
    .fidelity_peak
    .value;
    let d42 = simulate_transport(&{
        let mut s = w_spec(4, 0.215);
        s.initial1 = NodeStateSpec::Dicke { n: 4, k: 2 };
        s
    })
    .unwrap()
    .fidelity_peak
    .value;
    assert_close("F_max(W_3)", w3, 0.954, 0.005);
    assert_close("F_max(3D2)", d32, 0.905, 0.01);
    assert_close("F_max(4D2)", d42, 0.905, 0.01);
    println!(
        "PASS criterion 6: W_3 = {w3:.4} (0.954 +/- 0.005), 3D2 = {d32:.4}, 4D2 = {d42:.4} (0.905 +/- 0.01)"
    );
}

#[test]
fn criterion_07_scaling_law_and_cross_node_mapping() {
    let settings = IntegratorSettings::default();
    let mut g_opts = std::collections::BTreeMap::new();
    for n in [2usize, 3, 5, 10, 20] {
        let scale = (n as f64).sqrt();
        let result = optimize_coupling(
            n,
            &NodeStateSpec::Dicke { n, k: 1 },
            (0.25 / scale, 0.65 / scale),
            &settings,
        )
        .unwrap();
        let product = scale * result.g_opt;
        assert_close(&format!("sqrt({n}) g_opt"), product, 0.43, 0.02);
        g_opts.insert(n, result.g_opt);
    }

    // W_M -> W_N across unequal nodes, each at its own optimum.
    let mut cross_results = Vec::new();
    for (m, n) in [(2usize, 3usize), (3, 2), (5, 3)] {
        let mut spec = RunSpec::baseline();
        spec.network.node1 = NodeConfig::uniform(m, 0.0, 0.0, g_opts[&m], 0.0);
        spec.network.node2 = NodeConfig::uniform(n, 0.0, 0.0, g_opts[&n], 0.0);
        spec.initial1 = NodeStateSpec::Dicke { n: m, k: 1 };
        spec.initial2 = NodeStateSpec::Ground { n };
        spec.reference = ReferenceSpec::NodeState(NodeStateSpec::Dicke { n, k: 1 });
        let f = simulate_transport(&spec).unwrap().fidelity_peak.value;
        assert_close(&format!("F_max(W_{m} -> W_{n})"), f, 0.954, 0.005);
        cross_results.push(f);
    }
    println!(
        "PASS criterion 7: sqrt(N) g_opt in [0.41, 0.45] for N in {{2,3,5,10,20}} ({:?}); cross-node W_M -> W_N = {:.4}/{:.4}/{:.4} (0.954 +/- 0.005)",
        g_opts.iter().map(|(n, g)| ((*n as f64).sqrt() * g * 1e4).round() / 1e4).collect::<Vec<_>>(),
        cross_results[0], cross_results[1], cross_results[2]
    );
}

#[test]
fn criterion_08_detuning_robustness() {
    let base = w_spec(3, 0.248);
    let clean = detuning_robustness(&base, 0.0, DetuningTarget::Qubit, 3, 11).unwrap();
    for s in &clean.samples {
        assert_eq!(*s, clean.samples[0], "FAIL: delta = 0 samples differ");
    }
    let baseline = clean.samples[0];
    assert_close("W_3 baseline F_max", baseline, 0.954, 0.005);

    let qubit = detuning_robustness(&base, 0.1, DetuningTarget::Qubit, 50, 11).unwrap();
    assert!(
        (qubit.mean - baseline).abs() <= 0.05,
        "FAIL: qubit delta = 0.1 mean {:.4} leaves baseline {:.4} +/- 0.05",
        qubit.mean,
        baseline
    );
    let cavity = detuning_robustness(&base, 0.1, DetuningTarget::Cavity, 50, 11).unwrap();
    assert!(
        cavity.mean >= qubit.mean,
        "FAIL: cavity fluctuations ({:.4}) degrade more than qubit ({:.4})",
        cavity.mean,
        qubit.mean
    );
    println!(
        "PASS criterion 8: delta=0 -> {baseline:.4}; qubit delta=0.1 mean {:.4} (within 0.05); cavity mean {:.4} >= qubit mean",
        qubit.mean, cavity.mean
    );
}

#[test]
fn criterion_09_loss_scan() {
    let gammas = [0.0, 0.02, 0.05, 0.08, 0.1];
    let rows = loss_scan(&RunSpec::baseline(), &gammas, true, (0.15, 0.9)).unwrap();

    // Gamma = 0 recovers the lossless chiral baseline.
    assert_close("chiral F_max at Gamma = 0", rows[0].chiral_f_max, 0.951, 0.005);
    assert_close("chiral g_opt at Gamma = 0", rows[0].chiral_g, 0.30, 0.02);

    // Chiral advantage for each positive Gamma, persisting to 0.1.
    for row in &rows[1..] {
        assert!(
            row.chiral_f_max > row.nonchiral_f_max,
            "FAIL: Gamma = {}: chiral {:.4} not above non-chiral {:.4}",
            row.gamma,
            row.chiral_f_max,
            row.nonchiral_f_max
        );
    }
    // Optimal coupling grows with the decay rate.
    for w in rows.windows(2) {
        assert!(
            w[1].chiral_g >= w[0].chiral_g - 1e-9,
            "FAIL: chiral g_opt decreased: {} -> {} at Gamma = {}",
            w[0].chiral_g,
            w[1].chiral_g,
            w[1].gamma
        );
    }
    println!(
        "PASS criterion 9: Gamma = 0 recovers 0.951; chiral > non-chiral for Gamma in {{0.02, 0.05, 0.08, 0.1}}; g_opt non-decreasing ({:.3} -> {:.3})",
        rows[0].chiral_g,
        rows.last().unwrap().chiral_g
    );
}

#[test]
fn criterion_10_oracle_equivalence() {
    // Family of dim <= 16 models covering chirality, phases, loss and
    // detuning.
    let mut specs: Vec<(&str, RunSpec)> = Vec::new();
    specs.push(("chiral baseline", RunSpec::baseline()));
    let mut nonchiral = RunSpec::baseline();
    nonchiral.network.gamma_l = 1.0;
    nonchiral.network.k_d = PI;
    specs.push(("non-chiral kD = pi", nonchiral));
    let mut partial = RunSpec::baseline();
    partial.network.gamma_l = 1.0 / 3.0;
    partial.network.k_d = 1.1;
    specs.push(("chi = 0.5, kD = 1.1", partial));
    let mut lossy = RunSpec::baseline();
    lossy.network.node1.qubit_decays = vec![0.05; 2];
    lossy.network.node2.qubit_decays = vec![0.05; 2];
    specs.push(("lossy Gamma = 0.05", lossy));
    let mut detuned = RunSpec::baseline();
    detuned.network.node1.qubit_freqs = vec![0.1, -0.07];
    detuned.network.node2.cavity_freq = -0.05;
    specs.push(("detuned", detuned));
    let mut single = RunSpec::baseline();
    single.network.node1 = NodeConfig::uniform(1, 0.0, 0.0, 0.3, 0.0);
    single.network.node2 = NodeConfig::uniform(1, 0.0, 0.0, 0.3, 0.0);
    single.initial1 = NodeStateSpec::Dicke { n: 1, k: 1 };
    single.initial2 = NodeStateSpec::Ground { n: 1 };
    specs.push(("single qubit per node", single));

    let mut checked = 0;
    for (label, spec) in &specs {
        let model = build_model(&spec.network, Some(spec.required_cap())).unwrap();
        assert!(model.dim() <= 16, "{label}: dim {} exceeds 16", model.dim());
        let ket1 = make_node_state(&spec.initial1).unwrap();
        let ket2 = make_node_state(&spec.initial2).unwrap();
        let rho0 = embed_global(&model.layout, &ket1, &ket2).unwrap();
        for t in [1.0, 3.0, 10.0] {
            let exact = evolve_exact(&model, &rho0, t).unwrap();
            let settings = IntegratorSettings { t_max: t, ..Default::default() };
            let traj = evolve(&model, &rho0, &settings).unwrap();
            let rk4 = traj.states.as_ref().unwrap().last().unwrap().matrix().clone();
            let err = (rk4 - exact.matrix())
                .iter()
                .map(|z| z.norm())
                .fold(0.0f64, f64::max);
            assert!(err <= 1e-6, "FAIL {label} at t = {t}: rk4 vs exact {err:.2e}");
            checked += 1;
        }
    }

    // Order-4 convergence on the dim-7 baseline.
    let spec = RunSpec::baseline();
    let model = build_model(&spec.network, Some(1)).unwrap();
    let ket1 = make_node_state(&spec.initial1).unwrap();
    let ket2 = make_node_state(&spec.initial2).unwrap();
    let rho0 = embed_global(&model.layout, &ket1, &ket2).unwrap();
    let exact = evolve_exact(&model, &rho0, 2.0).unwrap();
    let mut errs = Vec::new();
    for dt in [0.04, 0.02] {
        let settings = IntegratorSettings {
            dt,
            t_max: 2.0,
            record_stride: 1,
            trace_tol: 1e-5,
            herm_tol: 1e-7,
            pos_tol: 1e-5,
        };
        let traj = evolve(&model, &rho0, &settings).unwrap();
        let last = traj.states.as_ref().unwrap().last().unwrap().matrix().clone();
        errs.push(
            (last - exact.matrix()).iter().map(|z| z.norm()).fold(0.0f64, f64::max),
        );
    }
    let factor = errs[0] / errs[1];
    assert!(
        (12.0..=20.0).contains(&factor),
        "FAIL: dt halving factor {factor:.1} outside [12, 20]"
    );
    println!(
        "PASS criterion 10: RK4 matches the dense exponential to 1e-6 at t in {{1, 3, 10}} on {checked}/18 model-time pairs; dt halving factor {factor:.1} in [12, 20]"
    );
}

#[test]
fn criterion_11_invariant_suite_and_dark_state() {
    // Representative acceptance runs with stored states: strict trace,
    // Hermiticity, positivity and excitation monotonicity.
    let mut runs: Vec<(&str, RunSpec)> = vec![("chiral baseline", RunSpec::baseline())];
    let mut nonchiral = RunSpec::baseline();
    nonchiral.network.gamma_l = 1.0;
    nonchiral.network.k_d = PI;
    runs.push(("non-chiral", nonchiral));
    let mut lossy = RunSpec::baseline();
    lossy.network.node1.qubit_decays = vec![0.05; 2];
    lossy.network.node2.qubit_decays = vec![0.05; 2];
    runs.push(("lossy", lossy));
    runs.push(("W_3", w_spec(3, 0.248)));

    for (label, spec) in &runs {
        let model = build_model(&spec.network, Some(spec.required_cap())).unwrap();
        let ket1 = make_node_state(&spec.initial1).unwrap();
        let ket2 = make_node_state(&spec.initial2).unwrap();
        let rho0 = embed_global(&model.layout, &ket1, &ket2).unwrap();
        let settings = IntegratorSettings { record_stride: 100, ..Default::default() };
        let traj = evolve(&model, &rho0, &settings).unwrap();
        assert!(
            traj.diagnostics.max_trace_drift <= 1e-8,
            "FAIL {label}: trace drift {}",
            traj.diagnostics.max_trace_drift
        );
        assert!(
            traj.diagnostics.max_hermiticity_defect <= 1e-10,
            "FAIL {label}: hermiticity {}",
            traj.diagnostics.max_hermiticity_defect
        );
        let n_op = model.layout.total_excitation_op();
        let states = traj.states.as_ref().unwrap();
        let mut prev = f64::INFINITY;
        for rho in states {
            assert!(
                rho.min_eigenvalue() >= -1e-8,
                "FAIL {label}: min eigenvalue {}",
                rho.min_eigenvalue()
            );
            let n = n_op.expectation(rho).unwrap().re;
            assert!(n <= prev + 1e-9, "FAIL {label}: excitation rose {prev} -> {n}");
            prev = n;
        }
    }

    // Dark state: node-1 concurrence of Psi- stays 1 to 1e-6 over [0, 20].
    let mut dark = RunSpec::baseline();
    dark.initial1 = NodeStateSpec::bell(BellState::PsiMinus);
    let run = simulate_transport(&dark).unwrap();
    let c1 = run.concurrence_node1.as_ref().unwrap();
    for (i, &c) in c1.iter().enumerate() {
        assert!(
            (c - 1.0).abs() <= 1e-6,
            "FAIL: dark-state node-1 concurrence {c} at sample {i}"
        );
    }
    println!(
        "PASS criterion 11: trace <= 1e-8, hermiticity <= 1e-10, min eig >= -1e-8, <N> non-increasing on 4 runs; dark-state concurrence constant to 1e-6"
    );
}

#[test]
fn criterion_12_sector_full_basis_equivalence() {
    for n in [1usize, 2] {
        let mut spec = RunSpec::baseline();
        spec.network.node1 = NodeConfig::uniform(n, 0.0, 0.0, 0.3, 0.0);
        spec.network.node2 = NodeConfig::uniform(n, 0.0, 0.0, 0.3, 0.0);
        spec.initial1 = NodeStateSpec::Dicke { n, k: 1 };
        spec.initial2 = NodeStateSpec::Ground { n };

        let capped = build_model(&spec.network, Some(1)).unwrap();
        let full = build_model_with_cutoff(&spec.network, None, 1).unwrap();
        let ket1 = make_node_state(&spec.initial1).unwrap();
        let ket2 = make_node_state(&spec.initial2).unwrap();
        let rho0_capped = embed_global(&capped.layout, &ket1, &ket2).unwrap();
        let rho0_full = embed_global(&full.layout, &ket1, &ket2).unwrap();

        let settings = IntegratorSettings { t_max: 10.0, record_stride: 200, ..Default::default() };
        let traj_capped = evolve(&capped, &rho0_capped, &settings).unwrap();
        let traj_full = evolve(&full, &rho0_full, &settings).unwrap();

        // Project each full-basis sample onto the sector basis and compare.
        let project: Vec<usize> = (0..capped.layout.dim())
            .map(|i| full.layout.index_of(capped.layout.config(i)).unwrap())
            .collect();
        let sc = traj_capped.states.as_ref().unwrap();
        let sf = traj_full.states.as_ref().unwrap();
        assert_eq!(sc.len(), sf.len());
        let mut worst = 0.0f64;
        for (rc, rf) in sc.iter().zip(sf) {
            let mf = rf.matrix();
            let mc = rc.matrix();
            for (i, &pi) in project.iter().enumerate() {
                for (j, &pj) in project.iter().enumerate() {
                    worst = worst.max((mc[[i, j]] - mf[[pi, pj]]).norm());
                }
            }
        }
        assert!(
            worst <= 1e-8,
            "FAIL: N = {n}: sector vs full trajectories differ by {worst:.2e}"
        );
    }
    println!("PASS criterion 12: sector-basis trajectories match the full tensor basis to 1e-8 for N = 1, 2 per node");
}

/// Companion check to criterion 11: node-1 concurrence of a transported
/// Bell state starts at 1 and collapses while node 2 rises, and the
/// reduced states stay physical along the way.
#[test]
fn transport_reduces_to_valid_two_qubit_states() {
    let spec = RunSpec::baseline();
    let model = build_model(&spec.network, Some(1)).unwrap();
    let ket1 = make_node_state(&spec.initial1).unwrap();
    let ket2 = make_node_state(&spec.initial2).unwrap();
    let rho0 = embed_global(&model.layout, &ket1, &ket2).unwrap();
    let settings = IntegratorSettings { record_stride: 500, ..Default::default() };
    let traj = evolve(&model, &rho0, &settings).unwrap();
    for rho in traj.states.as_ref().unwrap() {
        let red = partial_trace(rho, &model.layout, &[3, 4]).unwrap();
        assert!((red.trace().re - 1.0).abs() < 1e-9);
        assert!(red.min_eigenvalue() > -1e-9);
        let c = concurrence(&red).unwrap();
        assert!((0.0..=1.0).contains(&c));
    }
}
