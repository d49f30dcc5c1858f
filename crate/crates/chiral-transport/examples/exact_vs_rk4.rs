//! Cross-validation of the fixed-step integrator against the dense
//! superoperator exponential, including the fourth-order convergence
//! factor under step halving.
//!
//! Run with: cargo run --release --example exact_vs_rk4

use chiral_transport::dynamics::{evolve, evolve_exact, IntegratorSettings};
use chiral_transport::explore::RunSpec;
use chiral_transport::model::build_model;
use chiral_transport::states::{embed_global, make_node_state};

fn main() -> chiral_transport::Result<()> {
    let spec = RunSpec::baseline();
    let model = build_model(&spec.network, Some(1))?;
    let ket1 = make_node_state(&spec.initial1)?;
    let ket2 = make_node_state(&spec.initial2)?;
    let rho0 = embed_global(&model.layout, &ket1, &ket2)?;

    for t in [1.0, 3.0, 10.0] {
        let exact = evolve_exact(&model, &rho0, t)?;
        let settings = IntegratorSettings { t_max: t, ..Default::default() };
        let traj = evolve(&model, &rho0, &settings)?;
        let rk4 = traj.states.as_ref().unwrap().last().unwrap();
        let err = max_abs_diff(rk4.matrix(), exact.matrix());
        println!("t = {t:>4}: max |rk4 - exact| = {err:.2e}");
    }

    let exact = evolve_exact(&model, &rho0, 2.0)?;
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
        let traj = evolve(&model, &rho0, &settings)?;
        let rk4 = traj.states.as_ref().unwrap().last().unwrap();
        errs.push(max_abs_diff(rk4.matrix(), exact.matrix()));
    }
    println!(
        "halving dt: error {:.2e} -> {:.2e}, factor {:.1} (expect ~16 for order 4)",
        errs[0],
        errs[1],
        errs[0] / errs[1]
    );
    Ok(())
}

fn max_abs_diff(
    a: &ndarray::Array2<num_complex::Complex64>,
    b: &ndarray::Array2<num_complex::Complex64>,
) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}
