//! Transported fidelity for notable members of the psi_alpha and psi_beta
//! initial-state families: all four Bell states, the dark antisymmetric
//! state with and without the sign-flipped couplings, and |ee>.
//!
//! Run with: cargo run --release --example state_families

use chiral_transport::explore::{simulate_transport, RunSpec};
use chiral_transport::states::{BellState, NodeStateSpec};

fn main() -> chiral_transport::Result<()> {
    let cases: Vec<(&str, NodeStateSpec, bool)> = vec![
        ("Psi+ (psi_alpha theta=pi/4, phi=0)", NodeStateSpec::bell(BellState::PsiPlus), false),
        ("Psi-, equal couplings (dark state)", NodeStateSpec::bell(BellState::PsiMinus), false),
        ("Psi-, sign-flipped couplings", NodeStateSpec::bell(BellState::PsiMinus), true),
        ("Phi+ (psi_beta theta=pi/4, phi=0)", NodeStateSpec::bell(BellState::PhiPlus), false),
        ("Phi-", NodeStateSpec::bell(BellState::PhiMinus), false),
        ("|ee> (psi_beta theta=pi/2)", NodeStateSpec::PsiBeta { theta: std::f64::consts::FRAC_PI_2, phi: 0.0 }, false),
    ];

    for (label, state, flip_couplings) in cases {
        let mut spec = RunSpec::baseline();
        spec.initial1 = state;
        if flip_couplings {
            // pi phase difference between the two couplings in each node
            spec.network.node1.couplings = vec![0.3, -0.3];
            spec.network.node2.couplings = vec![0.3, -0.3];
        }
        let run = simulate_transport(&spec)?;
        println!(
            "{label:<38} F_max = {:.4} at t = {:5.2}",
            run.fidelity_peak.value, run.fidelity_peak.t_star
        );
    }
    Ok(())
}
