//! Monte Carlo robustness of W_3 transport against random frequency
//! fluctuations, qubit vs cavity.
//!
//! Run with: cargo run --release --example detuning_robustness

use chiral_transport::explore::{
    detuning_robustness, simulate_transport, DetuningTarget, RunSpec,
};
use chiral_transport::model::NodeConfig;
use chiral_transport::states::NodeStateSpec;

fn main() -> chiral_transport::Result<()> {
    let mut base = RunSpec::baseline();
    base.network.node1 = NodeConfig::uniform(3, 0.0, 0.0, 0.248, 0.0);
    base.network.node2 = NodeConfig::uniform(3, 0.0, 0.0, 0.248, 0.0);
    base.initial1 = NodeStateSpec::Dicke { n: 3, k: 1 };
    base.initial2 = NodeStateSpec::Ground { n: 3 };

    let clean = simulate_transport(&base)?.fidelity_peak.value;
    println!("W_3 baseline (no fluctuations): F_max = {clean:.4}");

    let samples = 20;
    let seed = 7;
    for delta in [0.05, 0.1, 0.2] {
        let q = detuning_robustness(&base, delta, DetuningTarget::Qubit, samples, seed)?;
        let c = detuning_robustness(&base, delta, DetuningTarget::Cavity, samples, seed)?;
        println!(
            "delta = {delta:>4}: qubit mean {:.4} [{:.4}, {:.4}]  cavity mean {:.4} [{:.4}, {:.4}]",
            q.mean, q.min, q.max, c.mean, c.min, c.max
        );
    }
    Ok(())
}
