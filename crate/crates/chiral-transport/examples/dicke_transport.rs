//! Transport of Dicke states between N-qubit nodes at the couplings used
//! in the multipartite-transport figure.
//!
//! Run with: cargo run --release --example dicke_transport

use chiral_transport::explore::{simulate_transport, ReferenceSpec, RunSpec};
use chiral_transport::model::NodeConfig;
use chiral_transport::states::NodeStateSpec;

fn main() -> chiral_transport::Result<()> {
    let cases = [("W_3", 3usize, 1usize, 0.248), ("3D_2", 3, 2, 0.248), ("4D_2", 4, 2, 0.215)];
    for (label, n, k, g) in cases {
        let mut spec = RunSpec::baseline();
        spec.network.node1 = NodeConfig::uniform(n, 0.0, 0.0, g, 0.0);
        spec.network.node2 = NodeConfig::uniform(n, 0.0, 0.0, g, 0.0);
        spec.initial1 = NodeStateSpec::Dicke { n, k };
        spec.initial2 = NodeStateSpec::Ground { n };
        let run = simulate_transport(&spec)?;
        println!(
            "{label:<6} (g = {g}): F_max = {:.4} at t = {:.2}",
            run.fidelity_peak.value, run.fidelity_peak.t_star
        );
    }

    // A W state also maps across nodes of different sizes when each node
    // sits at its own optimal coupling.
    let (m, n) = (2usize, 3usize);
    let mut spec = RunSpec::baseline();
    spec.network.node1 = NodeConfig::uniform(m, 0.0, 0.0, 0.43 / (m as f64).sqrt(), 0.0);
    spec.network.node2 = NodeConfig::uniform(n, 0.0, 0.0, 0.43 / (n as f64).sqrt(), 0.0);
    spec.initial1 = NodeStateSpec::Dicke { n: m, k: 1 };
    spec.initial2 = NodeStateSpec::Ground { n };
    spec.reference = ReferenceSpec::NodeState(NodeStateSpec::Dicke { n, k: 1 });
    let run = simulate_transport(&spec)?;
    println!("W_{m} -> W_{n} cross-node: F_max = {:.4}", run.fidelity_peak.value);
    Ok(())
}
