//! Qubit-loss scan: transported fidelity of the Bell state for increasing
//! spontaneous decay, comparing the chiral network against the non-chiral
//! sweet spot, with per-point coupling re-optimization.
//!
//! Run with: cargo run --release --example qubit_loss

use chiral_transport::explore::{loss_scan, RunSpec};

fn main() -> chiral_transport::Result<()> {
    let gammas = [0.0, 0.02, 0.05, 0.1];
    let rows = loss_scan(&RunSpec::baseline(), &gammas, true, (0.15, 0.9))?;
    println!(
        "{:>7} {:>14} {:>12} {:>16} {:>14}",
        "Gamma", "g_opt(chiral)", "F(chiral)", "g_opt(nonchiral)", "F(nonchiral)"
    );
    for r in &rows {
        println!(
            "{:>7.3} {:>14.3} {:>12.4} {:>16.3} {:>14.4}",
            r.gamma, r.chiral_g, r.chiral_f_max, r.nonchiral_g, r.nonchiral_f_max
        );
    }
    Ok(())
}
