//! Optimal coupling for W-state transport against the node size: the
//! product sqrt(N) * g_opt stays near 0.43 for all N.
//!
//! Run with: cargo run --release --example scaling_law

use chiral_transport::dynamics::IntegratorSettings;
use chiral_transport::explore::optimize_coupling;
use chiral_transport::states::NodeStateSpec;

fn main() -> chiral_transport::Result<()> {
    println!("{:>4} {:>10} {:>14} {:>9}", "N", "g_opt", "sqrt(N)*g_opt", "F_max");
    for n in [2usize, 3, 5, 8] {
        let scale = (n as f64).sqrt();
        let result = optimize_coupling(
            n,
            &NodeStateSpec::Dicke { n, k: 1 },
            (0.25 / scale, 0.65 / scale),
            &IntegratorSettings::default(),
        )?;
        println!(
            "{n:>4} {:>10.4} {:>14.4} {:>9.4}",
            result.g_opt,
            scale * result.g_opt,
            result.f_max
        );
    }
    Ok(())
}
