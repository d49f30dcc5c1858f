//! Map of the transported concurrence against the two cavity couplings,
//! locating the g_1 = g_2 = 0.3 optimum on a coarse grid.
//!
//! Run with: cargo run --release --example coupling_map

use chiral_transport::explore::{sweep, Metric, RunSpec, SweepAxis, SweepParam, SweepSpec};

fn main() -> chiral_transport::Result<()> {
    let grid: Vec<f64> = (0..9).map(|i| 0.1 + 0.1 * i as f64).collect();
    let spec = SweepSpec {
        base: RunSpec::baseline(),
        axes: vec![
            SweepAxis { param: SweepParam::G1, values: grid.clone() },
            SweepAxis { param: SweepParam::G2, values: grid.clone() },
        ],
        metric: Metric::CMax,
        seed: 0,
    };
    let result = sweep(&spec)?;

    println!("C_max over (g1, g2):");
    print!("{:>6}", "");
    for g2 in &grid {
        print!("{g2:>7.2}");
    }
    println!();
    let (rows, cols) = result.shape();
    let mut best = (0, 0);
    for i in 0..rows {
        print!("{:>6.2}", grid[i]);
        for j in 0..cols {
            let v = result.value_at(i, j);
            if v > result.value_at(best.0, best.1) {
                best = (i, j);
            }
            print!("{v:>7.3}");
        }
        println!();
    }
    println!(
        "maximum C_max = {:.4} at g1 = {:.2}, g2 = {:.2}",
        result.value_at(best.0, best.1),
        grid[best.0],
        grid[best.1]
    );
    Ok(())
}
