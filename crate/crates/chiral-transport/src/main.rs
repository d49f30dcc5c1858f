//! Thin command-line front end: one verb per experiment operation, all
//! heavy lifting in the library.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use chiral_transport::cli::{self, Task};
use chiral_transport::Error;

#[derive(Parser)]
#[command(name = "chiral-transport", version, about = "Dissipative entanglement transport through a chiral waveguide")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonArgs {
    /// JSON experiment config.
    #[arg(long)]
    config: PathBuf,
    /// Output directory (overrides the config's `output.dir`).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Seed override for stochastic tasks.
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads for sweeps and scans (default: all cores).
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Run one transport simulation and write the metric series.
    Simulate(CommonArgs),
    /// Run a 1- or 2-axis parameter sweep.
    Sweep(CommonArgs),
    /// Optimize the uniform cavity coupling for a Dicke-state transport.
    Optimize(CommonArgs),
    /// Monte Carlo over random frequency fluctuations.
    Robustness(CommonArgs),
    /// Scan qubit decay rates, chiral vs non-chiral.
    LossScan(CommonArgs),
    /// Reproduce a named figure preset.
    Reproduce {
        /// Figure id: fig1b, fig1c, fig2a, fig2b, fig2c, fig2d, fig3a,
        /// fig3b, fig3c, fig3d, fig4a, fig4b.
        figure: String,
        /// Output directory.
        #[arg(long, default_value = "out")]
        out: PathBuf,
        /// Worker threads (default: all cores).
        #[arg(long)]
        threads: Option<usize>,
    },
}

fn run_task(expected: Task, args: &CommonArgs) -> chiral_transport::Result<Vec<PathBuf>> {
    let text = std::fs::read_to_string(&args.config)?;
    let mut config = cli::parse_config(&text)?;
    if config.task != expected {
        return Err(Error::Config(format!(
            "config task `{}` does not match subcommand `{}`",
            config.task.name(),
            expected.name()
        )));
    }
    if let Some(seed) = args.seed {
        config.seed = seed;
    }
    let out_dir = args.out.clone().unwrap_or_else(|| PathBuf::from(&config.output.dir));
    cli::run(&config, &out_dir)
}

fn with_threads<T>(
    threads: Option<usize>,
    f: impl FnOnce() -> chiral_transport::Result<T> + Send,
) -> chiral_transport::Result<T>
where
    T: Send,
{
    match threads {
        None => f(),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build()
                .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
            pool.install(f)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Simulate(args) => with_threads(args.threads, || run_task(Task::Simulate, args)),
        Command::Sweep(args) => with_threads(args.threads, || run_task(Task::Sweep, args)),
        Command::Optimize(args) => with_threads(args.threads, || run_task(Task::Optimize, args)),
        Command::Robustness(args) => {
            with_threads(args.threads, || run_task(Task::Robustness, args))
        }
        Command::LossScan(args) => with_threads(args.threads, || run_task(Task::LossScan, args)),
        Command::Reproduce { figure, out, threads } => {
            with_threads(*threads, || cli::reproduce(figure, out))
        }
    };
    match outcome {
        Ok(files) => {
            for f in files {
                println!("{}", f.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
