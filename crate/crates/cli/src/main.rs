//! `diagdisc`: diagonal discord calculator and experiment runner.
//!
//! Exit codes: 0 success, 2 degenerate marginal or output, 3 malformed input
//! file, 4 invariant violation, 5 I/O failure, 64 bad command line.

mod commands;
mod error;
mod svg;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use diagdisc::experiments::DEFAULT_SEED;

use error::exit;

#[derive(Parser, Debug)]
#[command(
    name = "diagdisc",
    version,
    about = "Diagonal quantum discord calculations and experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Discord of a state file.
    Discord(DiscordArgs),
    /// Seeded Monte-Carlo experiments; writes CSV (and optionally SVG) files.
    Experiment {
        #[command(subcommand)]
        which: ExperimentCmd,
    },
    /// Tests a channel file against the eigenbasis-dephasing map.
    Classify(ClassifyArgs),
    /// Draws random states and prints them in the state file format.
    Sample {
        #[command(subcommand)]
        which: SampleCmd,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum DiscordMode {
    /// S(π_A(ρ)) - S(ρ).
    Diagonal,
    /// Two-qubit discord optimized over projective measurements.
    Optimized,
    /// Schatten-p distance to π_A(ρ).
    Generalized,
    /// Dephasing of several parties of a multipartite state.
    Multi,
}

#[derive(Args, Debug)]
struct DiscordArgs {
    state_file: PathBuf,
    #[arg(long, value_enum, default_value_t = DiscordMode::Diagonal)]
    mode: DiscordMode,
    /// Schatten exponent for `--mode generalized` (`inf` for the operator norm).
    #[arg(long, default_value_t = 2.0)]
    p: f64,
    /// Parties to dephase for `--mode multi`; all parties if omitted.
    #[arg(long, value_delimiter = ',')]
    parties: Vec<usize>,
    /// Minimize over bases of degenerate 2-dimensional eigenspaces instead of failing.
    #[arg(long)]
    optimize_degenerate: bool,
}

#[derive(Args, Debug, Clone)]
struct RunArgs {
    #[arg(long, env = "DD_SEED", default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Worker threads; results do not depend on this.
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long, default_value = ".")]
    output_dir: PathBuf,
    /// Also write an SVG scatter plot.
    #[arg(long)]
    svg: bool,
}

#[derive(Subcommand, Debug)]
enum ExperimentCmd {
    /// Diagonal discord before and after a local channel on A.
    Monotonicity {
        /// Built-in qubit channel name.
        #[arg(long, default_value = "fig2a", conflicts_with = "channel_file")]
        channel: String,
        #[arg(long)]
        channel_file: Option<PathBuf>,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 2)]
        dim_b: usize,
        /// Rank of the random inputs; full rank if omitted.
        #[arg(long)]
        rank: Option<usize>,
        /// Increases above this count as violations.
        #[arg(long, default_value_t = diagdisc::experiments::MONOTONICITY_TOL)]
        tol_violation: f64,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Optimized versus diagonal discord on random symmetric X-states.
    Xstate {
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        /// Differences at or below this count as matches.
        #[arg(long, default_value_t = 1e-6)]
        tol_equality: f64,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Discord changes under small perturbations against the continuity bounds.
    Continuity {
        #[arg(long, num_args = 2, value_names = ["D_A", "D_B"], default_values_t = [2, 2])]
        dims: Vec<usize>,
        #[arg(long, num_args = 1.., default_values_t = [1e-3, 1e-4])]
        eps: Vec<f64>,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 2.0)]
        schatten_p: f64,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Random channels of each class tested against the dephasing map.
    ClassifySweep {
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long, default_value_t = 20)]
        per_class: usize,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, default_value_t = 3)]
        mu_terms: usize,
        #[command(flatten)]
        run: RunArgs,
    },
}

#[derive(Args, Debug)]
struct ClassifyArgs {
    /// Channel file; use `--builtin` for named qubit channels instead.
    #[arg(required_unless_present = "builtin")]
    channel_file: Option<PathBuf>,
    #[arg(long, conflicts_with = "channel_file")]
    builtin: Option<String>,
    #[arg(long, default_value_t = 200)]
    trials: usize,
    #[arg(long, env = "DD_SEED", default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Witness states are written here.
    #[arg(long, default_value = ".")]
    output_dir: PathBuf,
    /// Deviations at or below this count as agreement.
    #[arg(long, default_value_t = diagdisc::channels::COMMUTING_TOL)]
    tol_commuting: f64,
    /// Deviations at or above this count as violations.
    #[arg(long, default_value_t = diagdisc::channels::VIOLATION_TOL)]
    tol_violation: f64,
}

#[derive(Args, Debug)]
struct SampleArgs {
    #[arg(long, default_value_t = 1)]
    count: usize,
    #[arg(long, env = "DD_SEED", default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Write `<kind>_NNNN.state` files here instead of printing.
    #[arg(long)]
    output_dir: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum SampleCmd {
    /// Symmetric two-qubit X-states.
    Xstate {
        #[command(flatten)]
        common: SampleArgs,
    },
    /// Hilbert-Schmidt random bipartite states.
    Random {
        #[arg(long, num_args = 2, value_names = ["D_A", "D_B"], default_values_t = [2, 2])]
        dims: Vec<usize>,
        /// Full rank if omitted.
        #[arg(long)]
        rank: Option<usize>,
        /// Minimum eigenvalue gap of the A marginal.
        #[arg(long, default_value_t = 0.0)]
        min_gap: f64,
        #[command(flatten)]
        common: SampleArgs,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() {
                exit::USAGE
            } else {
                exit::OK
            });
        }
    };
    match commands::run(cli.command) {
        Ok(()) => ExitCode::from(exit::OK),
        Err(e) if e.is_broken_pipe() => ExitCode::from(exit::OK),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
