mod commands;

use clap::{Parser, Subcommand, ValueEnum};
use std::process::ExitCode;
use wallcross_core::Error;

/// Exact wall-crossing computations and identity checks.
#[derive(Parser, Debug)]
#[command(name = "wallcross", version)]
struct Cli {
    /// Refuse truncations whose coefficient count (cone points times rank) exceeds this.
    #[arg(long, global = true, default_value_t = 20_000)]
    max_coeffs: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Quantum dilogarithm identities to a total degree.
    Identities {
        #[arg(long, default_value_t = 12)]
        deg: u32,
    },
    /// DT invariants of the k-Kronecker quiver up to total degree N.
    Kronecker {
        #[arg(long)]
        k: i64,
        #[arg(long)]
        deg: u32,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Work in the quantum torus and report Ω_q(v).
        #[arg(long)]
        quantum: bool,
    },
    /// Checks for the diagonal series F_k.
    Fk {
        #[arg(long)]
        k: u64,
        #[arg(long, default_value_t = 20)]
        deg: usize,
        #[arg(long, default_value_t = 12)]
        exp_deg: usize,
    },
    /// Invariants of the m-loop quiver and the series G_m.
    Loops {
        #[arg(long)]
        m: u64,
        #[arg(long, default_value_t = 12)]
        deg: usize,
    },
    /// D0-D6 bound states against M(-t)^chi.
    Macmahon {
        #[arg(long, allow_hyphen_values = true)]
        chi: i64,
        #[arg(long, default_value_t = 6)]
        deg: u32,
    },
    /// Mutates a quiver and its class basis at one vertex.
    Mutate {
        /// A name (kronecker-K, a2, path3) or a JSON file {"arrows": [[...]]}.
        #[arg(long)]
        quiver: String,
        #[arg(long)]
        vertex: usize,
    },
    /// Quantum and classical checks of the cluster transformation of a mutation.
    ClusterCheck {
        #[arg(long)]
        quiver: String,
        #[arg(long)]
        vertex: usize,
        #[arg(long, default_value_t = 8)]
        deg: u32,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 11)]
        seed: u64,
    },
    /// Hall algebra identity for a finite-dimensional algebra over F_p.
    Hall {
        /// JSON file {"p", "m", "relations", "nilpotent"}.
        #[arg(long)]
        spec: String,
        #[arg(long)]
        deg: usize,
        /// Maximum number of matrix tuples to enumerate per dimension.
        #[arg(long, default_value_t = wallcross_core::hall::DEFAULT_BUDGET)]
        budget: u128,
    },
    /// Transports gl(n) stability data along a path of configurations.
    Gln {
        #[arg(long)]
        config: String,
    },
    /// Transports torus stability data between two central charges.
    Transport {
        #[arg(long)]
        config: String,
    },
    /// Lists the named scenarios.
    Scenarios,
    /// Runs a named scenario.
    Run {
        name: String,
        /// JSON object overriding scenario parameters.
        #[arg(long)]
        params: Option<String>,
        /// Write the report here instead of standard output.
        #[arg(long)]
        out: Option<String>,
        /// Print the elapsed time and budget on standard error.
        #[arg(long)]
        timing: bool,
    },
}

/// Exit status of a command that ran to completion.
pub enum Status {
    Ok,
    Failed,
}

fn usage_error(e: &Error) -> bool {
    matches!(
        e,
        Error::Input(_) | Error::BudgetExceeded { .. } | Error::DimensionMismatch { .. } | Error::InvalidTruncation(_)
    )
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Ok(s) = std::env::var("WALLCROSS_THREADS") {
        match s.parse::<usize>() {
            Ok(n) if n > 0 => {
                if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
                    eprintln!("wallcross: {e}");
                }
            }
            _ => {
                eprintln!("wallcross: WALLCROSS_THREADS must be a positive integer");
                return ExitCode::from(2);
            }
        }
    }
    match commands::dispatch(cli.command, cli.max_coeffs) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::Failed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("wallcross: {e}");
            ExitCode::from(if usage_error(&e) { 2 } else { 1 })
        }
    }
}
