use clap::{Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;
use torus_nielsen_cli::commands;
use torus_nielsen_core::DEFAULT_ENUMERATION_CAP;

/// Exact Nielsen, Reidemeister and minimum coincidence numbers for fiberwise
/// maps between linear torus bundles over a point, a circle, or a sphere.
#[derive(Parser)]
#[command(name = "torus-nielsen", version, about)]
struct Cli {
    /// Emit machine-readable JSON instead of aligned text.
    #[arg(long, global = true)]
    json: bool,

    /// Cap on the torsion order accepted by orbit enumerations.
    #[arg(long, global = true, default_value_t = DEFAULT_ENUMERATION_CAP)]
    cap: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute N, MCC, MC and #R for an instance file.
    Nielsen { file: PathBuf },
    /// Fixed point report for a fiberwise selfmap (`f_star` input).
    FixedPoints { file: PathBuf },
    /// Dump the orbit statistics of the Reidemeister action.
    Orbits { file: PathBuf },
    /// Cross-check the orbit pipeline against the brute force oracle.
    Check {
        /// Instance file to verify; mutually exclusive with --random.
        file: Option<PathBuf>,
        /// Verify this many seeded random instances instead.
        #[arg(long, conflicts_with = "file")]
        random: Option<u64>,
        /// Seed for --random (always printed with the result).
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Corrupt the oracle output to exercise the failure path.
        #[arg(long, hide = true)]
        corrupt_oracle: bool,
    },
    /// Reproduce the Gauss-integer orbit table with minimum numbers.
    GaussTable {
        /// Sweep all k, l with k^2 + l^2 <= 4 * QMAX (at least 1).
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        qmax: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Nielsen { file } => commands::cmd_nielsen(file, cli.cap, cli.json),
        Command::FixedPoints { file } => commands::cmd_fixed_points(file, cli.cap, cli.json),
        Command::Orbits { file } => commands::cmd_orbits(file, cli.cap, cli.json),
        Command::Check {
            file,
            random,
            seed,
            corrupt_oracle,
        } => commands::cmd_check(file.as_deref(), *random, *seed, cli.cap, *corrupt_oracle),
        Command::GaussTable { qmax } => commands::cmd_gauss_table(*qmax, cli.json),
    };
    match result {
        Ok(output) => {
            print!("{output}");
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("{err}");
            ExitCode::from(err.exit_code())
        }
    }
}
