//! Command-line interface: every computation in the library as a
//! reproducible, scriptable subcommand emitting CSV or JSON.

mod commands;
mod intervals;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use output::Format;

#[derive(Parser)]
#[command(
    name = "pspin",
    version,
    about = "Spherical p-spin landscape complexity: exact counts, asymptotics, Monte Carlo and enumeration cross-checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Master seed; omitted seeds are generated and printed.
    #[arg(long)]
    seed: Option<u64>,
    /// Output format.
    #[arg(long, default_value = "csv")]
    format: Format,
    /// Output file (stdout when omitted).
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate the complexity curves Theta_p and Theta_{k,p} on a u-grid.
    Curves {
        #[arg(long, default_value_t = 3)]
        p: u32,
        /// Comma-separated Morse indices; empty emits only Theta_p.
        #[arg(long, default_value = "0,1,2")]
        k: String,
        #[arg(long, default_value_t = -3.0, allow_negative_numbers = true)]
        u_min: f64,
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        u_max: f64,
        #[arg(long, default_value_t = 1000)]
        points: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Energy thresholds E_inf, E_k and the three ground-state routes.
    Thresholds {
        /// Comma-separated p values (each >= 3).
        #[arg(long, default_value = "3")]
        p: String,
        #[arg(long, default_value_t = 5)]
        k_max: u32,
        #[command(flatten)]
        common: Common,
    },
    /// Verify the exact counting identity: landscape enumeration vs GOE
    /// Monte Carlo (vs quadrature for the index-summed case). Exits 1 when
    /// the z-score reaches 3.
    VerifyIdentity {
        #[arg(long, default_value_t = 3)]
        p: u32,
        #[arg(long, default_value_t = 3)]
        n: usize,
        /// Morse index; omit to count critical points of any index.
        #[arg(long)]
        k: Option<usize>,
        /// Level set in normalized energy, e.g. "-inf..-1.63" or "-inf..inf".
        #[arg(long, default_value = "-inf..inf", value_parser = intervals::parse_interval_union)]
        b: pspin::IntervalUnion,
        #[arg(long, default_value_t = 1_000_000)]
        n_samples: u64,
        #[arg(long, default_value_t = 2000)]
        n_instances: usize,
        #[command(flatten)]
        common: Common,
    },
    /// TAP complexity along a u-grid at fixed temperature.
    Tap {
        #[arg(long, default_value_t = 3)]
        p: u32,
        #[arg(long)]
        beta: f64,
        #[arg(long, default_value_t = 0)]
        k: u32,
        #[arg(long, allow_negative_numbers = true)]
        u_min: f64,
        /// Defaults to -E_inf(p), the upper end of the domain.
        #[arg(long, allow_negative_numbers = true)]
        u_max: Option<f64>,
        #[arg(long, default_value_t = 200)]
        points: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Sharp asymptotics vs exact quadrature over a list of N.
    Sharp {
        #[arg(long, default_value_t = 3)]
        p: u32,
        #[arg(long, allow_negative_numbers = true)]
        u: f64,
        /// Comma-separated matrix sizes.
        #[arg(long, default_value = "50,100,200")]
        n_list: String,
        #[command(flatten)]
        common: Common,
    },
    /// Large-deviation tail rates of edge eigenvalues vs the rate function.
    GoeLdp {
        #[arg(long, default_value = "20,40")]
        n_list: String,
        #[arg(long, default_value_t = 1)]
        k: u32,
        #[arg(long, default_value_t = 1.5, allow_negative_numbers = true)]
        x_min: f64,
        #[arg(long, default_value_t = 2.0, allow_negative_numbers = true)]
        x_max: f64,
        #[arg(long, default_value_t = 6)]
        points: usize,
        #[arg(long, default_value_t = 100_000)]
        n_samples: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Enumerate the critical points of one sampled landscape instance and
    /// emit the full report.
    Enumerate {
        #[arg(long, default_value_t = 3)]
        p: u32,
        #[arg(long, default_value_t = 3)]
        n: usize,
        /// Instance index within the seed's stream.
        #[arg(long, default_value_t = 0)]
        instance: u64,
        #[command(flatten)]
        common: Common,
    },
}

fn main() -> ExitCode {
    if let Ok(s) = std::env::var("PSPIN_THREADS") {
        if let Ok(threads) = s.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
        }
    }
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Curves { p, k, u_min, u_max, points, common } => {
            commands::curves(p, &k, u_min, u_max, points, &common)
        }
        Command::Thresholds { p, k_max, common } => commands::thresholds(&p, k_max, &common),
        Command::VerifyIdentity { p, n, k, b, n_samples, n_instances, common } => {
            commands::verify_identity(p, n, k, &b, n_samples, n_instances, &common)
        }
        Command::Tap { p, beta, k, u_min, u_max, points, common } => {
            commands::tap(p, beta, k, u_min, u_max, points, &common)
        }
        Command::Sharp { p, u, n_list, common } => commands::sharp(p, u, &n_list, &common),
        Command::GoeLdp { n_list, k, x_min, x_max, points, n_samples, common } => {
            commands::goe_ldp(&n_list, k, x_min, x_max, points, n_samples, &common)
        }
        Command::Enumerate { p, n, instance, common } => {
            commands::enumerate(p, n, instance, &common)
        }
    };
    match outcome {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}
