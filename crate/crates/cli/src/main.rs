//! `stabledge` — exact stability decisions for line bundles on surfaces.
//!
//! Exit codes form a stable contract: 0 stable, 10 strictly semistable,
//! 11 unstable, 2 input error, 3 scan with no ample sample. Machine mode
//! (`--machine`) emits only the documented `key=value` grammar; `scan`
//! always emits CSV.

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod query;
mod render;
mod reproduce;

#[derive(Parser)]
#[command(name = "stabledge", version, about = "Exact dHYM and Bridgeland stability decisions for line bundles on projective surfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide dHYM stability of L against (B, omega) on a surface model
    Dhym(QueryArgs),
    /// Decide Bridgeland stability of L^k under (kB, k*omega)
    Bridgeland(QueryArgs),
    /// Per-curve scaling thresholds, limit flags, and the consistency report
    Profile(QueryArgs),
    /// Sample a parameter line and stream one CSV row per sample
    Scan(ScanArgs),
    /// Re-run the built-in worked instances and assert their exact values
    Reproduce(ReproduceArgs),
}

#[derive(Args)]
pub struct QueryArgs {
    /// Built-in model name (p2, blowup_p2) or path to a model config file
    #[arg(long, value_name = "name|path")]
    pub model: String,

    /// Coefficients of c1(L) in the model basis, comma-separated rationals
    #[arg(long = "L", value_name = "q,...")]
    pub l: String,

    /// B-field coefficients (default: zero)
    #[arg(long = "B", value_name = "q,...")]
    pub b: Option<String>,

    /// Direction omega' of the ample class omega = sqrt(s)*omega'
    #[arg(long, value_name = "q,...")]
    pub omega: String,

    /// Square scale s of omega (default: 1)
    #[arg(long = "scale-sq", value_name = "q", default_value = "1")]
    pub scale_sq: String,

    /// Scaling parameter k (required by bridgeland, optional in scan)
    #[arg(long, value_name = "q")]
    pub k: Option<String>,

    /// Emit machine-readable key=value output
    #[arg(long)]
    pub machine: bool,
}

#[derive(Args)]
pub struct ScanArgs {
    #[command(flatten)]
    pub query: QueryArgs,

    /// Which datum moves: the B-field or the omega direction
    #[arg(long = "scan-axis", value_enum, value_name = "axis")]
    pub scan_axis: ScanAxis,

    /// Direction vector added t times to the moving datum
    #[arg(long = "scan-dir", value_name = "q,...")]
    pub scan_dir: String,

    /// Parameter range t_min:t_max (rationals, t_min < t_max)
    #[arg(long, value_name = "a:b")]
    pub range: String,

    /// Number of samples, endpoints included (>= 2)
    #[arg(long, value_name = "n")]
    pub steps: u64,
}

#[derive(ValueEnum, Clone, Copy)]
pub enum ScanAxis {
    /// B(t) = B + t*dir with omega fixed
    BLine,
    /// omega'(t) = omega' + t*dir with the scale fixed
    OmegaLine,
}

#[derive(Args)]
pub struct ReproduceArgs {
    /// Model standing in for the blown-up plane (default: the built-in)
    #[arg(long, value_name = "name|path", default_value = "blowup_p2")]
    pub model: String,
}

fn main() {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Dhym(args) => commands::cmd_dhym(&args),
        Command::Bridgeland(args) => commands::cmd_bridgeland(&args),
        Command::Profile(args) => commands::cmd_profile(&args),
        Command::Scan(args) => commands::cmd_scan(&args),
        Command::Reproduce(args) => reproduce::cmd_reproduce(&args),
    };
    let code = match outcome {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            2
        }
    };
    std::process::exit(code);
}
