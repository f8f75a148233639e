use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod commands;
mod error;
mod report;

use error::CliError;

/// Experiments on Z² configurations, clusters and torus tilings.
///
/// Every command prints a short human summary followed by one JSON line
/// holding the full report. Exit status: 0 verified, 1 property refuted,
/// 2 usage or parse error.
#[derive(Parser, Debug)]
#[command(name = "latcfg", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Direction set of a cluster file.
    Dirset { cluster: PathBuf },
    /// Check a torus tiling file against a cluster.
    Verify { cluster: PathBuf, tiling: PathBuf },
    /// List every tiling of an MX×MY torus by a cluster.
    Enumerate {
        cluster: PathBuf,
        #[arg(long, num_args = 2, value_names = ["MX", "MY"], required = true)]
        torus: Vec<i64>,
        /// Worker threads for the search.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Check that a tiling by F is also a tiling by αF.
    Dilate {
        cluster: PathBuf,
        tiling: PathBuf,
        #[arg(long, value_delimiter = ',', required = true, allow_negative_numbers = true)]
        alpha: Vec<i64>,
    },
    /// Certify that a polynomial annihilates a configuration.
    Annihilate {
        config: PathBuf,
        poly: PathBuf,
        #[command(flatten)]
        window: WindowArg,
    },
    /// Split an order-2 binary configuration into two 1-periodic parts.
    Split2 {
        config: PathBuf,
        #[arg(long)]
        n: i64,
        #[command(flatten)]
        window: WindowArg,
        /// Where `vertical.cfg` and `horizontal.cfg` are written.
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
    /// Rectangle and order report for a cluster of prime-square size.
    PrimeSquare { cluster: PathBuf },
    /// Write a configuration file.
    Generate {
        #[command(subcommand)]
        kind: GenerateKind,
    },
}

#[derive(Subcommand, Debug)]
enum GenerateKind {
    /// Sturmian difference configuration for α = (p + q√d) / r.
    #[command(allow_negative_numbers = true)]
    Sturmian {
        p: i64,
        q: i64,
        d: i64,
        r: i64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Product of two seeded random bit sequences. The seed defaults to
    /// `LATCFG_SEED`, then 0.
    Random {
        #[arg(long, allow_negative_numbers = true)]
        seed: Option<i64>,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args, Debug)]
struct WindowArg {
    /// Inclusive bounds; defaults to [-50,50]x[-50,50].
    #[arg(long, num_args = 4, value_names = ["X0", "Y0", "X1", "Y1"], allow_negative_numbers = true)]
    window: Option<Vec<i64>>,
}

impl WindowArg {
    fn rect(&self) -> Result<latcfg::Rect, CliError> {
        match &self.window {
            None => Ok(latcfg::Rect::centered(50)),
            Some(v) => latcfg::Rect::new(v[0], v[1], v[2], v[3]).map_err(|e| CliError::Usage(e.to_string())),
        }
    }
}

fn run(cli: Cli) -> Result<report::Outcome, CliError> {
    match cli.command {
        Command::Dirset { cluster } => commands::dirset(&cluster),
        Command::Verify { cluster, tiling } => commands::verify(&cluster, &tiling),
        Command::Enumerate { cluster, torus, jobs } => commands::enumerate(&cluster, torus[0], torus[1], jobs),
        Command::Dilate { cluster, tiling, alpha } => commands::dilate(&cluster, &tiling, &alpha),
        Command::Annihilate { config, poly, window } => commands::annihilate(&config, &poly, &window.rect()?),
        Command::Split2 { config, n, window, out_dir } => commands::split2(&config, n, &window.rect()?, &out_dir),
        Command::PrimeSquare { cluster } => commands::prime_square(&cluster),
        Command::Generate { kind } => match kind {
            GenerateKind::Sturmian { p, q, d, r, out } => commands::generate_sturmian(p, q, d, r, &out),
            GenerateKind::Random { seed, out } => {
                let env = std::env::var("LATCFG_SEED").ok();
                commands::generate_random(seed, env.as_deref(), &out)
            }
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(outcome) => {
            // a closed pipe downstream is not an error of ours
            let mut stdout = std::io::stdout().lock();
            for line in &outcome.summary {
                let _ = writeln!(stdout, "{line}");
            }
            let _ = writeln!(stdout, "{}", outcome.report.to_json_line());
            ExitCode::from(if outcome.verified { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
