use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use sdcoding_cli::commands::{self, Point};
use sdcoding_cli::{RawConfig, RunConfig};

/// Superdense coding under correlated dephasing.
#[derive(Parser)]
#[command(version, about, allow_negative_numbers = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Mutual information and concurrence over the time grid, as CSV.
    Sweep(Common),
    /// Monte Carlo mutual information at a single noise level.
    Mc {
        #[command(flatten)]
        common: Common,
        /// Target magnitude of Alice's decoherence function.
        #[arg(long, conflicts_with = "t_a", required_unless_present = "t_a")]
        kappa_abs: Option<f64>,
        /// Dephasing time of each stage.
        #[arg(long)]
        t_a: Option<f64>,
    },
    /// Fit (k, s) to a CSV of kappa_abs and mutual information.
    Fit {
        #[command(flatten)]
        common: Common,
        /// Input CSV.
        #[arg(long)]
        input: PathBuf,
        /// Column holding the mutual information.
        #[arg(long)]
        mi_column: Option<String>,
    },
    /// Reconstruct a state from 16 projector counts.
    Tomo {
        #[command(flatten)]
        common: Common,
        /// File with the 16 counts in HH, HV, HD, HL, VH, ... order.
        #[arg(long)]
        input: PathBuf,
        /// Shots per projector [default: n_per_input].
        #[arg(long)]
        n_per_projector: Option<u64>,
    },
    /// Print the resolved configuration and derived endpoint values.
    Show(Common),
}

/// Configuration file, output path, and one override per configuration key.
#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct Common {
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output file [default: output_path, else standard output].
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    omega0: Option<String>,
    #[arg(long)]
    c_aa: Option<String>,
    #[arg(long)]
    c_bb: Option<String>,
    #[arg(long)]
    k: Option<String>,
    #[arg(long)]
    delta_n: Option<String>,
    #[arg(long)]
    scheme: Option<String>,
    #[arg(long)]
    priors: Option<String>,
    #[arg(long)]
    t_start: Option<String>,
    #[arg(long)]
    t_stop: Option<String>,
    #[arg(long)]
    t_step: Option<String>,
    #[arg(long)]
    t_values: Option<String>,
    #[arg(long)]
    s: Option<String>,
    #[arg(long)]
    n_per_input: Option<String>,
    #[arg(long)]
    trials: Option<String>,
    #[arg(long)]
    seed: Option<String>,
    #[arg(long)]
    noise_order: Option<String>,
    #[arg(long)]
    output_path: Option<String>,
}

impl Common {
    fn resolve(&self) -> Result<RunConfig> {
        let mut raw = match &self.config {
            Some(path) => {
                let text = read(path)?;
                RawConfig::parse(&text).with_context(|| format!("in {}", path.display()))?
            }
            None => RawConfig::default(),
        };
        let overrides = [
            ("omega0", &self.omega0),
            ("c_aa", &self.c_aa),
            ("c_bb", &self.c_bb),
            ("k", &self.k),
            ("delta_n", &self.delta_n),
            ("scheme", &self.scheme),
            ("priors", &self.priors),
            ("t_start", &self.t_start),
            ("t_stop", &self.t_stop),
            ("t_step", &self.t_step),
            ("t_values", &self.t_values),
            ("s", &self.s),
            ("n_per_input", &self.n_per_input),
            ("trials", &self.trials),
            ("seed", &self.seed),
            ("noise_order", &self.noise_order),
            ("output_path", &self.output_path),
        ];
        for (key, value) in overrides {
            if let Some(v) = value {
                raw.set(key, v)?;
            }
        }
        let cfg = raw.build();
        match &self.config {
            Some(path) => cfg.with_context(|| format!("in {}", path.display())),
            None => Ok(cfg?),
        }
    }

    fn destination(&self, cfg: &RunConfig) -> Option<PathBuf> {
        self.out.clone().or_else(|| cfg.output_path.clone())
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn emit(text: &str, dest: Option<PathBuf>) -> Result<()> {
    match dest {
        Some(path) => fs::write(&path, text).with_context(|| format!("cannot write {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    let (common, text) = match &cli.command {
        Command::Sweep(c) => (c, commands::sweep(&c.resolve()?)?),
        Command::Mc { common, kappa_abs, t_a } => {
            let point = match (kappa_abs, t_a) {
                (Some(k), _) => Point::KappaAbs(*k),
                (None, Some(t)) => Point::Time(*t),
                (None, None) => unreachable!("clap requires one of the two"),
            };
            (common, commands::mc(&common.resolve()?, point)?)
        }
        Command::Fit { common, input, mi_column } => {
            let cfg = common.resolve()?;
            let csv = read(input)?;
            let out = commands::fit(&cfg, &csv, mi_column.as_deref()).with_context(|| format!("in {}", input.display()))?;
            (common, out)
        }
        Command::Tomo {
            common,
            input,
            n_per_projector,
        } => {
            let cfg = common.resolve()?;
            let counts = read(input)?;
            let n = n_per_projector.unwrap_or(cfg.n_per_input);
            (common, commands::tomo(&counts, n).with_context(|| format!("in {}", input.display()))?)
        }
        Command::Show(c) => (c, commands::show(&c.resolve()?)?),
    };
    let dest = common.destination(&common.resolve()?);
    emit(&text, dest)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
