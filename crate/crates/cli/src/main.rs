use std::fs;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use flashmod_cli::config::{parse_sweep_config, parse_switch};
use flashmod_cli::sim::{RunSpec, SweepConfig};
use flashmod_cli::{commands, presets};
use flashmod_core::channel::CouplingParams;

/// Constrained modulation coding for NAND flash: capacity tables, codebook
/// construction, E-PH pattern statistics, threshold-voltage histograms and
/// Monte-Carlo word-error-rate sweeps.
#[derive(Parser)]
#[command(name = "flashmod", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct OutArg {
    /// Write the output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GridArgs {
    /// Word lines (independently encoded pages).
    #[arg(long, default_value_t = 64)]
    rows: usize,
    /// Cells per word line; must fit the scheme's word geometry.
    #[arg(long, default_value_t = 1560)]
    cols: usize,
    #[arg(long, default_value_t = 7)]
    seed: u64,
}

#[derive(Args)]
struct CouplingArgs {
    /// Scale factor applied to the capacitive ratios.
    #[arg(long, default_value_t = 1.0)]
    alpha: f64,
    /// Direct-field x coupling, added after scaling.
    #[arg(long, default_value_t = 0.2)]
    beta: f64,
    #[arg(long, default_value_t = 0.0)]
    gamma_x: f64,
    #[arg(long, default_value_t = 0.0)]
    gamma_y: f64,
    #[arg(long, default_value_t = 0.0)]
    gamma_xy: f64,
}

impl CouplingArgs {
    fn params(&self) -> CouplingParams {
        CouplingParams {
            gamma_x: self.gamma_x,
            gamma_y: self.gamma_y,
            gamma_xy: self.gamma_xy,
            beta: self.beta,
            alpha: self.alpha,
            delta_v_e_ph: 2.0,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Code rates and capacities of the modulation schemes (CSV).
    Capacity {
        #[command(flatten)]
        out: OutArg,
    },
    /// Build a preset codebook, verify it, and write the codebook file.
    Codebook {
        /// One of: q-cb1, q-cb2, 8ary-8_9, 8ary-11_12, 8ary-14_15.
        preset: String,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Symbols to draw for the E-PH verification scan.
        #[arg(long, default_value_t = 100_000)]
        verify_symbols: usize,
        #[command(flatten)]
        out: OutArg,
    },
    /// E-PH pattern statistics of a scheme-encoded random grid (CSV).
    Patterns {
        /// Scheme preset; see `--help` for the list.
        #[arg(long, default_value = "slc-rll")]
        scheme: String,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        out: OutArg,
    },
    /// Threshold-voltage histograms before/after interference (CSV).
    Distribution {
        #[arg(long, default_value = "slc-rll")]
        scheme: String,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        coupling: CouplingArgs,
        #[command(flatten)]
        out: OutArg,
    },
    /// Monte-Carlo word-error-rate sweep over the effective x ratio (CSV).
    Simulate {
        /// Sweep configuration file; flags below override nothing once set.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Scheme preset for a single-run sweep (default: the stock
        /// four-run comparison).
        #[arg(long)]
        scheme: Option<String>,
        /// ECC preset for the single run: conv-9/10, conv-1/2, mod-3/4.
        #[arg(long)]
        ecc: Option<String>,
        /// on/off; only meaningful together with --scheme.
        #[arg(long)]
        interleave: Option<String>,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        rows: Option<usize>,
        #[command(flatten)]
        out: OutArg,
    },
}

fn emit(out: &OutArg, content: &str) -> Result<()> {
    match &out.out {
        Some(path) => fs::write(path, content)
            .with_context(|| format!("writing {}", path.display()))?,
        None => print!("{content}"),
    }
    Ok(())
}

fn simulate_config(
    config: Option<PathBuf>,
    scheme: Option<String>,
    ecc: Option<String>,
    interleave: Option<String>,
    trials: Option<usize>,
    seed: Option<u64>,
    rows: Option<usize>,
) -> Result<SweepConfig> {
    let mut sweep = match config {
        Some(path) => {
            let text = fs::read_to_string(&path)
                .with_context(|| format!("reading {}", path.display()))?;
            parse_sweep_config(&text)?
        }
        None => SweepConfig::reference_comparison(),
    };
    if let Some(scheme) = scheme {
        let ecc = ecc.unwrap_or_else(|| "mod-3/4".to_string());
        let interleave = match interleave {
            Some(v) => parse_switch(&v)?,
            None => false,
        };
        sweep.runs = vec![RunSpec::new(&scheme, &ecc, interleave)];
    } else if ecc.is_some() || interleave.is_some() {
        bail!("--ecc and --interleave need --scheme");
    }
    if let Some(t) = trials {
        sweep.trials = t;
    }
    if let Some(s) = seed {
        sweep.seed = s;
    }
    if let Some(r) = rows {
        sweep.rows = r;
    }
    Ok(sweep)
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    match cli.command {
        Command::Capacity { out } => emit(&out, &commands::capacity_csv()?),
        Command::Codebook { preset, seed, verify_symbols, out } => {
            let (file, report) = commands::codebook_command(&preset, verify_symbols, seed)?;
            match &out.out {
                Some(path) => {
                    fs::write(path, &file)
                        .with_context(|| format!("writing {}", path.display()))?;
                    print!("{report}");
                }
                None => print!("{file}{report}"),
            }
            Ok(())
        }
        Command::Patterns { scheme, grid, out } => {
            presets::SCHEME_PRESETS
                .contains(&scheme.as_str())
                .then_some(())
                .with_context(|| format!("unknown scheme preset {scheme:?}"))?;
            emit(&out, &commands::patterns_csv(&scheme, grid.rows, grid.cols, grid.seed)?)
        }
        Command::Distribution { scheme, grid, coupling, out } => emit(
            &out,
            &commands::distribution_csv(
                &scheme,
                grid.rows,
                grid.cols,
                grid.seed,
                coupling.params(),
            )?,
        ),
        Command::Simulate { config, scheme, ecc, interleave, trials, seed, rows, mut out } => {
            let sweep = simulate_config(config, scheme, ecc, interleave, trials, seed, rows)?;
            if out.out.is_none() {
                out.out = sweep.out.clone();
            }
            emit(&out, &commands::simulate_csv(&sweep)?)
        }
    }
}
