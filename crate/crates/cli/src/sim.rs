//! Monte-Carlo word-error-rate sweep.
//!
//! Every trial programs a full page per scheme, applies interference,
//! re-estimates the read thresholds from that trial's voltages, reads back,
//! decodes and tallies codeword failures. Trials are reproducible and
//! order-independent: trial i derives everything from `seed + i`. Points of
//! the same sweep share trial seeds, so schemes face the same data and noise
//! realizations.

use anyhow::{bail, Context, Result};
use flashmod_core::channel::{
    apply_interference, estimate_thresholds, program_grid, read_hard, CouplingParams,
};
use flashmod_core::pipeline::{decode_page, encode_random_grid, SchemeConfig};
use flashmod_core::rng::Rng;
use rayon::prelude::*;

use crate::presets;

/// One scheme variant of a sweep.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunSpec {
    pub scheme: String,
    pub ecc: String,
    pub interleave: bool,
}

impl RunSpec {
    pub fn new(scheme: &str, ecc: &str, interleave: bool) -> Self {
        RunSpec { scheme: scheme.into(), ecc: ecc.into(), interleave }
    }

    /// CSV label, e.g. `slc-rll:mod-3/4+int`.
    pub fn label(&self) -> String {
        format!(
            "{}:{}{}",
            self.scheme,
            self.ecc,
            if self.interleave { "+int" } else { "" }
        )
    }
}

/// Sweep parameters: the effective x-ratio grid, trial count, page geometry
/// and the scheme variants to compare.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepConfig {
    pub gamma_x_star: Vec<f64>,
    pub trials: usize,
    pub seed: u64,
    pub rows: usize,
    pub codewords_per_page: usize,
    pub runs: Vec<RunSpec>,
    /// Where the CSV goes; `None` writes to stdout.
    pub out: Option<std::path::PathBuf>,
}

impl SweepConfig {
    /// The stock comparison: a strong rate-1/2 code alone against the
    /// rate-3/4 code behind the RLL+NRZI modulation layer (equal overall
    /// rate 1/2), each with and without the one-page interleaver. The grid
    /// brackets both waterfalls: the stand-alone code collapses near
    /// gx* = 0.37, the modulation scheme near 0.68; 0.674 sits inside the
    /// modulation transition where the interleaver gain is visible.
    pub fn reference_comparison() -> Self {
        SweepConfig {
            gamma_x_star: vec![0.0, 0.3, 0.5, 0.674, 0.8],
            trials: 1000,
            seed: 7,
            rows: 1,
            codewords_per_page: 16,
            runs: vec![
                RunSpec::new("slc-conv", "conv-1/2", false),
                RunSpec::new("slc-conv", "conv-1/2", true),
                RunSpec::new("slc-rll", "mod-3/4", false),
                RunSpec::new("slc-rll", "mod-3/4", true),
            ],
            out: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            bail!("trials must be at least 1");
        }
        if self.rows == 0 {
            bail!("rows must be at least 1");
        }
        if self.gamma_x_star.is_empty() {
            bail!("the gamma_x_star grid is empty");
        }
        if self.gamma_x_star.windows(2).any(|w| w[0] >= w[1]) {
            bail!("the gamma_x_star grid must be strictly increasing");
        }
        if self.gamma_x_star.iter().any(|&g| g < 0.0 || !g.is_finite()) {
            bail!("gamma_x_star values must be non-negative");
        }
        if self.runs.is_empty() {
            bail!("no runs configured");
        }
        Ok(())
    }
}

/// Codeword failures of one trial.
#[derive(Clone, Copy, Debug, Default)]
pub struct TrialOutcome {
    pub words: usize,
    pub failures: usize,
}

/// Runs one write/disturb/read/decode cycle and counts codeword failures.
pub fn run_trial(cfg: &SchemeConfig, trial_seed: u64) -> Result<TrialOutcome> {
    let mut rng = Rng::new(trial_seed);
    let data_seed = rng.next_u64();
    let program_seed = rng.next_u64();
    let (grid, records) = encode_random_grid(cfg, data_seed)?;
    let cells = program_grid(grid, cfg.dist.clone(), program_seed)?;
    let cells = apply_interference(cells, &cfg.coupling);
    let thresholds = estimate_thresholds(&cells.v_actual, &cfg.dist)?;
    let read = read_hard(&cells, &thresholds)?;
    let mut outcome = TrialOutcome::default();
    for (row, record) in records.iter().enumerate() {
        let (_, flags) = decode_page(read.row(row), record, cfg)?;
        outcome.words += flags.len();
        outcome.failures += flags.iter().filter(|&&ok| !ok).count();
    }
    Ok(outcome)
}

/// One row of the sweep output.
#[derive(Clone, Debug)]
pub struct WerPoint {
    pub scheme: String,
    pub gamma_x_star: f64,
    pub trials: usize,
    pub words: usize,
    pub failures: usize,
    pub wer: f64,
    pub wilson_low: f64,
    pub wilson_high: f64,
}

/// 95% Wilson score interval for `failures` out of `total`.
pub fn wilson_interval(failures: usize, total: usize) -> (f64, f64) {
    let z = 1.959_963_984_540_054_f64;
    let n = total as f64;
    if total == 0 {
        return (0.0, 1.0);
    }
    let p = failures as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    // The interval always contains the point estimate; pin the endpoints
    // the rounding noise would otherwise push past it.
    let low = if failures == 0 { 0.0 } else { (center - half).max(0.0).min(p) };
    let high = if failures == total { 1.0 } else { (center + half).min(1.0).max(p) };
    (low, high)
}

/// Runs the whole sweep. Output rows are ordered by (scheme label, gamma)
/// regardless of execution order.
pub fn run_sweep(sweep: &SweepConfig) -> Result<Vec<WerPoint>> {
    sweep.validate()?;
    let mut points = Vec::new();
    for run in &sweep.runs {
        let layout = presets::ecc_layout(&run.ecc, sweep.codewords_per_page)?;
        let base = presets::scheme_config(
            &run.scheme,
            Some(layout),
            run.interleave,
            sweep.rows,
            0,
        )
        .with_context(|| format!("run {}", run.label()))?;
        for &gamma in &sweep.gamma_x_star {
            let mut cfg = base.clone();
            cfg.coupling = CouplingParams::x_only(gamma);
            let outcome = (0..sweep.trials)
                .into_par_iter()
                .map(|t| run_trial(&cfg, sweep.seed.wrapping_add(t as u64)))
                .try_reduce(TrialOutcome::default, |a, b| {
                    Ok(TrialOutcome {
                        words: a.words + b.words,
                        failures: a.failures + b.failures,
                    })
                })?;
            let (lo, hi) = wilson_interval(outcome.failures, outcome.words);
            points.push(WerPoint {
                scheme: run.label(),
                gamma_x_star: gamma,
                trials: sweep.trials,
                words: outcome.words,
                failures: outcome.failures,
                wer: outcome.failures as f64 / outcome.words.max(1) as f64,
                wilson_low: lo,
                wilson_high: hi,
            });
        }
    }
    points.sort_by(|a, b| {
        (&a.scheme, a.gamma_x_star)
            .partial_cmp(&(&b.scheme, b.gamma_x_star))
            .expect("finite gammas")
    });
    Ok(points)
}
