//! The work behind each CLI subcommand, kept callable for tests.

use anyhow::{Context, Result};
use flashmod_core::capacity::{build_transition_spec, mary_capacity};
use flashmod_core::channel::{apply_interference, program_grid, CouplingParams, BIN_WIDTH};
use flashmod_core::codebook::enumerate_candidates;
use flashmod_core::epattern::{count_patterns, StateGrid};
use flashmod_core::pipeline::encode_random_grid;
use flashmod_core::rll::{rll_capacity, RllConstraint};
use flashmod_core::rng::Rng;

use crate::codebook_io::export_codebook;
use crate::presets;
use crate::report::{self, DistributionTable};
use crate::sim::{run_sweep, SweepConfig};

/// Code rates and capacities of the binary-RLL and 2^M-ary schemes for
/// M = 2..4, everything computed live.
pub fn capacity_csv() -> Result<String> {
    let rll = rll_capacity(&RllConstraint::new(1, None)?).capacity;
    // Designed 2^M-ary codebook geometries: (data bits, word length).
    let mary_geometry = |m: u8| -> Option<(usize, usize)> {
        match m {
            2 => Some((8, 5)),
            3 => Some((14, 5)),
            _ => None,
        }
    };
    let mut out =
        String::from("m_bits,binary_rll_rate,binary_rll_capacity,mary_rate,mary_capacity\n");
    for m in 2..=4u8 {
        let mf = m as f64;
        let bin_rate = (mf - 1.0 + 2.0 / 3.0) / mf;
        let bin_cap = (mf - 1.0 + rll) / mf;
        let mary_cap = mary_capacity(&build_transition_spec(m)?).capacity;
        let mary_rate = match mary_geometry(m) {
            Some((bits, len)) => format!("{:.4}", bits as f64 / (mf * len as f64)),
            None => String::new(),
        };
        out.push_str(&format!(
            "{m},{bin_rate:.4},{bin_cap:.4},{mary_rate},{mary_cap:.4}\n"
        ));
    }
    Ok(out)
}

/// Builds a preset codebook. Returns the export file body and a verification
/// report: pool size, per-(first,last) candidate counts, and an E-PH scan
/// over a random encoded symbol stream.
pub fn codebook_command(preset: &str, verify_symbols: usize, seed: u64) -> Result<(String, String)> {
    let cb = presets::codebook(preset)?;
    let file = export_codebook(&cb);

    let m = cb.m_bits();
    let levels = 1u8 << m;
    let mut report = format!(
        "codebook {preset}: M={m} L={} B={} rate={:.4}\n",
        cb.word_len(),
        cb.data_bits(),
        cb.rate()
    );
    let mut total = 0usize;
    report.push_str("candidates per (first,last) subset:\n");
    for first in 0..levels {
        for last in 0..levels {
            let n = enumerate_candidates(m, cb.word_len(), first, last)?.len();
            total += n;
            report.push_str(&format!("  {first},{last}: {n}\n"));
        }
    }
    report.push_str(&format!("total candidates: {total}\n"));
    let pool = flashmod_core::codebook::candidate_pool(m, cb.word_len(), cb.policy())?;
    report.push_str(&format!(
        "pool after boundary policy: {} (codebook keeps {})\n",
        pool.len(),
        cb.words().len()
    ));

    // E-PH freedom over a random encoded stream.
    let words = verify_symbols.div_ceil(cb.word_len());
    let mut rng = Rng::new(seed);
    let data: Vec<u8> = (0..words * cb.data_bits()).map(|_| rng.next_bit()).collect();
    let symbols = cb.encode(&data)?;
    let max = levels - 1;
    let mut in_word = 0usize;
    let mut junction = 0usize;
    for (i, w) in symbols.windows(2).enumerate() {
        if (w[0] == 0 && w[1] == max) || (w[0] == max && w[1] == 0) {
            if (i + 1) % cb.word_len() == 0 {
                junction += 1;
            } else {
                in_word += 1;
            }
        }
    }
    let junctions = words.saturating_sub(1);
    report.push_str(&format!(
        "verification over {} symbols: {in_word} in-word E-PH adjacencies, \
         {junction} junction adjacencies over {junctions} junctions (frequency {:.4})\n",
        symbols.len(),
        junction as f64 / junctions.max(1) as f64
    ));
    Ok((file, report))
}

/// E-PH pattern statistics of a scheme-encoded random grid (pass-through
/// mode: no ECC bits, the modulation layer alone decides the patterns).
pub fn patterns_csv(scheme: &str, rows: usize, cols: usize, seed: u64) -> Result<String> {
    let cfg = presets::scheme_config(scheme, None, false, rows, cols)?;
    let (grid, _) = encode_random_grid(&cfg, seed)?;
    Ok(report::patterns_csv(&count_patterns(&grid)))
}

/// Threshold-voltage histograms per programmed level, before and after
/// interference, for an uncoded baseline (uniform random levels) and the
/// selected modulation scheme on the same grid geometry and binning.
pub fn distribution_table(
    scheme: &str,
    rows: usize,
    cols: usize,
    seed: u64,
    coupling: CouplingParams,
) -> Result<DistributionTable> {
    coupling.validate()?;
    let cfg = presets::scheme_config(scheme, None, false, rows, cols)?;
    let levels = 1usize << cfg.m_bits;

    // Uncoded baseline: uniform random levels on the same geometry.
    let mut rng = Rng::new(seed);
    let raw: Vec<u8> = (0..rows * cols)
        .map(|_| rng.next_below(levels as u64) as u8)
        .collect();
    let conventional = StateGrid::from_levels(cfg.m_bits, rows, cols, raw)?;
    let (modulated, _) = encode_random_grid(&cfg, rng.next_u64())?;

    let dist = cfg.dist.clone();
    let mut grids = Vec::new();
    for (label, grid) in [("conventional", conventional), (scheme, modulated)] {
        let cells = program_grid(grid, dist.clone(), rng.next_u64())?;
        let cells = apply_interference(cells, &coupling);
        grids.push((label.to_string(), cells));
    }

    // Shared binning across schemes and pre/post populations.
    let mut min = f64::INFINITY;
    let mut max = f64::NEG_INFINITY;
    for (_, cells) in &grids {
        for v in cells.v_nominal.iter().chain(&cells.v_actual) {
            min = min.min(*v);
            max = max.max(*v);
        }
    }
    let lo = min - 0.5;
    let nbins = ((max + 0.5 - lo) / BIN_WIDTH).ceil() as usize;

    let mut table = DistributionTable { levels, rows: Vec::new() };
    for (label, cells) in &grids {
        let mut pre = vec![vec![0u64; nbins]; levels];
        let mut post = vec![vec![0u64; nbins]; levels];
        for (idx, &level) in cells.states.levels().iter().enumerate() {
            let pre_bin =
                (((cells.v_nominal[idx] - lo) / BIN_WIDTH).floor() as usize).min(nbins - 1);
            let post_bin =
                (((cells.v_actual[idx] - lo) / BIN_WIDTH).floor() as usize).min(nbins - 1);
            pre[level as usize][pre_bin] += 1;
            post[level as usize][post_bin] += 1;
        }
        for bin in 0..nbins {
            table.rows.push((
                label.clone(),
                lo + (bin as f64 + 0.5) * BIN_WIDTH,
                (0..levels).map(|l| pre[l][bin]).collect(),
                (0..levels).map(|l| post[l][bin]).collect(),
            ));
        }
    }
    Ok(table)
}

pub fn distribution_csv(
    scheme: &str,
    rows: usize,
    cols: usize,
    seed: u64,
    coupling: CouplingParams,
) -> Result<String> {
    Ok(report::distribution_csv(&distribution_table(
        scheme, rows, cols, seed, coupling,
    )?))
}

pub fn simulate_csv(sweep: &SweepConfig) -> Result<String> {
    let points = run_sweep(sweep).context("sweep failed")?;
    Ok(report::wer_csv(&points))
}
