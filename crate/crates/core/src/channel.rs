//! Threshold-voltage programming, cell-to-cell interference, read-threshold
//! estimation and hard-decision readback.
//!
//! The victim shift is a one-shot superposition over the eight immediate
//! neighbours:
//!
//! ```text
//! shift = gx* . (left + right) + gy . (up + down) + gxy . (diagonals)
//! ```
//!
//! where each neighbour contributes its programming shift (the mean voltage
//! move from the erase state to its programmed level) and `gx* = alpha*gx +
//! beta` folds the direct-field x coupling into the capacitive ratio. The
//! worst case is an E victim with all eight aggressors in PH:
//!
//! ```text
//! max shift = (2 gx* + 2 gy + 4 gxy) . dv_e_ph
//! ```

use alloc::vec::Vec;

use crate::epattern::StateGrid;
use crate::error::Error;
use crate::rng::Rng;

/// Histogram bin width used for threshold estimation, in volts.
pub const BIN_WIDTH: f64 = 0.02;
/// Moving-average window (bins) applied before locating histogram valleys.
pub const SMOOTH_WINDOW: usize = 5;

/// Coupling ratios of the interference model. `alpha` scales the capacitive
/// ratios; `beta` adds the direct-field contribution to the x direction
/// afterwards.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CouplingParams {
    pub gamma_x: f64,
    pub gamma_y: f64,
    pub gamma_xy: f64,
    pub beta: f64,
    pub alpha: f64,
    /// Aggressor programming shift from E to PH, in volts.
    pub delta_v_e_ph: f64,
}

impl CouplingParams {
    /// The reference capacitive ratios (0.1, 0.08, 0.006) at scale `alpha`,
    /// no direct-field term.
    pub fn reference_ratios(alpha: f64) -> Self {
        CouplingParams {
            gamma_x: 0.1,
            gamma_y: 0.08,
            gamma_xy: 0.006,
            beta: 0.0,
            alpha,
            delta_v_e_ph: 2.0,
        }
    }

    /// x-direction coupling only, driven directly by the effective ratio.
    pub fn x_only(gamma_x_star: f64) -> Self {
        CouplingParams {
            gamma_x: 0.0,
            gamma_y: 0.0,
            gamma_xy: 0.0,
            beta: gamma_x_star,
            alpha: 1.0,
            delta_v_e_ph: 2.0,
        }
    }

    pub fn validate(&self) -> Result<(), Error> {
        let all = [
            self.gamma_x,
            self.gamma_y,
            self.gamma_xy,
            self.beta,
            self.alpha,
            self.delta_v_e_ph,
        ];
        if all.iter().any(|&v| v < 0.0 || !v.is_finite()) {
            return Err(Error::NegativeCoupling);
        }
        Ok(())
    }

    /// Effective x ratio `gx* = alpha * gamma_x + beta`.
    pub fn effective_x(&self) -> f64 {
        self.alpha * self.gamma_x + self.beta
    }

    pub fn effective_y(&self) -> f64 {
        self.alpha * self.gamma_y
    }

    pub fn effective_xy(&self) -> f64 {
        self.alpha * self.gamma_xy
    }

    /// Replaces the direct-field term so the effective x ratio becomes
    /// `gamma_x_star`; errors when that would need a negative beta.
    pub fn with_gamma_x_star(mut self, gamma_x_star: f64) -> Result<Self, Error> {
        let beta = gamma_x_star - self.alpha * self.gamma_x;
        if beta < 0.0 || !beta.is_finite() {
            return Err(Error::NegativeCoupling);
        }
        self.beta = beta;
        Ok(self)
    }
}

/// Gaussian mean and deviation of one programmed level.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LevelStats {
    pub mean: f64,
    pub std_dev: f64,
}

/// Per-level threshold-voltage statistics before interference.
#[derive(Clone, Debug, PartialEq)]
pub struct StateDistribution {
    levels: Vec<LevelStats>,
}

impl StateDistribution {
    pub fn new(levels: Vec<LevelStats>) -> Result<Self, Error> {
        for (i, s) in levels.iter().enumerate() {
            if s.std_dev <= 0.0 || !s.std_dev.is_finite() {
                return Err(Error::NonPositiveStdDev { level: i as u8 });
            }
        }
        if levels.windows(2).any(|w| w[0].mean >= w[1].mean) {
            return Err(Error::NonIncreasingMeans);
        }
        Ok(StateDistribution { levels })
    }

    /// The SLC reference distribution: E at N(-1, 0.25^2), PH at N(1, 0.25^2).
    pub fn slc() -> Self {
        StateDistribution {
            levels: alloc::vec![
                LevelStats { mean: -1.0, std_dev: 0.25 },
                LevelStats { mean: 1.0, std_dev: 0.25 },
            ],
        }
    }

    /// 2^M levels with means evenly spaced from -1 V to 1 V.
    pub fn evenly_spaced(m_bits: u8, std_dev: f64) -> Result<Self, Error> {
        if !(1..=4).contains(&m_bits) {
            return Err(Error::BitsPerCellOutOfRange(m_bits));
        }
        let n = 1usize << m_bits;
        let step = 2.0 / (n - 1) as f64;
        Self::new(
            (0..n)
                .map(|l| LevelStats { mean: -1.0 + step * l as f64, std_dev })
                .collect(),
        )
    }

    pub fn num_levels(&self) -> usize {
        self.levels.len()
    }

    pub fn stats(&self, level: u8) -> Result<LevelStats, Error> {
        self.levels
            .get(level as usize)
            .copied()
            .ok_or(Error::MissingLevelStats { level })
    }

    pub fn mean(&self, level: u8) -> Result<f64, Error> {
        Ok(self.stats(level)?.mean)
    }
}

/// Programming shift of an aggressor at `level`: the mean move from the
/// erase state, `mean(level) - mean(0)`.
pub fn aggressor_shift(level: u8, dist: &StateDistribution) -> Result<f64, Error> {
    Ok(dist.stats(level)?.mean - dist.stats(0)?.mean)
}

/// A programmed grid: states plus nominal, shift and actual voltages
/// (`v_actual = v_nominal + shift` elementwise).
#[derive(Clone, Debug)]
pub struct CellGrid {
    pub states: StateGrid,
    pub dist: StateDistribution,
    pub v_nominal: Vec<f64>,
    pub shift: Vec<f64>,
    pub v_actual: Vec<f64>,
}

/// Samples every cell's nominal voltage from its level's Gaussian,
/// deterministically for a given seed. Shifts start at zero.
pub fn program_grid(
    states: StateGrid,
    dist: StateDistribution,
    seed: u64,
) -> Result<CellGrid, Error> {
    let max_level = states.levels().iter().copied().max().unwrap_or(0);
    if (max_level as usize) >= dist.num_levels() {
        return Err(Error::MissingLevelStats { level: max_level });
    }
    let mut rng = Rng::new(seed);
    let mut v_nominal = Vec::with_capacity(states.cells());
    for &level in states.levels() {
        let s = dist.stats(level)?;
        v_nominal.push(s.mean + s.std_dev * rng.next_gaussian());
    }
    let shift = alloc::vec![0.0; v_nominal.len()];
    let v_actual = v_nominal.clone();
    Ok(CellGrid { states, dist, v_nominal, shift, v_actual })
}

/// Applies the one-shot interference superposition. Every cell is shifted,
/// whatever its own level; neighbour contributions use the programming shift
/// of the neighbour's level, not its perturbed voltage.
pub fn apply_interference(mut g: CellGrid, p: &CouplingParams) -> CellGrid {
    let gx = p.effective_x();
    let gy = p.effective_y();
    let gxy = p.effective_xy();
    let base = g.dist.stats(0).expect("level 0 exists").mean;
    let shifts: Vec<f64> = (0..g.dist.num_levels())
        .map(|l| g.dist.stats(l as u8).expect("validated").mean - base)
        .collect();
    let (rows, cols) = (g.states.rows(), g.states.cols());
    let level_shift = |r: isize, c: isize| -> f64 {
        if r < 0 || c < 0 || r as usize >= rows || c as usize >= cols {
            return 0.0;
        }
        shifts[g.states.level(r as usize, c as usize) as usize]
    };
    for row in 0..rows {
        for col in 0..cols {
            let (r, c) = (row as isize, col as isize);
            let sx = level_shift(r, c - 1) + level_shift(r, c + 1);
            let sy = level_shift(r - 1, c) + level_shift(r + 1, c);
            let sxy = level_shift(r - 1, c - 1)
                + level_shift(r - 1, c + 1)
                + level_shift(r + 1, c - 1)
                + level_shift(r + 1, c + 1);
            let idx = row * cols + col;
            g.shift[idx] = gx * sx + gy * sy + gxy * sxy;
            g.v_actual[idx] = g.v_nominal[idx] + g.shift[idx];
        }
    }
    g
}

/// Worst-case victim shift `(2 gx* + 2 gy + 4 gxy) . dv_e_ph`, reached by an
/// E victim with all eight aggressors in PH.
pub fn max_shift(p: &CouplingParams) -> f64 {
    (2.0 * p.effective_x() + 2.0 * p.effective_y() + 4.0 * p.effective_xy()) * p.delta_v_e_ph
}

/// Estimates one decision level per adjacent level pair from the read
/// voltages alone: a 0.02 V histogram smoothed by a 5-bin moving average,
/// taking the centre of the lowest bin strictly between the two level means
/// (ties fall to the lower voltage).
pub fn estimate_thresholds(
    voltages: &[f64],
    dist: &StateDistribution,
) -> Result<Vec<f64>, Error> {
    if voltages.is_empty() {
        return Err(Error::EmptyVoltages);
    }
    if dist.num_levels() < 2 {
        return Err(Error::NeedTwoLevels);
    }
    let mut min = f64::INFINITY;
    let mut max = f64::NEG_INFINITY;
    for &v in voltages {
        min = min.min(v);
        max = max.max(v);
    }
    let lo = min - 0.5;
    let hi = max + 0.5;
    let nbins = libm::ceil((hi - lo) / BIN_WIDTH) as usize;
    let mut counts = alloc::vec![0u32; nbins];
    for &v in voltages {
        let idx = (libm::floor((v - lo) / BIN_WIDTH) as usize).min(nbins - 1);
        counts[idx] += 1;
    }
    // Moving average with the window clipped at the edges.
    let half = SMOOTH_WINDOW / 2;
    let smoothed: Vec<f64> = (0..nbins)
        .map(|i| {
            let a = i.saturating_sub(half);
            let b = (i + half + 1).min(nbins);
            counts[a..b].iter().map(|&c| c as f64).sum::<f64>() / (b - a) as f64
        })
        .collect();
    let center = |i: usize| lo + (i as f64 + 0.5) * BIN_WIDTH;

    let mut thresholds = Vec::with_capacity(dist.num_levels() - 1);
    for level in 0..dist.num_levels() - 1 {
        let mean_lo = dist.mean(level as u8)?;
        let mean_hi = dist.mean(level as u8 + 1)?;
        let mut best: Option<(f64, usize)> = None;
        for (i, &s) in smoothed.iter().enumerate() {
            let c = center(i);
            if c > mean_lo && c < mean_hi && best.is_none_or(|(bs, _)| s < bs) {
                best = Some((s, i));
            }
        }
        thresholds.push(match best {
            Some((_, i)) => center(i),
            // Degenerate ranges fall back to the midpoint.
            None => (mean_lo + mean_hi) / 2.0,
        });
    }
    Ok(thresholds)
}

/// Hard-decision readback: a cell's level is the number of thresholds
/// strictly below its actual voltage (a voltage exactly on a threshold reads
/// as the lower level).
pub fn read_hard(g: &CellGrid, thresholds: &[f64]) -> Result<StateGrid, Error> {
    if thresholds.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::UnsortedThresholds);
    }
    let expected = (1usize << g.states.m_bits()) - 1;
    if thresholds.len() != expected {
        return Err(Error::ThresholdCountMismatch { got: thresholds.len(), expected });
    }
    let levels: Vec<u8> = g
        .v_actual
        .iter()
        .map(|&v| thresholds.iter().take_while(|&&t| t < v).count() as u8)
        .collect();
    StateGrid::from_levels(g.states.m_bits(), g.states.rows(), g.states.cols(), levels)
}
