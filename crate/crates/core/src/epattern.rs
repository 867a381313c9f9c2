//! E-PH pattern classification and counting on cell grids.
//!
//! A victim is a cell in the erase state E (level 0); its aggressors are the
//! neighbouring cells in the highest program state PH (level 2^M - 1). A
//! victim's pattern class is the triple (n_x, n_y, n_xy) counting PH
//! aggressors along the word line, along the bit line, and on the diagonals.
//! Cells beyond the grid edge count as non-PH.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::error::Error;

/// Aggressor counts of a victim: 0 <= n_x <= 2, 0 <= n_y <= 2, 0 <= n_xy <= 4.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PatternClass {
    pub n_x: u8,
    pub n_y: u8,
    pub n_xy: u8,
}

/// Programmed levels on a rows x cols grid. Row index is the word line,
/// column index is the bit line; x runs along a word line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateGrid {
    m_bits: u8,
    rows: usize,
    cols: usize,
    levels: Vec<u8>,
}

impl StateGrid {
    /// All-E grid.
    pub fn new(m_bits: u8, rows: usize, cols: usize) -> Result<Self, Error> {
        if !(1..=4).contains(&m_bits) {
            return Err(Error::BitsPerCellOutOfRange(m_bits));
        }
        Ok(StateGrid { m_bits, rows, cols, levels: alloc::vec![0; rows * cols] })
    }

    pub fn from_levels(
        m_bits: u8,
        rows: usize,
        cols: usize,
        levels: Vec<u8>,
    ) -> Result<Self, Error> {
        if !(1..=4).contains(&m_bits) {
            return Err(Error::BitsPerCellOutOfRange(m_bits));
        }
        if levels.len() != rows * cols {
            return Err(Error::Geometry(alloc::format!(
                "{} levels for a {rows}x{cols} grid",
                levels.len()
            )));
        }
        let max = (1u8 << m_bits) - 1;
        if let Some(&bad) = levels.iter().find(|&&l| l > max) {
            return Err(Error::SymbolOutOfRange { symbol: bad, m_bits });
        }
        Ok(StateGrid { m_bits, rows, cols, levels })
    }

    /// Stacks equally long rows into a grid.
    pub fn from_rows(m_bits: u8, rows: Vec<Vec<u8>>) -> Result<Self, Error> {
        let count = rows.len();
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::RaggedCodewords);
        }
        let mut levels = Vec::with_capacity(count * cols);
        for row in rows {
            levels.extend_from_slice(&row);
        }
        Self::from_levels(m_bits, count, cols, levels)
    }

    pub fn m_bits(&self) -> u8 {
        self.m_bits
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn cells(&self) -> usize {
        self.levels.len()
    }

    pub fn level(&self, row: usize, col: usize) -> u8 {
        self.levels[row * self.cols + col]
    }

    pub fn set_level(&mut self, row: usize, col: usize, level: u8) {
        debug_assert!(level < (1 << self.m_bits));
        self.levels[row * self.cols + col] = level;
    }

    pub fn row(&self, row: usize) -> &[u8] {
        &self.levels[row * self.cols..(row + 1) * self.cols]
    }

    pub fn levels(&self) -> &[u8] {
        &self.levels
    }

    /// Highest program state PH for this grid's bits per cell.
    pub fn ph_level(&self) -> u8 {
        (1 << self.m_bits) - 1
    }
}

/// Classifies the cell at (row, col): `None` when it is not an E victim,
/// otherwise its aggressor counts. Out-of-grid neighbours count as non-PH.
pub fn classify_victim(
    g: &StateGrid,
    row: usize,
    col: usize,
) -> Result<Option<PatternClass>, Error> {
    if row >= g.rows || col >= g.cols {
        return Err(Error::OutOfBounds { row, col, rows: g.rows, cols: g.cols });
    }
    if g.level(row, col) != 0 {
        return Ok(None);
    }
    let ph = g.ph_level();
    let is_ph = |r: isize, c: isize| -> u8 {
        if r < 0 || c < 0 || r as usize >= g.rows || c as usize >= g.cols {
            return 0;
        }
        u8::from(g.level(r as usize, c as usize) == ph)
    };
    let (r, c) = (row as isize, col as isize);
    let n_x = is_ph(r, c - 1) + is_ph(r, c + 1);
    let n_y = is_ph(r - 1, c) + is_ph(r + 1, c);
    let n_xy = is_ph(r - 1, c - 1) + is_ph(r - 1, c + 1) + is_ph(r + 1, c - 1) + is_ph(r + 1, c + 1);
    Ok(Some(PatternClass { n_x, n_y, n_xy }))
}

/// Per-class tally over all E cells of the grid. Unharmed (0,0,0) victims
/// are included; `e_cells` is the total victim count for normalization.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PatternCounts {
    pub by_class: BTreeMap<PatternClass, u64>,
    pub e_cells: u64,
}

impl PatternCounts {
    pub fn count(&self, n_x: u8, n_y: u8, n_xy: u8) -> u64 {
        self.by_class
            .get(&PatternClass { n_x, n_y, n_xy })
            .copied()
            .unwrap_or(0)
    }

    /// Total count over all classes with `n_x >= min_n_x`.
    pub fn count_with_nx_at_least(&self, min_n_x: u8) -> u64 {
        self.by_class
            .iter()
            .filter(|(c, _)| c.n_x >= min_n_x)
            .map(|(_, n)| n)
            .sum()
    }
}

pub fn count_patterns(g: &StateGrid) -> PatternCounts {
    let mut counts = PatternCounts::default();
    for row in 0..g.rows {
        for col in 0..g.cols {
            if let Some(class) = classify_victim(g, row, col).expect("in bounds") {
                *counts.by_class.entry(class).or_insert(0) += 1;
                counts.e_cells += 1;
            }
        }
    }
    counts
}

/// Number of distinct pattern classes for per-axis aggressor bounds:
/// the product of (bound + 1) over the axes.
pub fn num_pattern_classes(bounds: &[u32]) -> u64 {
    bounds
        .iter()
        .fold(1u64, |acc, &b| acc.saturating_mul(b as u64 + 1))
}
