//! Gray page mapping between cell levels and per-page bit labels.
//!
//! Each of the M bits of a cell belongs to a distinct logical page. The map
//! assigns level `i` the bitwise complement of the reflected binary Gray
//! code of `i`, page 1 first (most significant). Adjacent levels then differ
//! in exactly one bit, and for M >= 2 the last-page bit of both E (level 0)
//! and PH (level 2^M - 1) is 1, which is what lets a d-constrained code on
//! the last page keep E and PH apart. For M = 1 the map is the usual SLC
//! assignment: data 1 to E, data 0 to PH.
//!
//! For 2-bit cells the labels are (page 1, page 2):
//! `S0 -> 11`, `S1 -> 10`, `S2 -> 00`, `S3 -> 01`.

use alloc::vec::Vec;

use crate::error::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrayMap {
    m_bits: u8,
    labels: Vec<Vec<u8>>,
    inverse: Vec<u8>,
}

pub fn gray_map(m_bits: u8) -> Result<GrayMap, Error> {
    if !(1..=4).contains(&m_bits) {
        return Err(Error::BitsPerCellOutOfRange(m_bits));
    }
    let n = 1usize << m_bits;
    let mask = (n - 1) as u8;
    let mut labels = Vec::with_capacity(n);
    let mut inverse = alloc::vec![0u8; n];
    for level in 0..n as u8 {
        let code = !(level ^ (level >> 1)) & mask;
        let bits: Vec<u8> = (0..m_bits).rev().map(|b| (code >> b) & 1).collect();
        inverse[code as usize] = level;
        labels.push(bits);
    }
    Ok(GrayMap { m_bits, labels, inverse })
}

impl GrayMap {
    pub fn m_bits(&self) -> u8 {
        self.m_bits
    }

    pub fn num_levels(&self) -> usize {
        self.labels.len()
    }

    /// Per-page bits of a level, page 1 first.
    pub fn label(&self, level: u8) -> &[u8] {
        &self.labels[level as usize]
    }

    /// Level carrying the given page-bit tuple, or `None` if the tuple has
    /// the wrong arity or a non-bit entry.
    pub fn level_of(&self, bits: &[u8]) -> Option<u8> {
        if bits.len() != self.m_bits as usize || bits.iter().any(|&b| b > 1) {
            return None;
        }
        let value = bits.iter().fold(0usize, |acc, &b| (acc << 1) | b as usize);
        Some(self.inverse[value])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_bit_table() {
        let g = gray_map(2).unwrap();
        assert_eq!(g.label(0), &[1, 1]);
        assert_eq!(g.label(1), &[1, 0]);
        assert_eq!(g.label(2), &[0, 0]);
        assert_eq!(g.label(3), &[0, 1]);
    }

    #[test]
    fn slc_mapping() {
        // Data 1 is assigned to E, data 0 to PH.
        let g = gray_map(1).unwrap();
        assert_eq!(g.label(0), &[1]);
        assert_eq!(g.label(1), &[0]);
        assert_eq!(g.level_of(&[1]), Some(0));
        assert_eq!(g.level_of(&[0]), Some(1));
    }

    #[test]
    fn three_bit_sequence() {
        let g = gray_map(3).unwrap();
        let expected = [
            [1, 1, 1],
            [1, 1, 0],
            [1, 0, 0],
            [1, 0, 1],
            [0, 0, 1],
            [0, 0, 0],
            [0, 1, 0],
            [0, 1, 1],
        ];
        for (level, want) in expected.iter().enumerate() {
            assert_eq!(g.label(level as u8), want);
        }
    }

    #[test]
    fn invariants_for_all_orders() {
        for m in 1..=4u8 {
            let g = gray_map(m).unwrap();
            let n = g.num_levels();
            // Adjacent levels differ in exactly one bit.
            for level in 0..n - 1 {
                let a = g.label(level as u8);
                let b = g.label(level as u8 + 1);
                let diff = a.iter().zip(b).filter(|(x, y)| x != y).count();
                assert_eq!(diff, 1, "m={m} level={level}");
            }
            // Labels are distinct and invert exactly.
            for level in 0..n as u8 {
                assert_eq!(g.level_of(g.label(level)), Some(level));
            }
            // Last-page bit of E is one; for MLC so is PH's, which is what
            // lets a run-length code on the last page separate the two.
            assert_eq!(g.label(0)[m as usize - 1], 1);
            if m >= 2 {
                assert_eq!(g.label(n as u8 - 1)[m as usize - 1], 1);
            }
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        assert_eq!(gray_map(0), Err(Error::BitsPerCellOutOfRange(0)));
        assert_eq!(gray_map(5), Err(Error::BitsPerCellOutOfRange(5)));
        let g = gray_map(2).unwrap();
        assert_eq!(g.level_of(&[1]), None);
        assert_eq!(g.level_of(&[2, 0]), None);
    }
}
