//! Rate-2/3 (1,7) run-length limited code and (d,k) constraint capacities.
//!
//! The encoder maps data pairs to 3-bit groups through a fixed basic table
//! and switches to a four-entry substitution table whenever concatenating
//! two basic groups would put two ones next to each other. The coded stream
//! then satisfies d = 1 (no adjacent ones) and k = 7 (at most seven zeros
//! between ones).
//!
//! Basic table (data pair -> group):
//! `00 -> 101`, `01 -> 100`, `10 -> 001`, `11 -> 010`.
//!
//! Substitution table (two data pairs -> two groups):
//! `00 00 -> 101 000`, `00 01 -> 100 000`, `10 00 -> 001 000`,
//! `10 01 -> 010 000`.
//!
//! ```
//! use flashmod_core::rll::{rll17_decode, rll17_encode};
//!
//! let coded = rll17_encode(&[0, 1, 0, 0, 1, 0]).unwrap();
//! assert_eq!(coded, [1, 0, 0, 1, 0, 1, 0, 0, 1]);
//! assert_eq!(rll17_decode(&coded).unwrap(), [0, 1, 0, 0, 1, 0]);
//! ```

use alloc::{vec, vec::Vec};

use crate::capacity::{dominant_eigenvalue, CapacityResult};
use crate::error::Error;

/// Basic 3-bit groups indexed by the data pair value (big-endian).
const BASIC: [[u8; 3]; 4] = [[1, 0, 1], [1, 0, 0], [0, 0, 1], [0, 1, 0]];

/// Substituted 6-bit groups indexed by (first pair in {00,10}, second pair
/// in {00,01}) as `2 * (first >> 1) + second`.
const SUBST: [[u8; 6]; 4] = [
    [1, 0, 1, 0, 0, 0],
    [1, 0, 0, 0, 0, 0],
    [0, 0, 1, 0, 0, 0],
    [0, 1, 0, 0, 0, 0],
];

/// Data pair for each valid group value; `None` marks groups no encoder
/// output contains in group position (000, 011, 110, 111).
const BASIC_INV: [Option<u8>; 8] = [
    None,    // 000
    Some(2), // 001 -> 10
    Some(3), // 010 -> 11
    None,    // 011
    Some(1), // 100 -> 01
    Some(0), // 101 -> 00
    None,    // 110
    None,    // 111
];

/// Hamming-nearest valid group for every group value, ties broken by the
/// basic-table order 101, 100, 001, 010. Models error propagation on
/// corrupted streams instead of aborting.
const NEAREST: [u8; 8] = [
    0b100, // 000 -> 100
    0b001, // valid
    0b010, // valid
    0b001, // 011 -> 001
    0b100, // valid
    0b101, // valid
    0b100, // 110 -> 100
    0b101, // 111 -> 101
];

/// Four data bits for each substituted unit keyed by its first group.
fn subst_inverse(first_group: u8) -> [u8; 4] {
    match first_group {
        0b101 => [0, 0, 0, 0],
        0b100 => [0, 0, 0, 1],
        0b001 => [1, 0, 0, 0],
        0b010 => [1, 0, 0, 1],
        _ => unreachable!("nearest-group mapping only yields valid groups"),
    }
}

/// Encodes an even-length bit string into a (1,7)-constrained stream of
/// 3/2 the length.
///
/// Scans the data two bits at a time. A substitution fires when the current
/// pair is 00 or 10 (its basic group ends in a one) and the next pair is 00
/// or 01 (its basic group starts with a one); the final pair always uses the
/// basic table.
pub fn rll17_encode(data: &[u8]) -> Result<Vec<u8>, Error> {
    if !data.len().is_multiple_of(2) {
        return Err(Error::OddDataLength(data.len()));
    }
    debug_assert!(data.iter().all(|&b| b <= 1));
    let mut out = Vec::with_capacity(data.len() / 2 * 3);
    let pairs: Vec<u8> = data.chunks_exact(2).map(|c| (c[0] << 1) | c[1]).collect();
    let mut i = 0;
    while i < pairs.len() {
        let cur = pairs[i];
        let violation = (cur == 0b00 || cur == 0b10)
            && i + 1 < pairs.len()
            && (pairs[i + 1] == 0b00 || pairs[i + 1] == 0b01);
        if violation {
            let idx = ((cur >> 1) * 2 + pairs[i + 1]) as usize;
            out.extend_from_slice(&SUBST[idx]);
            i += 2;
        } else {
            out.extend_from_slice(&BASIC[cur as usize]);
            i += 1;
        }
    }
    Ok(out)
}

/// Decodes a (1,7)-coded stream back to data bits.
///
/// Scans 3-bit groups: a group followed by 000 is the start of a substituted
/// unit and decodes together with it, anything else decodes through the
/// basic table. Groups that no encoder output contains decode through the
/// Hamming-nearest valid group, so corrupted streams decode deterministically
/// with bounded error propagation. Exact inverse of [`rll17_encode`] on
/// valid input.
pub fn rll17_decode(coded: &[u8]) -> Result<Vec<u8>, Error> {
    if !coded.len().is_multiple_of(3) {
        return Err(Error::NotMultipleOf { len: coded.len(), factor: 3 });
    }
    debug_assert!(coded.iter().all(|&b| b <= 1));
    let groups: Vec<u8> = coded
        .chunks_exact(3)
        .map(|c| (c[0] << 2) | (c[1] << 1) | c[2])
        .collect();
    let mut out = Vec::with_capacity(coded.len() / 3 * 2);
    let mut i = 0;
    while i < groups.len() {
        let canon = NEAREST[groups[i] as usize];
        if i + 1 < groups.len() && groups[i + 1] == 0 {
            out.extend_from_slice(&subst_inverse(canon));
            i += 2;
        } else {
            let pair = BASIC_INV[canon as usize].expect("canonical groups are valid");
            out.push(pair >> 1);
            out.push(pair & 1);
            i += 1;
        }
    }
    Ok(out)
}

/// A (d,k) run-length constraint: successive ones separated by at least `d`
/// and at most `k` zeros. `k = None` leaves the zero runs unbounded.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RllConstraint {
    d: u32,
    k: Option<u32>,
}

impl RllConstraint {
    pub fn new(d: u32, k: Option<u32>) -> Result<Self, Error> {
        if let Some(k) = k {
            if d >= k {
                return Err(Error::InvalidRunLengthBounds { d, k });
            }
        }
        Ok(RllConstraint { d, k })
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn k(&self) -> Option<u32> {
        self.k
    }
}

/// Transfer matrix of the (d,k) constraint over follower states counting
/// zeros since the last one (capped at d when k is unbounded).
pub fn transfer_matrix(c: &RllConstraint) -> Vec<Vec<f64>> {
    match c.k {
        Some(k) => {
            let n = k as usize + 1;
            let mut a = vec![vec![0.0; n]; n];
            for i in 0..n {
                if i + 1 < n {
                    a[i][i + 1] = 1.0; // emit a zero
                }
                if i as u32 >= c.d {
                    a[i][0] = 1.0; // emit a one
                }
            }
            a
        }
        None => {
            let n = c.d as usize + 1;
            let mut a = vec![vec![0.0; n]; n];
            for i in 0..n {
                if i + 1 < n {
                    a[i][i + 1] = 1.0;
                } else {
                    a[i][i] += 1.0; // zeros beyond d all look alike
                }
            }
            a[c.d as usize][0] += 1.0;
            a
        }
    }
}

/// Capacity of the (d,k) constraint in bits per stored bit.
pub fn rll_capacity(c: &RllConstraint) -> CapacityResult {
    let lambda = dominant_eigenvalue(&transfer_matrix(c), 1e-9);
    CapacityResult {
        lambda_max: lambda,
        capacity: libm::log2(lambda),
    }
}
