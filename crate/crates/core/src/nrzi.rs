//! NRZI differential precoding: an input 1 toggles the output level, an
//! input 0 holds it. Applied after a d-constrained code this stretches every
//! interior level run to at least d + 1 cells.

use alloc::vec::Vec;

/// `out[i] = out[i-1] ^ bits[i]` with `out[-1] = init`.
pub fn nrzi_encode(bits: &[u8], init: u8) -> Vec<u8> {
    let mut out = Vec::with_capacity(bits.len());
    let mut level = init & 1;
    for &b in bits {
        level ^= b & 1;
        out.push(level);
    }
    out
}

/// Exact inverse of [`nrzi_encode`]: `out[i] = levels[i] ^ levels[i-1]` with
/// `levels[-1] = init`. A single flipped level flips exactly the two decoded
/// bits it touches (one at the end of the stream).
pub fn nrzi_decode(levels: &[u8], init: u8) -> Vec<u8> {
    let mut out = Vec::with_capacity(levels.len());
    let mut prev = init & 1;
    for &l in levels {
        out.push((l ^ prev) & 1);
        prev = l & 1;
    }
    out
}
