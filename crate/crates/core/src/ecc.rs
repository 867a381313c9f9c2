//! Genie-aided bounded-distance ECC model and the one-page block interleaver.
//!
//! The simulator always knows the transmitted codeword, so bounded-distance
//! decoding reduces to an error-count comparison: a word decodes iff at most
//! `t` of its bits flipped. Miscorrection is not modeled. Parity bits are a
//! pseudorandom function of the information bits and a seed so downstream
//! modulation coding sees statistically realistic data.

use alloc::vec::Vec;

use crate::error::Error;
use crate::rng::Rng;

/// Systematic code geometry: n codeword bits, k information bits, up to t
/// correctable bit errors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EccParams {
    pub n: usize,
    pub k: usize,
    pub t: u32,
}

impl EccParams {
    pub fn new(n: usize, k: usize, t: u32) -> Result<Self, Error> {
        if k >= n {
            return Err(Error::InvalidCodeParams { n, k });
        }
        Ok(EccParams { n, k, t })
    }

    pub fn rate(&self) -> f64 {
        self.k as f64 / self.n as f64
    }

    /// Strong stand-alone code, rate about 9/10.
    pub fn conv_9_10() -> Self {
        EccParams { n: 4551, k: 4096, t: 35 }
    }

    /// Strong stand-alone code, rate 1/2.
    pub fn conv_1_2() -> Self {
        EccParams { n: 8191, k: 4096, t: 366 }
    }

    /// Weaker code paired with the rate-2/3 modulation layer, rate about 3/4.
    pub fn mod_3_4() -> Self {
        EccParams { n: 5435, k: 4096, t: 105 }
    }

    pub fn preset(name: &str) -> Option<Self> {
        match name {
            "conv-9/10" => Some(Self::conv_9_10()),
            "conv-1/2" => Some(Self::conv_1_2()),
            "mod-3/4" => Some(Self::mod_3_4()),
            _ => None,
        }
    }
}

/// Codeword count and code geometry of one page.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PageLayout {
    pub codewords_per_page: usize,
    pub params: EccParams,
}

impl PageLayout {
    pub fn new(codewords_per_page: usize, params: EccParams) -> Result<Self, Error> {
        if codewords_per_page == 0 {
            return Err(Error::Geometry(alloc::string::String::from(
                "a page carries at least one codeword",
            )));
        }
        Ok(PageLayout { codewords_per_page, params })
    }
}

/// Systematic model codeword: the information bits followed by n - k parity
/// bits drawn from a pseudorandom function of (info, seed).
pub fn ecc_encode_model(info: &[u8], p: &EccParams, seed: u64) -> Result<Vec<u8>, Error> {
    if info.len() != p.k {
        return Err(Error::InfoLengthMismatch { got: info.len(), expected: p.k });
    }
    debug_assert!(info.iter().all(|&b| b <= 1));
    let mut cw = Vec::with_capacity(p.n);
    cw.extend_from_slice(info);
    // FNV-style absorption of the packed info bits, offset by the seed.
    let mut h = 0xcbf2_9ce4_8422_2325u64 ^ seed.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    let mut acc = 0u64;
    let mut nbits = 0;
    for &b in info {
        acc = (acc << 1) | b as u64;
        nbits += 1;
        if nbits == 8 {
            h = (h ^ acc).wrapping_mul(0x0000_0100_0000_01b3);
            acc = 0;
            nbits = 0;
        }
    }
    if nbits > 0 {
        h = (h ^ acc).wrapping_mul(0x0000_0100_0000_01b3);
    }
    let mut rng = Rng::new(h);
    for _ in 0..p.n - p.k {
        cw.push(rng.next_bit());
    }
    Ok(cw)
}

/// Genie-aided bounded-distance decoding: succeeds with the transmitted
/// information bits iff at most `t` bits differ, otherwise fails and passes
/// the received prefix through.
pub fn ecc_decode_model(
    received: &[u8],
    transmitted: &[u8],
    p: &EccParams,
) -> Result<(Vec<u8>, bool), Error> {
    if received.len() != p.n {
        return Err(Error::CodewordLengthMismatch { got: received.len(), expected: p.n });
    }
    if transmitted.len() != p.n {
        return Err(Error::CodewordLengthMismatch { got: transmitted.len(), expected: p.n });
    }
    let errors = received
        .iter()
        .zip(transmitted)
        .filter(|(a, b)| a != b)
        .count();
    if errors as u64 <= p.t as u64 {
        Ok((transmitted[..p.k].to_vec(), true))
    } else {
        Ok((received[..p.k].to_vec(), false))
    }
}

/// Writes the codewords as rows and reads the array out column by column.
/// A burst of up to `rows` consecutive output positions then touches each
/// codeword at most once.
pub fn interleave(codewords: &[Vec<u8>]) -> Result<Vec<u8>, Error> {
    let rows = codewords.len();
    let cols = codewords.first().map_or(0, Vec::len);
    if codewords.iter().any(|cw| cw.len() != cols) {
        return Err(Error::RaggedCodewords);
    }
    let mut out = Vec::with_capacity(rows * cols);
    for col in 0..cols {
        for cw in codewords {
            out.push(cw[col]);
        }
    }
    Ok(out)
}

/// Exact inverse of [`interleave`].
pub fn deinterleave(stream: &[u8], rows: usize) -> Result<Vec<Vec<u8>>, Error> {
    if rows == 0 || !stream.len().is_multiple_of(rows) {
        return Err(Error::NotMultipleOf { len: stream.len(), factor: rows.max(1) });
    }
    let cols = stream.len() / rows;
    let mut out = alloc::vec![Vec::with_capacity(cols); rows];
    for (i, &b) in stream.iter().enumerate() {
        out[i % rows].push(b);
    }
    Ok(out)
}
