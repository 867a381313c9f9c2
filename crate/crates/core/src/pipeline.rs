//! End-to-end write/read chains for the supported coding schemes.
//!
//! Write side, per page row:
//!
//! - `SlcConventional`: ECC -> (interleave) -> bits straight to levels
//!   (bit 1 programs E, bit 0 programs PH).
//! - `SlcRllNrzi`: ECC -> (interleave) -> (1,7) RLL -> NRZI (initial level 0)
//!   -> NRZI bit 1 programs E, 0 programs PH.
//! - `MlcBinaryRll`: pages 1..M-1 carry ECC bits directly, page M is ECC
//!   coded then RLL coded; each cell's level comes from the Gray map of its
//!   per-page bit tuple. Page M occupies the whole row after RLL, so it
//!   carries two thirds of the codewords of the other pages.
//! - `MlcMaryCodebook`: one ECC stream -> (interleave) -> codebook words;
//!   the symbols are the levels.
//!
//! The read side inverts each chain and ends in genie-aided bounded-distance
//! decoding against the transmitted record. Pages are independent units:
//! every row restarts the NRZI level and carries its own codewords.

use alloc::vec::Vec;

use crate::capacity::{build_transition_spec, mary_capacity};
use crate::channel::{CouplingParams, StateDistribution};
use crate::codebook::Codebook;
use crate::ecc::{deinterleave, ecc_decode_model, ecc_encode_model, interleave, PageLayout};
use crate::epattern::StateGrid;
use crate::error::Error;
use crate::gray::gray_map;
use crate::nrzi::{nrzi_decode, nrzi_encode};
use crate::rll::{rll17_decode, rll17_encode, rll_capacity, RllConstraint};
use crate::rng::Rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scheme {
    /// ECC only, no modulation coding.
    SlcConventional,
    SlcRllNrzi,
    MlcBinaryRll,
    MlcMaryCodebook,
}

/// Complete configuration of one write/read chain over a rows x cols grid.
/// `ecc: None` selects pass-through mode (no ECC, no interleaving), used for
/// bit-exact conformance tests and pattern statistics.
#[derive(Clone, Debug)]
pub struct SchemeConfig {
    pub scheme: Scheme,
    pub m_bits: u8,
    pub codebook: Option<Codebook>,
    pub ecc: Option<PageLayout>,
    pub interleave: bool,
    pub coupling: CouplingParams,
    pub dist: StateDistribution,
    pub rows: usize,
    pub cols: usize,
}

impl SchemeConfig {
    pub fn validate(&self) -> Result<(), Error> {
        if !(1..=4).contains(&self.m_bits) {
            return Err(Error::BitsPerCellOutOfRange(self.m_bits));
        }
        match self.scheme {
            Scheme::SlcConventional | Scheme::SlcRllNrzi => {
                if self.m_bits != 1 {
                    return Err(Error::Geometry(alloc::format!(
                        "SLC scheme requires 1 bit per cell, got {}",
                        self.m_bits
                    )));
                }
            }
            Scheme::MlcBinaryRll | Scheme::MlcMaryCodebook => {
                if self.m_bits < 2 {
                    return Err(Error::Geometry(alloc::string::String::from(
                        "MLC scheme requires at least 2 bits per cell",
                    )));
                }
            }
        }
        if self.scheme == Scheme::MlcMaryCodebook {
            match &self.codebook {
                None => {
                    return Err(Error::Geometry(alloc::string::String::from(
                        "2^M-ary scheme requires a codebook",
                    )))
                }
                Some(cb) if cb.m_bits() != self.m_bits => {
                    return Err(Error::Geometry(alloc::format!(
                        "codebook is {}-bit but the scheme is {}-bit",
                        cb.m_bits(),
                        self.m_bits
                    )))
                }
                Some(_) => {}
            }
        }
        if self.dist.num_levels() != 1usize << self.m_bits {
            return Err(Error::Geometry(alloc::format!(
                "distribution has {} levels, scheme needs {}",
                self.dist.num_levels(),
                1usize << self.m_bits
            )));
        }
        self.coupling.validate()?;
        if self.interleave && self.ecc.is_none() {
            return Err(Error::Geometry(alloc::string::String::from(
                "interleaving applies to ECC codewords; enable ECC",
            )));
        }
        if self.ecc.is_some() {
            let derived = self.derived_cols()?;
            if self.cols != derived {
                return Err(Error::Geometry(alloc::format!(
                    "cols {} does not match the ECC geometry ({derived})",
                    self.cols
                )));
            }
        } else {
            self.passthrough_page_bits()?;
        }
        Ok(())
    }

    /// Logical pages carried by one row.
    pub fn num_pages(&self) -> usize {
        match self.scheme {
            Scheme::MlcBinaryRll => self.m_bits as usize,
            _ => 1,
        }
    }

    /// Codeword count per page. For `MlcBinaryRll` the layout count applies
    /// to the RLL-coded last page; the direct pages fill the same physical
    /// row and therefore carry 3/2 as many codewords.
    pub fn codewords_per_page(&self) -> Result<Vec<usize>, Error> {
        let layout = self.ecc.as_ref().ok_or_else(|| {
            Error::Geometry(alloc::string::String::from("pass-through mode has no codewords"))
        })?;
        let cw = layout.codewords_per_page;
        match self.scheme {
            Scheme::MlcBinaryRll => {
                if cw % 2 != 0 {
                    return Err(Error::Geometry(alloc::format!(
                        "binary-RLL MLC needs an even codeword count per page, got {cw}"
                    )));
                }
                let mut counts = alloc::vec![cw / 2 * 3; self.m_bits as usize - 1];
                counts.push(cw);
                Ok(counts)
            }
            _ => Ok(alloc::vec![cw]),
        }
    }

    /// Physical cells per row implied by the ECC geometry.
    pub fn derived_cols(&self) -> Result<usize, Error> {
        let layout = self.ecc.as_ref().ok_or_else(|| {
            Error::Geometry(alloc::string::String::from(
                "pass-through mode takes its geometry from the data",
            ))
        })?;
        let n = layout.params.n;
        let cw = layout.codewords_per_page;
        match self.scheme {
            Scheme::SlcConventional => Ok(cw * n),
            Scheme::SlcRllNrzi => {
                let bits = cw * n;
                if bits % 2 != 0 {
                    return Err(Error::Geometry(alloc::format!(
                        "RLL input of {bits} bits is not even"
                    )));
                }
                Ok(bits / 2 * 3)
            }
            Scheme::MlcBinaryRll => {
                if cw % 2 != 0 {
                    return Err(Error::Geometry(alloc::format!(
                        "binary-RLL MLC needs an even codeword count per page, got {cw}"
                    )));
                }
                let bits = cw * n;
                if bits % 2 != 0 {
                    return Err(Error::Geometry(alloc::format!(
                        "RLL input of {bits} bits is not even"
                    )));
                }
                Ok(bits / 2 * 3)
            }
            Scheme::MlcMaryCodebook => {
                let cb = self.codebook.as_ref().ok_or_else(|| {
                    Error::Geometry(alloc::string::String::from("2^M-ary scheme requires a codebook"))
                })?;
                let bits = cw * n;
                if bits % cb.data_bits() != 0 {
                    return Err(Error::Geometry(alloc::format!(
                        "ECC stream of {bits} bits does not divide into {}-bit words",
                        cb.data_bits()
                    )));
                }
                Ok(bits / cb.data_bits() * cb.word_len())
            }
        }
    }

    /// Pre-modulation page bit counts in pass-through mode, derived from
    /// `cols`.
    fn passthrough_page_bits(&self) -> Result<Vec<usize>, Error> {
        match self.scheme {
            Scheme::SlcConventional => Ok(alloc::vec![self.cols]),
            Scheme::SlcRllNrzi => {
                if !self.cols.is_multiple_of(3) {
                    return Err(Error::Geometry(alloc::format!(
                        "RLL-coded row length {} is not a multiple of 3",
                        self.cols
                    )));
                }
                Ok(alloc::vec![self.cols / 3 * 2])
            }
            Scheme::MlcBinaryRll => {
                if !self.cols.is_multiple_of(3) {
                    return Err(Error::Geometry(alloc::format!(
                        "RLL-coded row length {} is not a multiple of 3",
                        self.cols
                    )));
                }
                let mut sizes = alloc::vec![self.cols; self.m_bits as usize - 1];
                sizes.push(self.cols / 3 * 2);
                Ok(sizes)
            }
            Scheme::MlcMaryCodebook => {
                let cb = self.codebook.as_ref().ok_or_else(|| {
                    Error::Geometry(alloc::string::String::from("2^M-ary scheme requires a codebook"))
                })?;
                if !self.cols.is_multiple_of(cb.word_len()) {
                    return Err(Error::Geometry(alloc::format!(
                        "row length {} is not a multiple of the word length {}",
                        self.cols,
                        cb.word_len()
                    )));
                }
                Ok(alloc::vec![self.cols / cb.word_len() * cb.data_bits()])
            }
        }
    }

    /// Bits of user data each page of one row carries.
    pub fn user_bits_per_page(&self) -> Result<Vec<usize>, Error> {
        match &self.ecc {
            Some(layout) => Ok(self
                .codewords_per_page()?
                .iter()
                .map(|&c| c * layout.params.k)
                .collect()),
            None => self.passthrough_page_bits(),
        }
    }
}

/// Everything the write side produced, kept for genie decoding and
/// diagnostics.
#[derive(Clone, Debug, Default)]
pub struct PageRecord {
    pub user_pages: Vec<Vec<u8>>,
    /// Transmitted codewords per page; empty in pass-through mode.
    pub codewords: Vec<Vec<Vec<u8>>>,
    /// Post-ECC (and post-interleave) bit stream per page, before any
    /// run-length coding.
    pub page_streams: Vec<Vec<u8>>,
    /// RLL-coded stream of the constrained page, where the scheme has one.
    pub rll_stream: Option<Vec<u8>>,
    /// NRZI level stream (SLC scheme only).
    pub nrzi_stream: Option<Vec<u8>>,
    /// Programmed levels of the row.
    pub levels: Vec<u8>,
}

struct EncodedStreams {
    /// Transmitted codewords per page; empty in pass-through mode.
    codewords: Vec<Vec<Vec<u8>>>,
    /// Post-ECC (and post-interleave) bit stream per page.
    streams: Vec<Vec<u8>>,
}

fn encode_page_streams(
    user_pages: &[Vec<u8>],
    cfg: &SchemeConfig,
    rng: &mut Rng,
) -> Result<EncodedStreams, Error> {
    let expected = cfg.user_bits_per_page()?;
    if user_pages.len() != expected.len() {
        return Err(Error::Geometry(alloc::format!(
            "{} data pages supplied, scheme carries {}",
            user_pages.len(),
            expected.len()
        )));
    }
    for (page, &want) in user_pages.iter().zip(&expected) {
        if page.len() != want {
            return Err(Error::Geometry(alloc::format!(
                "data page has {} bits, geometry needs {want}",
                page.len()
            )));
        }
    }
    match &cfg.ecc {
        Some(layout) => {
            let mut all_cws = Vec::with_capacity(user_pages.len());
            let mut streams = Vec::with_capacity(user_pages.len());
            for page in user_pages {
                let cws: Vec<Vec<u8>> = page
                    .chunks_exact(layout.params.k)
                    .map(|info| ecc_encode_model(info, &layout.params, rng.next_u64()))
                    .collect::<Result<_, _>>()?;
                let stream = if cfg.interleave {
                    interleave(&cws)?
                } else {
                    cws.concat()
                };
                all_cws.push(cws);
                streams.push(stream);
            }
            Ok(EncodedStreams { codewords: all_cws, streams })
        }
        None => Ok(EncodedStreams { codewords: Vec::new(), streams: user_pages.to_vec() }),
    }
}

/// Runs the write chain on one row of user data. Returns the programmed
/// levels and the transmitted record.
pub fn encode_page(
    user_pages: &[Vec<u8>],
    cfg: &SchemeConfig,
    seed: u64,
) -> Result<(Vec<u8>, PageRecord), Error> {
    cfg.validate()?;
    let mut rng = Rng::new(seed);
    let EncodedStreams { codewords, streams: page_streams } =
        encode_page_streams(user_pages, cfg, &mut rng)?;
    let gray = gray_map(cfg.m_bits)?;

    let mut record = PageRecord {
        user_pages: user_pages.to_vec(),
        codewords,
        page_streams: page_streams.clone(),
        ..PageRecord::default()
    };

    let levels: Vec<u8> = match cfg.scheme {
        Scheme::SlcConventional => page_streams[0]
            .iter()
            .map(|&b| gray.level_of(&[b]).expect("bit"))
            .collect(),
        Scheme::SlcRllNrzi => {
            let rll = rll17_encode(&page_streams[0])?;
            let nrzi = nrzi_encode(&rll, 0);
            let levels = nrzi.iter().map(|&b| gray.level_of(&[b]).expect("bit")).collect();
            record.rll_stream = Some(rll);
            record.nrzi_stream = Some(nrzi);
            levels
        }
        Scheme::MlcBinaryRll => {
            let m = cfg.m_bits as usize;
            let rll = rll17_encode(&page_streams[m - 1])?;
            let cols = rll.len();
            if page_streams[..m - 1].iter().any(|s| s.len() != cols) {
                return Err(Error::Geometry(alloc::string::String::from(
                    "direct pages must match the RLL-coded page length",
                )));
            }
            let mut levels = Vec::with_capacity(cols);
            let mut tuple = alloc::vec![0u8; m];
            for i in 0..cols {
                for (p, slot) in tuple.iter_mut().enumerate().take(m - 1) {
                    *slot = page_streams[p][i];
                }
                tuple[m - 1] = rll[i];
                levels.push(gray.level_of(&tuple).expect("bits"));
            }
            record.rll_stream = Some(rll);
            levels
        }
        Scheme::MlcMaryCodebook => {
            let cb = cfg.codebook.as_ref().expect("validated");
            cb.encode(&page_streams[0])?
        }
    };

    if levels.len() != cfg.cols {
        return Err(Error::Geometry(alloc::format!(
            "encoded row has {} cells, configuration says {}",
            levels.len(),
            cfg.cols
        )));
    }
    record.levels = levels.clone();
    Ok((levels, record))
}

/// Runs the read chain on one row of read-back levels. Returns the decoded
/// user pages and one success flag per ECC codeword (page-major order);
/// pass-through mode has no codewords and returns no flags.
pub fn decode_page(
    levels: &[u8],
    record: &PageRecord,
    cfg: &SchemeConfig,
) -> Result<(Vec<Vec<u8>>, Vec<bool>), Error> {
    if levels.len() != record.levels.len() {
        return Err(Error::Geometry(alloc::format!(
            "read row has {} cells, record has {}",
            levels.len(),
            record.levels.len()
        )));
    }
    let gray = gray_map(cfg.m_bits)?;

    let page_streams: Vec<Vec<u8>> = match cfg.scheme {
        Scheme::SlcConventional => {
            alloc::vec![levels.iter().map(|&l| gray.label(l)[0]).collect()]
        }
        Scheme::SlcRllNrzi => {
            let nrzi: Vec<u8> = levels.iter().map(|&l| gray.label(l)[0]).collect();
            let rll = nrzi_decode(&nrzi, 0);
            alloc::vec![rll17_decode(&rll)?]
        }
        Scheme::MlcBinaryRll => {
            let m = cfg.m_bits as usize;
            let mut streams = alloc::vec![Vec::with_capacity(levels.len()); m];
            for &level in levels {
                let label = gray.label(level);
                for (p, stream) in streams.iter_mut().enumerate() {
                    stream.push(label[p]);
                }
            }
            let last = streams.pop().expect("m >= 2");
            streams.push(rll17_decode(&last)?);
            streams
        }
        Scheme::MlcMaryCodebook => {
            let cb = cfg.codebook.as_ref().ok_or_else(|| {
                Error::Geometry(alloc::string::String::from("2^M-ary scheme requires a codebook"))
            })?;
            alloc::vec![cb.decode(levels)?]
        }
    };

    match &cfg.ecc {
        Some(layout) => {
            let counts = cfg.codewords_per_page()?;
            let mut user_pages = Vec::with_capacity(page_streams.len());
            let mut flags = Vec::new();
            for (p, stream) in page_streams.iter().enumerate() {
                let received: Vec<Vec<u8>> = if cfg.interleave {
                    deinterleave(stream, counts[p])?
                } else {
                    stream.chunks_exact(layout.params.n).map(<[u8]>::to_vec).collect()
                };
                if received.len() != counts[p] || record.codewords[p].len() != counts[p] {
                    return Err(Error::Geometry(alloc::format!(
                        "page {p} decodes into {} codewords, geometry says {}",
                        received.len(),
                        counts[p]
                    )));
                }
                let mut user = Vec::with_capacity(counts[p] * layout.params.k);
                for (rx, tx) in received.iter().zip(&record.codewords[p]) {
                    let (info, ok) = ecc_decode_model(rx, tx, &layout.params)?;
                    flags.push(ok);
                    user.extend_from_slice(&info);
                }
                user_pages.push(user);
            }
            Ok((user_pages, flags))
        }
        None => Ok((page_streams, Vec::new())),
    }
}

/// Encodes `cfg.rows` independent rows of seeded random user data into a
/// grid; per-row seeds and data all derive from `seed`.
pub fn encode_random_grid(
    cfg: &SchemeConfig,
    seed: u64,
) -> Result<(StateGrid, Vec<PageRecord>), Error> {
    cfg.validate()?;
    let sizes = cfg.user_bits_per_page()?;
    let mut rng = Rng::new(seed);
    let mut rows = Vec::with_capacity(cfg.rows);
    let mut records = Vec::with_capacity(cfg.rows);
    for _ in 0..cfg.rows {
        let pages: Vec<Vec<u8>> = sizes
            .iter()
            .map(|&n| (0..n).map(|_| rng.next_bit()).collect())
            .collect();
        let (levels, record) = encode_page(&pages, cfg, rng.next_u64())?;
        rows.push(levels);
        records.push(record);
    }
    Ok((StateGrid::from_rows(cfg.m_bits, rows)?, records))
}

/// Modulation-layer and overall rate/capacity accounting for a scheme.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RateAccounting {
    pub modulation_rate: f64,
    pub modulation_capacity: f64,
    pub ecc_rate: f64,
    pub overall_rate: f64,
}

pub fn rate_accounting(cfg: &SchemeConfig) -> Result<RateAccounting, Error> {
    let m = cfg.m_bits as f64;
    let (modulation_rate, modulation_capacity) = match cfg.scheme {
        Scheme::SlcConventional => (1.0, 1.0),
        Scheme::SlcRllNrzi | Scheme::MlcBinaryRll => {
            let rll = rll_capacity(&RllConstraint::new(1, None)?);
            ((m - 1.0 + 2.0 / 3.0) / m, (m - 1.0 + rll.capacity) / m)
        }
        Scheme::MlcMaryCodebook => {
            let cb = cfg.codebook.as_ref().ok_or_else(|| {
                Error::Geometry(alloc::string::String::from("2^M-ary scheme requires a codebook"))
            })?;
            let cap = mary_capacity(&build_transition_spec(cfg.m_bits)?).capacity;
            (cb.rate(), cap)
        }
    };
    let ecc_rate = cfg.ecc.as_ref().map_or(1.0, |l| l.params.rate());
    Ok(RateAccounting {
        modulation_rate,
        modulation_capacity,
        ecc_rate,
        overall_rate: modulation_rate * ecc_rate,
    })
}
