//! Fixed-length 2^M-ary block codes free of E-PH adjacencies.
//!
//! A codeword candidate is any word over the levels 0..2^M-1 with no
//! adjacent {0, 2^M-1} pair inside it. Candidates are additionally filtered
//! by a boundary policy so that concatenating codewords cannot create the
//! forbidden pair across a junction (or, for the relaxed policy, can create
//! it on one side at most).

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::error::Error;

/// True when the word contains no adjacent {0, 2^M-1} pair.
pub fn word_is_internally_eph_free(word: &[u8], m_bits: u8) -> bool {
    let max = (1u8 << m_bits) - 1;
    word.windows(2)
        .all(|w| !((w[0] == 0 && w[1] == max) || (w[0] == max && w[1] == 0)))
}

/// All words of `word_len` symbols with the given first and last symbol and
/// no internal E-PH adjacency, in lexicographic order.
pub fn enumerate_candidates(
    m_bits: u8,
    word_len: usize,
    first: u8,
    last: u8,
) -> Result<Vec<Vec<u8>>, Error> {
    if !(1..=4).contains(&m_bits) {
        return Err(Error::BitsPerCellOutOfRange(m_bits));
    }
    let levels = 1u8 << m_bits;
    for sym in [first, last] {
        if sym >= levels {
            return Err(Error::SymbolOutOfRange { symbol: sym, m_bits });
        }
    }
    if word_len < 2 {
        return Err(Error::WordLengthMismatch { got: word_len, expected: 2 });
    }

    let mut out = Vec::new();
    let mid = word_len - 2;
    let mut word = alloc::vec![0u8; word_len];
    word[0] = first;
    word[word_len - 1] = last;
    // Odometer over the interior symbols keeps the output lexicographic.
    loop {
        if word_is_internally_eph_free(&word, m_bits) {
            out.push(word.clone());
        }
        let mut pos = mid;
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            word[1 + pos] += 1;
            if word[1 + pos] < levels {
                break;
            }
            word[1 + pos] = 0;
        }
    }
}

/// Which (first, last) symbol combinations a codebook admits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundaryPolicy {
    /// Drop words with the given level (0 or 2^M-1) as first or last symbol.
    /// Junctions then never pair that level with its opposite extreme, so
    /// concatenations carry no E-PH adjacency at all.
    ExcludeLevelAtEnds(u8),
    /// Drop only words with an extreme level at both ends. Junctions may
    /// still produce single-sided E-PH adjacencies.
    ExcludeExtremesAtBothEnds,
}

impl BoundaryPolicy {
    fn validate(&self, m_bits: u8) -> Result<(), Error> {
        let max = (1u8 << m_bits) - 1;
        if let BoundaryPolicy::ExcludeLevelAtEnds(level) = *self {
            if level != 0 && level != max {
                return Err(Error::InvalidBoundaryLevel { level, m_bits });
            }
        }
        Ok(())
    }

    fn permits(&self, first: u8, last: u8, m_bits: u8) -> bool {
        let max = (1u8 << m_bits) - 1;
        match *self {
            BoundaryPolicy::ExcludeLevelAtEnds(level) => first != level && last != level,
            BoundaryPolicy::ExcludeExtremesAtBothEnds => {
                !((first == 0 || first == max) && (last == 0 || last == max))
            }
        }
    }
}

/// The full candidate pool for a policy, lexicographically ordered.
pub fn candidate_pool(
    m_bits: u8,
    word_len: usize,
    policy: BoundaryPolicy,
) -> Result<Vec<Vec<u8>>, Error> {
    policy.validate(m_bits)?;
    let levels = 1u8 << m_bits;
    let mut pool = Vec::new();
    for first in 0..levels {
        for last in 0..levels {
            if policy.permits(first, last, m_bits) {
                pool.extend(enumerate_candidates(m_bits, word_len, first, last)?);
            }
        }
    }
    pool.sort_unstable();
    Ok(pool)
}

/// A fixed-length block code over a 2^M-ary alphabet. Data index i maps to
/// the i-th pool word; decoding is exact inverse lookup with a deterministic
/// Hamming-nearest fallback for corrupted words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Codebook {
    m_bits: u8,
    word_len: usize,
    data_bits: usize,
    policy: BoundaryPolicy,
    words: Vec<Vec<u8>>,
    inverse: BTreeMap<Vec<u8>, u32>,
}

/// Builds the codebook from the first 2^data_bits pool words.
pub fn build_codebook(
    m_bits: u8,
    word_len: usize,
    data_bits: usize,
    policy: BoundaryPolicy,
) -> Result<Codebook, Error> {
    let mut pool = candidate_pool(m_bits, word_len, policy)?;
    let required = 1usize << data_bits;
    if pool.len() < required {
        return Err(Error::PoolTooSmall { pool: pool.len(), required });
    }
    pool.truncate(required);
    Codebook::from_words(m_bits, word_len, data_bits, policy, pool)
}

impl Codebook {
    /// Assembles a codebook from explicit words, revalidating every
    /// invariant (count, ranges, E-PH freedom, policy, distinctness).
    pub fn from_words(
        m_bits: u8,
        word_len: usize,
        data_bits: usize,
        policy: BoundaryPolicy,
        words: Vec<Vec<u8>>,
    ) -> Result<Self, Error> {
        policy.validate(m_bits)?;
        let required = 1usize << data_bits;
        if words.len() != required {
            return Err(Error::PoolTooSmall { pool: words.len(), required });
        }
        let levels = 1u8 << m_bits;
        let mut inverse = BTreeMap::new();
        for (i, word) in words.iter().enumerate() {
            if word.len() != word_len {
                return Err(Error::WordLengthMismatch { got: word.len(), expected: word_len });
            }
            if let Some(&sym) = word.iter().find(|&&s| s >= levels) {
                return Err(Error::SymbolOutOfRange { symbol: sym, m_bits });
            }
            if !word_is_internally_eph_free(word, m_bits)
                || !policy.permits(word[0], word[word_len - 1], m_bits)
            {
                return Err(Error::Geometry(alloc::format!(
                    "codeword {i} violates the E-PH or boundary constraint"
                )));
            }
            if inverse.insert(word.clone(), i as u32).is_some() {
                return Err(Error::Geometry(alloc::format!("duplicate codeword at index {i}")));
            }
        }
        Ok(Codebook { m_bits, word_len, data_bits, policy, words, inverse })
    }

    pub fn m_bits(&self) -> u8 {
        self.m_bits
    }

    pub fn word_len(&self) -> usize {
        self.word_len
    }

    pub fn data_bits(&self) -> usize {
        self.data_bits
    }

    pub fn policy(&self) -> BoundaryPolicy {
        self.policy
    }

    pub fn words(&self) -> &[Vec<u8>] {
        &self.words
    }

    /// Code rate in bits per stored bit, `data_bits / (M * word_len)`.
    pub fn rate(&self) -> f64 {
        self.data_bits as f64 / (self.m_bits as usize * self.word_len) as f64
    }

    /// Encodes a bit string whose length is a multiple of `data_bits` into
    /// a concatenated symbol stream, `data_bits` big-endian bits per word.
    pub fn encode(&self, data: &[u8]) -> Result<Vec<u8>, Error> {
        if !data.len().is_multiple_of(self.data_bits) {
            return Err(Error::NotMultipleOf { len: data.len(), factor: self.data_bits });
        }
        debug_assert!(data.iter().all(|&b| b <= 1));
        let mut out = Vec::with_capacity(data.len() / self.data_bits * self.word_len);
        for chunk in data.chunks_exact(self.data_bits) {
            let index = chunk.iter().fold(0usize, |acc, &b| (acc << 1) | b as usize);
            out.extend_from_slice(&self.words[index]);
        }
        Ok(out)
    }

    /// Decodes a symbol stream back to data bits. Words not in the codebook
    /// decode to the symbol-wise Hamming-nearest codeword, ties broken by
    /// the lower data index.
    pub fn decode(&self, symbols: &[u8]) -> Result<Vec<u8>, Error> {
        if !symbols.len().is_multiple_of(self.word_len) {
            return Err(Error::NotMultipleOf { len: symbols.len(), factor: self.word_len });
        }
        let mut out = Vec::with_capacity(symbols.len() / self.word_len * self.data_bits);
        for word in symbols.chunks_exact(self.word_len) {
            let index = match self.inverse.get(word) {
                Some(&i) => i,
                None => self.nearest_index(word),
            };
            for b in (0..self.data_bits).rev() {
                out.push(((index >> b) & 1) as u8);
            }
        }
        Ok(out)
    }

    fn nearest_index(&self, word: &[u8]) -> u32 {
        let mut best = 0u32;
        let mut best_dist = usize::MAX;
        for (i, cand) in self.words.iter().enumerate() {
            let dist = cand.iter().zip(word).filter(|(a, b)| a != b).count();
            if dist < best_dist {
                best_dist = dist;
                best = i as u32;
            }
        }
        best
    }
}
