//! Error type shared by the coding, channel and pipeline layers.

use alloc::string::String;
use core::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Bit input whose length must be even.
    OddDataLength(usize),
    /// Input length must be a multiple of `factor`.
    NotMultipleOf { len: usize, factor: usize },
    /// Bits-per-cell outside the supported 1..=4 range.
    BitsPerCellOutOfRange(u8),
    /// Symbol value not representable with the given bits per cell.
    SymbolOutOfRange { symbol: u8, m_bits: u8 },
    /// (d,k) bounds must satisfy d < k.
    InvalidRunLengthBounds { d: u32, k: u32 },
    /// Boundary policies may only exclude the erase or highest program level.
    InvalidBoundaryLevel { level: u8, m_bits: u8 },
    /// Candidate pool too small for the requested codebook size.
    PoolTooSmall { pool: usize, required: usize },
    /// Codeword of the wrong symbol length.
    WordLengthMismatch { got: usize, expected: usize },
    /// A programmed level has no mean/deviation entry.
    MissingLevelStats { level: u8 },
    /// Distribution means must increase strictly with the level.
    NonIncreasingMeans,
    /// Standard deviations must be positive.
    NonPositiveStdDev { level: u8 },
    /// Threshold estimation needs at least one voltage sample.
    EmptyVoltages,
    /// Threshold estimation needs at least two levels.
    NeedTwoLevels,
    /// Read thresholds must be strictly increasing.
    UnsortedThresholds,
    /// Wrong number of read thresholds for the grid's bits per cell.
    ThresholdCountMismatch { got: usize, expected: usize },
    /// Information block of the wrong length.
    InfoLengthMismatch { got: usize, expected: usize },
    /// Codeword of the wrong bit length.
    CodewordLengthMismatch { got: usize, expected: usize },
    /// Interleaver input rows must all have the same length.
    RaggedCodewords,
    /// Code parameters must satisfy k < n.
    InvalidCodeParams { n: usize, k: usize },
    /// Grid index outside the grid.
    OutOfBounds { row: usize, col: usize, rows: usize, cols: usize },
    /// Coupling ratios must be non-negative.
    NegativeCoupling,
    /// Scheme geometry or configuration mismatch.
    Geometry(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::OddDataLength(len) => write!(f, "data length {len} is odd"),
            Error::NotMultipleOf { len, factor } => {
                write!(f, "length {len} is not a multiple of {factor}")
            }
            Error::BitsPerCellOutOfRange(m) => {
                write!(f, "bits per cell {m} outside supported range 1..=4")
            }
            Error::SymbolOutOfRange { symbol, m_bits } => {
                write!(f, "symbol {symbol} out of range for {m_bits} bits per cell")
            }
            Error::InvalidRunLengthBounds { d, k } => {
                write!(f, "run-length bounds d={d}, k={k} violate d < k")
            }
            Error::InvalidBoundaryLevel { level, m_bits } => {
                write!(
                    f,
                    "boundary policy level {level} is neither 0 nor 2^{m_bits}-1"
                )
            }
            Error::PoolTooSmall { pool, required } => {
                write!(f, "candidate pool has {pool} words, need {required}")
            }
            Error::WordLengthMismatch { got, expected } => {
                write!(f, "codeword has {got} symbols, expected {expected}")
            }
            Error::MissingLevelStats { level } => {
                write!(f, "no distribution entry for level {level}")
            }
            Error::NonIncreasingMeans => write!(f, "level means must increase strictly"),
            Error::NonPositiveStdDev { level } => {
                write!(f, "standard deviation for level {level} must be positive")
            }
            Error::EmptyVoltages => write!(f, "no voltage samples"),
            Error::NeedTwoLevels => write!(f, "need at least two levels"),
            Error::UnsortedThresholds => write!(f, "thresholds must be strictly increasing"),
            Error::ThresholdCountMismatch { got, expected } => {
                write!(f, "got {got} thresholds, expected {expected}")
            }
            Error::InfoLengthMismatch { got, expected } => {
                write!(f, "information block has {got} bits, expected {expected}")
            }
            Error::CodewordLengthMismatch { got, expected } => {
                write!(f, "codeword has {got} bits, expected {expected}")
            }
            Error::RaggedCodewords => write!(f, "codewords must all have the same length"),
            Error::InvalidCodeParams { n, k } => {
                write!(f, "code parameters n={n}, k={k} violate k < n")
            }
            Error::OutOfBounds { row, col, rows, cols } => {
                write!(f, "cell ({row}, {col}) outside {rows}x{cols} grid")
            }
            Error::NegativeCoupling => write!(f, "coupling ratios must be non-negative"),
            Error::Geometry(msg) => write!(f, "{msg}"),
        }
    }
}

impl core::error::Error for Error {}
