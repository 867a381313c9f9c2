//! Constrained modulation coding and channel modeling for NAND flash memories.
//!
//! The crate provides the building blocks of a flash modulation-coding stack:
//!
//! - [`rll`]: a fixed-table rate-2/3 (1,7) run-length limited code with a
//!   look-ahead substitution rule, plus (d,k) constraint capacities.
//! - [`nrzi`]: differential precoding that turns run-length constraints into
//!   level-run constraints.
//! - [`capacity`]: transition matrices over the 2^M cell levels with the
//!   E-PH transition removed, and their dominant-eigenvalue capacities.
//! - [`codebook`]: fixed-length 2^M-ary block codes built by enumerating
//!   codeword candidates free of E-PH adjacencies.
//! - [`gray`]: Gray page mapping between M-bit page tuples and cell levels.
//! - [`epattern`]: classification and counting of E-PH victim/aggressor
//!   patterns on cell grids.
//! - [`channel`]: threshold-voltage programming, cell-to-cell interference,
//!   read-threshold estimation and hard-decision readback.
//! - [`ecc`]: a genie-aided bounded-distance ECC model and a one-page block
//!   interleaver.
//! - [`pipeline`]: complete write/read chains combining the pieces above.
//!
//! Bits are `u8` values in {0, 1}; cell levels are `u8` values in
//! [0, 2^M - 1]. Level 0 is the erase state E, level 2^M - 1 is the highest
//! program state PH.
//!
//! The crate is `no_std` (allocation required) and every operation is pure
//! and deterministic given its seed.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod capacity;
pub mod channel;
pub mod codebook;
pub mod ecc;
pub mod epattern;
pub mod error;
pub mod gray;
pub mod nrzi;
pub mod pipeline;
pub mod rll;
pub mod rng;

pub use error::Error;
