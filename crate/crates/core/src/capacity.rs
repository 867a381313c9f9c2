//! Constrained-code capacities from dominant eigenvalues of transition
//! matrices.
//!
//! For an M-bit cell the admissible level sequences are described by a
//! 2^M x 2^M state transition matrix in which every transition is allowed
//! except between level 0 (E) and level 2^M - 1 (PH). The achievable code
//! rate per stored bit is `log2(lambda_max) / M` where `lambda_max` is the
//! dominant eigenvalue of that matrix.

use alloc::{vec, vec::Vec};

use crate::error::Error;

/// Dominant eigenvalue and the per-stored-bit capacity derived from it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CapacityResult {
    pub lambda_max: f64,
    /// Bits of information per stored bit, `log2(lambda_max) / m_bits`.
    pub capacity: f64,
}

/// Transition matrix over the 2^M cell levels with the two E-PH transitions
/// removed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitionSpec {
    m_bits: u8,
    matrix: Vec<Vec<u8>>,
}

/// Builds the all-ones 2^M x 2^M matrix with the (0, 2^M-1) and (2^M-1, 0)
/// entries zeroed.
pub fn build_transition_spec(m_bits: u8) -> Result<TransitionSpec, Error> {
    if !(1..=4).contains(&m_bits) {
        return Err(Error::BitsPerCellOutOfRange(m_bits));
    }
    let n = 1usize << m_bits;
    let mut matrix = vec![vec![1u8; n]; n];
    matrix[0][n - 1] = 0;
    matrix[n - 1][0] = 0;
    Ok(TransitionSpec { m_bits, matrix })
}

impl TransitionSpec {
    pub fn m_bits(&self) -> u8 {
        self.m_bits
    }

    /// Matrix dimension, 2^M.
    pub fn size(&self) -> usize {
        self.matrix.len()
    }

    pub fn entry(&self, from: usize, to: usize) -> u8 {
        self.matrix[from][to]
    }

    pub fn matrix(&self) -> &[Vec<u8>] {
        &self.matrix
    }
}

/// Capacity of the 2^M-ary constraint, `C = log2(lambda_max) / M`.
pub fn mary_capacity(spec: &TransitionSpec) -> CapacityResult {
    let a: Vec<Vec<f64>> = spec
        .matrix
        .iter()
        .map(|row| row.iter().map(|&e| e as f64).collect())
        .collect();
    let lambda = dominant_eigenvalue(&a, 1e-9);
    CapacityResult {
        lambda_max: lambda,
        capacity: libm::log2(lambda) / spec.m_bits as f64,
    }
}

/// Power iteration with a fixed all-ones start vector and infinity-norm
/// scaling.
///
/// Intended for small non-negative matrices whose dominant eigenvalue is
/// positive and whose dominant eigenvector has non-negative entries, which
/// holds for every transition matrix used in this crate. Returns once the
/// eigenvalue estimate is stable to `rel_tol` relative accuracy.
pub fn dominant_eigenvalue(matrix: &[Vec<f64>], rel_tol: f64) -> f64 {
    const MAX_ITERS: usize = 100_000;
    let n = matrix.len();
    if n == 0 {
        return 0.0;
    }
    let mut v = vec![1.0f64; n];
    let mut lambda = 0.0f64;
    for _ in 0..MAX_ITERS {
        let mut w = vec![0.0f64; n];
        for (i, row) in matrix.iter().enumerate() {
            let mut s = 0.0;
            for (j, &a) in row.iter().enumerate() {
                s += a * v[j];
            }
            w[i] = s;
        }
        let norm = w.iter().fold(0.0f64, |m, &x| m.max(libm::fabs(x)));
        if norm == 0.0 {
            return 0.0;
        }
        for x in &mut w {
            *x /= norm;
        }
        let prev = lambda;
        lambda = norm;
        v = w;
        if libm::fabs(lambda - prev) <= rel_tol * lambda {
            break;
        }
    }
    lambda
}
