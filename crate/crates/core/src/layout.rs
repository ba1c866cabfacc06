//! Register layout: two coordinate registers plus a carry workspace.
//!
//! Qubits are numbered globally from 0, most significant first. Qubit `q`
//! of a layout with `T` qubits lives at bit position `T - 1 - q` of the basis
//! index, so the basis index of `|i>|j>|w>` is
//! `(i << (2n - 1)) | (j << (n - 1)) | w`.

use crate::error::{CatError, Result};

/// Largest supported total qubit count for a dense state.
pub const MAX_QUBITS: usize = 30;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegisterLayout {
    n_q: usize,
    x_qubits: Vec<usize>,
    y_qubits: Vec<usize>,
    work_qubits: Vec<usize>,
}

impl RegisterLayout {
    pub fn new(n_q: usize) -> Result<Self> {
        if n_q < 2 {
            return Err(CatError::RegisterTooSmall(n_q));
        }
        let total = 3 * n_q - 1;
        if total > MAX_QUBITS {
            return Err(CatError::LayoutTooLarge(total));
        }
        Ok(Self {
            n_q,
            x_qubits: (0..n_q).collect(),
            y_qubits: (n_q..2 * n_q).collect(),
            work_qubits: (2 * n_q..total).collect(),
        })
    }

    pub fn n_q(&self) -> usize {
        self.n_q
    }

    /// Lattice side length `N = 2^n_q`.
    pub fn lattice_size(&self) -> usize {
        1 << self.n_q
    }

    pub fn total_qubits(&self) -> usize {
        3 * self.n_q - 1
    }

    /// Number of basis states, `2^(3 n_q - 1)`.
    pub fn dimension(&self) -> usize {
        1 << self.total_qubits()
    }

    pub fn x_qubits(&self) -> &[usize] {
        &self.x_qubits
    }

    pub fn y_qubits(&self) -> &[usize] {
        &self.y_qubits
    }

    pub fn work_qubits(&self) -> &[usize] {
        &self.work_qubits
    }

    /// Bit position of a global qubit index inside a basis index.
    pub fn bit_of(&self, qubit: usize) -> usize {
        self.total_qubits() - 1 - qubit
    }

    pub fn encode(&self, i: usize, j: usize, w: usize) -> usize {
        debug_assert!(i < self.lattice_size() && j < self.lattice_size());
        debug_assert!(w < 1 << (self.n_q - 1));
        (i << (2 * self.n_q - 1)) | (j << (self.n_q - 1)) | w
    }

    pub fn decode(&self, index: usize) -> (usize, usize, usize) {
        let n = self.n_q;
        let mask = (1 << n) - 1;
        let work_mask = (1 << (n - 1)) - 1;
        (
            (index >> (2 * n - 1)) & mask,
            (index >> (n - 1)) & mask,
            index & work_mask,
        )
    }

    /// Workspace bits of a basis index.
    pub fn work_bits(&self, index: usize) -> usize {
        index & ((1 << (self.n_q - 1)) - 1)
    }
}
