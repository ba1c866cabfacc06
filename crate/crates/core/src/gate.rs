//! Controlled 2x2 gates.

use std::fmt;

use num_complex::Complex64;

use crate::error::{CatError, Result};
use crate::C64;

const ZERO: C64 = Complex64::new(0.0, 0.0);
const ONE: C64 = Complex64::new(1.0, 0.0);

/// A 2x2 complex matrix acting on the target qubit, row-major:
/// `[[b00, b01], [b10, b11]]` maps `(a0, a1)` to
/// `(b00 a0 + b01 a1, b10 a0 + b11 a1)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Block(pub [[C64; 2]; 2]);

impl Block {
    /// The exchange (Pauli X) block of NOT, CNOT and Toffoli.
    pub const X: Block = Block([[ZERO, ONE], [ONE, ZERO]]);
    pub const IDENTITY: Block = Block([[ONE, ZERO], [ZERO, ONE]]);

    pub fn diagonal(d0: C64, d1: C64) -> Block {
        Block([[d0, ZERO], [ZERO, d1]])
    }

    pub fn entry(&self, row: usize, col: usize) -> C64 {
        self.0[row][col]
    }

    pub fn mul(&self, rhs: &Block) -> Block {
        let a = &self.0;
        let b = &rhs.0;
        let mut out = [[ZERO; 2]; 2];
        for (r, row) in out.iter_mut().enumerate() {
            for (c, cell) in row.iter_mut().enumerate() {
                *cell = a[r][0] * b[0][c] + a[r][1] * b[1][c];
            }
        }
        Block(out)
    }

    pub fn adjoint(&self) -> Block {
        let a = &self.0;
        Block([
            [a[0][0].conj(), a[1][0].conj()],
            [a[0][1].conj(), a[1][1].conj()],
        ])
    }

    /// Largest entry-wise deviation of `B^dagger B` from the identity.
    pub fn unitarity_error(&self) -> f64 {
        let p = self.adjoint().mul(self);
        let mut worst: f64 = 0.0;
        for r in 0..2 {
            for c in 0..2 {
                let expect = if r == c { ONE } else { ZERO };
                worst = worst.max((p.0[r][c] - expect).norm());
            }
        }
        worst
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_error() <= tol
    }

    /// Exactly one nonzero entry per row and column.
    pub fn is_monomial(&self) -> bool {
        let nz = |r: usize, c: usize| self.0[r][c] != ZERO;
        let diagonal = nz(0, 0) && nz(1, 1) && !nz(0, 1) && !nz(1, 0);
        let anti = nz(0, 1) && nz(1, 0) && !nz(0, 0) && !nz(1, 1);
        diagonal || anti
    }

    pub fn is_anti_diagonal(&self) -> bool {
        self.0[0][0] == ZERO && self.0[1][1] == ZERO
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GateKind {
    Not,
    Cnot,
    Toffoli,
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GateKind::Not => "X",
            GateKind::Cnot => "CNOT",
            GateKind::Toffoli => "TOFFOLI",
        })
    }
}

/// A 2x2 block on `target`, applied only where every control qubit is 1.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GateInstance {
    controls: [usize; 2],
    n_controls: u8,
    target: usize,
    block: Block,
}

impl GateInstance {
    pub fn new(controls: &[usize], target: usize, block: Block) -> Result<Self> {
        if controls.len() > 2 {
            return Err(CatError::RegisterMismatch(format!(
                "at most two controls supported, got {}",
                controls.len()
            )));
        }
        for (k, &c) in controls.iter().enumerate() {
            if c == target || controls[..k].contains(&c) {
                return Err(CatError::DuplicateQubit(c));
            }
        }
        let mut slots = [0; 2];
        slots[..controls.len()].copy_from_slice(controls);
        Ok(Self {
            controls: slots,
            n_controls: controls.len() as u8,
            target,
            block,
        })
    }

    pub fn not(target: usize) -> Self {
        Self::new(&[], target, Block::X).expect("single qubit")
    }

    pub fn cnot(control: usize, target: usize) -> Result<Self> {
        Self::new(&[control], target, Block::X)
    }

    pub fn toffoli(c1: usize, c2: usize, target: usize) -> Result<Self> {
        Self::new(&[c1, c2], target, Block::X)
    }

    pub fn controls(&self) -> &[usize] {
        &self.controls[..self.n_controls as usize]
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn block(&self) -> &Block {
        &self.block
    }

    pub fn with_block(&self, block: Block) -> Self {
        Self { block, ..*self }
    }

    pub fn kind(&self) -> GateKind {
        match self.n_controls {
            0 => GateKind::Not,
            1 => GateKind::Cnot,
            _ => GateKind::Toffoli,
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.block.is_monomial()
    }

    /// Largest qubit index touched by the gate.
    pub fn max_qubit(&self) -> usize {
        self.controls()
            .iter()
            .copied()
            .fold(self.target, usize::max)
    }
}

impl fmt::Display for GateInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind())?;
        for c in self.controls() {
            write!(f, " {c}")?;
        }
        write!(f, " {}", self.target)
    }
}
