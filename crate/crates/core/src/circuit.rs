//! Reversible circuits for the lattice cat map.
//!
//! The modular adder is a ripple-carry construction on `n` bit pairs with
//! `n - 1` carry qubits. Writing `a_k`, `b_k` for bit `k` (0 = least
//! significant) of the source and destination registers and `c_k` for the
//! carry into bit `k` (`c_0 = 0` is implicit, `c_n` is never computed):
//!
//! * carry chain, `k = 0..n-2`: `TOFFOLI a_k b_k c_{k+1}`, `CNOT a_k b_k`,
//!   `TOFFOLI c_k b_k c_{k+1}` (the last Toffoli is dropped for `k = 0`);
//! * top bit: `CNOT a_{n-1} b_{n-1}`, `CNOT c_{n-1} b_{n-1}`;
//! * erasure, `k = n-2..0`: `TOFFOLI c_k b_k c_{k+1}`, `CNOT a_k b_k`,
//!   `TOFFOLI a_k b_k c_{k+1}`, `CNOT a_k b_k`, `CNOT c_k b_k` (the
//!   `c_0` gates are dropped for `k = 0`).
//!
//! This costs `4n - 6` Toffoli and `4n - 3` CNOT gates, `8n - 9` in total,
//! so one cat-map iteration (two additions) uses `16n - 18` gates.

use std::fmt::Write as _;

use crate::error::{CatError, Result};
use crate::gate::{Block, GateInstance, GateKind};
use crate::layout::RegisterLayout;

/// Gate total per cat-map iteration quoted in the literature for this
/// algorithm: `16 n_q - 22`.
pub fn reference_iteration_gate_count(n_q: usize) -> usize {
    16 * n_q - 22
}

/// Exact gate total of [`build_modular_adder`] for `n_q >= 2`.
pub fn adder_gate_count_formula(n_q: usize) -> GateCount {
    GateCount {
        toffoli: 4 * n_q - 6,
        cnot: 4 * n_q - 3,
        not: 0,
    }
}

/// Exact gate total of [`build_cat_iteration`] for `n_q >= 2`: `16 n_q - 18`.
pub fn iteration_gate_count_formula(n_q: usize) -> GateCount {
    let a = adder_gate_count_formula(n_q);
    GateCount {
        toffoli: 2 * a.toffoli,
        cnot: 2 * a.cnot,
        not: 0,
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct GateCount {
    pub toffoli: usize,
    pub cnot: usize,
    pub not: usize,
}

impl GateCount {
    pub fn total(&self) -> usize {
        self.toffoli + self.cnot + self.not
    }
}

/// Ordered gate list with ideal X blocks.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Circuit {
    gates: Vec<GateInstance>,
}

impl Circuit {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_gates(gates: Vec<GateInstance>) -> Self {
        Self { gates }
    }

    pub fn gates(&self) -> &[GateInstance] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn push(&mut self, gate: GateInstance) {
        self.gates.push(gate);
    }

    pub fn extend(&mut self, other: &Circuit) {
        self.gates.extend_from_slice(&other.gates);
    }

    pub fn gate_count(&self) -> GateCount {
        self.gates.iter().fold(GateCount::default(), |mut n, g| {
            match g.kind() {
                GateKind::Toffoli => n.toffoli += 1,
                GateKind::Cnot => n.cnot += 1,
                GateKind::Not => n.not += 1,
            }
            n
        })
    }

    /// Reverse gate order. Every gate here is an X block, hence self-inverse.
    pub fn invert(&self) -> Circuit {
        debug_assert!(self.gates.iter().all(|g| *g.block() == Block::X));
        Circuit {
            gates: self.gates.iter().rev().copied().collect(),
        }
    }

    /// One gate per line: `TOFFOLI c1 c2 t`, `CNOT c t` or `X t`.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for g in &self.gates {
            writeln!(out, "{g}").expect("write to string");
        }
        out
    }

    /// Parse the format written by [`Circuit::dump`]. Blank lines and lines
    /// starting with `#` are skipped.
    pub fn parse(text: &str) -> Result<Circuit> {
        let mut gates = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |message: String| CatError::Parse {
                location: format!("line {}", lineno + 1),
                message,
            };
            let mut fields = line.split_whitespace();
            let name = fields.next().expect("nonempty line");
            let qubits = fields
                .map(|f| f.parse::<usize>().map_err(|e| err(format!("{f:?}: {e}"))))
                .collect::<Result<Vec<_>>>()?;
            let arity = match name {
                "X" => 1,
                "CNOT" => 2,
                "TOFFOLI" => 3,
                other => return Err(err(format!("unknown gate {other:?}"))),
            };
            if qubits.len() != arity {
                return Err(err(format!(
                    "{name} takes {arity} qubits, got {}",
                    qubits.len()
                )));
            }
            let (target, controls) = qubits.split_last().expect("arity >= 1");
            gates.push(GateInstance::new(controls, *target, Block::X)?);
        }
        Ok(Circuit { gates })
    }
}

/// Circuit mapping `|a>|b>|0>` to `|a>|(a + b) mod 2^n>|0>`.
///
/// Registers are lists of global qubit indices, most significant first;
/// `work` must hold `n - 1` qubits in state `|0>`.
pub fn build_modular_adder(src: &[usize], dst: &[usize], work: &[usize]) -> Result<Circuit> {
    let n = src.len();
    if n < 2 {
        return Err(CatError::RegisterMismatch(format!(
            "adder registers need at least 2 qubits, got {n}"
        )));
    }
    if dst.len() != n || work.len() != n - 1 {
        return Err(CatError::RegisterMismatch(format!(
            "src {n}, dst {}, work {} (expected {n}, {n}, {})",
            dst.len(),
            work.len(),
            n - 1
        )));
    }
    // Bit k (LSB = 0) of a register stored MSB first.
    let a = |k: usize| src[n - 1 - k];
    let b = |k: usize| dst[n - 1 - k];
    // Carry into bit k, for k in 1..n.
    let c = |k: usize| work[n - 1 - k];

    let mut circuit = Circuit::new();
    let mut push = |g: Result<GateInstance>| -> Result<()> {
        circuit.push(g?);
        Ok(())
    };

    for k in 0..n - 1 {
        push(GateInstance::toffoli(a(k), b(k), c(k + 1)))?;
        push(GateInstance::cnot(a(k), b(k)))?;
        if k > 0 {
            push(GateInstance::toffoli(c(k), b(k), c(k + 1)))?;
        }
    }
    push(GateInstance::cnot(a(n - 1), b(n - 1)))?;
    push(GateInstance::cnot(c(n - 1), b(n - 1)))?;
    for k in (0..n - 1).rev() {
        if k > 0 {
            push(GateInstance::toffoli(c(k), b(k), c(k + 1)))?;
        }
        push(GateInstance::cnot(a(k), b(k)))?;
        push(GateInstance::toffoli(a(k), b(k), c(k + 1)))?;
        push(GateInstance::cnot(a(k), b(k)))?;
        if k > 0 {
            push(GateInstance::cnot(c(k), b(k)))?;
        }
    }
    Ok(circuit)
}

/// One cat-map step: `y += x`, then `x += y` (mod N).
pub fn build_cat_iteration(layout: &RegisterLayout) -> Circuit {
    let mut circuit =
        build_modular_adder(layout.x_qubits(), layout.y_qubits(), layout.work_qubits())
            .expect("layout registers are consistent");
    let second = build_modular_adder(layout.y_qubits(), layout.x_qubits(), layout.work_qubits())
        .expect("layout registers are consistent");
    circuit.extend(&second);
    circuit
}
