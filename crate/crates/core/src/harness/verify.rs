//! Oracle-equivalence self-test behind `catmap verify`.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::circuit::{
    build_cat_iteration, iteration_gate_count_formula, reference_iteration_gate_count, GateCount,
};
use crate::error::Result;
use crate::layout::RegisterLayout;
use crate::oracle::LatticeDistribution;
use crate::state::{Backend, QuantumState};
use crate::C64;

/// Per-entry probability tolerance for the quantum/classical comparison.
pub const PROBABILITY_TOL: f64 = 1e-12;

#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub n_q: usize,
    pub steps: usize,
    /// Largest `| |a_ij|^2 - w_ij |` over all steps and lattice points.
    pub max_probability_error: f64,
    /// Largest workspace probability after any iteration.
    pub max_work_mass: f64,
    pub gate_count: GateCount,
    pub formula: GateCount,
    pub reference_total: usize,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.max_probability_error <= PROBABILITY_TOL
            && self.max_work_mass <= crate::metrics::WORKSPACE_TOL
            && self.gate_count == self.formula
    }

    /// Implemented total minus the literature count `16 n_q - 22`.
    pub fn gate_delta(&self) -> i64 {
        self.gate_count.total() as i64 - self.reference_total as i64
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n_q = {}, {} iterations", self.n_q, self.steps)?;
        writeln!(f, "max |a_ij|^2 error   = {:e}", self.max_probability_error)?;
        writeln!(f, "max workspace mass   = {:e}", self.max_work_mass)?;
        let g = self.gate_count;
        writeln!(
            f,
            "gates per iteration  = {} ({} Toffoli + {} CNOT), formula 16n-18 = {}",
            g.total(),
            g.toffoli,
            g.cnot,
            self.formula.total()
        )?;
        writeln!(
            f,
            "reference 16n-22     = {} (delta {:+})",
            self.reference_total,
            self.gate_delta()
        )?;
        write!(
            f,
            "result               = {}",
            if self.passed() { "PASS" } else { "FAIL" }
        )
    }
}

/// Iterate a random non-uniform superposition over the whole lattice and
/// compare every probability with the classically transported weights.
pub fn verify(n_q: usize, steps: usize) -> Result<VerifyReport> {
    let layout = RegisterLayout::new(n_q)?;
    let n = layout.lattice_size();
    let mut rng = ChaCha8Rng::seed_from_u64(n_q as u64);
    let raw: Vec<f64> = (0..n * n).map(|_| rng.gen_range(0.1..1.0)).collect();
    let total: f64 = raw.iter().sum();
    let weights: Vec<f64> = raw.iter().map(|w| w / total).collect();
    let entries = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| {
            (
                layout.encode(i, j, 0),
                C64::new(weights[i * n + j].sqrt(), 0.0),
            )
        })
        .collect();
    let mut state = QuantumState::from_entries(&layout, entries, Backend::Monomial);
    let mut classical = LatticeDistribution::from_weights(n, weights)?;
    let circuit = build_cat_iteration(&layout);

    let mut max_probability_error: f64 = 0.0;
    let mut max_work_mass: f64 = 0.0;
    for _ in 0..steps {
        state.apply_all(circuit.gates())?;
        classical = classical.iterate(1);
        max_work_mass = max_work_mass.max(state.work_mass());
        for i in 0..n {
            for j in 0..n {
                let p = state.amplitude(layout.encode(i, j, 0)).norm_sqr();
                max_probability_error =
                    max_probability_error.max((p - classical.weight((i, j))).abs());
            }
        }
    }
    Ok(VerifyReport {
        n_q,
        steps,
        max_probability_error,
        max_work_mass,
        gate_count: circuit.gate_count(),
        formula: iteration_gate_count_formula(n_q),
        reference_total: reference_iteration_gate_count(n_q),
    })
}
