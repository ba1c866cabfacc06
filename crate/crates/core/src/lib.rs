//! Simulation of the discretized Arnold cat map on a multi-qubit register.
//!
//! The map `(x, y) -> (y + 2x, y + x) mod N` is realized by two reversible
//! modular additions built from CNOT and Toffoli gates. Gate noise comes in
//! two flavors: random phases on the off-diagonal gate entries, which leave
//! every basis-state probability untouched, and random eigenphase
//! perturbations, which mix amplitudes. The crate measures how each one
//! affects fidelity, faithfulness, the zero Fourier harmonic and the
//! coarse-grained cell probabilities.
//!
//! Two statevector backends are provided: a dense one for arbitrary 2x2
//! blocks and a monomial (permutation-with-phases) one that only tracks the
//! occupied basis states. Data-parallel kernels use rayon when the default
//! `parallel` feature is enabled and fall back to sequential loops otherwise.

pub mod circuit;
pub mod error;
pub mod exec;
pub mod gate;
pub mod harness;
pub mod layout;
pub mod metrics;
pub mod noise;
pub mod oracle;
pub mod pgm;
pub mod state;

pub use circuit::{Circuit, GateCount};
pub use error::{CatError, Result};
pub use exec::Exec;
pub use gate::{Block, GateInstance, GateKind};
pub use layout::RegisterLayout;
pub use metrics::{CellGrid, MetricsRecord};
pub use noise::NoiseConfig;
pub use oracle::{LatticeDistribution, Point};
pub use state::{Backend, QuantumState};

/// Complex amplitude type used throughout the crate.
pub type C64 = num_complex::Complex64;
