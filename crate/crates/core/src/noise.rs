//! Random gate perturbations.
//!
//! Two channels act on the 2x2 block of every NOT/CNOT/Toffoli application:
//!
//! * phase noise left-multiplies the block by `diag(e^{i t1}, e^{i t2})`
//!   with `t1, t2` uniform in `[-eps_phi, eps_phi]`. The result is still a
//!   permutation with phases, so basis-state probabilities are unaffected.
//! * amplitude noise multiplies the eigenvalues `+1, -1` of the exchange
//!   block by `e^{i h1}`, `e^{i h2}` with `h1, h2` uniform in
//!   `(-eps_amp, eps_amp)`. The block then leaks amplitude onto its diagonal.
//!
//! When both are active the amplitude perturbation is applied to the ideal
//! block first and the phase diagonal is multiplied on from the left.
//! Every application draws fresh phases.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{CatError, Result};
use crate::gate::{Block, GateInstance};
use crate::C64;

/// Pseudo-random stream used for all noise draws.
pub type NoiseRng = ChaCha8Rng;

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct NoiseConfig {
    /// Half-width of the off-diagonal phase distribution, radians.
    pub eps_phi: f64,
    /// Half-width of the eigenphase distribution, radians.
    pub eps_amp: f64,
    /// Multiply every amplitude by an independent phase in `[-pi, pi]` after
    /// each gate.
    pub per_amplitude_phase: bool,
    pub seed: u64,
    pub realization_index: u64,
}

impl NoiseConfig {
    pub fn noiseless() -> Self {
        Self::default()
    }

    pub fn phase(eps_phi: f64, seed: u64) -> Self {
        Self {
            eps_phi,
            seed,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (field, v) in [("eps_phi", self.eps_phi), ("eps_amp", self.eps_amp)] {
            if !(0.0..=std::f64::consts::PI).contains(&v) {
                return Err(CatError::config(field, format!("{v} outside [0, pi]")));
            }
        }
        Ok(())
    }

    pub fn is_noiseless(&self) -> bool {
        self.eps_phi == 0.0 && self.eps_amp == 0.0 && !self.per_amplitude_phase
    }

    /// True when every emitted gate is a permutation with phases.
    pub fn is_monomial(&self) -> bool {
        self.eps_amp == 0.0
    }

    pub fn with_realization(&self, realization_index: u64) -> Self {
        Self {
            realization_index,
            ..*self
        }
    }

    /// Independent generator for this realization: the master seed keys the
    /// ChaCha generator and the realization index selects its stream.
    pub fn rng(&self) -> NoiseRng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.realization_index);
        rng
    }
}

fn uniform_phase<R: Rng + ?Sized>(eps: f64, rng: &mut R) -> C64 {
    Complex64::from_polar(1.0, rng.gen_range(-eps..=eps))
}

/// Left-multiply the gate block by a random diagonal phase matrix.
pub fn phase_perturb<R: Rng + ?Sized>(
    gate: &GateInstance,
    eps_phi: f64,
    rng: &mut R,
) -> GateInstance {
    if eps_phi == 0.0 {
        return *gate;
    }
    let d0 = uniform_phase(eps_phi, rng);
    let d1 = uniform_phase(eps_phi, rng);
    gate.with_block(Block::diagonal(d0, d1).mul(gate.block()))
}

/// Exchange block with its eigenvalues rotated by `e^{i h1}` (symmetric
/// eigenvector) and `e^{i h2}` (antisymmetric eigenvector).
pub fn eigenphase_block(h1: f64, h2: f64) -> Block {
    let p = Complex64::from_polar(1.0, h1);
    let m = -Complex64::from_polar(1.0, h2);
    // V diag(p, m) V^dagger with V = [[1, 1], [1, -1]] / sqrt 2.
    let diag = (p + m) * 0.5;
    let off = (p - m) * 0.5;
    Block([[diag, off], [off, diag]])
}

/// Perturb the eigenvalues of an ideal exchange block.
pub fn amplitude_perturb<R: Rng + ?Sized>(
    gate: &GateInstance,
    eps: f64,
    rng: &mut R,
) -> GateInstance {
    if eps == 0.0 {
        return *gate;
    }
    debug_assert_eq!(*gate.block(), Block::X);
    let h1 = rng.gen_range(-eps..eps);
    let h2 = rng.gen_range(-eps..eps);
    gate.with_block(eigenphase_block(h1, h2))
}

/// Apply both channels configured in `config` to an ideal gate.
pub fn noisy_gate<R: Rng + ?Sized>(
    gate: &GateInstance,
    config: &NoiseConfig,
    rng: &mut R,
) -> GateInstance {
    let g = amplitude_perturb(gate, config.eps_amp, rng);
    phase_perturb(&g, config.eps_phi, rng)
}
