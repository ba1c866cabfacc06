//! Multi-qubit quantum state with dense and monomial backends.

mod dense;
mod monomial;

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;

use crate::error::{CatError, Result};
use crate::exec::Exec;
use crate::gate::GateInstance;
use crate::layout::RegisterLayout;
use crate::oracle::Point;
use crate::C64;

/// Storage strategy for the amplitudes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Backend {
    /// Full array of `2^(3 n_q - 1)` amplitudes; accepts any 2x2 block.
    Dense,
    /// Sorted list of occupied basis states; exact for permutation-with-phase
    /// gates. A non-monomial gate promotes the state to `Dense`.
    Monomial,
}

#[derive(Clone, Debug)]
enum Amplitudes {
    Dense(Vec<C64>),
    Monomial(Vec<(usize, C64)>),
}

#[derive(Clone, Debug)]
pub struct QuantumState {
    layout: RegisterLayout,
    amps: Amplitudes,
}

impl QuantumState {
    /// Uniform superposition `1/sqrt(N_d)` over `|i>|j>|0>` for every point of
    /// `support`. Duplicate points are counted once.
    pub fn init(layout: &RegisterLayout, support: &[Point], backend: Backend) -> Result<Self> {
        if support.is_empty() {
            return Err(CatError::EmptyDistribution);
        }
        let n = layout.lattice_size();
        if let Some(&(i, j)) = support.iter().find(|&&(i, j)| i >= n || j >= n) {
            return Err(CatError::PointOutOfRange { i, j, n });
        }
        let mut indices: Vec<usize> = support
            .iter()
            .map(|&(i, j)| layout.encode(i, j, 0))
            .collect();
        indices.sort_unstable();
        indices.dedup();
        let amp = Complex64::new(1.0 / (indices.len() as f64).sqrt(), 0.0);
        let entries: Vec<(usize, C64)> = indices.into_iter().map(|k| (k, amp)).collect();
        Ok(Self::from_entries(layout, entries, backend))
    }

    /// Single basis state `|i>|j>|w>` with amplitude 1.
    pub fn basis(layout: &RegisterLayout, index: usize, backend: Backend) -> Self {
        assert!(index < layout.dimension());
        Self::from_entries(layout, vec![(index, Complex64::new(1.0, 0.0))], backend)
    }

    /// Build from `(basis index, amplitude)` pairs; indices must be distinct.
    pub fn from_entries(
        layout: &RegisterLayout,
        mut entries: Vec<(usize, C64)>,
        backend: Backend,
    ) -> Self {
        entries.sort_unstable_by_key(|&(k, _)| k);
        let amps = match backend {
            Backend::Monomial => Amplitudes::Monomial(entries),
            Backend::Dense => {
                let mut v = vec![C64::default(); layout.dimension()];
                for (k, a) in entries {
                    v[k] = a;
                }
                Amplitudes::Dense(v)
            }
        };
        Self {
            layout: layout.clone(),
            amps,
        }
    }

    pub fn from_dense(layout: &RegisterLayout, amplitudes: Vec<C64>) -> Result<Self> {
        if amplitudes.len() != layout.dimension() {
            return Err(CatError::RegisterMismatch(format!(
                "expected {} amplitudes, got {}",
                layout.dimension(),
                amplitudes.len()
            )));
        }
        Ok(Self {
            layout: layout.clone(),
            amps: Amplitudes::Dense(amplitudes),
        })
    }

    pub fn layout(&self) -> &RegisterLayout {
        &self.layout
    }

    pub fn backend(&self) -> Backend {
        match self.amps {
            Amplitudes::Dense(_) => Backend::Dense,
            Amplitudes::Monomial(_) => Backend::Monomial,
        }
    }

    pub fn amplitude(&self, index: usize) -> C64 {
        match &self.amps {
            Amplitudes::Dense(v) => v[index],
            Amplitudes::Monomial(e) => e
                .binary_search_by_key(&index, |&(k, _)| k)
                .map(|pos| e[pos].1)
                .unwrap_or_default(),
        }
    }

    /// Nonzero amplitudes in ascending basis-index order.
    pub fn nonzero(&self) -> Nonzero<'_> {
        match &self.amps {
            Amplitudes::Dense(v) => Nonzero::Dense(v.iter().enumerate()),
            Amplitudes::Monomial(e) => Nonzero::Monomial(e.iter()),
        }
    }

    /// Number of nonzero amplitudes.
    pub fn support_len(&self) -> usize {
        self.nonzero().count()
    }

    /// Dense amplitude slice, if the state is dense.
    pub fn dense_amplitudes(&self) -> Option<&[C64]> {
        match &self.amps {
            Amplitudes::Dense(v) => Some(v),
            Amplitudes::Monomial(_) => None,
        }
    }

    pub fn to_dense_vec(&self) -> Vec<C64> {
        match &self.amps {
            Amplitudes::Dense(v) => v.clone(),
            Amplitudes::Monomial(e) => {
                let mut v = vec![C64::default(); self.layout.dimension()];
                for &(k, a) in e {
                    v[k] = a;
                }
                v
            }
        }
    }

    pub fn into_backend(self, backend: Backend) -> Self {
        if backend == self.backend() {
            return self;
        }
        let entries = self.nonzero().collect();
        Self::from_entries(&self.layout, entries, backend)
    }

    pub fn norm_sqr(&self) -> f64 {
        match &self.amps {
            Amplitudes::Dense(v) => dense::norm_sqr(v, Exec::default()),
            Amplitudes::Monomial(e) => monomial::norm_sqr(e),
        }
    }

    /// Total probability of basis states whose workspace register is not 0.
    pub fn work_mass(&self) -> f64 {
        let layout = &self.layout;
        match &self.amps {
            Amplitudes::Dense(v) => crate::exec::chunked_sum(v, Exec::default(), |base, chunk| {
                chunk
                    .iter()
                    .enumerate()
                    .filter(|&(k, _)| layout.work_bits(base + k) != 0)
                    .map(|(_, a)| a.norm_sqr())
                    .sum()
            }),
            Amplitudes::Monomial(e) => e
                .iter()
                .filter(|&&(k, _)| layout.work_bits(k) != 0)
                .map(|(_, a)| a.norm_sqr())
                .sum(),
        }
    }

    pub fn apply_gate(&mut self, gate: &GateInstance) -> Result<()> {
        self.apply_gate_with(gate, Exec::default())
    }

    /// Apply `gate`, choosing the execution strategy of the dense kernel.
    pub fn apply_gate_with(&mut self, gate: &GateInstance, exec: Exec) -> Result<()> {
        let total = self.layout.total_qubits();
        if gate.max_qubit() >= total {
            return Err(CatError::QubitOutOfRange {
                qubit: gate.max_qubit(),
                total,
            });
        }
        let target_bit = self.layout.bit_of(gate.target());
        let control_mask = gate
            .controls()
            .iter()
            .fold(0usize, |m, &c| m | 1 << self.layout.bit_of(c));
        if !gate.is_monomial() {
            if let Amplitudes::Monomial(_) = self.amps {
                let entries = self.nonzero().collect();
                *self = Self::from_entries(&self.layout, entries, Backend::Dense);
            }
        }
        match &mut self.amps {
            Amplitudes::Dense(v) => {
                dense::apply_block(v, target_bit, control_mask, gate.block(), exec)
            }
            Amplitudes::Monomial(e) => {
                monomial::apply_monomial(e, target_bit, control_mask, gate.block())
            }
        }
        Ok(())
    }

    /// Apply a gate sequence in order.
    pub fn apply_all<'a>(
        &mut self,
        gates: impl IntoIterator<Item = &'a GateInstance>,
    ) -> Result<()> {
        for g in gates {
            self.apply_gate(g)?;
        }
        Ok(())
    }

    /// Multiply every nonzero amplitude by an independent phase `e^{i theta}`,
    /// `theta` uniform in `[-pi, pi]`. Draws are taken in ascending basis-index
    /// order, so both backends consume the generator identically.
    pub fn apply_per_amplitude_phase<R: Rng + ?Sized>(&mut self, rng: &mut R) {
        let mut kick = |a: &mut C64| {
            let theta: f64 = rng.gen_range(-PI..=PI);
            *a *= Complex64::from_polar(1.0, theta);
        };
        match &mut self.amps {
            Amplitudes::Dense(v) => v
                .iter_mut()
                .filter(|a| **a != C64::default())
                .for_each(&mut kick),
            Amplitudes::Monomial(e) => e
                .iter_mut()
                .map(|(_, a)| a)
                .filter(|a| **a != C64::default())
                .for_each(&mut kick),
        }
    }

    /// Scale every amplitude by `factor`.
    pub fn scale(&mut self, factor: C64) {
        match &mut self.amps {
            Amplitudes::Dense(v) => v.iter_mut().for_each(|a| *a *= factor),
            Amplitudes::Monomial(e) => e.iter_mut().for_each(|(_, a)| *a *= factor),
        }
    }
}

/// Iterator over `(basis index, amplitude)` pairs with nonzero amplitude.
pub enum Nonzero<'a> {
    Dense(std::iter::Enumerate<std::slice::Iter<'a, C64>>),
    Monomial(std::slice::Iter<'a, (usize, C64)>),
}

impl Iterator for Nonzero<'_> {
    type Item = (usize, C64);

    fn next(&mut self) -> Option<Self::Item> {
        match self {
            Nonzero::Dense(it) => it
                .find(|(_, a)| **a != C64::default())
                .map(|(k, a)| (k, *a)),
            Nonzero::Monomial(it) => it.find(|(_, a)| *a != C64::default()).copied(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gate::Block;
    use crate::metrics::faithfulness;
    use proptest::prelude::*;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> C64 {
        Complex64::new(re, im)
    }

    fn assert_close(a: C64, b: C64, tol: f64) {
        assert!((a - b).norm() <= tol, "{a} vs {b}");
    }

    #[test]
    fn init_single_point_n2() {
        let layout = RegisterLayout::new(2).unwrap();
        let s = QuantumState::init(&layout, &[(0, 0)], Backend::Dense).unwrap();
        assert_eq!(s.amplitude(layout.encode(0, 0, 0)), c(1.0, 0.0));
        assert_eq!(s.support_len(), 1);
    }

    #[test]
    fn init_4096_points_has_amplitude_one_64th() {
        let layout = RegisterLayout::new(7).unwrap();
        let pts: Vec<Point> = (0..64).flat_map(|i| (0..64).map(move |j| (i, j))).collect();
        let s = QuantumState::init(&layout, &pts, Backend::Monomial).unwrap();
        assert_eq!(s.support_len(), 4096);
        for (_, a) in s.nonzero() {
            assert_eq!(a, c(1.0 / 64.0, 0.0));
        }
    }

    #[test]
    fn init_uniform_n2() {
        let layout = RegisterLayout::new(2).unwrap();
        let pts: Vec<Point> = (0..4).flat_map(|i| (0..4).map(move |j| (i, j))).collect();
        let s = QuantumState::init(&layout, &pts, Backend::Dense).unwrap();
        for &(i, j) in &pts {
            assert_eq!(s.amplitude(layout.encode(i, j, 0)), c(0.25, 0.0));
        }
        assert!((s.norm_sqr() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn init_errors() {
        let layout = RegisterLayout::new(2).unwrap();
        assert!(matches!(
            QuantumState::init(&layout, &[], Backend::Dense),
            Err(CatError::EmptyDistribution)
        ));
        let err = QuantumState::init(&layout, &[(1, 1), (4, 0)], Backend::Dense).unwrap_err();
        assert!(matches!(
            err,
            CatError::PointOutOfRange { i: 4, j: 0, n: 4 }
        ));
        assert!(err.to_string().contains("(4, 0)"));
    }

    // Small raw registers for truth-table checks: layout n_q = 2 has 5 qubits,
    // gates below only touch qubits 0..3 and the state keeps the rest at 0.
    fn bits(layout: &RegisterLayout, set: &[usize]) -> usize {
        set.iter().fold(0, |m, &q| m | 1 << layout.bit_of(q))
    }

    #[test]
    fn cnot_truth_table() {
        let layout = RegisterLayout::new(2).unwrap();
        for backend in [Backend::Dense, Backend::Monomial] {
            let mut s = QuantumState::basis(&layout, bits(&layout, &[0]), backend);
            s.apply_gate(&GateInstance::cnot(0, 1).unwrap()).unwrap();
            assert_eq!(s.amplitude(bits(&layout, &[0, 1])), c(1.0, 0.0));
            assert_eq!(s.support_len(), 1);
        }
    }

    #[test]
    fn toffoli_truth_table() {
        let layout = RegisterLayout::new(2).unwrap();
        let toff = GateInstance::toffoli(0, 1, 2).unwrap();
        for backend in [Backend::Dense, Backend::Monomial] {
            let mut s = QuantumState::basis(&layout, bits(&layout, &[0, 1]), backend);
            s.apply_gate(&toff).unwrap();
            assert_eq!(s.amplitude(bits(&layout, &[0, 1, 2])), c(1.0, 0.0));

            let mut s = QuantumState::basis(&layout, bits(&layout, &[0]), backend);
            s.apply_gate(&toff).unwrap();
            assert_eq!(s.amplitude(bits(&layout, &[0])), c(1.0, 0.0));
        }
    }

    #[test]
    fn phase_noised_cnot_hand_calculation() {
        // Block diag(e^{i t1}, e^{i t2}) X: |0> -> e^{i t2}|1>, |1> -> e^{i t1}|0>.
        let (t1, t2) = (0.4, -1.1);
        let (p1, p2) = (C64::from_polar(1.0, t1), C64::from_polar(1.0, t2));
        let block = Block::diagonal(p1, p2).mul(&Block::X);
        assert_eq!(block.entry(0, 1), p1);
        assert_eq!(block.entry(1, 0), p2);
        let gate = GateInstance::new(&[0], 1, block).unwrap();
        let layout = RegisterLayout::new(2).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let k10 = bits(&layout, &[0]);
        let k11 = bits(&layout, &[0, 1]);
        for backend in [Backend::Dense, Backend::Monomial] {
            let mut s = QuantumState::from_entries(
                &layout,
                vec![(k10, c(h, 0.0)), (k11, c(h, 0.0))],
                backend,
            );
            s.apply_gate(&gate).unwrap();
            assert_close(s.amplitude(k11), p2 * h, 1e-15);
            assert_close(s.amplitude(k10), p1 * h, 1e-15);
        }
    }

    #[test]
    fn gate_out_of_range_rejected() {
        let layout = RegisterLayout::new(2).unwrap();
        let mut s = QuantumState::basis(&layout, 0, Backend::Dense);
        let err = s
            .apply_gate(&GateInstance::cnot(0, 5).unwrap())
            .unwrap_err();
        assert!(matches!(
            err,
            CatError::QubitOutOfRange { qubit: 5, total: 5 }
        ));
    }

    #[test]
    fn non_monomial_gate_promotes_to_dense() {
        let layout = RegisterLayout::new(2).unwrap();
        let mut s = QuantumState::basis(&layout, 0, Backend::Monomial);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let hadamard = Block([[c(h, 0.0), c(h, 0.0)], [c(h, 0.0), c(-h, 0.0)]]);
        s.apply_gate(&GateInstance::new(&[], 0, hadamard).unwrap())
            .unwrap();
        assert_eq!(s.backend(), Backend::Dense);
        assert_eq!(s.support_len(), 2);
    }

    #[test]
    fn per_amplitude_phase_keeps_magnitudes() {
        let layout = RegisterLayout::new(3).unwrap();
        let pts: Vec<Point> = (0..8).map(|i| (i, (3 * i + 1) % 8)).collect();
        let s0 = QuantumState::init(&layout, &pts, Backend::Monomial).unwrap();
        let mut s = s0.clone();
        s.apply_per_amplitude_phase(&mut ChaCha8Rng::seed_from_u64(9));
        let mags = |s: &QuantumState| s.nonzero().map(|(k, a)| (k, a.norm())).collect::<Vec<_>>();
        for ((k0, m0), (k1, m1)) in mags(&s0).into_iter().zip(mags(&s)) {
            assert_eq!(k0, k1);
            assert!((m0 - m1).abs() < 1e-15);
        }
        assert!((faithfulness(&s, &s0).unwrap() - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn per_amplitude_phase_single_basis_state_is_global_phase() {
        let layout = RegisterLayout::new(2).unwrap();
        let mut s = QuantumState::basis(&layout, 6, Backend::Dense);
        s.apply_per_amplitude_phase(&mut ChaCha8Rng::seed_from_u64(1));
        assert_eq!(s.support_len(), 1);
        assert!((s.amplitude(6).norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn per_amplitude_phase_draws_match_across_backends() {
        let layout = RegisterLayout::new(3).unwrap();
        let pts: Vec<Point> = vec![(1, 2), (7, 7), (0, 5), (4, 4)];
        let mut d = QuantumState::init(&layout, &pts, Backend::Dense).unwrap();
        let mut m = QuantumState::init(&layout, &pts, Backend::Monomial).unwrap();
        d.apply_per_amplitude_phase(&mut ChaCha8Rng::seed_from_u64(4));
        m.apply_per_amplitude_phase(&mut ChaCha8Rng::seed_from_u64(4));
        assert_eq!(d.to_dense_vec(), m.to_dense_vec());
    }

    fn random_state(layout: &RegisterLayout, seed: u64) -> Vec<C64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut v: Vec<C64> = (0..layout.dimension())
            .map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let norm = v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        v.iter_mut().for_each(|a| *a /= norm);
        v
    }

    fn random_unitary_block(rng: &mut ChaCha8Rng) -> Block {
        let (a, b, g, d): (f64, f64, f64, f64) = (
            rng.gen_range(-PI..PI),
            rng.gen_range(-PI..PI),
            rng.gen_range(-PI..PI),
            rng.gen_range(0.0..PI),
        );
        let (cs, sn) = (d.cos(), d.sin());
        Block([
            [C64::from_polar(cs, a), C64::from_polar(sn, b)],
            [C64::from_polar(-sn, g - b), C64::from_polar(cs, g - a)],
        ])
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn gate_application_is_linear(seed in any::<u64>(), ar in -1.0f64..1.0, ai in -1.0f64..1.0) {
            let layout = RegisterLayout::new(2).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let block = random_unitary_block(&mut rng);
            prop_assert!(block.is_unitary(1e-12));
            let target = rng.gen_range(0..5);
            let control = (target + rng.gen_range(1..5)) % 5;
            let gate = GateInstance::new(&[control], target, block).unwrap();
            let (alpha, beta) = (c(ar, ai), c(0.3, -0.8));
            let s1 = random_state(&layout, seed ^ 1);
            let s2 = random_state(&layout, seed ^ 2);
            let combo: Vec<C64> = s1.iter().zip(&s2).map(|(x, y)| alpha * x + beta * y).collect();
            let run = |v: Vec<C64>| {
                let mut s = QuantumState::from_dense(&layout, v).unwrap();
                s.apply_gate(&gate).unwrap();
                s.to_dense_vec()
            };
            let lhs = run(combo);
            let (r1, r2) = (run(s1), run(s2));
            for k in 0..lhs.len() {
                prop_assert!((lhs[k] - (alpha * r1[k] + beta * r2[k])).norm() < 1e-12);
            }
        }

        #[test]
        fn gate_application_preserves_norm(seed in any::<u64>()) {
            let layout = RegisterLayout::new(3).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut s = QuantumState::from_dense(&layout, random_state(&layout, seed)).unwrap();
            for _ in 0..20 {
                let block = random_unitary_block(&mut rng);
                let target = rng.gen_range(0..8);
                let c1 = (target + rng.gen_range(1..8)) % 8;
                let gate = GateInstance::new(&[c1], target, block).unwrap();
                s.apply_gate(&gate).unwrap();
                prop_assert!((s.norm_sqr() - 1.0).abs() < 1e-10);
            }
        }

        #[test]
        fn monomial_gates_permute_magnitudes(seed in any::<u64>()) {
            let layout = RegisterLayout::new(3).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let pts: Vec<Point> = (0..5).map(|_| (rng.gen_range(0..8), rng.gen_range(0..8))).collect();
            let mut s = QuantumState::init(&layout, &pts, Backend::Monomial).unwrap();
            let mut before: Vec<f64> = s.nonzero().map(|(_, a)| a.norm()).collect();
            let support = s.support_len();
            for _ in 0..30 {
                let (t1, t2) = (rng.gen_range(-PI..PI), rng.gen_range(-PI..PI));
                let block = Block::diagonal(C64::from_polar(1.0, t1), C64::from_polar(1.0, t2)).mul(&Block::X);
                let target = rng.gen_range(0..8);
                let c1 = (target + rng.gen_range(1..8)) % 8;
                let c2 = (0..8).find(|&q| q != target && q != c1).unwrap();
                s.apply_gate(&GateInstance::new(&[c1, c2], target, block).unwrap()).unwrap();
            }
            prop_assert_eq!(s.support_len(), support);
            let mut after: Vec<f64> = s.nonzero().map(|(_, a)| a.norm()).collect();
            before.sort_by(f64::total_cmp);
            after.sort_by(f64::total_cmp);
            for (b, a) in before.iter().zip(&after) {
                prop_assert!((a - b).abs() < 1e-15);
            }
        }
    }
}
