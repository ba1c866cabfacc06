//! Fidelity, faithfulness, zero harmonic and coarse-grained cell probabilities.

use rand::distributions::{Distribution, WeightedIndex};
use rand::Rng;

use crate::error::{CatError, Result};
use crate::state::{Backend, QuantumState};
use crate::C64;

/// Probability mass outside `work = 0` below which the workspace counts as
/// cleared.
pub const WORKSPACE_TOL: f64 = 1e-20;

/// Denominators smaller than this make a normalized quantity undefined.
pub const UNDEFINED_BELOW: f64 = 1e-30;

/// Probabilities of the `2^n_g x 2^n_g` phase-space cells, indexed by the
/// top `n_g` bits of the x and y registers.
#[derive(Clone, Debug, PartialEq)]
pub struct CellGrid {
    n_g: usize,
    cells: Vec<f64>,
}

impl CellGrid {
    pub fn zeros(n_g: usize) -> Self {
        let side = 1 << n_g;
        Self {
            n_g,
            cells: vec![0.0; side * side],
        }
    }

    pub fn from_cells(n_g: usize, cells: Vec<f64>) -> Self {
        assert_eq!(cells.len(), 1 << (2 * n_g));
        Self { n_g, cells }
    }

    pub fn n_g(&self) -> usize {
        self.n_g
    }

    /// Cells per axis, `2^n_g`.
    pub fn side(&self) -> usize {
        1 << self.n_g
    }

    pub fn get(&self, ig: usize, jg: usize) -> f64 {
        self.cells[ig * self.side() + jg]
    }

    pub(crate) fn add(&mut self, ig: usize, jg: usize, w: f64) {
        let side = self.side();
        self.cells[ig * side + jg] += w;
    }

    /// Row-major values, `ig` major.
    pub fn cells(&self) -> &[f64] {
        &self.cells
    }

    pub fn total(&self) -> f64 {
        self.cells.iter().sum()
    }

    /// Cell with the largest probability; ties go to the first in row-major
    /// order.
    pub fn argmax(&self) -> (usize, usize) {
        let (k, _) = self
            .cells
            .iter()
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |best, (k, &w)| {
                if w > best.1 {
                    (k, w)
                } else {
                    best
                }
            });
        (k / self.side(), k % self.side())
    }

    pub fn max_abs_diff(&self, other: &CellGrid) -> f64 {
        assert_eq!(self.n_g, other.n_g);
        self.cells
            .iter()
            .zip(&other.cells)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    pub fn l1_distance(&self, other: &CellGrid) -> f64 {
        assert_eq!(self.n_g, other.n_g);
        self.cells
            .iter()
            .zip(&other.cells)
            .map(|(a, b)| (a - b).abs())
            .sum()
    }

    /// Element-wise mean of several grids of equal size.
    pub fn mean(grids: &[CellGrid]) -> CellGrid {
        assert!(!grids.is_empty());
        let mut out = CellGrid::zeros(grids[0].n_g);
        for g in grids {
            for (o, v) in out.cells.iter_mut().zip(&g.cells) {
                *o += v;
            }
        }
        let n = grids.len() as f64;
        out.cells.iter_mut().for_each(|v| *v /= n);
        out
    }
}

/// Metrics recorded after each map iteration.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MetricsRecord {
    pub t: usize,
    pub f: f64,
    pub fa: f64,
    /// `|Q0|` divided by its noiseless value; `None` if that is ~0.
    pub q0_norm: Option<f64>,
    /// Designated-cell probability divided by its noiseless value.
    pub w_cell_norm: Option<f64>,
}

/// `value / reference`, or `None` when the reference vanishes.
pub fn normalized(value: f64, reference: f64) -> Option<f64> {
    (reference.abs() >= UNDEFINED_BELOW).then(|| value / reference)
}

fn check_layouts(a: &QuantumState, b: &QuantumState) -> Result<()> {
    if a.layout() != b.layout() {
        return Err(CatError::LayoutMismatch);
    }
    Ok(())
}

/// Sum `f(a_k, b_k)` over basis states where both amplitudes may be nonzero,
/// walking whichever state is sparse.
fn paired_sum<T, F>(a: &QuantumState, b: &QuantumState, zero: T, f: F) -> T
where
    T: std::ops::Add<Output = T>,
    F: Fn(C64, C64) -> T,
{
    if b.backend() == Backend::Monomial {
        b.nonzero()
            .fold(zero, |acc, (k, bk)| acc + f(a.amplitude(k), bk))
    } else if a.backend() == Backend::Monomial {
        a.nonzero()
            .fold(zero, |acc, (k, ak)| acc + f(ak, b.amplitude(k)))
    } else {
        let (va, vb) = (a.dense_amplitudes().unwrap(), b.dense_amplitudes().unwrap());
        va.iter().zip(vb).fold(zero, |acc, (&x, &y)| acc + f(x, y))
    }
}

/// Inner product `<reference|noisy>`.
pub fn overlap(noisy: &QuantumState, reference: &QuantumState) -> Result<C64> {
    check_layouts(noisy, reference)?;
    Ok(paired_sum(noisy, reference, C64::default(), |a, b| {
        b.conj() * a
    }))
}

/// `|<reference|noisy>|^2`.
pub fn fidelity(noisy: &QuantumState, reference: &QuantumState) -> Result<f64> {
    Ok(overlap(noisy, reference)?.norm_sqr())
}

/// `(sum_k |noisy_k| |reference_k|)^2`; blind to relative phases.
pub fn faithfulness(noisy: &QuantumState, reference: &QuantumState) -> Result<f64> {
    check_layouts(noisy, reference)?;
    let s = paired_sum(noisy, reference, 0.0, |a, b| a.norm() * b.norm());
    Ok(s * s)
}

/// `sum_{i,j} a_{ij,w=0} / N`, requiring the workspace to be cleared.
pub fn zero_harmonic(state: &QuantumState) -> Result<C64> {
    let mass = state.work_mass();
    if mass > WORKSPACE_TOL {
        return Err(CatError::WorkspaceNotCleared { mass });
    }
    Ok(zero_harmonic_projected(state))
}

/// Zero harmonic of the `work = 0` component, whatever leaked elsewhere.
pub fn zero_harmonic_projected(state: &QuantumState) -> C64 {
    let layout = state.layout();
    let sum = state
        .nonzero()
        .filter(|&(k, _)| layout.work_bits(k) == 0)
        .fold(C64::default(), |acc, (_, a)| acc + a);
    sum / layout.lattice_size() as f64
}

fn cell_of(state: &QuantumState, n_g: usize, index: usize) -> (usize, usize) {
    let layout = state.layout();
    let shift = layout.n_q() - n_g;
    let (i, j, _) = layout.decode(index);
    (i >> shift, j >> shift)
}

fn check_level(state: &QuantumState, n_g: usize) -> Result<()> {
    let n_q = state.layout().n_q();
    if n_g == 0 || n_g > n_q {
        return Err(CatError::CoarseLevel { n_g, n_q });
    }
    Ok(())
}

/// Exact cell probabilities from the top `n_g` qubits of each coordinate
/// register. The workspace register is summed over.
pub fn coarse_grain(state: &QuantumState, n_g: usize) -> Result<CellGrid> {
    check_level(state, n_g)?;
    let mut grid = CellGrid::zeros(n_g);
    for (k, a) in state.nonzero() {
        let (ig, jg) = cell_of(state, n_g, k);
        grid.add(ig, jg, a.norm_sqr());
    }
    Ok(grid)
}

/// Empirical cell frequencies from `shots` projective measurements.
pub fn sample_cells<R: Rng + ?Sized>(
    state: &QuantumState,
    n_g: usize,
    shots: usize,
    rng: &mut R,
) -> Result<CellGrid> {
    check_level(state, n_g)?;
    if shots == 0 {
        return Err(CatError::config("shots", "must be at least 1"));
    }
    let (indices, weights): (Vec<usize>, Vec<f64>) =
        state.nonzero().map(|(k, a)| (k, a.norm_sqr())).unzip();
    let dist =
        WeightedIndex::new(&weights).map_err(|e| CatError::config("state", e.to_string()))?;
    let side = 1 << n_g;
    let mut counts = vec![0u64; side * side];
    for _ in 0..shots {
        let (ig, jg) = cell_of(state, n_g, indices[dist.sample(rng)]);
        counts[ig * side + jg] += 1;
    }
    let cells = counts
        .into_iter()
        .map(|c| c as f64 / shots as f64)
        .collect();
    Ok(CellGrid::from_cells(n_g, cells))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::layout::RegisterLayout;
    use crate::oracle::Point;
    use num_complex::Complex64;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn all_points(n: usize) -> Vec<Point> {
        (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect()
    }

    #[test]
    fn fidelity_basics() {
        let layout = RegisterLayout::new(2).unwrap();
        let a = QuantumState::basis(&layout, 4, Backend::Dense);
        let b = QuantumState::basis(&layout, 8, Backend::Monomial);
        assert_eq!(fidelity(&a, &a).unwrap(), 1.0);
        assert_eq!(fidelity(&a, &b).unwrap(), 0.0);
        assert_eq!(faithfulness(&a, &b).unwrap(), 0.0);
        assert_eq!(faithfulness(&b, &b).unwrap(), 1.0);
    }

    #[test]
    fn layout_mismatch_is_an_error() {
        let a = QuantumState::basis(&RegisterLayout::new(2).unwrap(), 0, Backend::Dense);
        let b = QuantumState::basis(&RegisterLayout::new(3).unwrap(), 0, Backend::Dense);
        assert!(matches!(fidelity(&a, &b), Err(CatError::LayoutMismatch)));
        assert!(matches!(
            faithfulness(&a, &b),
            Err(CatError::LayoutMismatch)
        ));
    }

    #[test]
    fn faithfulness_ignores_phase_scrambling() {
        let layout = RegisterLayout::new(4).unwrap();
        let pts: Vec<Point> = (0..16).map(|i| (i, (5 * i + 3) % 16)).collect();
        let s = QuantumState::init(&layout, &pts, Backend::Monomial).unwrap();
        for seed in 0..5 {
            let mut scrambled = s.clone();
            scrambled.apply_per_amplitude_phase(&mut ChaCha8Rng::seed_from_u64(seed));
            assert!((faithfulness(&scrambled, &s).unwrap() - 1.0).abs() <= 1e-12);
            assert!(fidelity(&scrambled, &s).unwrap() < 1.0);
        }
    }

    #[test]
    fn zero_harmonic_values() {
        let layout = RegisterLayout::new(2).unwrap();
        let s = QuantumState::init(&layout, &[(3, 1)], Backend::Dense).unwrap();
        assert_eq!(zero_harmonic(&s).unwrap(), Complex64::new(0.25, 0.0));

        let layout = RegisterLayout::new(5).unwrap();
        let pts: Vec<Point> = (0..32)
            .flat_map(|i| (0..3).map(move |j| (i, 7 * j)))
            .collect();
        let s = QuantumState::init(&layout, &pts, Backend::Monomial).unwrap();
        let expect = (pts.len() as f64).sqrt() / 32.0;
        assert!((zero_harmonic(&s).unwrap().re - expect).abs() < 1e-15);
    }

    #[test]
    fn zero_harmonic_requires_cleared_workspace() {
        let layout = RegisterLayout::new(3).unwrap();
        let s = QuantumState::basis(&layout, layout.encode(1, 1, 2), Backend::Monomial);
        assert!(matches!(
            zero_harmonic(&s),
            Err(CatError::WorkspaceNotCleared { .. })
        ));
        assert_eq!(zero_harmonic_projected(&s), C64::default());
    }

    #[test]
    fn zero_harmonic_collapses_under_scrambling() {
        let layout = RegisterLayout::new(7).unwrap();
        let pts: Vec<Point> = (0..64)
            .flat_map(|i| (0..64).map(move |j| (2 * i, j)))
            .collect();
        let s = QuantumState::init(&layout, &pts, Backend::Monomial).unwrap();
        let clean = (4096f64).sqrt() / 128.0;
        let mean: f64 = (0..10)
            .map(|seed| {
                let mut t = s.clone();
                t.apply_per_amplitude_phase(&mut ChaCha8Rng::seed_from_u64(seed));
                zero_harmonic(&t).unwrap().norm()
            })
            .sum::<f64>()
            / 10.0;
        assert!(mean < 0.2 * clean, "{mean} vs {clean}");
    }

    #[test]
    fn coarse_grain_uniform_and_finest() {
        let layout = RegisterLayout::new(3).unwrap();
        let s = QuantumState::init(&layout, &all_points(8), Backend::Dense).unwrap();
        for n_g in 1..=3 {
            let grid = coarse_grain(&s, n_g).unwrap();
            let cells = (1 << (2 * n_g)) as f64;
            assert!(grid
                .cells()
                .iter()
                .all(|&w| (w - 1.0 / cells).abs() < 1e-15));
        }
        let pts = vec![(1, 2), (6, 0), (3, 3)];
        let s = QuantumState::init(&layout, &pts, Backend::Monomial).unwrap();
        let grid = coarse_grain(&s, 3).unwrap();
        for i in 0..8 {
            for j in 0..8 {
                let expect = s.amplitude(layout.encode(i, j, 0)).norm_sqr();
                assert_eq!(grid.get(i, j), expect);
            }
        }
        assert!(matches!(
            coarse_grain(&s, 0),
            Err(CatError::CoarseLevel { .. })
        ));
        assert!(matches!(
            coarse_grain(&s, 4),
            Err(CatError::CoarseLevel { .. })
        ));
    }

    #[test]
    fn sampling_single_basis_state() {
        let layout = RegisterLayout::new(3).unwrap();
        let s = QuantumState::init(&layout, &[(5, 2)], Backend::Monomial).unwrap();
        let grid = sample_cells(&s, 2, 1000, &mut ChaCha8Rng::seed_from_u64(0)).unwrap();
        assert_eq!(grid.get(2, 1), 1.0);
        assert!(sample_cells(&s, 2, 0, &mut ChaCha8Rng::seed_from_u64(0)).is_err());
    }

    #[test]
    fn sampling_uniform_state_n_g_1() {
        let layout = RegisterLayout::new(3).unwrap();
        let s = QuantumState::init(&layout, &all_points(8), Backend::Dense).unwrap();
        let grid = sample_cells(&s, 1, 40_000, &mut ChaCha8Rng::seed_from_u64(5)).unwrap();
        for &w in grid.cells() {
            assert!((w - 0.25).abs() < 0.01, "{w}");
        }
        assert!((grid.total() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn sampling_concentrates_at_binomial_rate() {
        // Two occupied cells with weights 1/3 and 2/3.
        let layout = RegisterLayout::new(3).unwrap();
        let pts = vec![(0, 0), (7, 7), (6, 7)];
        let s = QuantumState::init(&layout, &pts, Backend::Monomial).unwrap();
        let exact = coarse_grain(&s, 1).unwrap();
        let shots = 1_000_000;
        let mut within = 0;
        let seeds = 20;
        for seed in 0..seeds {
            let est = sample_cells(&s, 1, shots, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
            let ok = exact
                .cells()
                .iter()
                .zip(est.cells())
                .all(|(&w, &e)| (e - w).abs() <= 3.0 * (w * (1.0 - w) / shots as f64).sqrt());
            within += ok as usize;
        }
        assert!(within >= seeds as usize - 1, "{within}/{seeds}");
    }

    #[test]
    fn grid_helpers() {
        let g = CellGrid::from_cells(1, vec![0.1, 0.4, 0.4, 0.1]);
        assert_eq!(g.argmax(), (0, 1));
        assert_eq!(g.side(), 2);
        let h = CellGrid::from_cells(1, vec![0.2, 0.3, 0.4, 0.1]);
        assert!((g.l1_distance(&h) - 0.2).abs() < 1e-15);
        assert!((g.max_abs_diff(&h) - 0.1).abs() < 1e-15);
        let m = CellGrid::mean(&[g, h]);
        assert!((m.get(0, 0) - 0.15).abs() < 1e-15);
        assert_eq!(normalized(1.0, 0.0), None);
        assert_eq!(normalized(1.0, 2.0), Some(0.5));
    }
}
