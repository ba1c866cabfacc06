//! Lockstep noisy/reference simulation.

use std::collections::BTreeMap;

use crate::circuit::{build_cat_iteration, Circuit};
use crate::error::{CatError, Result};
use crate::layout::RegisterLayout;
use crate::metrics::{
    coarse_grain, faithfulness, fidelity, normalized, zero_harmonic, zero_harmonic_projected,
    CellGrid, MetricsRecord,
};
use crate::noise::{noisy_gate, NoiseConfig, NoiseRng};
use crate::oracle::Point;
use crate::state::{Backend, QuantumState};

use super::config::ExperimentConfig;

/// Largest tolerated `| ||psi||^2 - 1 |` over a run.
pub const NORM_DRIFT_LIMIT: f64 = 1e-7;

/// One noise realization advanced in lockstep with its noiseless reference.
pub struct Simulation {
    forward: Circuit,
    inverse: Circuit,
    noise: NoiseConfig,
    rng: NoiseRng,
    invert_at: Option<usize>,
    n_g: usize,
    designated_cell: (usize, usize),
    reference: QuantumState,
    noisy: QuantumState,
    t: usize,
}

impl Simulation {
    pub fn new(config: &ExperimentConfig, points: &[Point], realization: u64) -> Result<Self> {
        config.validate()?;
        let layout = RegisterLayout::new(config.n_q)?;
        let noise = config.noise.with_realization(realization);
        let backend = if config.force_dense || !noise.is_monomial() {
            Backend::Dense
        } else {
            Backend::Monomial
        };
        let reference_backend = if config.force_dense {
            Backend::Dense
        } else {
            Backend::Monomial
        };
        let reference = QuantumState::init(&layout, points, reference_backend)?;
        let noisy = reference.clone().into_backend(backend);
        let designated_cell = match config.designated_cell {
            Some(cell) => cell,
            None => coarse_grain(&reference, config.n_g)?.argmax(),
        };
        let forward = build_cat_iteration(&layout);
        let inverse = forward.invert();
        Ok(Self {
            forward,
            inverse,
            noise,
            rng: noise.rng(),
            invert_at: config.invert_at,
            n_g: config.n_g,
            designated_cell,
            reference,
            noisy,
            t: 0,
        })
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn noisy(&self) -> &QuantumState {
        &self.noisy
    }

    pub fn reference(&self) -> &QuantumState {
        &self.reference
    }

    pub fn designated_cell(&self) -> (usize, usize) {
        self.designated_cell
    }

    /// Advance both states by one map iteration.
    pub fn step(&mut self) -> Result<()> {
        // forward up to invert_at, the inverse afterwards
        let circuit = match self.invert_at {
            Some(at) if self.t >= at => &self.inverse,
            _ => &self.forward,
        };
        for gate in circuit.gates() {
            self.reference.apply_gate(gate)?;
            let g = noisy_gate(gate, &self.noise, &mut self.rng);
            self.noisy.apply_gate(&g)?;
            if self.noise.per_amplitude_phase {
                self.noisy.apply_per_amplitude_phase(&mut self.rng);
            }
        }
        self.t += 1;
        let drift = (self.noisy.norm_sqr() - 1.0).abs();
        if drift > NORM_DRIFT_LIMIT {
            return Err(CatError::NormDrift {
                t: self.t,
                drift,
                limit: NORM_DRIFT_LIMIT,
            });
        }
        Ok(())
    }

    pub fn noisy_grid(&self) -> Result<CellGrid> {
        coarse_grain(&self.noisy, self.n_g)
    }

    pub fn reference_grid(&self) -> Result<CellGrid> {
        coarse_grain(&self.reference, self.n_g)
    }

    pub fn record(&self) -> Result<MetricsRecord> {
        let q0_ref = zero_harmonic(&self.reference)?.norm();
        let q0 = zero_harmonic_projected(&self.noisy).norm();
        let (ig, jg) = self.designated_cell;
        let w_ref = self.reference_grid()?.get(ig, jg);
        let w = self.noisy_grid()?.get(ig, jg);
        Ok(MetricsRecord {
            t: self.t,
            f: fidelity(&self.noisy, &self.reference)?,
            fa: faithfulness(&self.noisy, &self.reference)?,
            q0_norm: normalized(q0, q0_ref),
            w_cell_norm: normalized(w, w_ref),
        })
    }
}

/// Output of one realization.
#[derive(Clone, Debug)]
struct Realization {
    records: Vec<MetricsRecord>,
    snapshots: BTreeMap<usize, CellGrid>,
}

fn run_realization(config: &ExperimentConfig, points: &[Point], index: u64) -> Result<Realization> {
    let mut sim = Simulation::new(config, points, index)?;
    let mut records = Vec::with_capacity(config.t_max + 1);
    let mut snapshots = BTreeMap::new();
    loop {
        records.push(sim.record()?);
        if config.snapshot_times.contains(&sim.t()) {
            snapshots.insert(sim.t(), sim.noisy_grid()?);
        }
        if sim.t() == config.t_max {
            break;
        }
        sim.step()?;
    }
    Ok(Realization { records, snapshots })
}

/// Everything an experiment produces, before it is written to disk.
#[derive(Clone, Debug)]
pub struct ExperimentResult {
    pub config: ExperimentConfig,
    /// Number of occupied lattice points in the initial state.
    pub n_d: usize,
    /// Mean over realizations, one record per `t = 0..=t_max`.
    pub mean: Vec<MetricsRecord>,
    pub per_realization: Vec<Vec<MetricsRecord>>,
    /// Mean noisy cell grid at each snapshot time.
    pub snapshots: BTreeMap<usize, CellGrid>,
}

fn mean_option(values: impl Iterator<Item = Option<f64>>, n: f64) -> Option<f64> {
    values.sum::<Option<f64>>().map(|s| s / n)
}

fn mean_records(runs: &[Realization]) -> Vec<MetricsRecord> {
    let n = runs.len() as f64;
    (0..runs[0].records.len())
        .map(|k| {
            let at = |r: &Realization| r.records[k];
            MetricsRecord {
                t: runs[0].records[k].t,
                f: runs.iter().map(|r| at(r).f).sum::<f64>() / n,
                fa: runs.iter().map(|r| at(r).fa).sum::<f64>() / n,
                q0_norm: mean_option(runs.iter().map(|r| at(r).q0_norm), n),
                w_cell_norm: mean_option(runs.iter().map(|r| at(r).w_cell_norm), n),
            }
        })
        .collect()
}

#[cfg(feature = "parallel")]
fn run_all(config: &ExperimentConfig, points: &[Point]) -> Result<Vec<Realization>> {
    use rayon::prelude::*;
    (0..config.realizations as u64)
        .into_par_iter()
        .map(|r| run_realization(config, points, r))
        .collect()
}

#[cfg(not(feature = "parallel"))]
fn run_all(config: &ExperimentConfig, points: &[Point]) -> Result<Vec<Realization>> {
    (0..config.realizations as u64)
        .map(|r| run_realization(config, points, r))
        .collect()
}

/// Run every realization and aggregate, without touching the filesystem.
pub fn simulate(config: &ExperimentConfig) -> Result<ExperimentResult> {
    config.validate()?;
    let points = config.initial.points(config.n_q)?;
    // init_state rejects these too, but check before spawning workers
    if points.is_empty() {
        return Err(CatError::EmptyDistribution);
    }
    let runs = run_all(config, &points)?;
    let mean = mean_records(&runs);
    let snapshots = config
        .snapshot_times
        .iter()
        .map(|&t| {
            let grids: Vec<CellGrid> = runs.iter().map(|r| r.snapshots[&t].clone()).collect();
            (t, CellGrid::mean(&grids))
        })
        .collect();
    let mut distinct = points.clone();
    distinct.sort_unstable();
    distinct.dedup();
    Ok(ExperimentResult {
        config: config.clone(),
        n_d: distinct.len(),
        mean,
        per_realization: runs.into_iter().map(|r| r.records).collect(),
        snapshots,
    })
}

/// Simulate and write all output files into `config.output_dir`.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentResult> {
    // Fail on an unwritable directory before spending minutes simulating.
    super::output::prepare_dir(&config.output_dir)?;
    let result = simulate(config)?;
    super::output::write_outputs(&result)?;
    Ok(result)
}
