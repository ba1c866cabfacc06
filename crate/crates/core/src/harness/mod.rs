//! Experiment harness: configuration, initial states, lockstep noisy and
//! reference runs, figure recipes and output files.

mod config;
mod output;
mod recipe;
mod run;
mod smile;
mod verify;

pub use config::{ExperimentConfig, InitialState};
pub use output::{format_metrics_csv, format_snapshot_csv, write_outputs, METRICS_HEADER};
pub use recipe::{recipe, Figure, NamedConfig};
pub use run::{run_experiment, simulate, ExperimentResult, Simulation, NORM_DRIFT_LIMIT};
pub use smile::build_initial_smile;
pub use verify::{verify, VerifyReport};
