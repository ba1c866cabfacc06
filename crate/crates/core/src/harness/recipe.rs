//! Config batches reproducing the three published experiments.

use std::f64::consts::PI;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use crate::noise::NoiseConfig;

use super::config::{ExperimentConfig, InitialState};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Figure {
    /// Fidelity decay under phase noise and faithfulness at maximal noise.
    Fig1Left,
    /// Zero harmonic and designated-cell probability under phase noise.
    Fig1Right,
    /// Coarse-grained snapshots with time inversion at t = 50.
    Fig2,
}

impl FromStr for Figure {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "fig1-left" => Ok(Figure::Fig1Left),
            "fig1-right" => Ok(Figure::Fig1Right),
            "fig2" => Ok(Figure::Fig2),
            other => Err(format!(
                "unknown recipe {other:?}, expected fig1-left, fig1-right or fig2"
            )),
        }
    }
}

impl fmt::Display for Figure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Figure::Fig1Left => "fig1-left",
            Figure::Fig1Right => "fig1-right",
            Figure::Fig2 => "fig2",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct NamedConfig {
    pub name: String,
    pub config: ExperimentConfig,
}

fn base() -> ExperimentConfig {
    ExperimentConfig {
        n_q: 7,
        n_g: 5,
        t_max: 100,
        initial: InitialState::Smile,
        noise: NoiseConfig {
            seed: 1,
            ..NoiseConfig::default()
        },
        ..ExperimentConfig::default()
    }
}

fn named(
    name: &str,
    eps_phi: f64,
    eps_amp: f64,
    tweak: impl Fn(&mut ExperimentConfig),
) -> NamedConfig {
    let mut config = base();
    config.noise.eps_phi = eps_phi;
    config.noise.eps_amp = eps_amp;
    config.output_dir = PathBuf::from(name);
    tweak(&mut config);
    NamedConfig {
        name: name.to_owned(),
        config,
    }
}

/// The config batch for `figure`. Output directories are the config names,
/// relative to wherever the batch is written.
pub fn recipe(figure: Figure) -> Vec<NamedConfig> {
    let keep = |_: &mut ExperimentConfig| {};
    match figure {
        Figure::Fig1Left => vec![
            named("phase_0.05", 0.05, 0.0, keep),
            named("phase_0.1", 0.1, 0.0, keep),
            named("phase_0.3", 0.3, 0.0, keep),
            named("phase_pi", PI, 0.0, keep),
            named("phase_pi_amp_0.01", PI, 0.01, keep),
        ],
        Figure::Fig1Right => vec![
            named("phase_0.07", 0.07, 0.0, keep),
            named("phase_0.2", 0.2, 0.0, keep),
            named("phase_pi", PI, 0.0, keep),
        ],
        Figure::Fig2 => {
            let inversion = |c: &mut ExperimentConfig| {
                c.invert_at = Some(50);
                c.snapshot_times = vec![0, 50, 100];
            };
            vec![
                named("phase_pi", PI, 0.0, inversion),
                named("phase_pi_amp_0.3", PI, 0.3, inversion),
            ]
        }
    }
}
