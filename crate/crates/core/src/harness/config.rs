//! Experiment configuration and its flat TOML file form.
//!
//! ```toml
//! n_q = 7
//! n_g = 5
//! t_max = 100
//! invert_at = 50              # optional
//! eps_phi = "pi"              # radians, number or "pi"
//! eps_amp = 0.0
//! per_amplitude_phase = false
//! seed = 1
//! realizations = 1
//! initial = "smile"           # or a point-list file, one `i j` per line
//! snapshot_times = [0, 50, 100]
//! designated_cell = [16, 9]   # optional
//! force_dense = false
//! output_dir = "out"          # default
//! ```
//!
//! Relative paths are resolved against the directory of the config file.

use std::f64::consts::PI;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{CatError, Result};
use crate::noise::NoiseConfig;
use crate::oracle::{read_points, Point};

use super::smile::build_initial_smile;

#[derive(Clone, Debug, PartialEq)]
pub enum InitialState {
    Smile,
    Points(PathBuf),
}

impl InitialState {
    pub fn points(&self, n_q: usize) -> Result<Vec<Point>> {
        match self {
            InitialState::Smile => build_initial_smile(n_q),
            InitialState::Points(path) => read_points(path),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub n_q: usize,
    pub n_g: usize,
    pub t_max: usize,
    pub invert_at: Option<usize>,
    pub noise: NoiseConfig,
    pub realizations: usize,
    pub initial: InitialState,
    pub snapshot_times: Vec<usize>,
    pub designated_cell: Option<(usize, usize)>,
    pub force_dense: bool,
    pub output_dir: PathBuf,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            n_q: 7,
            n_g: 5,
            t_max: 100,
            invert_at: None,
            noise: NoiseConfig::default(),
            realizations: 1,
            initial: InitialState::Smile,
            snapshot_times: Vec::new(),
            designated_cell: None,
            force_dense: false,
            output_dir: PathBuf::from("out"),
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if !(2..=10).contains(&self.n_q) {
            return Err(CatError::config(
                "n_q",
                format!("{} outside 2..=10", self.n_q),
            ));
        }
        if self.n_g == 0 || self.n_g > self.n_q {
            return Err(CatError::config(
                "n_g",
                format!("{} outside 1..={}", self.n_g, self.n_q),
            ));
        }
        if self.realizations == 0 {
            return Err(CatError::config("realizations", "must be at least 1"));
        }
        if let Some(t) = self.invert_at.filter(|&t| t > self.t_max) {
            return Err(CatError::config(
                "invert_at",
                format!("{t} > t_max {}", self.t_max),
            ));
        }
        if let Some(t) = self.snapshot_times.iter().find(|&&t| t > self.t_max) {
            return Err(CatError::config(
                "snapshot_times",
                format!("{t} > t_max {}", self.t_max),
            ));
        }
        if let Some((ig, jg)) = self.designated_cell {
            let side = 1 << self.n_g;
            if ig >= side || jg >= side {
                return Err(CatError::config(
                    "designated_cell",
                    format!("({ig}, {jg}) outside a {side}x{side} grid"),
                ));
            }
        }
        self.noise.validate()
    }

    pub fn from_toml(text: &str, base_dir: &Path) -> Result<Self> {
        let file: ConfigFile = toml::from_str(text).map_err(|e| {
            let field = e.message().split('`').nth(1).unwrap_or("config").to_owned();
            CatError::Config {
                field,
                message: e.message().trim().to_owned(),
            }
        })?;
        let config = file.into_config(base_dir)?;
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CatError::io(path, e))?;
        let base = path.parent().unwrap_or(Path::new("."));
        Self::from_toml(&text, base)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(&ConfigFile::from_config(self)).expect("config serializes")
    }
}

/// Angle given as a number of radians or the string `"pi"`.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum Angle {
    Radians(f64),
    Named(NamedAngle),
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
enum NamedAngle {
    #[serde(rename = "pi")]
    Pi,
}

impl Angle {
    fn radians(self) -> f64 {
        match self {
            Angle::Radians(v) => v,
            Angle::Named(NamedAngle::Pi) => PI,
        }
    }

    fn from_radians(v: f64) -> Self {
        if v == PI {
            Angle::Named(NamedAngle::Pi)
        } else {
            Angle::Radians(v)
        }
    }
}

fn zero_angle() -> Angle {
    Angle::Radians(0.0)
}

fn one() -> usize {
    1
}

fn default_output_dir() -> PathBuf {
    PathBuf::from("out")
}

fn smile() -> String {
    "smile".to_owned()
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    n_q: usize,
    n_g: usize,
    t_max: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    invert_at: Option<usize>,
    #[serde(default = "zero_angle")]
    eps_phi: Angle,
    #[serde(default = "zero_angle")]
    eps_amp: Angle,
    #[serde(default)]
    per_amplitude_phase: bool,
    #[serde(default)]
    seed: u64,
    #[serde(default = "one")]
    realizations: usize,
    #[serde(default = "smile")]
    initial: String,
    #[serde(default)]
    snapshot_times: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    designated_cell: Option<[usize; 2]>,
    #[serde(default)]
    force_dense: bool,
    #[serde(default = "default_output_dir")]
    output_dir: PathBuf,
}

impl ConfigFile {
    fn into_config(self, base: &Path) -> Result<ExperimentConfig> {
        let initial = match self.initial.as_str() {
            "smile" => InitialState::Smile,
            "" => return Err(CatError::config("initial", "empty")),
            path => InitialState::Points(base.join(path)),
        };
        Ok(ExperimentConfig {
            n_q: self.n_q,
            n_g: self.n_g,
            t_max: self.t_max,
            invert_at: self.invert_at,
            noise: NoiseConfig {
                eps_phi: self.eps_phi.radians(),
                eps_amp: self.eps_amp.radians(),
                per_amplitude_phase: self.per_amplitude_phase,
                seed: self.seed,
                realization_index: 0,
            },
            realizations: self.realizations,
            initial,
            snapshot_times: self.snapshot_times,
            designated_cell: self.designated_cell.map(|[a, b]| (a, b)),
            force_dense: self.force_dense,
            output_dir: base.join(self.output_dir),
        })
    }

    fn from_config(c: &ExperimentConfig) -> Self {
        Self {
            n_q: c.n_q,
            n_g: c.n_g,
            t_max: c.t_max,
            invert_at: c.invert_at,
            eps_phi: Angle::from_radians(c.noise.eps_phi),
            eps_amp: Angle::from_radians(c.noise.eps_amp),
            per_amplitude_phase: c.noise.per_amplitude_phase,
            seed: c.noise.seed,
            realizations: c.realizations,
            initial: match &c.initial {
                InitialState::Smile => "smile".to_owned(),
                InitialState::Points(p) => p.display().to_string(),
            },
            snapshot_times: c.snapshot_times.clone(),
            designated_cell: c.designated_cell.map(|(a, b)| [a, b]),
            force_dense: c.force_dense,
            output_dir: c.output_dir.clone(),
        }
    }
}
