//! Run configuration: a single TOML file drives every subcommand, flags
//! override file values, and the fully resolved result is echoed into every
//! output file so a run can be reproduced from any of its artifacts.

use std::path::{Path, PathBuf};

use rabisim::model::ModelParams;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::CliError;

/// Inclusive uniform grid, `points` values from `start` to `stop`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridRange {
    pub start: f64,
    pub stop: f64,
    pub points: usize,
}

impl GridRange {
    pub const fn new(start: f64, stop: f64, points: usize) -> Self {
        GridRange { start, stop, points }
    }

    pub fn to_vec(self) -> Result<Vec<f64>, CliError> {
        if self.points == 0 {
            return Err(CliError::Config("empty grid: zero points requested".into()));
        }
        if !self.start.is_finite() || !self.stop.is_finite() || self.stop < self.start {
            return Err(CliError::Config(format!(
                "grid range [{}, {}] is not finite and ascending",
                self.start, self.stop
            )));
        }
        if self.points == 1 {
            return Ok(vec![self.start]);
        }
        let step = (self.stop - self.start) / (self.points - 1) as f64;
        Ok((0..self.points).map(|i| self.start + i as f64 * step).collect())
    }

    /// Parses the `start:stop:points` flag syntax.
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let parts: Vec<&str> = text.split(':').collect();
        if parts.len() != 3 {
            return Err(CliError::Config(format!(
                "grid `{text}` must have the form start:stop:points"
            )));
        }
        let bad = |what: &str| CliError::Config(format!("grid `{text}`: bad {what}"));
        Ok(GridRange {
            start: parts[0].parse().map_err(|_| bad("start"))?,
            stop: parts[1].parse().map_err(|_| bad("stop"))?,
            points: parts[2].parse().map_err(|_| bad("point count"))?,
        })
    }
}

/// Comma-separated float list flag syntax.
pub fn parse_list(text: &str) -> Result<Vec<f64>, CliError> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse()
                .map_err(|_| CliError::Config(format!("`{s}` is not a number")))
        })
        .collect()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputSection {
    /// Output directory, created if missing.
    pub dir: PathBuf,
}

impl Default for OutputSection {
    fn default() -> Self {
        OutputSection { dir: PathBuf::from("out") }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunSection {
    /// Recorded for provenance; reserved for stochastic warm starts. Every
    /// search currently shipped is deterministic and ignores it.
    pub seed: u64,
    /// Worker threads; 0 uses every core. Scheduling is a static block
    /// partition and aggregation is ordered, so results do not depend on it.
    pub workers: usize,
}

impl Default for RunSection {
    fn default() -> Self {
        RunSection { seed: 0, workers: 0 }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SpectrumSection {
    /// Coupling sweep for the density table and ESQPT borderlines.
    pub lambda: GridRange,
    /// Scaled-energy grid ε = E/(NRω).
    pub epsilon: GridRange,
    /// Also diagonalize at every λ and emit the smoothed quantum density.
    pub quantum_density: bool,
    /// Gaussian kernel width for the quantum density, in ε units.
    pub kernel_width: f64,
}

impl Default for SpectrumSection {
    fn default() -> Self {
        SpectrumSection {
            lambda: GridRange::new(0.0, 1.5, 31),
            epsilon: GridRange::new(-1.0, 1.0, 401),
            quantum_density: false,
            kernel_width: 0.02,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PhasesSection {
    pub lambda: GridRange,
    pub delta: GridRange,
}

impl Default for PhasesSection {
    fn default() -> Self {
        PhasesSection {
            lambda: GridRange::new(0.0, 1.6, 161),
            delta: GridRange::new(-1.0, 1.0, 81),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct QuenchSection {
    pub t_min: f64,
    pub t_max: f64,
    pub t_points: usize,
    /// Logarithmic time spacing (requires t_min > 0).
    pub log_times: bool,
    /// Also render Wigner snapshots at auto-located instants.
    pub snapshots: bool,
    /// Scan horizon for locating collapse and revival.
    pub horizon: f64,
    /// Wigner grid resolution per axis when snapshots are on.
    pub grid_points: usize,
}

impl Default for QuenchSection {
    fn default() -> Self {
        QuenchSection {
            t_min: 0.0,
            t_max: 50.0,
            t_points: 1001,
            log_times: false,
            snapshots: false,
            horizon: 50.0,
            grid_points: 201,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepSection {
    pub lambda: GridRange,
    /// Optional second axis; absent means a single row at the model δ.
    pub delta: Option<GridRange>,
    /// Moving-average half-width in λ grid points; 0 disables smoothing
    /// (smoothed columns equal raw columns exactly).
    pub window: usize,
}

impl Default for SweepSection {
    fn default() -> Self {
        SweepSection { lambda: GridRange::new(0.0, 1.5, 61), delta: None, window: 3 }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct WignerSection {
    /// Explicit snapshot times; absent means auto-located instants
    /// (early / collapse dip / first revival).
    pub times: Option<Vec<f64>>,
    pub horizon: f64,
    pub grid_points: usize,
}

impl Default for WignerSection {
    fn default() -> Self {
        WignerSection { times: None, horizon: 50.0, grid_points: 201 }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScalingSection {
    /// Strictly increasing system sizes R.
    pub r_values: Vec<f64>,
}

impl Default for ScalingSection {
    fn default() -> Self {
        ScalingSection { r_values: vec![10.0, 30.0, 100.0, 300.0] }
    }
}

/// Everything a run needs; one file may drive any subcommand.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FileConfig {
    pub model: ModelParams,
    pub output: OutputSection,
    pub run: RunSection,
    pub spectrum: SpectrumSection,
    pub phases: PhasesSection,
    pub quench: QuenchSection,
    pub sweep: SweepSection,
    pub wigner: WignerSection,
    pub scaling: ScalingSection,
}

impl FileConfig {
    pub fn load(path: Option<&Path>) -> Result<Self, CliError> {
        match path {
            None => Ok(FileConfig::default()),
            Some(p) => {
                let text = std::fs::read_to_string(p).map_err(|e| {
                    CliError::Config(format!("cannot read {}: {e}", p.display()))
                })?;
                toml::from_str(&text)
                    .map_err(|e| CliError::Config(format!("{}: {e}", p.display())))
            }
        }
    }

    /// Provenance record embedded in every output: version stamp, the
    /// subcommand, and the fully resolved model/run/section values.
    pub fn echo(&self, command: &str, section: serde_json::Value) -> serde_json::Value {
        json!({
            "version": env!("CARGO_PKG_VERSION"),
            "command": command,
            "model": self.model,
            "run": self.run,
            "output": { "dir": self.output.dir },
            command: section,
        })
    }
}
