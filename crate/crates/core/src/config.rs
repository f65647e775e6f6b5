//! Run configuration: strict JSON schema for systems, tasks and output.
//!
//! Unknown keys are rejected everywhere, every frequency is in units of
//! `kappa_a`, and the file must say so explicitly (`"units": "kappa_a"`).
//! A config describes exactly one system and exactly one task.

use std::fs;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, Validate, Violation};
use crate::figures::FigureId;
use crate::grid::FrequencyGrid;
use crate::params::{LatticeParams, PumpConfig, SingleCavityParams};
use crate::single_cavity::{Direction, PortPair};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Units {
    #[serde(rename = "kappa_a")]
    KappaA,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    /// Unit convention marker; the only accepted value is `"kappa_a"`.
    pub units: Units,
    pub system: SystemConfig,
    pub task: TaskConfig,
    #[serde(default)]
    pub output: OutputConfig,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SystemConfig {
    SingleCavity(SingleCavitySystem),
    Array(ArraySystem),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SingleCavitySystem {
    #[serde(default = "one")]
    pub kappa_a: f64,
    pub kappa_c: f64,
    pub g: f64,
}

fn one() -> f64 {
    1.0
}

impl SingleCavitySystem {
    pub fn to_params(&self) -> SingleCavityParams {
        SingleCavityParams::new(self.kappa_a, self.kappa_c, self.g)
    }
}

/// Array system block. The couplings come either explicitly (`g`, optional
/// `g_s`) or from a `pump` block, never both.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArraySystem {
    pub cells: usize,
    pub v: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g_s: Option<Complex64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pump: Option<PumpConfig>,
    #[serde(default)]
    pub j_a: f64,
    #[serde(default)]
    pub j_b: f64,
    #[serde(default)]
    pub j_c: f64,
    #[serde(default = "one")]
    pub kappa_a: f64,
    #[serde(default = "one")]
    pub kappa_b: f64,
    pub kappa_c: f64,
}

impl ArraySystem {
    pub fn to_params(&self) -> Result<LatticeParams> {
        if let Some(pump) = &self.pump {
            LatticeParams::with_pump(
                self.cells,
                self.v,
                pump,
                self.j_a,
                self.j_b,
                self.j_c,
                self.kappa_a,
                self.kappa_b,
                self.kappa_c,
            )
        } else {
            Ok(LatticeParams {
                cells: self.cells,
                v: self.v,
                g: self.g.unwrap_or(0.0),
                g_s: self.g_s.unwrap_or_else(|| Complex64::new(0.0, 0.0)),
                j_a: self.j_a,
                j_b: self.j_b,
                j_c: self.j_c,
                kappa_a: self.kappa_a,
                kappa_b: self.kappa_b,
                kappa_c: self.kappa_c,
            })
        }
    }

    fn violations(&self) -> Vec<Violation> {
        let mut v = Vec::new();
        if self.pump.is_some() && (self.g.is_some() || self.g_s.is_some()) {
            v.push(Violation::new(
                "system.pump",
                "give either a pump block or explicit g/g_s, not both",
            ));
        }
        if self.pump.is_none() && self.g.is_none() {
            v.push(Violation::new(
                "system.g",
                "g is required without a pump block",
            ));
        }
        match self.to_params() {
            Ok(p) => v.extend(prefixed(p.violations())),
            Err(Error::Invalid(inner)) => v.extend(prefixed(inner)),
            Err(_) => {}
        }
        v
    }
}

fn prefixed(violations: Vec<Violation>) -> Vec<Violation> {
    violations
        .into_iter()
        .map(|mut x| {
            x.field = format!("system.{}", x.field);
            x
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum TaskConfig {
    Spectrum(SpectrumTask),
    Bands(BandsTask),
    Bandwidth(BandwidthTask),
    Sweep(SweepTask),
    Figure(FigureTask),
}

impl TaskConfig {
    pub fn kind(&self) -> &'static str {
        match self {
            TaskConfig::Spectrum(_) => "spectrum",
            TaskConfig::Bands(_) => "bands",
            TaskConfig::Bandwidth(_) => "bandwidth",
            TaskConfig::Sweep(_) => "sweep",
            TaskConfig::Figure(_) => "figure",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpectrumTask {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<FrequencyGrid>,
    /// Required for the single cavity, absent for the array.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pair: Option<PortPair>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BandsTask {
    /// Wavenumber grid, defaults to `[-pi, pi]` with 201 points.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<FrequencyGrid>,
    #[serde(default)]
    pub sector: BandSector,
    /// Diagonalize the open chain instead of the Bloch problem.
    #[serde(default)]
    pub chain: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum BandSector {
    #[default]
    Full,
    Stub,
    Ssh,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BandwidthTask {
    /// Signed for the array (`-50` means `I <= -50 dB`), positive magnitude
    /// for the single cavity where `direction` picks the tail.
    pub threshold_db: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pair: Option<PortPair>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub direction: Option<Direction>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepTask {
    pub axis: SweepAxis,
    /// Grid for the `g` and `backscatter` axes.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<FrequencyGrid>,
    /// Explicit cell counts for the `cells` axis.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cells: Option<Vec<usize>>,
    #[serde(default = "default_threshold")]
    pub threshold_db: f64,
    /// Spectrum grid for the `backscatter` axis.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega_grid: Option<FrequencyGrid>,
    /// Pump decay rate fixing `g_s = (-2i j / kappa_d) g` on the
    /// `backscatter` axis.
    #[serde(default = "one")]
    pub kappa_d: f64,
}

fn default_threshold() -> f64 {
    -50.0
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepAxis {
    G,
    Backscatter,
    Cells,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FigureTask {
    pub id: FigureId,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    #[serde(default = "default_dir")]
    pub dir: PathBuf,
    #[serde(default)]
    pub format: OutputFormat,
}

fn default_dir() -> PathBuf {
    PathBuf::from(".")
}

impl Default for OutputConfig {
    fn default() -> Self {
        Self {
            dir: default_dir(),
            format: OutputFormat::Csv,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl Validate for RunConfig {
    fn violations(&self) -> Vec<Violation> {
        let mut v = Vec::new();
        match &self.system {
            SystemConfig::SingleCavity(sc) => {
                v.extend(prefixed(sc.to_params().violations()));
            }
            SystemConfig::Array(a) => v.extend(a.violations()),
        }
        let is_single = matches!(self.system, SystemConfig::SingleCavity(_));
        match &self.task {
            TaskConfig::Spectrum(t) => {
                if let Some(grid) = &t.grid {
                    v.extend(task_grid_violations(grid));
                }
                if is_single && t.pair.is_none() {
                    v.push(Violation::new(
                        "task.pair",
                        "pair (\"12\" or \"13\") is required for the single cavity",
                    ));
                }
            }
            TaskConfig::Bands(t) => {
                if is_single {
                    v.push(Violation::new("task", "bands requires an array system"));
                }
                if t.chain && t.sector == BandSector::Full {
                    v.push(Violation::new(
                        "task.sector",
                        "chain diagonalization is per sector; choose stub or ssh",
                    ));
                }
                if let Some(grid) = &t.grid {
                    v.extend(task_grid_violations(grid));
                }
            }
            TaskConfig::Bandwidth(t) => {
                if is_single {
                    if t.threshold_db <= 0.0 || t.threshold_db.is_nan() {
                        v.push(Violation::new(
                            "task.threshold_db",
                            "threshold_db > 0 for the single cavity (direction picks the tail)",
                        ));
                    }
                    if t.pair.is_none() || t.direction.is_none() {
                        v.push(Violation::new(
                            "task.pair/direction",
                            "pair and direction are required for the single cavity",
                        ));
                    }
                } else if t.pair.is_some() || t.direction.is_some() {
                    v.push(Violation::new(
                        "task.pair/direction",
                        "not applicable to the array (threshold_db carries the sign)",
                    ));
                }
            }
            TaskConfig::Sweep(t) => {
                if is_single {
                    v.push(Violation::new("task", "sweep requires an array system"));
                }
                match t.axis {
                    SweepAxis::Cells => {
                        if t.cells.as_ref().is_none_or(|c| c.is_empty()) {
                            v.push(Violation::new(
                                "task.cells",
                                "a non-empty cells list is required for the cells axis",
                            ));
                        }
                    }
                    SweepAxis::G | SweepAxis::Backscatter => {
                        match &t.grid {
                            None => v.push(Violation::new(
                                "task.grid",
                                "grid is required for this axis",
                            )),
                            Some(g) => v.extend(task_grid_violations(g)),
                        }
                        if let Some(og) = &t.omega_grid {
                            v.extend(task_grid_violations(og));
                        }
                        if t.kappa_d <= 0.0 || t.kappa_d.is_nan() {
                            v.push(Violation::new("task.kappa_d", "kappa_d > 0"));
                        }
                    }
                }
            }
            TaskConfig::Figure(_) => {}
        }
        v
    }
}

fn task_grid_violations(grid: &FrequencyGrid) -> Vec<Violation> {
    grid.violations()
        .into_iter()
        .map(|mut x| {
            x.field = format!("task.grid.{}", x.field);
            x
        })
        .collect()
}

/// Reads and fully validates a config file. Parse failures carry the file
/// path and the parser's line/column; constraint failures list every
/// violation with its field path.
pub fn load_config(path: &Path) -> Result<RunConfig> {
    let text = fs::read_to_string(path).map_err(|e| Error::Config {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    let config: RunConfig = serde_json::from_str(&text).map_err(|e| Error::Config {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    config.validate()?;
    Ok(config)
}
