//! Derived figures of merit: isolation bandwidths, improvement over the
//! single-cavity device, and parameter scans.
//!
//! Thresholds are signed with the same convention as the isolation they cut:
//! a threshold of `-50` selects `I(omega) <= -50 dB` (the array's working
//! direction), `+20` selects `I(omega) >= +20 dB`. Bandwidths always refer
//! to the maximal contiguous interval containing `omega = 0`.

use serde::{Deserialize, Serialize};

use crate::error::{Result, Validate};
use crate::export::Table;
use crate::grid::FrequencyGrid;
use crate::lattice::build_dynamical_matrix;
use crate::params::{LatticeParams, SingleCavityParams};
use crate::scan::interval_containing_zero;
use crate::scattering::{isolation_at, port_transmissions, spectrum_sweep};
use crate::single_cavity::{ratio_db, PortPair};
use crate::spectrum::isolation_db;
use num_complex::Complex64;

/// Scan density before bisection refinement.
const SCAN_POINTS: usize = 2001;
/// Edge tolerance in units of `kappa_a`.
const EDGE_TOL: f64 = 1e-4;

/// A bandwidth measurement at a signed isolation threshold.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BandwidthResult {
    pub threshold_db: f64,
    /// Edges of the interval around zero, `None` when the criterion fails
    /// at the band center.
    pub interval: Option<(f64, f64)>,
    pub width: f64,
}

impl BandwidthResult {
    fn from_interval(threshold_db: f64, interval: Option<(f64, f64)>) -> Self {
        let width = interval.map_or(0.0, |(lo, hi)| hi - lo);
        Self {
            threshold_db,
            interval,
            width,
        }
    }
}

fn meets(threshold_db: f64, isolation: f64) -> bool {
    if threshold_db < 0.0 {
        isolation <= threshold_db
    } else {
        isolation >= threshold_db
    }
}

/// Width of the contiguous interval around `omega = 0` on which the array
/// isolation satisfies the signed threshold. Scans 2001 points over
/// `[-(2v + 5 kappa_a), 2v + 5 kappa_a]` (the full backward passband plus
/// margin) and bisects the edges to `1e-4 kappa_a`.
pub fn array_isolation_bandwidth(p: &LatticeParams, threshold_db: f64) -> Result<BandwidthResult> {
    let d = build_dynamical_matrix(p)?;
    let span = 2.0 * p.v.abs() + 5.0 * p.kappa_a;
    let pred = |w: f64| {
        let (t31, t13) = port_transmissions(&d, w).expect("regular for real omega");
        meets(threshold_db, isolation_db(t31, t13))
    };
    let interval = interval_containing_zero(pred, span, SCAN_POINTS, EDGE_TOL * p.kappa_a);
    Ok(BandwidthResult::from_interval(threshold_db, interval))
}

/// Isolation gain of the array over a single-cavity reference at one
/// frequency: `|I_array(omega)| - |I_single(omega)|` in dB. The reference
/// uses the cross-fiber pair, the configuration the array generalizes; the
/// caller picks its parameters (by default the same `g` as the array).
pub fn isolation_improvement(
    p: &LatticeParams,
    reference: &SingleCavityParams,
    omega: f64,
) -> Result<f64> {
    reference.validate()?;
    let d = build_dynamical_matrix(p)?;
    let array = isolation_at(&d, omega)?;
    let single = ratio_db(reference, omega, PortPair::P13);
    Ok(array.abs() - single.abs())
}

/// The single-cavity reference with the same coupling as the array and the
/// standard acoustic damping `kappa_c = kappa_a / 100`.
pub fn default_reference(p: &LatticeParams) -> SingleCavityParams {
    SingleCavityParams::new(p.kappa_a, p.kappa_a / 100.0, p.g)
}

/// One parameter scan: the swept grid plus per-point scalars or spectra.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    /// Name of the swept parameter (`"g"`, `"j"`, `"cells"`).
    pub param: String,
    pub grid: Vec<f64>,
    pub data: SweepData,
    /// Constant single-cavity baseline, when the sweep defines one.
    pub baseline: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SweepData {
    /// One bandwidth per grid point.
    Widths { width: Vec<f64> },
    /// One isolation spectrum per grid point, `isolation_db[ig][iw]`.
    IsolationMap {
        omega: Vec<f64>,
        isolation_db: Vec<Vec<f64>>,
    },
}

impl SweepResult {
    /// CSV-ready table: `(param, width[, baseline])` for scalar sweeps or
    /// long-format `(omega, param, isolation_db)` for maps.
    pub fn to_table(&self) -> Table {
        match &self.data {
            SweepData::Widths { width } => {
                let mut columns = vec![self.param.clone(), "width".to_string()];
                if self.baseline.is_some() {
                    columns.push("single_cavity_width".to_string());
                }
                let mut t = Table::with_columns(columns);
                for (i, &x) in self.grid.iter().enumerate() {
                    let mut row = vec![x, width[i]];
                    if let Some(b) = self.baseline {
                        row.push(b);
                    }
                    t.push_row(row);
                }
                t
            }
            SweepData::IsolationMap {
                omega,
                isolation_db,
            } => {
                let mut t = Table::new(["omega", self.param.as_str(), "isolation_db"]);
                for (ig, &x) in self.grid.iter().enumerate() {
                    for (iw, &w) in omega.iter().enumerate() {
                        t.push_row([w, x, isolation_db[ig][iw]]);
                    }
                }
                t
            }
        }
    }
}

/// Bandwidth at `threshold_db` as the coupling `g` sweeps over `g_grid`.
/// `g_s` tracks `g` with the complex ratio fixed by the input parameter
/// set, as both scale with the same pump amplitude.
pub fn sweep_g(p: &LatticeParams, g_grid: &[f64], threshold_db: f64) -> Result<SweepResult> {
    let width = g_grid
        .iter()
        .map(|&g| Ok(array_isolation_bandwidth(&p.with_coupling(g), threshold_db)?.width))
        .collect::<Result<Vec<f64>>>()?;
    Ok(SweepResult {
        param: "g".to_string(),
        grid: g_grid.to_vec(),
        data: SweepData::Widths { width },
        baseline: None,
    })
}

/// Isolation spectra as the backscattering strength sweeps over `j_grid`.
/// Each point sets `j_a = j_b = j_c = j_d = j` and updates the backward
/// coupling to `g_s = (-2i j / kappa_d) g`.
pub fn sweep_backscatter(
    p: &LatticeParams,
    j_grid: &[f64],
    omega_grid: &FrequencyGrid,
    kappa_d: f64,
) -> Result<SweepResult> {
    omega_grid.validate()?;
    let spectra = j_grid
        .iter()
        .map(|&j| {
            let d = build_dynamical_matrix(&backscattered(p, j, kappa_d))?;
            Ok(spectrum_sweep(&d, omega_grid)?.isolation_db)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepResult {
        param: "j".to_string(),
        grid: j_grid.to_vec(),
        data: SweepData::IsolationMap {
            omega: omega_grid.points(),
            isolation_db: spectra,
        },
        baseline: None,
    })
}

/// The array parameters with uniform backscattering `j` applied to all
/// species and to the pump (so `g_s` follows).
pub fn backscattered(p: &LatticeParams, j: f64, kappa_d: f64) -> LatticeParams {
    LatticeParams {
        j_a: j,
        j_b: j,
        j_c: j,
        g_s: Complex64::new(0.0, -2.0 * j / kappa_d) * p.g,
        ..*p
    }
}

/// Bandwidth at `threshold_db` versus the number of unit cells, with the
/// single-cavity reference width (same signed criterion on the cross-fiber
/// pair) as a constant baseline.
pub fn sweep_cells(
    p: &LatticeParams,
    n_grid: &[usize],
    threshold_db: f64,
    reference: &SingleCavityParams,
) -> Result<SweepResult> {
    let width = n_grid
        .iter()
        .map(|&n| Ok(array_isolation_bandwidth(&p.with_cells(n), threshold_db)?.width))
        .collect::<Result<Vec<f64>>>()?;
    let baseline = single_cavity_reference_width(reference, threshold_db)?;
    Ok(SweepResult {
        param: "cells".to_string(),
        grid: n_grid.iter().map(|&n| n as f64).collect(),
        data: SweepData::Widths { width },
        baseline: Some(baseline),
    })
}

/// Single-cavity bandwidth under the same signed-threshold convention used
/// for the array (`-50` means `I <= -50 dB` on the cross-fiber pair).
pub fn single_cavity_reference_width(
    reference: &SingleCavityParams,
    threshold_db: f64,
) -> Result<f64> {
    reference.validate()?;
    let span = 5.0 * reference.g.max(reference.kappa_a);
    let pred = |w: f64| meets(threshold_db, ratio_db(reference, w, PortPair::P13));
    let interval = interval_containing_zero(pred, span, SCAN_POINTS, EDGE_TOL * reference.kappa_a);
    Ok(BandwidthResult::from_interval(threshold_db, interval).width)
}
