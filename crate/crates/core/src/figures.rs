//! Frozen figure recipes: each id maps to a fixed parameter set and grid
//! and reproduces one dataset, written as CSV plus a JSON recipe and a
//! manifest with content hashes. Identical runs produce identical bytes.
//!
//! Parameter sets are the reference configurations used throughout the
//! crate: the single cavity at `g = 3 kappa_a`, `kappa_c = kappa_a / 100`,
//! and the ten-cell array at `v = 10 kappa_a`, `g = 2v`, with backscattering
//! `j = 0.1 kappa_a` for the fig6 family. Axis ranges that the reference
//! datasets leave open (plot windows, sweep spans) are fixed here once.

use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::bands::{band_edges_vs_g, bloch_bands, dispersion_analytic, finite_chain_bands, Sector};
use crate::config::{
    ArraySystem, OutputConfig, RunConfig, SpectrumTask, SystemConfig, TaskConfig, Units,
};
use crate::error::{Error, Result};
use crate::export::Table;
use crate::grid::FrequencyGrid;
use crate::lattice::build_dynamical_matrix;
use crate::metrics::{backscattered, default_reference, sweep_backscatter, sweep_cells};
use crate::params::{LatticeParams, SingleCavityParams};
use crate::scattering::spectrum_sweep;
use crate::single_cavity::{
    isolation_bandwidth, ratio_db, transmission_spectrum, Direction, PortPair,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
#[allow(missing_docs)]
pub enum FigureId {
    Fig1b,
    Fig1c,
    Fig1d,
    Fig1e,
    Fig1f,
    Fig1g,
    Fig3a,
    Fig3b,
    Fig3c,
    Fig4a,
    Fig4b,
    Fig4c,
    Fig4d,
    Fig5a,
    Fig5b,
    Fig6a,
    Fig6b,
    Fig6c,
    Fig6d,
}

impl FigureId {
    pub fn all() -> [FigureId; 19] {
        use FigureId::*;
        [
            Fig1b, Fig1c, Fig1d, Fig1e, Fig1f, Fig1g, Fig3a, Fig3b, Fig3c, Fig4a, Fig4b, Fig4c,
            Fig4d, Fig5a, Fig5b, Fig6a, Fig6b, Fig6c, Fig6d,
        ]
    }

    pub fn name(&self) -> &'static str {
        use FigureId::*;
        match self {
            Fig1b => "fig1b",
            Fig1c => "fig1c",
            Fig1d => "fig1d",
            Fig1e => "fig1e",
            Fig1f => "fig1f",
            Fig1g => "fig1g",
            Fig3a => "fig3a",
            Fig3b => "fig3b",
            Fig3c => "fig3c",
            Fig4a => "fig4a",
            Fig4b => "fig4b",
            Fig4c => "fig4c",
            Fig4d => "fig4d",
            Fig5a => "fig5a",
            Fig5b => "fig5b",
            Fig6a => "fig6a",
            Fig6b => "fig6b",
            Fig6c => "fig6c",
            Fig6d => "fig6d",
        }
    }
}

impl fmt::Display for FigureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FigureId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FigureId::all()
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| Error::UnknownFigure(s.to_string()))
    }
}

/// Reference single cavity: `g = 3 kappa_a`, `kappa_c = kappa_a / 100`.
pub fn single_cavity_reference() -> SingleCavityParams {
    SingleCavityParams::new(1.0, 0.01, 3.0)
}

/// Reference array: ten cells, `v = 10 kappa_a`, `g = 2v`,
/// `kappa_b = kappa_a`, `kappa_c = kappa_a / 100`, no backscattering.
pub fn array_reference() -> LatticeParams {
    LatticeParams::without_backscatter(10, 10.0, 20.0, 1.0, 1.0, 0.01)
}

/// Reference array with uniform backscattering `j = 0.1 kappa_a` and the
/// matching `g_s = -0.2 i g` (pump decay `kappa_d = kappa_a`).
pub fn array_backscatter_reference() -> LatticeParams {
    backscattered(&array_reference(), 0.1, 1.0)
}

const SPECTRUM_GRID_N: usize = 2001;
const K_GRID_N: usize = 201;

fn array_spectrum_grid() -> FrequencyGrid {
    FrequencyGrid::symmetric(30.0, SPECTRUM_GRID_N)
}

fn cavity_spectrum_grid() -> FrequencyGrid {
    FrequencyGrid::symmetric(6.0, SPECTRUM_GRID_N)
}

fn k_grid() -> FrequencyGrid {
    FrequencyGrid::new(-std::f64::consts::PI, std::f64::consts::PI, K_GRID_N)
}

/// The `fig4c` dataset expressed as a plain run configuration; shipped in
/// `recipes/fig4c.json` so the caption parameters can be tweaked directly.
pub fn fig4c_config() -> RunConfig {
    let p = array_reference();
    RunConfig {
        units: Units::KappaA,
        system: SystemConfig::Array(ArraySystem {
            cells: p.cells,
            v: p.v,
            g: Some(p.g),
            g_s: None,
            pump: None,
            j_a: 0.0,
            j_b: 0.0,
            j_c: 0.0,
            kappa_a: p.kappa_a,
            kappa_b: p.kappa_b,
            kappa_c: p.kappa_c,
        }),
        task: TaskConfig::Spectrum(SpectrumTask {
            grid: Some(array_spectrum_grid()),
            pair: None,
        }),
        output: OutputConfig::default(),
    }
}

/// One output file of a figure run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub name: String,
    pub bytes: usize,
    pub sha256: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub figure: String,
    pub files: Vec<ManifestEntry>,
}

fn isolation_table(omega: &[f64], iso: &[f64]) -> Table {
    let mut t = Table::new(["omega", "isolation_db"]);
    for (w, i) in omega.iter().zip(iso) {
        t.push_row([*w, *i]);
    }
    t
}

fn sector_dispersion_table(p: &LatticeParams, sector: Sector) -> Result<Table> {
    let mut t = Table::new(["k", "omega_minus", "omega_flat", "omega_plus"]);
    for k in k_grid().points() {
        let (wp, w0, wm) = dispersion_analytic(p, k, sector)?;
        t.push_row([k, wm, w0, wp]);
    }
    Ok(t)
}

fn bandwidth_vs_g_table(pair: PortPair, direction: Direction) -> Result<Table> {
    let mut t = Table::new(["g", "bandwidth"]);
    for g in FrequencyGrid::new(0.0, 5.0, 101).points() {
        let p = SingleCavityParams::new(1.0, 0.01, g);
        t.push_row([g, isolation_bandwidth(&p, 20.0, pair, direction)?]);
    }
    Ok(t)
}

fn figure_table(id: FigureId) -> Result<Table> {
    match id {
        FigureId::Fig1b => transmission_spectrum(
            &single_cavity_reference(),
            &cavity_spectrum_grid(),
            PortPair::P12,
        )
        .map(|s| s.to_table()),
        FigureId::Fig1c => {
            let s = transmission_spectrum(
                &single_cavity_reference(),
                &cavity_spectrum_grid(),
                PortPair::P12,
            )?;
            Ok(isolation_table(&s.omega, &s.isolation_db))
        }
        FigureId::Fig1d => bandwidth_vs_g_table(PortPair::P12, Direction::Forward),
        FigureId::Fig1e => transmission_spectrum(
            &single_cavity_reference(),
            &cavity_spectrum_grid(),
            PortPair::P13,
        )
        .map(|s| s.to_table()),
        FigureId::Fig1f => {
            let s = transmission_spectrum(
                &single_cavity_reference(),
                &cavity_spectrum_grid(),
                PortPair::P13,
            )?;
            Ok(isolation_table(&s.omega, &s.isolation_db))
        }
        FigureId::Fig1g => bandwidth_vs_g_table(PortPair::P13, Direction::Reverse),
        FigureId::Fig3a => Ok(finite_chain_bands(&array_reference(), Sector::Ssh)?.to_table()),
        FigureId::Fig3b => Ok(finite_chain_bands(&array_reference(), Sector::Stub)?.to_table()),
        FigureId::Fig3c => {
            let rows = band_edges_vs_g(&array_reference(), &FrequencyGrid::new(0.0, 30.0, 121))?;
            let mut t = Table::new(["g", "gap_lo", "gap_hi", "passband_hi"]);
            for r in rows {
                t.push_row([r.g, r.gap_lo, r.gap_hi, r.passband_hi]);
            }
            Ok(t)
        }
        FigureId::Fig4a => sector_dispersion_table(&array_reference(), Sector::Ssh),
        FigureId::Fig4b => sector_dispersion_table(&array_reference(), Sector::Stub),
        FigureId::Fig4c => {
            let d = build_dynamical_matrix(&array_reference())?;
            Ok(spectrum_sweep(&d, &array_spectrum_grid())?.to_table())
        }
        FigureId::Fig4d => {
            let d = build_dynamical_matrix(&array_reference())?;
            let s = spectrum_sweep(&d, &array_spectrum_grid())?;
            Ok(isolation_table(&s.omega, &s.isolation_db))
        }
        FigureId::Fig5a => {
            let grid = array_spectrum_grid();
            let omega = grid.points();
            let reference = default_reference(&array_reference());
            let five = spectrum_sweep(
                &build_dynamical_matrix(&array_reference().with_cells(5))?,
                &grid,
            )?;
            let ten = spectrum_sweep(&build_dynamical_matrix(&array_reference())?, &grid)?;
            let mut t = Table::new([
                "omega",
                "isolation_sc_db",
                "isolation_n5_db",
                "isolation_n10_db",
            ]);
            for (i, &w) in omega.iter().enumerate() {
                t.push_row([
                    w,
                    ratio_db(&reference, w, PortPair::P13),
                    five.isolation_db[i],
                    ten.isolation_db[i],
                ]);
            }
            Ok(t)
        }
        FigureId::Fig5b => {
            let p = array_reference();
            let cells: Vec<usize> = (1..=10).collect();
            let sweep = sweep_cells(&p, &cells, -50.0, &default_reference(&p))?;
            Ok(sweep.to_table())
        }
        FigureId::Fig6a => Ok(bloch_bands(&array_backscatter_reference(), &k_grid())?.to_table()),
        FigureId::Fig6b => {
            let d = build_dynamical_matrix(&array_backscatter_reference())?;
            Ok(spectrum_sweep(&d, &array_spectrum_grid())?.to_table())
        }
        FigureId::Fig6c => {
            let d = build_dynamical_matrix(&array_backscatter_reference())?;
            let s = spectrum_sweep(&d, &array_spectrum_grid())?;
            Ok(isolation_table(&s.omega, &s.isolation_db))
        }
        FigureId::Fig6d => {
            let js = FrequencyGrid::new(0.0, 1.0, 81).points();
            let sweep = sweep_backscatter(&array_reference(), &js, &array_spectrum_grid(), 1.0)?;
            Ok(sweep.to_table())
        }
    }
}

/// JSON description of the exact inputs behind a figure, written next to
/// the data so the parameters can be edited and re-run.
fn recipe_json(id: FigureId) -> Result<serde_json::Value> {
    let value = match id {
        FigureId::Fig4c => serde_json::to_value(fig4c_config())?,
        FigureId::Fig1b | FigureId::Fig1c | FigureId::Fig1e | FigureId::Fig1f => {
            serde_json::json!({
                "figure": id.name(),
                "system": single_cavity_reference(),
                "pair": if matches!(id, FigureId::Fig1b | FigureId::Fig1c) { "12" } else { "13" },
                "grid": cavity_spectrum_grid(),
            })
        }
        FigureId::Fig1d | FigureId::Fig1g => serde_json::json!({
            "figure": id.name(),
            "system": single_cavity_reference(),
            "threshold_db": 20.0,
            "pair": if id == FigureId::Fig1d { "12" } else { "13" },
            "direction": if id == FigureId::Fig1d { "forward" } else { "reverse" },
            "g_grid": FrequencyGrid::new(0.0, 5.0, 101),
        }),
        FigureId::Fig3a | FigureId::Fig3b | FigureId::Fig4a | FigureId::Fig4b => {
            serde_json::json!({
                "figure": id.name(),
                "system": array_reference(),
                "sector": if matches!(id, FigureId::Fig3a | FigureId::Fig4a) { "ssh" } else { "stub" },
            })
        }
        FigureId::Fig3c => serde_json::json!({
            "figure": id.name(),
            "system": array_reference(),
            "g_grid": FrequencyGrid::new(0.0, 30.0, 121),
        }),
        FigureId::Fig4d => serde_json::json!({
            "figure": id.name(),
            "system": array_reference(),
            "grid": array_spectrum_grid(),
        }),
        FigureId::Fig5a => serde_json::json!({
            "figure": id.name(),
            "system": array_reference(),
            "cells": [5, 10],
            "single_cavity": default_reference(&array_reference()),
            "grid": array_spectrum_grid(),
        }),
        FigureId::Fig5b => serde_json::json!({
            "figure": id.name(),
            "system": array_reference(),
            "cells": (1..=10).collect::<Vec<usize>>(),
            "threshold_db": -50.0,
            "single_cavity": default_reference(&array_reference()),
        }),
        FigureId::Fig6a | FigureId::Fig6b | FigureId::Fig6c => serde_json::json!({
            "figure": id.name(),
            "system": array_backscatter_reference(),
            "grid": if id == FigureId::Fig6a { k_grid() } else { array_spectrum_grid() },
        }),
        FigureId::Fig6d => serde_json::json!({
            "figure": id.name(),
            "system": array_reference(),
            "j_grid": FrequencyGrid::new(0.0, 1.0, 81),
            "kappa_d": 1.0,
            "grid": array_spectrum_grid(),
        }),
    };
    Ok(value)
}

fn sha256_hex(bytes: &[u8]) -> String {
    format!("{:x}", Sha256::digest(bytes))
}

/// Computes the dataset for `id` and writes `<id>.csv`, `<id>_recipe.json`
/// and `<id>_manifest.json` into `out_dir` (created if missing). Returns
/// the manifest.
pub fn run_figure(id: FigureId, out_dir: &Path) -> Result<Manifest> {
    fs::create_dir_all(out_dir)?;
    let mut files = Vec::new();

    let csv = figure_table(id)?.to_csv();
    let csv_name = format!("{id}.csv");
    fs::write(out_dir.join(&csv_name), &csv)?;
    files.push(ManifestEntry {
        name: csv_name,
        bytes: csv.len(),
        sha256: sha256_hex(csv.as_bytes()),
    });

    let recipe = crate::export::to_json(&recipe_json(id)?)?;
    let recipe_name = format!("{id}_recipe.json");
    fs::write(out_dir.join(&recipe_name), &recipe)?;
    files.push(ManifestEntry {
        name: recipe_name,
        bytes: recipe.len(),
        sha256: sha256_hex(recipe.as_bytes()),
    });

    let manifest = Manifest {
        figure: id.name().to_string(),
        files,
    };
    fs::write(
        out_dir.join(format!("{id}_manifest.json")),
        crate::export::to_json(&manifest)?,
    )?;
    Ok(manifest)
}
