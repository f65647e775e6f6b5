//! Band structure of the array: Bloch analysis under periodic boundary
//! conditions and eigenvalue spectra of open finite chains.
//!
//! In momentum space each unit cell contributes the basis
//! `(a_cw, b_ccw, c_cw, a_ccw, b_cw, c_ccw)` and the Bloch Hamiltonian is
//!
//! ```text
//! H(k) = [ H_fwd(k)   H_bs    ]        H_bs = diag(j_a, j_b, j_c)
//!        [ H_bs       H_bwd(k) ]
//! ```
//!
//! with the sector blocks `[[0, rho, g], [rho*, 0, 0], [g*, 0, 0]]`,
//! `rho = v (1 + e^{ik})`, and `g` replaced by `g_s` in the backward
//! sector. With decoupled sectors the dispersion is analytic:
//! `omega(k) = {+-sqrt(|rho|^2 + g^2), 0}` for the stub (forward) sector
//! and the same with `|g_s|` for the backward one, which is a plain SSH
//! chain plus decoupled phonons when `g_s = 0`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, Validate};
use crate::export::Table;
use crate::grid::FrequencyGrid;
use crate::params::LatticeParams;

/// Transport sector of the decoupled (`j = 0`) lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sector {
    /// Forward sector `(a_cw, b_ccw, c_cw)`: photon chain with a dangling
    /// phonon per cell (stub lattice).
    Stub,
    /// Backward sector `(a_ccw, b_cw, c_ccw)`: uniform photon chain (SSH
    /// lattice); the phonon attaches only through `g_s`.
    Ssh,
}

/// The 6x6 Bloch Hamiltonian at one wavenumber.
#[derive(Debug, Clone, PartialEq)]
pub struct BlochHamiltonian {
    pub k: f64,
    /// Intra- plus inter-cell hopping amplitude `v (1 + e^{ik})`.
    pub rho: Complex64,
    h: DMatrix<Complex64>,
}

impl BlochHamiltonian {
    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.h
    }

    /// Sorted (ascending) eigenvalues; real because `H(k)` is Hermitian.
    pub fn eigenvalues(&self) -> Vec<f64> {
        sorted_eigenvalues(self.h.clone())
    }
}

fn sorted_eigenvalues(h: DMatrix<Complex64>) -> Vec<f64> {
    let mut ev: Vec<f64> = h.symmetric_eigen().eigenvalues.iter().cloned().collect();
    ev.sort_by(|a, b| a.partial_cmp(b).expect("Hermitian eigenvalues are finite"));
    ev
}

fn phonon_coupling(p: &LatticeParams, sector: Sector) -> Complex64 {
    match sector {
        Sector::Stub => Complex64::new(p.g, 0.0),
        Sector::Ssh => p.g_s,
    }
}

/// 3x3 sector block `[[0, rho, g], [rho*, 0, 0], [g*, 0, 0]]`.
fn sector_block(rho: Complex64, coupling: Complex64) -> DMatrix<Complex64> {
    let z = Complex64::new(0.0, 0.0);
    DMatrix::from_row_slice(
        3,
        3,
        &[z, rho, coupling, rho.conj(), z, z, coupling.conj(), z, z],
    )
}

/// Builds the full 6x6 Bloch Hamiltonian at wavenumber `k` (in units of the
/// inverse lattice constant, `k` in `[-pi, pi]`).
pub fn bloch_matrix(p: &LatticeParams, k: f64) -> BlochHamiltonian {
    let rho = p.v * (1.0 + Complex64::new(0.0, k).exp());
    let fwd = sector_block(rho, phonon_coupling(p, Sector::Stub));
    let bwd = sector_block(rho, phonon_coupling(p, Sector::Ssh));
    let mut h = DMatrix::<Complex64>::zeros(6, 6);
    h.view_mut((0, 0), (3, 3)).copy_from(&fwd);
    h.view_mut((3, 3), (3, 3)).copy_from(&bwd);
    for (i, j_eta) in [p.j_a, p.j_b, p.j_c].into_iter().enumerate() {
        h[(i, 3 + i)] = j_eta.into();
        h[(3 + i, i)] = j_eta.into();
    }
    BlochHamiltonian { k, rho, h }
}

/// Closed-form dispersion `(omega_plus, 0, omega_minus)` of one decoupled
/// sector, `omega_plus = sqrt(|rho|^2 + g_om^2)` with `g_om = g` (stub) or
/// `|g_s|` (SSH). Calling this with backscattering present is a contract
/// violation because the sectors no longer diagonalize independently.
pub fn dispersion_analytic(p: &LatticeParams, k: f64, sector: Sector) -> Result<(f64, f64, f64)> {
    if p.j_a != 0.0 || p.j_b != 0.0 || p.j_c != 0.0 {
        return Err(Error::CoupledSectors);
    }
    let rho = p.v * (1.0 + Complex64::new(0.0, k).exp());
    let g_om = phonon_coupling(p, sector).norm();
    let w = (rho.norm_sqr() + g_om * g_om).sqrt();
    Ok((w, 0.0, -w))
}

/// Band structure data: either Bloch branches over a wavenumber grid or a
/// finite-chain eigenvalue list.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BandData {
    /// Wavenumber samples (empty for finite-chain data).
    pub k: Vec<f64>,
    /// Sorted eigenvalue branches per wavenumber, `levels[ik][branch]`.
    pub levels: Vec<Vec<f64>>,
    /// Sorted eigenvalues of an open chain, when computed.
    pub chain_levels: Option<Vec<f64>>,
}

impl BandData {
    /// Number of branches per wavenumber (0 for finite-chain data).
    pub fn branch_count(&self) -> usize {
        self.levels.first().map_or(0, Vec::len)
    }

    /// CSV-ready table: `(k, omega_1..omega_n)` or `(index, omega)`.
    pub fn to_table(&self) -> Table {
        if let Some(chain) = &self.chain_levels {
            let mut t = Table::new(["index", "omega"]);
            for (i, w) in chain.iter().enumerate() {
                t.push_row([i as f64, *w]);
            }
            t
        } else {
            let mut columns = vec!["k".to_string()];
            columns.extend((1..=self.branch_count()).map(|b| format!("omega_{b}")));
            let mut t = Table::with_columns(columns);
            for (ik, k) in self.k.iter().enumerate() {
                let mut row = vec![*k];
                row.extend(&self.levels[ik]);
                t.push_row(row);
            }
            t
        }
    }
}

/// Diagonalizes the full Bloch Hamiltonian (backscattering included) on a
/// wavenumber grid; six sorted branches per point.
pub fn bloch_bands(p: &LatticeParams, k_grid: &FrequencyGrid) -> Result<BandData> {
    p.validate()?;
    k_grid.validate()?;
    let k = k_grid.points();
    let levels = k
        .iter()
        .map(|&kk| bloch_matrix(p, kk).eigenvalues())
        .collect();
    Ok(BandData {
        k,
        levels,
        chain_levels: None,
    })
}

/// Open-chain Hamiltonian of one sector: `3N x 3N`, basis `(a, b, c)` per
/// cell, hops `v` within the cell and `v` from `b_j` to `a_{j+1}`.
fn chain_hamiltonian(p: &LatticeParams, sector: Sector) -> DMatrix<Complex64> {
    let n = p.cells;
    let coupling = phonon_coupling(p, sector);
    let v: Complex64 = p.v.into();
    let mut h = DMatrix::<Complex64>::zeros(3 * n, 3 * n);
    for j in 0..n {
        let (a, b, c) = (3 * j, 3 * j + 1, 3 * j + 2);
        h[(a, b)] = v;
        h[(b, a)] = v;
        h[(a, c)] = coupling;
        h[(c, a)] = coupling.conj();
        if j + 1 < n {
            let a_next = 3 * (j + 1);
            h[(a_next, b)] = v;
            h[(b, a_next)] = v;
        }
    }
    h
}

/// Sorted eigenvalues of the open finite chain of one sector (`3N` levels;
/// for the SSH sector with `g_s = 0` these are `2N` photonic levels plus
/// `N` zeros from the decoupled phonons).
pub fn finite_chain_bands(p: &LatticeParams, sector: Sector) -> Result<BandData> {
    p.validate()?;
    let levels = sorted_eigenvalues(chain_hamiltonian(p, sector));
    Ok(BandData {
        k: Vec::new(),
        levels: Vec::new(),
        chain_levels: Some(levels),
    })
}

/// Band edges of the stub (forward) sector as the photon-phonon coupling
/// varies: gap `(-g, g)`, passbands `[g, sqrt(4v^2 + g^2)]` and mirrored.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BandEdges {
    pub g: f64,
    pub gap_lo: f64,
    pub gap_hi: f64,
    pub passband_hi: f64,
}

pub fn band_edges_vs_g(p: &LatticeParams, g_grid: &FrequencyGrid) -> Result<Vec<BandEdges>> {
    g_grid.validate()?;
    Ok(g_grid
        .points()
        .into_iter()
        .map(|g| BandEdges {
            g,
            gap_lo: -g,
            gap_hi: g,
            passband_hi: (4.0 * p.v * p.v + g * g).sqrt(),
        })
        .collect())
}
