//! Frequency-domain array response through input-output theory.
//!
//! With every mode carrying its decay rate as an open channel, the
//! steady-state response to monochromatic inputs is
//!
//! ```text
//! V(omega)     = (M - i omega I)^-1 sqrt(G) V_in(omega)
//! V_out(omega) = U(omega) V_in(omega)
//! U(omega)     = sqrt(G) (M - i omega I)^-1 sqrt(G) - I
//! ```
//!
//! `U` is unitary for real `omega` because `M = G/2 + iH` with Hermitian
//! `H`. Only four entries of `U` touch the physical waveguides: the probe
//! enters on the first cavity (`a_1`) or the last linking resonator
//! (`b_N`), so the forward transmission is `T31 = |U[b_N,ccw ; a_1,cw]|^2`
//! and the backward one `T13 = |U[a_1,ccw ; b_N,cw]|^2`. All other channels
//! are physically loss ports and only enter the unitarity checks.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result, Validate};
use crate::grid::FrequencyGrid;
use crate::lattice::{Circulation, DynamicalMatrix, ModeIndex, Species};
use crate::spectrum::{isolation_db, Provenance, SpectrumTable};

/// The full scattering matrix at one frequency.
#[derive(Debug, Clone, PartialEq)]
pub struct ScatteringMatrix {
    pub omega: f64,
    pub u: DMatrix<Complex64>,
}

impl ScatteringMatrix {
    /// Largest entry of `U^dagger U - I`; zero for a flux-conserving
    /// system up to rounding.
    pub fn unitarity_defect(&self) -> f64 {
        let n = self.u.nrows();
        let gram = self.u.adjoint() * &self.u;
        let mut defect = 0.0f64;
        for r in 0..n {
            for c in 0..n {
                let expect = if r == c { 1.0 } else { 0.0 };
                defect = defect.max((gram[(r, c)] - expect).norm());
            }
        }
        defect
    }
}

fn shifted(d: &DynamicalMatrix, omega: f64) -> DMatrix<Complex64> {
    let mut m = d.matrix().clone();
    let shift = Complex64::new(0.0, omega);
    for i in 0..d.dim() {
        m[(i, i)] -= shift;
    }
    m
}

/// Computes `U(omega)` by LU-factoring `(M - i omega I)` once and solving
/// column-wise against `sqrt(G)`; the explicit inverse is never formed.
pub fn scattering_matrix(d: &DynamicalMatrix, omega: f64) -> Result<ScatteringMatrix> {
    let dim = d.dim();
    let sqrt_gamma: Vec<f64> = d.gamma().iter().map(|g| g.sqrt()).collect();
    let rhs = DMatrix::from_fn(dim, dim, |r, c| {
        if r == c {
            Complex64::new(sqrt_gamma[r], 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let x = shifted(d, omega)
        .lu()
        .solve(&rhs)
        .ok_or(Error::SingularSystem)?;
    let mut u = x;
    for r in 0..dim {
        for c in 0..dim {
            u[(r, c)] *= sqrt_gamma[r];
        }
        u[(r, r)] -= Complex64::new(1.0, 0.0);
    }
    Ok(ScatteringMatrix { omega, u })
}

/// Flat indices of the four waveguide-facing modes.
fn port_indices(cells: usize) -> (usize, usize, usize, usize) {
    let in_fwd = ModeIndex::new(0, Species::A, Circulation::Cw).flat(cells);
    let out_fwd = ModeIndex::new(cells - 1, Species::B, Circulation::Ccw).flat(cells);
    let in_bwd = ModeIndex::new(cells - 1, Species::B, Circulation::Cw).flat(cells);
    let out_bwd = ModeIndex::new(0, Species::A, Circulation::Ccw).flat(cells);
    (in_fwd, out_fwd, in_bwd, out_bwd)
}

/// Port transmissions `(T31, T13)` at one frequency. Solves the shifted
/// system for the two port columns only instead of building all of `U`.
pub fn port_transmissions(d: &DynamicalMatrix, omega: f64) -> Result<(f64, f64)> {
    let cells = d.params().cells;
    let (in_fwd, out_fwd, in_bwd, out_bwd) = port_indices(cells);
    let dim = d.dim();
    let gamma = d.gamma();
    let mut rhs = DMatrix::<Complex64>::zeros(dim, 2);
    rhs[(in_fwd, 0)] = Complex64::new(gamma[in_fwd].sqrt(), 0.0);
    rhs[(in_bwd, 1)] = Complex64::new(gamma[in_bwd].sqrt(), 0.0);
    let x = shifted(d, omega)
        .lu()
        .solve(&rhs)
        .ok_or(Error::SingularSystem)?;
    let t31 = (gamma[out_fwd].sqrt() * x[(out_fwd, 0)]).norm_sqr();
    let t13 = (gamma[out_bwd].sqrt() * x[(out_bwd, 1)]).norm_sqr();
    Ok((t31, t13))
}

/// Isolation `10 log10(T31 / T13)` in dB at one frequency.
pub fn isolation_at(d: &DynamicalMatrix, omega: f64) -> Result<f64> {
    let (t31, t13) = port_transmissions(d, omega)?;
    Ok(isolation_db(t31, t13))
}

/// Transmission and isolation spectra over a frequency grid. Grid points
/// are independent solves and run in parallel; the table is assembled in
/// grid order regardless of scheduling.
pub fn spectrum_sweep(d: &DynamicalMatrix, grid: &FrequencyGrid) -> Result<SpectrumTable> {
    grid.validate()?;
    let omega = grid.points();
    let pairs: Vec<(f64, f64)> = omega
        .par_iter()
        .map(|&w| port_transmissions(d, w))
        .collect::<Result<_>>()?;
    let forward: Vec<f64> = pairs.iter().map(|p| p.0).collect();
    let reverse: Vec<f64> = pairs.iter().map(|p| p.1).collect();
    let iso = pairs.iter().map(|&(f, r)| isolation_db(f, r)).collect();
    Ok(SpectrumTable {
        omega,
        forward,
        reverse,
        isolation_db: iso,
        provenance: Provenance::Array {
            params: *d.params(),
        },
    })
}
