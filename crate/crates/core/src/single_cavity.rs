//! Closed-form four-port scattering of a single Brillouin cavity.
//!
//! A whispering-gallery microcavity carries degenerate clockwise (cw) and
//! counter-clockwise (ccw) optical modes, evanescently coupled to two fibers
//! (ports 1,2 on the first fiber, 3,4 on the second). A strong cw control
//! laser enhances the photon-phonon coupling to `g` for the cw direction
//! only, so a probe photon sees an optomechanically dressed cavity going one
//! way and a bare cavity going the other. In the rotating frame the cw pair
//! obeys
//!
//! ```text
//! a' = -kappa_a a - i g c + sqrt(kappa_a) (a_in1 + a_in4)
//! c' = -kappa_c c - i g a + sqrt(2 kappa_c) c_in
//! ```
//!
//! and the ccw mode is an empty two-fiber resonator. Solving in the
//! frequency domain gives the scattering coefficients below; transmissions
//! are `T_ij = |S_ij|^2`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Result, Validate};
use crate::grid::FrequencyGrid;
use crate::params::SingleCavityParams;
use crate::scan::interval_containing_zero;
use crate::spectrum::{isolation_db, Provenance, SpectrumTable};

/// Port pair for spectra and bandwidths: `P12` is the through pair on the
/// first fiber, `P13` the cross-fiber pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PortPair {
    #[serde(rename = "12")]
    P12,
    #[serde(rename = "13")]
    P13,
}

/// Which tail of the directional ratio a bandwidth refers to. `Forward`
/// demands `10 log10(T_forward/T_reverse) >= +threshold`, `Reverse` demands
/// it `<= -threshold`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Forward,
    Reverse,
}

/// Scattering amplitudes at one probe detuning. The device has the exact
/// symmetries `S34 = S21` and `S24 = S31` (same mode, mirrored fibers), and
/// the acoustic-port amplitudes coincide: `S3c = S2c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatteringCoeffs {
    pub s12: Complex64,
    pub s21: Complex64,
    pub s13: Complex64,
    pub s31: Complex64,
    pub s2c: Complex64,
}

impl ScatteringCoeffs {
    pub fn s34(&self) -> Complex64 {
        self.s21
    }

    pub fn s24(&self) -> Complex64 {
        self.s31
    }

    pub fn s3c(&self) -> Complex64 {
        self.s2c
    }
}

/// Evaluates the closed-form coefficients at detuning `omega`. The common
/// denominator `(kappa_a - i w)(kappa_c - i w) + g^2` never vanishes for
/// real `omega` and positive rates.
pub fn scattering_coeffs(p: &SingleCavityParams, omega: f64) -> ScatteringCoeffs {
    let den_a = Complex64::new(p.kappa_a, -omega);
    let den_c = Complex64::new(p.kappa_c, -omega);
    let den = den_a * den_c + p.g * p.g;
    let s13 = p.kappa_a / den_a;
    let s31 = den_c * p.kappa_a / den;
    ScatteringCoeffs {
        s12: s13 - 1.0,
        s21: s31 - 1.0,
        s13,
        s31,
        s2c: Complex64::new(0.0, -p.g) * (2.0 * p.kappa_a * p.kappa_c).sqrt() / den,
    }
}

/// Transmission spectrum for one port pair over a frequency grid, both
/// directions plus their ratio in dB.
pub fn transmission_spectrum(
    p: &SingleCavityParams,
    grid: &FrequencyGrid,
    pair: PortPair,
) -> Result<SpectrumTable> {
    p.validate()?;
    grid.validate()?;
    let omega = grid.points();
    let mut forward = Vec::with_capacity(omega.len());
    let mut reverse = Vec::with_capacity(omega.len());
    let mut iso = Vec::with_capacity(omega.len());
    for &w in &omega {
        let s = scattering_coeffs(p, w);
        let (fwd, rev) = match pair {
            PortPair::P12 => (s.s21.norm_sqr(), s.s12.norm_sqr()),
            PortPair::P13 => (s.s31.norm_sqr(), s.s13.norm_sqr()),
        };
        forward.push(fwd);
        reverse.push(rev);
        iso.push(isolation_db(fwd, rev));
    }
    Ok(SpectrumTable {
        omega,
        forward,
        reverse,
        isolation_db: iso,
        provenance: Provenance::SingleCavity { params: *p, pair },
    })
}

/// Directional ratio in dB at one detuning for the given pair.
pub fn ratio_db(p: &SingleCavityParams, omega: f64, pair: PortPair) -> f64 {
    let s = scattering_coeffs(p, omega);
    match pair {
        PortPair::P12 => isolation_db(s.s21.norm_sqr(), s.s12.norm_sqr()),
        PortPair::P13 => isolation_db(s.s31.norm_sqr(), s.s13.norm_sqr()),
    }
}

/// Number of scan points used before bisection refinement.
const SCAN_POINTS: usize = 4001;
/// Edge refinement tolerance in units of `kappa_a`.
const EDGE_TOL: f64 = 1e-6;

/// Width of the maximal contiguous interval containing `omega = 0` on which
/// the directional ratio exceeds `+threshold_db` (Forward) or stays below
/// `-threshold_db` (Reverse). The scan covers `[-S, S]` with
/// `S = 5 max(g, kappa_a)`, wide enough for both the narrow acoustic
/// features and the coupling-split sidebands; edges are bisected to
/// `1e-6 kappa_a`. Returns 0 when the criterion fails at the band center.
pub fn isolation_bandwidth(
    p: &SingleCavityParams,
    threshold_db: f64,
    pair: PortPair,
    direction: Direction,
) -> Result<f64> {
    p.validate()?;
    let span = 5.0 * p.g.max(p.kappa_a);
    let pred = |w: f64| match direction {
        Direction::Forward => ratio_db(p, w, pair) >= threshold_db,
        Direction::Reverse => ratio_db(p, w, pair) <= -threshold_db,
    };
    Ok(
        match interval_containing_zero(pred, span, SCAN_POINTS, EDGE_TOL * p.kappa_a) {
            Some((lo, hi)) => hi - lo,
            None => 0.0,
        },
    )
}
