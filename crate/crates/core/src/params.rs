//! Physical parameters, pump linearization and validation.
//!
//! Every rate in the crate is expressed in units of the optical fiber
//! coupling rate `kappa_a` (so `kappa_a = 1` is the usual normalization),
//! matching the frequency axes of all derived spectra. The working frame
//! rotates at the bare mode frequencies, which removes `omega_0`, `omega_c`
//! and `omega_d` from every equation of motion; [`FrameConfig`] records them
//! for documentation only.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Result, Validate, Violation};

/// Lattice constant of the array. Fixed; enters no formula because all
/// wavenumbers are expressed in units of its inverse.
pub const LATTICE_CONSTANT: f64 = 1.0;

/// Bare mode frequencies and wavenumbers. Documentation only: the rotating
/// frame cancels all of them, so none enter the numerics. The triple
/// resonance condition `omega_p = omega_d = omega_0 - omega_c` is still
/// enforced because a configuration violating it does not describe the
/// modeled device.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FrameConfig {
    /// Probe-band optical mode frequency.
    pub omega_0: f64,
    /// Acoustic mode frequency.
    pub omega_c: f64,
    /// Pump-band optical mode frequency.
    pub omega_d: f64,
    /// Control laser frequency.
    pub omega_p: f64,
    /// Wavenumbers of the three modes (momentum matching bookkeeping).
    pub k0: f64,
    pub kc: f64,
    pub kd: f64,
}

impl Validate for FrameConfig {
    fn violations(&self) -> Vec<Violation> {
        let mut v = Vec::new();
        let scale = self
            .omega_0
            .abs()
            .max(self.omega_c.abs())
            .max(self.omega_d.abs())
            .max(1.0);
        let tol = 1e-12 * scale;
        if (self.omega_p - self.omega_d).abs() > tol {
            v.push(Violation::new("omega_p", "omega_p = omega_d"));
        }
        if (self.omega_d - (self.omega_0 - self.omega_c)).abs() > tol {
            v.push(Violation::new("omega_d", "omega_d = omega_0 - omega_c"));
        }
        v
    }
}

/// Parameters of the four-port single-cavity device: one pair of
/// counter-propagating optical modes coupled to two fibers with rate
/// `kappa_a`, and a co-propagating acoustic mode damped at `kappa_c`.
/// `g` is the pump-enhanced photon-phonon coupling, gauged real.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SingleCavityParams {
    /// Optical fiber-coupling rate; sets the unit scale.
    #[serde(default = "one")]
    pub kappa_a: f64,
    /// Acoustic damping rate.
    pub kappa_c: f64,
    /// Pump-enhanced photon-phonon coupling, real and non-negative.
    pub g: f64,
}

fn one() -> f64 {
    1.0
}

impl SingleCavityParams {
    pub fn new(kappa_a: f64, kappa_c: f64, g: f64) -> Self {
        Self {
            kappa_a,
            kappa_c,
            g,
        }
    }
}

impl Default for SingleCavityParams {
    fn default() -> Self {
        Self {
            kappa_a: 1.0,
            kappa_c: 0.01,
            g: 0.0,
        }
    }
}

impl Validate for SingleCavityParams {
    fn violations(&self) -> Vec<Violation> {
        let mut v = Vec::new();
        if self.kappa_a <= 0.0 || self.kappa_a.is_nan() {
            v.push(Violation::new("kappa_a", "kappa_a > 0"));
        }
        if self.kappa_c <= 0.0 || self.kappa_c.is_nan() {
            v.push(Violation::new("kappa_c", "kappa_c > 0"));
        }
        if self.g < 0.0 || self.g.is_nan() {
            v.push(Violation::new("g", "g >= 0"));
        }
        v
    }
}

/// Classical drive on the pump-band mode of one unit cell, plus the rates
/// that fix its steady state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PumpConfig {
    /// Drive amplitude of the control laser (complex).
    pub drive: Complex64,
    /// Single-photon Brillouin coupling rate.
    pub g_b: f64,
    /// Pump-mode decay rate.
    pub kappa_d: f64,
    /// Pump-mode backscattering rate.
    #[serde(default)]
    pub j_d: f64,
}

impl Validate for PumpConfig {
    fn violations(&self) -> Vec<Violation> {
        let mut v = Vec::new();
        if self.kappa_d <= 0.0 || self.kappa_d.is_nan() {
            v.push(Violation::new("kappa_d", "kappa_d > 0"));
        }
        if self.j_d < 0.0 || self.j_d.is_nan() {
            v.push(Violation::new("j_d", "j_d >= 0"));
        }
        v
    }
}

/// Classical steady-state amplitudes of the strongly pumped cw mode and the
/// backscattering-populated ccw mode:
///
/// ```text
/// <d_cw>  = -2i drive kappa_d / (kappa_d^2 + 4 j_d^2)
/// <d_ccw> = (-2i j_d / kappa_d) <d_cw>
/// ```
pub fn pump_steady_state(p: &PumpConfig) -> Result<(Complex64, Complex64)> {
    p.validate()?;
    let d_cw = Complex64::new(0.0, -2.0) * p.drive * p.kappa_d
        / (p.kappa_d * p.kappa_d + 4.0 * p.j_d * p.j_d);
    let d_ccw = Complex64::new(0.0, -2.0 * p.j_d / p.kappa_d) * d_cw;
    Ok((d_cw, d_ccw))
}

/// Pump-enhanced couplings `(g, g_s)` with `g = g_b <d_cw>` rotated by a
/// global gauge so that `g` is real and non-negative. `g_s` carries the
/// fixed ratio `g_s / g = -2i j_d / kappa_d` exactly; this equals the
/// gauge-rotated `g_b <d_ccw>` because the ratio of the two steady-state
/// amplitudes is a pure number.
pub fn linearized_couplings(p: &PumpConfig) -> Result<(f64, Complex64)> {
    let (d_cw, _) = pump_steady_state(p)?;
    let g = (p.g_b * d_cw).norm();
    let g_s = Complex64::new(0.0, -2.0 * p.j_d / p.kappa_d) * g;
    Ok((g, g_s))
}

/// Full description of the 1D optomechanical array: `cells` unit cells, each
/// holding a pumped Brillouin cavity (optical mode `a`, acoustic mode `c`)
/// side-coupled to a linking resonator (`b`) with photon hopping `v`.
/// Counter-circulating partners of each mode are included; `j_*` are the
/// cw/ccw backscattering rates per species.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeParams {
    /// Number of unit cells (N >= 1).
    pub cells: usize,
    /// Photon hopping rate between the cavity and linking resonators.
    pub v: f64,
    /// Forward (pumped-direction) photon-phonon coupling, real >= 0.
    pub g: f64,
    /// Backward photon-phonon coupling, complex; induced by pump
    /// backscattering as `g_s = (-2i j_d / kappa_d) g`.
    #[serde(default = "zero_c")]
    pub g_s: Complex64,
    /// Backscattering rates of the three species.
    #[serde(default)]
    pub j_a: f64,
    #[serde(default)]
    pub j_b: f64,
    #[serde(default)]
    pub j_c: f64,
    /// Decay rates of the three species.
    #[serde(default = "one")]
    pub kappa_a: f64,
    #[serde(default = "one")]
    pub kappa_b: f64,
    pub kappa_c: f64,
}

fn zero_c() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

impl LatticeParams {
    /// Array with the pumped direction only (`g_s = 0`, no backscattering).
    pub fn without_backscatter(
        cells: usize,
        v: f64,
        g: f64,
        kappa_a: f64,
        kappa_b: f64,
        kappa_c: f64,
    ) -> Self {
        Self {
            cells,
            v,
            g,
            g_s: zero_c(),
            j_a: 0.0,
            j_b: 0.0,
            j_c: 0.0,
            kappa_a,
            kappa_b,
            kappa_c,
        }
    }

    /// Derives `(g, g_s)` from a pump configuration; the remaining fields
    /// are passed through. Guarantees `|g_s| = (2 j_d / kappa_d) g` and
    /// `arg(g_s) = arg(g) - pi/2` exactly.
    #[allow(clippy::too_many_arguments)]
    pub fn with_pump(
        cells: usize,
        v: f64,
        pump: &PumpConfig,
        j_a: f64,
        j_b: f64,
        j_c: f64,
        kappa_a: f64,
        kappa_b: f64,
        kappa_c: f64,
    ) -> Result<Self> {
        let (g, g_s) = linearized_couplings(pump)?;
        Ok(Self {
            cells,
            v,
            g,
            g_s,
            j_a,
            j_b,
            j_c,
            kappa_a,
            kappa_b,
            kappa_c,
        })
    }

    /// Same array with a different cell count.
    pub fn with_cells(mut self, cells: usize) -> Self {
        self.cells = cells;
        self
    }

    /// Same array with coupling `g` rescaled; `g_s` keeps its complex ratio
    /// to `g` (the ratio is set by the pump backscattering, not by `g`).
    pub fn with_coupling(mut self, g: f64) -> Self {
        let ratio = if self.g > 0.0 {
            self.g_s / self.g
        } else {
            zero_c()
        };
        self.g = g;
        self.g_s = ratio * g;
        self
    }

    /// Number of modes in the full dynamical system.
    pub fn mode_count(&self) -> usize {
        6 * self.cells
    }
}

impl Validate for LatticeParams {
    fn violations(&self) -> Vec<Violation> {
        let mut v = Vec::new();
        if self.cells < 1 {
            v.push(Violation::new("cells", "cells >= 1"));
        }
        if self.g < 0.0 || self.g.is_nan() {
            v.push(Violation::new("g", "g >= 0"));
        }
        for (name, value) in [
            ("kappa_a", self.kappa_a),
            ("kappa_b", self.kappa_b),
            ("kappa_c", self.kappa_c),
        ] {
            if value <= 0.0 || value.is_nan() {
                v.push(Violation::new(name, format!("{name} > 0")));
            }
        }
        for (name, value) in [("j_a", self.j_a), ("j_b", self.j_b), ("j_c", self.j_c)] {
            if value < 0.0 || value.is_nan() {
                v.push(Violation::new(name, format!("{name} >= 0")));
            }
        }
        if !self.v.is_finite() || !self.g_s.is_finite() {
            v.push(Violation::new("v/g_s", "couplings must be finite"));
        }
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn pump(drive: Complex64, kappa_d: f64, j_d: f64) -> PumpConfig {
        PumpConfig {
            drive,
            g_b: 1.0,
            kappa_d,
            j_d,
        }
    }

    #[test]
    fn no_drive_no_amplitude() {
        let (cw, ccw) = pump_steady_state(&pump(Complex64::new(0.0, 0.0), 1.0, 0.3)).unwrap();
        assert_eq!(cw, Complex64::new(0.0, 0.0));
        assert_eq!(ccw, Complex64::new(0.0, 0.0));
    }

    #[test]
    fn no_backscatter_kills_ccw() {
        let (cw, ccw) = pump_steady_state(&pump(Complex64::new(1.0, 0.0), 1.0, 0.0)).unwrap();
        assert_abs_diff_eq!(cw.re, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(cw.im, -2.0, epsilon = 1e-15);
        assert_eq!(ccw, Complex64::new(0.0, 0.0));
    }

    #[test]
    fn steady_state_half_backscatter() {
        // drive 1, kappa_d 1, j_d 1/2: cw = -2i/(1+1) = -i, ccw = (-i)(-i) = -1.
        let (cw, ccw) = pump_steady_state(&pump(Complex64::new(1.0, 0.0), 1.0, 0.5)).unwrap();
        assert_abs_diff_eq!(cw.re, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(cw.im, -1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(ccw.re, -1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(ccw.im, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn steady_state_solves_linear_system() {
        // Independent route: (d_cw, d_ccw) solve
        //   (kappa_d/2) d_cw  + i j_d d_ccw = -i drive
        //   (kappa_d/2) d_ccw + i j_d d_cw  = 0
        let p = pump(Complex64::new(0.7, -0.4), 1.3, 0.45);
        let (cw, ccw) = pump_steady_state(&p).unwrap();
        let r1 = 0.5 * p.kappa_d * cw + Complex64::i() * p.j_d * ccw + Complex64::i() * p.drive;
        let r2 = 0.5 * p.kappa_d * ccw + Complex64::i() * p.j_d * cw;
        assert!(r1.norm() < 1e-14 && r2.norm() < 1e-14, "{r1} {r2}");
    }

    #[test]
    fn couplings_gauge_and_ratio() {
        let p = pump(Complex64::new(1.0, 0.0), 1.0, 0.1);
        let (g, g_s) = linearized_couplings(&p).unwrap();
        assert_abs_diff_eq!(g, 2.0 / 1.04, epsilon = 1e-14);
        assert_abs_diff_eq!(g_s.re, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(g_s.im, -0.2 * 2.0 / 1.04, epsilon = 1e-14);
        // |g_s| / g = 2 j_d / kappa_d exactly
        assert_abs_diff_eq!(g_s.norm() / g, 0.2, epsilon = 1e-15);
    }

    #[test]
    fn half_kappa_backscatter_equalizes_couplings() {
        let p = pump(Complex64::new(0.3, 0.9), 1.0, 0.5);
        let (g, g_s) = linearized_couplings(&p).unwrap();
        assert_abs_diff_eq!(g_s.norm(), g, epsilon = 1e-14);
    }

    #[test]
    fn zero_backscatter_zero_gs() {
        let p = pump(Complex64::new(2.0, 1.0), 0.8, 0.0);
        let (_, g_s) = linearized_couplings(&p).unwrap();
        assert_eq!(g_s, Complex64::new(0.0, 0.0));
    }

    #[test]
    fn validation_reports_field_names() {
        let p = LatticeParams::without_backscatter(0, 10.0, 20.0, 1.0, 1.0, 0.01);
        let v = p.violations();
        assert!(v
            .iter()
            .any(|x| x.field == "cells" && x.constraint == "cells >= 1"));

        let sc = SingleCavityParams::new(1.0, -1.0, 3.0);
        let v = sc.violations();
        assert!(v
            .iter()
            .any(|x| x.field == "kappa_c" && x.constraint == "kappa_c > 0"));
    }

    #[test]
    fn reference_array_set_is_valid() {
        // N=10, v=10, g=20, kappa_b=kappa_a=1, kappa_c=0.01, no backscattering.
        let p = LatticeParams::without_backscatter(10, 10.0, 20.0, 1.0, 1.0, 0.01);
        assert!(p.validate().is_ok());
    }

    #[test]
    fn nonpositive_kappa_d_is_an_error() {
        assert!(pump_steady_state(&pump(Complex64::new(1.0, 0.0), 0.0, 0.0)).is_err());
    }

    #[test]
    fn frame_requires_triple_resonance() {
        let ok = FrameConfig {
            omega_0: 100.0,
            omega_c: 1.0,
            omega_d: 99.0,
            omega_p: 99.0,
            k0: 2.0,
            kc: 1.0,
            kd: 1.0,
        };
        assert!(ok.validate().is_ok());
        let bad = FrameConfig {
            omega_p: 98.0,
            ..ok
        };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn with_coupling_preserves_gs_ratio() {
        let p = LatticeParams {
            g_s: Complex64::new(0.0, -4.0),
            ..LatticeParams::without_backscatter(4, 10.0, 20.0, 1.0, 1.0, 0.01)
        };
        let q = p.with_coupling(5.0);
        assert_abs_diff_eq!(q.g_s.im, -1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(q.g_s.norm() / q.g, p.g_s.norm() / p.g, epsilon = 1e-15);
    }
}
