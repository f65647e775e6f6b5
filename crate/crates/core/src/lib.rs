//! Frequency-domain coupled-mode scattering for Brillouin optomechanical
//! cavities and 1D arrays.
//!
//! A travelling-wave acoustic mode scatters light between co-propagating
//! optical modes of a whispering-gallery resonator. Pumping one circulation
//! direction enhances the photon-phonon coupling for that direction only,
//! which makes the response nonreciprocal. This crate computes the linear
//! mean-field response of two such devices:
//!
//! * a single four-port cavity, in closed form ([`single_cavity`]);
//! * a 1D array of pumped cavities linked by hopping resonators, where the
//!   two propagation directions see different band structures (a gapped
//!   stub lattice forward, an SSH chain backward), via dense linear algebra
//!   on the `6N x 6N` dynamical matrix ([`lattice`], [`scattering`]).
//!
//! Band structure ([`bands`]), bandwidth and sweep metrics ([`metrics`]),
//! strict JSON configuration ([`config`]) and reproducible figure datasets
//! ([`figures`]) sit on top. All rates are in units of the optical fiber
//! coupling rate `kappa_a`.

pub mod bands;
pub mod config;
pub mod error;
pub mod export;
pub mod figures;
pub mod grid;
pub mod lattice;
pub mod metrics;
pub mod params;
mod scan;
pub mod scattering;
pub mod single_cavity;
pub mod spectrum;

pub use error::{Error, Result, Validate, Violation};
pub use grid::FrequencyGrid;
pub use lattice::{build_dynamical_matrix, DynamicalMatrix, ModeIndex};
pub use params::{
    linearized_couplings, pump_steady_state, FrameConfig, LatticeParams, PumpConfig,
    SingleCavityParams,
};
pub use scattering::{port_transmissions, scattering_matrix, spectrum_sweep};
pub use single_cavity::{scattering_coeffs, transmission_spectrum};
pub use spectrum::SpectrumTable;
