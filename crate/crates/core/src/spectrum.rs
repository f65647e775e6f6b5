//! Shared spectrum table and decibel helpers.

use serde::{Deserialize, Serialize};

use crate::export::Table;
use crate::params::{LatticeParams, SingleCavityParams};
use crate::single_cavity::PortPair;

/// Floor applied to transmissions before taking logarithms. The analytic
/// zeros (e.g. a perfect transmission dip) are measure-zero; flooring keeps
/// isolation finite there without moving any bandwidth edge.
pub const DB_FLOOR: f64 = 1e-300;

/// Directional ratio `10 log10(t_forward / t_reverse)` in dB, floored.
pub fn isolation_db(t_forward: f64, t_reverse: f64) -> f64 {
    10.0 * (t_forward.max(DB_FLOOR) / t_reverse.max(DB_FLOOR)).log10()
}

/// Which system produced a spectrum, with the exact parameters used.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "system", rename_all = "kebab-case")]
pub enum Provenance {
    SingleCavity {
        params: SingleCavityParams,
        pair: PortPair,
    },
    Array {
        params: LatticeParams,
    },
}

/// Frequency-resolved transmissions for one port pair, both directions, and
/// the isolation between them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumTable {
    pub omega: Vec<f64>,
    /// Transmission in the forward direction of the pair (t21 or t31).
    pub forward: Vec<f64>,
    /// Transmission in the reverse direction (t12 or t13).
    pub reverse: Vec<f64>,
    /// `10 log10(forward / reverse)` per point.
    pub isolation_db: Vec<f64>,
    pub provenance: Provenance,
}

impl SpectrumTable {
    pub fn len(&self) -> usize {
        self.omega.len()
    }

    pub fn is_empty(&self) -> bool {
        self.omega.is_empty()
    }

    /// Column names for the two transmission columns.
    pub fn labels(&self) -> (&'static str, &'static str) {
        match &self.provenance {
            Provenance::SingleCavity {
                pair: PortPair::P12,
                ..
            } => ("t21", "t12"),
            Provenance::SingleCavity {
                pair: PortPair::P13,
                ..
            } => ("t31", "t13"),
            Provenance::Array { .. } => ("t31", "t13"),
        }
    }

    /// Flat numeric table: `(omega, forward, reverse, isolation_db)`.
    pub fn to_table(&self) -> Table {
        let (fwd, rev) = self.labels();
        let mut t = Table::new(["omega", fwd, rev, "isolation_db"]);
        for i in 0..self.len() {
            t.push_row([
                self.omega[i],
                self.forward[i],
                self.reverse[i],
                self.isolation_db[i],
            ]);
        }
        t
    }
}
