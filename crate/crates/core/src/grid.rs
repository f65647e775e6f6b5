//! Uniform sampling grids for frequency and wavenumber sweeps.

use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Validate, Violation};

/// A uniform grid of `n` points spanning `[lo, hi]`. With `n == 1` the single
/// point is `lo`. Points are generated as `lo + i * (hi - lo) / (n - 1)`, so
/// the same grid always yields bit-identical samples.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FrequencyGrid {
    pub lo: f64,
    pub hi: f64,
    pub n: usize,
}

impl FrequencyGrid {
    pub fn new(lo: f64, hi: f64, n: usize) -> Self {
        Self { lo, hi, n }
    }

    /// Grid symmetric about zero, `[-span, span]`.
    pub fn symmetric(span: f64, n: usize) -> Self {
        Self::new(-span, span, n)
    }

    pub fn points(&self) -> Vec<f64> {
        if self.n == 0 {
            return Vec::new();
        }
        if self.n == 1 {
            return vec![self.lo];
        }
        let step = (self.hi - self.lo) / (self.n - 1) as f64;
        (0..self.n).map(|i| self.lo + i as f64 * step).collect()
    }
}

impl Validate for FrequencyGrid {
    fn violations(&self) -> Vec<Violation> {
        let mut v = Vec::new();
        if self.n == 0 {
            v.push(Violation::new("n", "n >= 1"));
        }
        if !self.lo.is_finite() || !self.hi.is_finite() {
            v.push(Violation::new("lo/hi", "bounds must be finite"));
        } else if self.lo > self.hi {
            v.push(Violation::new("lo/hi", "lo <= hi"));
        }
        v
    }
}

impl FromStr for FrequencyGrid {
    type Err = String;

    /// Parses the CLI form `lo:hi:n`, e.g. `-30:30:2001`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(format!("expected lo:hi:n, got `{s}`"));
        }
        let lo: f64 = parts[0].parse().map_err(|e| format!("lo: {e}"))?;
        let hi: f64 = parts[1].parse().map_err(|e| format!("hi: {e}"))?;
        let n: usize = parts[2].parse().map_err(|e| format!("n: {e}"))?;
        Ok(Self { lo, hi, n })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn points_are_uniform_and_inclusive() {
        let g = FrequencyGrid::new(-1.0, 1.0, 5);
        assert_eq!(g.points(), vec![-1.0, -0.5, 0.0, 0.5, 1.0]);
    }

    #[test]
    fn single_point_grid() {
        assert_eq!(FrequencyGrid::new(2.0, 9.0, 1).points(), vec![2.0]);
    }

    #[test]
    fn empty_grid_rejected() {
        let g = FrequencyGrid::new(0.0, 1.0, 0);
        assert!(g.validate().is_err());
    }

    #[test]
    fn parses_cli_form() {
        let g: FrequencyGrid = "-30:30:2001".parse().unwrap();
        assert_eq!(g, FrequencyGrid::new(-30.0, 30.0, 2001));
        assert!("1:2".parse::<FrequencyGrid>().is_err());
    }
}
