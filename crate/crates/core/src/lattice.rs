//! Real-space dynamical matrix of the 1D optomechanical array.
//!
//! Each unit cell j holds six modes: the pumped-cavity optical mode `a`, the
//! linking-resonator mode `b` and the acoustic mode `c`, each in both
//! circulation directions. Transport splits into two three-species sectors
//! coupled only by backscattering:
//!
//! * forward sector `(a_cw, b_ccw, c_cw)`: a stub lattice, the photon chain
//!   `a_1 - b_1 - a_2 - ...` with hopping `v` plus a dangling phonon `c_j`
//!   on every `a_j` with coupling `g`;
//! * backward sector `(a_ccw, b_cw, c_ccw)`: the same chain with the phonon
//!   attached through the backscatter-induced coupling `g_s` (an SSH chain
//!   with decoupled phonons when `g_s = 0`).
//!
//! The equations of motion take the matrix form `dV/dt = -M V + sqrt(G) V_in`
//! with `M = G/2 + i H`, `G` the diagonal of decay rates and `H` the
//! Hermitian mode-coupling Hamiltonian. The chain is open: cell 1 has no
//! left neighbor and `b_N` couples only to `a_N`.

use std::io::Write;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Result, Validate};
use crate::params::LatticeParams;

/// Mode species within one unit cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Species {
    /// Optical mode of the pumped Brillouin cavity.
    A,
    /// Optical mode of the linking resonator.
    B,
    /// Travelling acoustic mode.
    C,
}

/// Circulation direction of a whispering-gallery mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Circulation {
    Cw,
    Ccw,
}

/// Position of one mode in the state vector. Cells are 0-based. The flat
/// layout follows the transport sectors: rows `0..3N` hold the forward
/// sector `(a_cw, b_ccw, c_cw)` cell by cell, rows `3N..6N` the backward
/// sector `(a_ccw, b_cw, c_ccw)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModeIndex {
    pub cell: usize,
    pub species: Species,
    pub circulation: Circulation,
}

impl ModeIndex {
    pub fn new(cell: usize, species: Species, circulation: Circulation) -> Self {
        Self {
            cell,
            species,
            circulation,
        }
    }

    /// Flat row/column index in the `6N`-dimensional state vector.
    pub fn flat(&self, cells: usize) -> usize {
        debug_assert!(self.cell < cells);
        let (block, slot) = match (self.species, self.circulation) {
            (Species::A, Circulation::Cw) => (0, 0),
            (Species::B, Circulation::Ccw) => (0, 1),
            (Species::C, Circulation::Cw) => (0, 2),
            (Species::A, Circulation::Ccw) => (1, 0),
            (Species::B, Circulation::Cw) => (1, 1),
            (Species::C, Circulation::Ccw) => (1, 2),
        };
        block * 3 * cells + 3 * self.cell + slot
    }

    /// Inverse of [`ModeIndex::flat`].
    pub fn from_flat(index: usize, cells: usize) -> Self {
        debug_assert!(index < 6 * cells);
        let (block, rest) = (index / (3 * cells), index % (3 * cells));
        let (cell, slot) = (rest / 3, rest % 3);
        let (species, circulation) = match (block, slot) {
            (0, 0) => (Species::A, Circulation::Cw),
            (0, 1) => (Species::B, Circulation::Ccw),
            (0, 2) => (Species::C, Circulation::Cw),
            (1, 0) => (Species::A, Circulation::Ccw),
            (1, 1) => (Species::B, Circulation::Cw),
            _ => (Species::C, Circulation::Ccw),
        };
        Self {
            cell,
            species,
            circulation,
        }
    }
}

/// The `6N x 6N` coefficient matrix `M` of `dV/dt = -M V + sqrt(G) V_in`,
/// together with the diagonal input-coupling matrix `G` and the parameters
/// it was built from. Immutable once constructed; frequency solves share it
/// freely across threads.
#[derive(Debug, Clone, PartialEq)]
pub struct DynamicalMatrix {
    m: DMatrix<Complex64>,
    gamma: Vec<f64>,
    params: LatticeParams,
}

/// Assembles `M` by direct transcription of the coupled-mode equations:
/// diagonal `kappa/2`, hops `i v` between `a_j` and `b_j`, `b_{j-1}` (and
/// the mirrored backward-sector pairs), `i g` between `a_cw` and `c_cw`,
/// `i g_s` / `i g_s*` between `a_ccw` and `c_ccw`, and `i j_eta` between
/// the two circulation directions of each species.
pub fn build_dynamical_matrix(p: &LatticeParams) -> Result<DynamicalMatrix> {
    p.validate()?;
    let n = p.cells;
    let dim = 6 * n;
    let mut m = DMatrix::<Complex64>::zeros(dim, dim);
    let iv = Complex64::new(0.0, p.v);
    let ig = Complex64::new(0.0, p.g);
    let igs = Complex64::i() * p.g_s;
    let igs_conj = Complex64::i() * p.g_s.conj();

    let at = |cell, species, circulation| ModeIndex::new(cell, species, circulation).flat(n);

    for j in 0..n {
        let a_cw = at(j, Species::A, Circulation::Cw);
        let b_ccw = at(j, Species::B, Circulation::Ccw);
        let c_cw = at(j, Species::C, Circulation::Cw);
        let a_ccw = at(j, Species::A, Circulation::Ccw);
        let b_cw = at(j, Species::B, Circulation::Cw);
        let c_ccw = at(j, Species::C, Circulation::Ccw);

        m[(a_cw, a_cw)] = (0.5 * p.kappa_a).into();
        m[(b_ccw, b_ccw)] = (0.5 * p.kappa_b).into();
        m[(c_cw, c_cw)] = (0.5 * p.kappa_c).into();
        m[(a_ccw, a_ccw)] = (0.5 * p.kappa_a).into();
        m[(b_cw, b_cw)] = (0.5 * p.kappa_b).into();
        m[(c_ccw, c_ccw)] = (0.5 * p.kappa_c).into();

        // intra-cell photon hop a_j <-> b_j, both sectors
        m[(a_cw, b_ccw)] += iv;
        m[(b_ccw, a_cw)] += iv;
        m[(a_ccw, b_cw)] += iv;
        m[(b_cw, a_ccw)] += iv;

        // inter-cell photon hop a_{j+1} <-> b_j; absent at the open ends
        if j + 1 < n {
            let a_cw_next = at(j + 1, Species::A, Circulation::Cw);
            let a_ccw_next = at(j + 1, Species::A, Circulation::Ccw);
            m[(a_cw_next, b_ccw)] += iv;
            m[(b_ccw, a_cw_next)] += iv;
            m[(a_ccw_next, b_cw)] += iv;
            m[(b_cw, a_ccw_next)] += iv;
        }

        // photon-phonon coupling, pumped direction
        m[(a_cw, c_cw)] += ig;
        m[(c_cw, a_cw)] += ig;

        // backscatter-induced photon-phonon coupling, counter direction
        m[(a_ccw, c_ccw)] += igs;
        m[(c_ccw, a_ccw)] += igs_conj;

        // cw/ccw backscattering per species
        for (i1, i2, j_eta) in [
            (a_cw, a_ccw, p.j_a),
            (b_ccw, b_cw, p.j_b),
            (c_cw, c_ccw, p.j_c),
        ] {
            let ij = Complex64::new(0.0, j_eta);
            m[(i1, i2)] += ij;
            m[(i2, i1)] += ij;
        }
    }

    let mut gamma = vec![0.0; dim];
    for (i, g_i) in gamma.iter_mut().enumerate() {
        *g_i = match ModeIndex::from_flat(i, n).species {
            Species::A => p.kappa_a,
            Species::B => p.kappa_b,
            Species::C => p.kappa_c,
        };
    }

    Ok(DynamicalMatrix {
        m,
        gamma,
        params: *p,
    })
}

impl DynamicalMatrix {
    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.m
    }

    /// Diagonal of the input-coupling matrix `G`.
    pub fn gamma(&self) -> &[f64] {
        &self.gamma
    }

    pub fn params(&self) -> &LatticeParams {
        &self.params
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    /// The Hermitian coupling Hamiltonian `H = (M - G/2) / i`. Rebuilding
    /// `G/2 + i H` reproduces `M` exactly because the extraction is
    /// elementwise.
    pub fn hermitian_part(&self) -> DMatrix<Complex64> {
        let dim = self.dim();
        DMatrix::from_fn(dim, dim, |r, c| {
            let m = if r == c {
                self.m[(r, c)] - Complex64::new(0.5 * self.gamma[r], 0.0)
            } else {
                self.m[(r, c)]
            };
            // division by i
            m * Complex64::new(0.0, -1.0)
        })
    }

    /// Debug dump of the nonzero entries as CSV `(row, col, re, im)`,
    /// 0-based indices.
    pub fn write_matrix_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "row,col,re,im")?;
        for r in 0..self.dim() {
            for c in 0..self.dim() {
                let z = self.m[(r, c)];
                if z != Complex64::new(0.0, 0.0) {
                    writeln!(out, "{},{},{:.12e},{:.12e}", r, c, z.re, z.im)?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn params_n1() -> LatticeParams {
        LatticeParams::without_backscatter(1, 10.0, 20.0, 1.0, 1.0, 0.01)
    }

    #[test]
    fn index_map_matches_sector_layout() {
        // 1-based convention: a_{j,cw} -> 3j-2, b_{j,ccw} -> 3j-1, c_{j,cw} -> 3j,
        // then the backward sector offset by 3N. Zero-based here.
        let n = 4;
        for j in 0..n {
            assert_eq!(
                ModeIndex::new(j, Species::A, Circulation::Cw).flat(n),
                3 * j
            );
            assert_eq!(
                ModeIndex::new(j, Species::B, Circulation::Ccw).flat(n),
                3 * j + 1
            );
            assert_eq!(
                ModeIndex::new(j, Species::C, Circulation::Cw).flat(n),
                3 * j + 2
            );
            assert_eq!(
                ModeIndex::new(j, Species::A, Circulation::Ccw).flat(n),
                3 * n + 3 * j
            );
            assert_eq!(
                ModeIndex::new(j, Species::B, Circulation::Cw).flat(n),
                3 * n + 3 * j + 1
            );
            assert_eq!(
                ModeIndex::new(j, Species::C, Circulation::Ccw).flat(n),
                3 * n + 3 * j + 2
            );
        }
    }

    #[test]
    fn index_map_round_trips() {
        for n in [1, 2, 5, 9] {
            for i in 0..6 * n {
                assert_eq!(ModeIndex::from_flat(i, n).flat(n), i);
            }
        }
    }

    #[test]
    fn single_cell_blocks_are_the_two_sector_matrices() {
        let d = build_dynamical_matrix(&params_n1()).unwrap();
        let m = d.matrix();
        let iv = Complex64::new(0.0, 10.0);
        let ig = Complex64::new(0.0, 20.0);
        let z = Complex64::new(0.0, 0.0);
        // forward sector: [[ka/2, iv, ig], [iv, kb/2, 0], [ig, 0, kc/2]]
        let expect_fwd = [
            [Complex64::new(0.5, 0.0), iv, ig],
            [iv, Complex64::new(0.5, 0.0), z],
            [ig, z, Complex64::new(0.005, 0.0)],
        ];
        // backward sector with g_s = 0 loses the phonon coupling
        let expect_bwd = [
            [Complex64::new(0.5, 0.0), iv, z],
            [iv, Complex64::new(0.5, 0.0), z],
            [z, z, Complex64::new(0.005, 0.0)],
        ];
        for r in 0..3 {
            for c in 0..3 {
                assert_eq!(m[(r, c)], expect_fwd[r][c], "fwd ({r},{c})");
                assert_eq!(m[(3 + r, 3 + c)], expect_bwd[r][c], "bwd ({r},{c})");
                assert_eq!(m[(r, 3 + c)], z, "cross ({r},{c})");
                assert_eq!(m[(3 + r, c)], z, "cross ({r},{c})");
            }
        }
    }

    #[test]
    fn m_plus_m_dagger_equals_gamma() {
        let p = LatticeParams {
            g_s: Complex64::new(0.3, -0.8),
            j_a: 0.2,
            j_b: 0.1,
            j_c: 0.05,
            ..LatticeParams::without_backscatter(6, 3.0, 2.0, 1.0, 0.7, 0.01)
        };
        let d = build_dynamical_matrix(&p).unwrap();
        let m = d.matrix();
        for r in 0..d.dim() {
            for c in 0..d.dim() {
                let sum = m[(r, c)] + m[(c, r)].conj();
                let expect = if r == c { d.gamma()[r] } else { 0.0 };
                assert_abs_diff_eq!(sum.re, expect, epsilon = 1e-14);
                assert_abs_diff_eq!(sum.im, 0.0, epsilon = 1e-14);
            }
        }
    }

    #[test]
    fn hermitian_part_single_cell() {
        let d = build_dynamical_matrix(&params_n1()).unwrap();
        let h = d.hermitian_part();
        let expect = [[0.0, 10.0, 20.0], [10.0, 0.0, 0.0], [20.0, 0.0, 0.0]];
        for r in 0..3 {
            for c in 0..3 {
                assert_abs_diff_eq!(h[(r, c)].re, expect[r][c], epsilon = 1e-15);
                assert_abs_diff_eq!(h[(r, c)].im, 0.0, epsilon = 1e-15);
            }
        }
        // rebuild check: G/2 + iH == M exactly
        let dim = d.dim();
        for r in 0..dim {
            for c in 0..dim {
                let rebuilt = if r == c {
                    Complex64::new(0.5 * d.gamma()[r], 0.0) + Complex64::i() * h[(r, c)]
                } else {
                    Complex64::i() * h[(r, c)]
                };
                assert_eq!(rebuilt, d.matrix()[(r, c)]);
            }
        }
    }

    #[test]
    fn gs_sits_on_the_a_ccw_row() {
        let gs = Complex64::new(0.0, -4.0);
        let p = LatticeParams {
            g_s: gs,
            ..params_n1()
        };
        let d = build_dynamical_matrix(&p).unwrap();
        let h = d.hermitian_part();
        let a_ccw = ModeIndex::new(0, Species::A, Circulation::Ccw).flat(1);
        let c_ccw = ModeIndex::new(0, Species::C, Circulation::Ccw).flat(1);
        assert_abs_diff_eq!((h[(a_ccw, c_ccw)] - gs).norm(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!((h[(c_ccw, a_ccw)] - gs.conj()).norm(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn backscatter_appears_between_direction_sectors() {
        let p = LatticeParams {
            j_a: 0.2,
            j_b: 0.3,
            j_c: 0.4,
            ..LatticeParams::without_backscatter(2, 1.0, 1.0, 1.0, 1.0, 1.0)
        };
        let d = build_dynamical_matrix(&p).unwrap();
        let h = d.hermitian_part();
        for j in 0..2 {
            for (species, j_eta) in [(Species::A, 0.2), (Species::B, 0.3), (Species::C, 0.4)] {
                let cw = ModeIndex::new(j, species, Circulation::Cw).flat(2);
                let ccw = ModeIndex::new(j, species, Circulation::Ccw).flat(2);
                assert_abs_diff_eq!(h[(cw, ccw)].re, j_eta, epsilon = 1e-15);
                assert_abs_diff_eq!(h[(cw, ccw)].im, 0.0, epsilon = 1e-15);
            }
        }
    }

    #[test]
    fn interior_row_support() {
        // Row of a_{5,cw} (1-based cell 5) in the reference 10-cell array:
        // nonzeros only at a_5cw, b_5ccw, b_4ccw, c_5cw.
        let p = LatticeParams::without_backscatter(10, 10.0, 20.0, 1.0, 1.0, 0.01);
        let d = build_dynamical_matrix(&p).unwrap();
        let n = 10;
        let row = ModeIndex::new(4, Species::A, Circulation::Cw).flat(n);
        let mut expected = vec![
            row,
            ModeIndex::new(4, Species::B, Circulation::Ccw).flat(n),
            ModeIndex::new(3, Species::B, Circulation::Ccw).flat(n),
            ModeIndex::new(4, Species::C, Circulation::Cw).flat(n),
        ];
        expected.sort_unstable();
        let mut support: Vec<usize> = (0..d.dim())
            .filter(|&c| d.matrix()[(row, c)] != Complex64::new(0.0, 0.0))
            .collect();
        support.sort_unstable();
        assert_eq!(support, expected);
    }

    #[test]
    fn rows_have_at_most_five_nonzeros() {
        let p = LatticeParams {
            g_s: Complex64::new(0.1, 0.2),
            j_a: 0.1,
            j_b: 0.1,
            j_c: 0.1,
            ..LatticeParams::without_backscatter(7, 2.0, 3.0, 1.0, 1.0, 0.5)
        };
        let d = build_dynamical_matrix(&p).unwrap();
        for r in 0..d.dim() {
            let nnz = (0..d.dim())
                .filter(|&c| d.matrix()[(r, c)] != Complex64::new(0.0, 0.0))
                .count();
            assert!(nnz <= 5, "row {r} has {nnz} nonzeros");
        }
    }

    #[test]
    fn block_diagonal_without_backscatter() {
        let p = LatticeParams::without_backscatter(4, 2.0, 3.0, 1.0, 1.0, 0.5);
        let d = build_dynamical_matrix(&p).unwrap();
        let half = 3 * 4;
        for r in 0..half {
            for c in half..2 * half {
                assert_eq!(d.matrix()[(r, c)], Complex64::new(0.0, 0.0));
                assert_eq!(d.matrix()[(c, r)], Complex64::new(0.0, 0.0));
            }
        }
    }

    #[test]
    fn csv_dump_has_header_and_entries() {
        let d = build_dynamical_matrix(&params_n1()).unwrap();
        let mut buf = Vec::new();
        d.write_matrix_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("row,col,re,im"));
        assert!(text.lines().count() > 10);
    }
}
