//! Shared oracle machinery for the integration suites: a complex RK4
//! integrator, monochromatic-drive steady states, and an independent
//! term-list assembly of the array Hamiltonian.

#![allow(dead_code)]

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use bomsim::lattice::DynamicalMatrix;
use bomsim::params::LatticeParams;

/// Classic fixed-step RK4 for dy/dt = f(t, y) on complex state vectors.
pub fn rk4(
    f: impl Fn(f64, &DVector<Complex64>) -> DVector<Complex64>,
    mut y: DVector<Complex64>,
    t_end: f64,
    dt: f64,
) -> DVector<Complex64> {
    let steps = (t_end / dt).ceil() as usize;
    let dt = t_end / steps as f64;
    let mut t = 0.0;
    for _ in 0..steps {
        let k1 = f(t, &y);
        let k2 = f(t + 0.5 * dt, &(&y + &k1 * Complex64::from(0.5 * dt)));
        let k3 = f(t + 0.5 * dt, &(&y + &k2 * Complex64::from(0.5 * dt)));
        let k4 = f(t + dt, &(&y + &k3 * Complex64::from(dt)));
        y += (k1 + k2 * Complex64::from(2.0) + k3 * Complex64::from(2.0) + k4)
            * Complex64::from(dt / 6.0);
        t += dt;
    }
    y
}

/// Integrates dV/dt = -M V + forcing e^{-i omega t} from rest and returns
/// the demodulated state V(T) e^{+i omega T}, the steady Fourier amplitude
/// once transients have decayed.
pub fn driven_steady_state(
    m: &DMatrix<Complex64>,
    forcing: &DVector<Complex64>,
    omega: f64,
    t_end: f64,
    dt: f64,
) -> DVector<Complex64> {
    let f = |t: f64, y: &DVector<Complex64>| {
        let phase = Complex64::new(0.0, -omega * t).exp();
        -(m * y) + forcing * phase
    };
    let y = rk4(f, DVector::zeros(m.nrows()), t_end, dt);
    y * Complex64::new(0.0, omega * t_end).exp()
}

/// Time-domain port transmissions of the array: drive one port mode with a
/// unit monochromatic input, integrate the coupled-mode equations to steady
/// state, and read the output amplitude `sqrt(gamma_q) V_q - delta_qp`.
pub fn time_domain_transmission(
    d: &DynamicalMatrix,
    omega: f64,
    drive: usize,
    observe: usize,
    t_end: f64,
    dt: f64,
) -> f64 {
    let gamma = d.gamma();
    let mut forcing = DVector::zeros(d.dim());
    forcing[drive] = Complex64::from(gamma[drive].sqrt());
    let v = driven_steady_state(d.matrix(), &forcing, omega, t_end, dt);
    let mut out = v[observe] * gamma[observe].sqrt();
    if observe == drive {
        out -= Complex64::from(1.0);
    }
    out.norm_sqr()
}

/// Settling horizon: transients decay at least as fast as the slowest
/// `kappa/2`, so `ln(1e10)` of that is ample for 1e-5 relative targets.
pub fn settle_time(min_decay: f64) -> f64 {
    (1e10f64).ln() / min_decay
}

/// Independent reconstruction of the dynamical matrix from the Hamiltonian
/// term list `sum lambda |m><n| + h.c.` plus `Gamma/2` on the diagonal.
/// Indices are computed from scratch, not through the crate's mode map.
pub fn term_list_matrix(p: &LatticeParams) -> DMatrix<Complex64> {
    let n = p.cells;
    let a_cw = |j: usize| 3 * j;
    let b_ccw = |j: usize| 3 * j + 1;
    let c_cw = |j: usize| 3 * j + 2;
    let a_ccw = |j: usize| 3 * n + 3 * j;
    let b_cw = |j: usize| 3 * n + 3 * j + 1;
    let c_ccw = |j: usize| 3 * n + 3 * j + 2;

    let mut terms: Vec<(usize, usize, Complex64)> = Vec::new();
    for j in 0..n {
        terms.push((a_cw(j), b_ccw(j), p.v.into()));
        terms.push((a_cw(j), c_cw(j), p.g.into()));
        terms.push((a_ccw(j), b_cw(j), p.v.into()));
        terms.push((a_ccw(j), c_ccw(j), p.g_s));
        terms.push((a_cw(j), a_ccw(j), p.j_a.into()));
        terms.push((b_ccw(j), b_cw(j), p.j_b.into()));
        terms.push((c_cw(j), c_ccw(j), p.j_c.into()));
        if j + 1 < n {
            terms.push((a_cw(j + 1), b_ccw(j), p.v.into()));
            terms.push((a_ccw(j + 1), b_cw(j), p.v.into()));
        }
    }

    let dim = 6 * n;
    let mut h = DMatrix::<Complex64>::zeros(dim, dim);
    for (m_idx, n_idx, lambda) in terms {
        h[(m_idx, n_idx)] += lambda;
        h[(n_idx, m_idx)] += lambda.conj();
    }

    let mut m = h * Complex64::i();
    for i in 0..dim {
        let kappa = match i % 3 {
            0 => p.kappa_a,
            1 => p.kappa_b,
            _ => p.kappa_c,
        };
        m[(i, i)] += Complex64::from(0.5 * kappa);
    }
    m
}

pub fn max_abs_diff(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
    assert_eq!(a.shape(), b.shape());
    let mut worst = 0.0f64;
    for r in 0..a.nrows() {
        for c in 0..a.ncols() {
            worst = worst.max((a[(r, c)] - b[(r, c)]).norm());
        }
    }
    worst
}
