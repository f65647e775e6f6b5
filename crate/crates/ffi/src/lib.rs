//! C ABI over the bomsim library: plain-struct parameters in, opaque
//! handles for the assembled array, status codes out. Every entry point
//! catches panics, so nothing unwinds across the boundary; the last error
//! text is retrievable per thread through [`bom_last_error_message`].

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use num_complex::Complex64;

use bomsim::bands::bloch_matrix;
use bomsim::lattice::{build_dynamical_matrix, DynamicalMatrix};
use bomsim::metrics::array_isolation_bandwidth;
use bomsim::params::{LatticeParams, SingleCavityParams};
use bomsim::scattering::{port_transmissions, scattering_matrix};
use bomsim::single_cavity::{isolation_bandwidth, scattering_coeffs, Direction, PortPair};
use bomsim::spectrum::isolation_db;

/// Result of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BomStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidParams = 2,
    SingularSystem = 3,
    Panic = 4,
}

/// Complex number as a plain pair.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BomComplex {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for BomComplex {
    fn from(z: Complex64) -> Self {
        Self { re: z.re, im: z.im }
    }
}

impl From<BomComplex> for Complex64 {
    fn from(z: BomComplex) -> Self {
        Complex64::new(z.re, z.im)
    }
}

/// Single-cavity parameters; rates in units of `kappa_a`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BomSingleCavityParams {
    pub kappa_a: f64,
    pub kappa_c: f64,
    pub g: f64,
}

/// The six scattering amplitudes of the four-port cavity at one detuning
/// (`s34 = s21` and `s24 = s31` are implied).
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BomScatteringCoeffs {
    pub s12: BomComplex,
    pub s21: BomComplex,
    pub s13: BomComplex,
    pub s31: BomComplex,
    pub s2c: BomComplex,
    pub s3c: BomComplex,
}

/// Array parameters; rates in units of `kappa_a`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BomLatticeParams {
    pub cells: u32,
    pub v: f64,
    pub g: f64,
    pub g_s: BomComplex,
    pub j_a: f64,
    pub j_b: f64,
    pub j_c: f64,
    pub kappa_a: f64,
    pub kappa_b: f64,
    pub kappa_c: f64,
}

impl From<BomLatticeParams> for LatticeParams {
    fn from(p: BomLatticeParams) -> Self {
        LatticeParams {
            cells: p.cells as usize,
            v: p.v,
            g: p.g,
            g_s: p.g_s.into(),
            j_a: p.j_a,
            j_b: p.j_b,
            j_c: p.j_c,
            kappa_a: p.kappa_a,
            kappa_b: p.kappa_b,
            kappa_c: p.kappa_c,
        }
    }
}

/// Port pair selector for single-cavity bandwidths.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BomPortPair {
    Ports12 = 12,
    Ports13 = 13,
}

/// Which tail of the directional ratio a bandwidth refers to.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BomDirection {
    Forward = 0,
    Reverse = 1,
}

/// Assembled array, ready for frequency solves. Opaque; create with
/// `bom_lattice_new`, release with `bom_lattice_free`.
pub struct BomLattice {
    inner: DynamicalMatrix,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: &str) {
    let sanitized = message.replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).unwrap_or_default();
    });
}

fn fail(status: BomStatus, message: &str) -> BomStatus {
    set_error(message);
    status
}

fn status_of(e: &bomsim::Error) -> BomStatus {
    match e {
        bomsim::Error::SingularSystem => BomStatus::SingularSystem,
        _ => BomStatus::InvalidParams,
    }
}

fn guarded(body: impl FnOnce() -> BomStatus) -> BomStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(_) => fail(BomStatus::Panic, "internal panic"),
    }
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn bom_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Copies the last error message of this thread into `buf` (truncated to
/// `cap - 1` bytes, always NUL-terminated when `cap > 0`) and returns the
/// full message length in bytes.
///
/// # Safety
/// `buf` must point to at least `cap` writable bytes, or be NULL with
/// `cap == 0` to query the length alone.
#[no_mangle]
pub unsafe extern "C" fn bom_last_error_message(buf: *mut c_char, cap: usize) -> usize {
    LAST_ERROR.with(|slot| {
        let message = slot.borrow();
        let bytes = message.as_bytes();
        if !buf.is_null() && cap > 0 {
            let n = bytes.len().min(cap - 1);
            ptr::copy_nonoverlapping(bytes.as_ptr() as *const c_char, buf, n);
            *buf.add(n) = 0;
        }
        bytes.len()
    })
}

/// Evaluates the closed-form four-port scattering coefficients.
///
/// # Safety
/// `params` and `out` must be valid, properly aligned pointers.
#[no_mangle]
pub unsafe extern "C" fn bom_single_cavity_coeffs(
    params: *const BomSingleCavityParams,
    omega: f64,
    out: *mut BomScatteringCoeffs,
) -> BomStatus {
    if params.is_null() || out.is_null() {
        return fail(BomStatus::NullPointer, "null pointer argument");
    }
    let p = *params;
    guarded(|| {
        let sc = SingleCavityParams::new(p.kappa_a, p.kappa_c, p.g);
        if let Err(e) = bomsim::Validate::validate(&sc) {
            return fail(BomStatus::InvalidParams, &e.to_string());
        }
        let s = scattering_coeffs(&sc, omega);
        *out = BomScatteringCoeffs {
            s12: s.s12.into(),
            s21: s.s21.into(),
            s13: s.s13.into(),
            s31: s.s31.into(),
            s2c: s.s2c.into(),
            s3c: s.s3c().into(),
        };
        BomStatus::Ok
    })
}

/// Bandwidth of the contiguous interval around zero detuning on which the
/// directional ratio exceeds `threshold_db` (forward) or stays below its
/// negative (reverse).
///
/// # Safety
/// `params` and `out_width` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn bom_single_cavity_bandwidth(
    params: *const BomSingleCavityParams,
    threshold_db: f64,
    pair: BomPortPair,
    direction: BomDirection,
    out_width: *mut f64,
) -> BomStatus {
    if params.is_null() || out_width.is_null() {
        return fail(BomStatus::NullPointer, "null pointer argument");
    }
    let p = *params;
    guarded(|| {
        let sc = SingleCavityParams::new(p.kappa_a, p.kappa_c, p.g);
        let pair = match pair {
            BomPortPair::Ports12 => PortPair::P12,
            BomPortPair::Ports13 => PortPair::P13,
        };
        let direction = match direction {
            BomDirection::Forward => Direction::Forward,
            BomDirection::Reverse => Direction::Reverse,
        };
        match isolation_bandwidth(&sc, threshold_db, pair, direction) {
            Ok(width) => {
                *out_width = width;
                BomStatus::Ok
            }
            Err(e) => fail(status_of(&e), &e.to_string()),
        }
    })
}

/// Builds the array's dynamical matrix and returns an owned handle.
///
/// # Safety
/// `params` and `out` must be valid pointers; the handle written to `out`
/// must be released with `bom_lattice_free`.
#[no_mangle]
pub unsafe extern "C" fn bom_lattice_new(
    params: *const BomLatticeParams,
    out: *mut *mut BomLattice,
) -> BomStatus {
    if params.is_null() || out.is_null() {
        return fail(BomStatus::NullPointer, "null pointer argument");
    }
    let p = *params;
    guarded(|| match build_dynamical_matrix(&p.into()) {
        Ok(inner) => {
            *out = Box::into_raw(Box::new(BomLattice { inner }));
            BomStatus::Ok
        }
        Err(e) => {
            *out = ptr::null_mut();
            fail(status_of(&e), &e.to_string())
        }
    })
}

/// Releases a handle created by `bom_lattice_new`. NULL is a no-op.
///
/// # Safety
/// `lattice` must be a pointer previously returned by `bom_lattice_new`,
/// not yet freed.
#[no_mangle]
pub unsafe extern "C" fn bom_lattice_free(lattice: *mut BomLattice) {
    if !lattice.is_null() {
        drop(Box::from_raw(lattice));
    }
}

/// Number of modes (`6 N`) in the dynamical system, 0 for NULL.
///
/// # Safety
/// `lattice` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn bom_lattice_mode_count(lattice: *const BomLattice) -> usize {
    if lattice.is_null() {
        0
    } else {
        (*lattice).inner.dim()
    }
}

/// Port transmissions `T31` (forward) and `T13` (backward) at one
/// frequency.
///
/// # Safety
/// All pointers must be valid; `lattice` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn bom_lattice_transmissions(
    lattice: *const BomLattice,
    omega: f64,
    out_t31: *mut f64,
    out_t13: *mut f64,
) -> BomStatus {
    if lattice.is_null() || out_t31.is_null() || out_t13.is_null() {
        return fail(BomStatus::NullPointer, "null pointer argument");
    }
    let d = &(*lattice).inner;
    guarded(|| match port_transmissions(d, omega) {
        Ok((t31, t13)) => {
            *out_t31 = t31;
            *out_t13 = t13;
            BomStatus::Ok
        }
        Err(e) => fail(status_of(&e), &e.to_string()),
    })
}

/// Fills `out_t31`, `out_t13` and optionally `out_isolation_db` (may be
/// NULL) for `len` frequencies.
///
/// # Safety
/// `omega`, `out_t31`, `out_t13` must point to `len` elements;
/// `out_isolation_db` must be NULL or point to `len` elements.
#[no_mangle]
pub unsafe extern "C" fn bom_lattice_spectrum(
    lattice: *const BomLattice,
    omega: *const f64,
    len: usize,
    out_t31: *mut f64,
    out_t13: *mut f64,
    out_isolation_db: *mut f64,
) -> BomStatus {
    if lattice.is_null() || omega.is_null() || out_t31.is_null() || out_t13.is_null() {
        return fail(BomStatus::NullPointer, "null pointer argument");
    }
    let d = &(*lattice).inner;
    let omegas = std::slice::from_raw_parts(omega, len);
    let t31s = std::slice::from_raw_parts_mut(out_t31, len);
    let t13s = std::slice::from_raw_parts_mut(out_t13, len);
    let isos = if out_isolation_db.is_null() {
        None
    } else {
        Some(std::slice::from_raw_parts_mut(out_isolation_db, len))
    };
    guarded(move || {
        for (i, &w) in omegas.iter().enumerate() {
            match port_transmissions(d, w) {
                Ok((t31, t13)) => {
                    t31s[i] = t31;
                    t13s[i] = t13;
                    if let Some(isos) = &isos {
                        let p = isos.as_ptr() as *mut f64;
                        *p.add(i) = isolation_db(t31, t13);
                    }
                }
                Err(e) => return fail(status_of(&e), &e.to_string()),
            }
        }
        BomStatus::Ok
    })
}

/// Largest deviation of `U(omega)` from unitarity.
///
/// # Safety
/// `lattice` must be a live handle and `out_defect` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bom_lattice_unitarity_defect(
    lattice: *const BomLattice,
    omega: f64,
    out_defect: *mut f64,
) -> BomStatus {
    if lattice.is_null() || out_defect.is_null() {
        return fail(BomStatus::NullPointer, "null pointer argument");
    }
    let d = &(*lattice).inner;
    guarded(|| match scattering_matrix(d, omega) {
        Ok(s) => {
            *out_defect = s.unitarity_defect();
            BomStatus::Ok
        }
        Err(e) => fail(status_of(&e), &e.to_string()),
    })
}

/// Six sorted Bloch eigenvalues per wavenumber, written row-major into
/// `out_levels` (`6 * len` values).
///
/// # Safety
/// `k` must point to `len` elements, `out_levels` to `6 * len` elements.
#[no_mangle]
pub unsafe extern "C" fn bom_bloch_bands(
    params: *const BomLatticeParams,
    k: *const f64,
    len: usize,
    out_levels: *mut f64,
) -> BomStatus {
    if params.is_null() || k.is_null() || out_levels.is_null() {
        return fail(BomStatus::NullPointer, "null pointer argument");
    }
    let p: LatticeParams = (*params).into();
    let ks = std::slice::from_raw_parts(k, len);
    let out = std::slice::from_raw_parts_mut(out_levels, 6 * len);
    guarded(move || {
        if let Err(e) = bomsim::Validate::validate(&p) {
            return fail(BomStatus::InvalidParams, &e.to_string());
        }
        for (i, &kk) in ks.iter().enumerate() {
            let levels = bloch_matrix(&p, kk).eigenvalues();
            out[6 * i..6 * i + 6].copy_from_slice(&levels);
        }
        BomStatus::Ok
    })
}

/// Isolation bandwidth of the array at a signed threshold; writes the
/// interval edges and width (all zero when the criterion fails at the
/// band center).
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn bom_isolation_bandwidth(
    params: *const BomLatticeParams,
    threshold_db: f64,
    out_lo: *mut f64,
    out_hi: *mut f64,
    out_width: *mut f64,
) -> BomStatus {
    if params.is_null() || out_lo.is_null() || out_hi.is_null() || out_width.is_null() {
        return fail(BomStatus::NullPointer, "null pointer argument");
    }
    let p: LatticeParams = (*params).into();
    guarded(|| match array_isolation_bandwidth(&p, threshold_db) {
        Ok(result) => {
            let (lo, hi) = result.interval.unwrap_or((0.0, 0.0));
            *out_lo = lo;
            *out_hi = hi;
            *out_width = result.width;
            BomStatus::Ok
        }
        Err(e) => fail(status_of(&e), &e.to_string()),
    })
}
