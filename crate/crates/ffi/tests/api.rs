//! Exercises the C entry points from Rust: status codes, handle lifecycle,
//! buffer filling and agreement with the underlying library.

use bomsim_ffi::*;

fn lattice_params() -> BomLatticeParams {
    BomLatticeParams {
        cells: 2,
        v: 10.0,
        g: 20.0,
        g_s: BomComplex { re: 0.0, im: 0.0 },
        j_a: 0.0,
        j_b: 0.0,
        j_c: 0.0,
        kappa_a: 1.0,
        kappa_b: 1.0,
        kappa_c: 0.01,
    }
}

#[test]
fn version_is_a_c_string() {
    let v = bom_version();
    assert!(!v.is_null());
    let s = unsafe { std::ffi::CStr::from_ptr(v) }.to_str().unwrap();
    assert_eq!(s, env!("CARGO_PKG_VERSION"));
}

#[test]
fn coeffs_match_the_library() {
    let p = BomSingleCavityParams {
        kappa_a: 1.0,
        kappa_c: 0.01,
        g: 3.0,
    };
    let mut out = BomScatteringCoeffs {
        s12: BomComplex { re: 0.0, im: 0.0 },
        s21: BomComplex { re: 0.0, im: 0.0 },
        s13: BomComplex { re: 0.0, im: 0.0 },
        s31: BomComplex { re: 0.0, im: 0.0 },
        s2c: BomComplex { re: 0.0, im: 0.0 },
        s3c: BomComplex { re: 0.0, im: 0.0 },
    };
    let status = unsafe { bom_single_cavity_coeffs(&p, 0.0, &mut out) };
    assert_eq!(status, BomStatus::Ok);
    assert_eq!(out.s12.re, 0.0);
    assert_eq!(out.s13.re, 1.0);
    assert!((out.s31.re - 0.01 / 9.01).abs() < 1e-15);
    assert_eq!(out.s2c, out.s3c);
}

#[test]
fn invalid_params_set_an_error_message() {
    let p = BomSingleCavityParams {
        kappa_a: 1.0,
        kappa_c: -1.0,
        g: 3.0,
    };
    let mut out = BomScatteringCoeffs {
        s12: BomComplex { re: 0.0, im: 0.0 },
        s21: BomComplex { re: 0.0, im: 0.0 },
        s13: BomComplex { re: 0.0, im: 0.0 },
        s31: BomComplex { re: 0.0, im: 0.0 },
        s2c: BomComplex { re: 0.0, im: 0.0 },
        s3c: BomComplex { re: 0.0, im: 0.0 },
    };
    let status = unsafe { bom_single_cavity_coeffs(&p, 0.0, &mut out) };
    assert_eq!(status, BomStatus::InvalidParams);
    let mut buf = vec![0i8; 256];
    let len = unsafe { bom_last_error_message(buf.as_mut_ptr() as *mut _, buf.len()) };
    assert!(len > 0);
    let text = unsafe { std::ffi::CStr::from_ptr(buf.as_ptr() as *const _) }
        .to_str()
        .unwrap();
    assert!(text.contains("kappa_c"), "{text}");
}

#[test]
fn null_pointers_are_rejected() {
    let status = unsafe { bom_single_cavity_coeffs(std::ptr::null(), 0.0, std::ptr::null_mut()) };
    assert_eq!(status, BomStatus::NullPointer);
    let mut handle: *mut BomLattice = std::ptr::null_mut();
    assert_eq!(
        unsafe { bom_lattice_new(std::ptr::null(), &mut handle) },
        BomStatus::NullPointer
    );
}

#[test]
fn lattice_handle_lifecycle() {
    let p = lattice_params();
    let mut handle: *mut BomLattice = std::ptr::null_mut();
    assert_eq!(unsafe { bom_lattice_new(&p, &mut handle) }, BomStatus::Ok);
    assert!(!handle.is_null());
    assert_eq!(unsafe { bom_lattice_mode_count(handle) }, 12);

    let (mut t31, mut t13) = (0.0, 0.0);
    assert_eq!(
        unsafe { bom_lattice_transmissions(handle, 0.0, &mut t31, &mut t13) },
        BomStatus::Ok
    );
    let d = bomsim::build_dynamical_matrix(&bomsim::LatticeParams::without_backscatter(
        2, 10.0, 20.0, 1.0, 1.0, 0.01,
    ))
    .unwrap();
    let (t31_lib, t13_lib) = bomsim::port_transmissions(&d, 0.0).unwrap();
    assert_eq!(t31, t31_lib);
    assert_eq!(t13, t13_lib);

    let mut defect = 1.0;
    assert_eq!(
        unsafe { bom_lattice_unitarity_defect(handle, 0.7, &mut defect) },
        BomStatus::Ok
    );
    assert!(defect < 1e-10);

    unsafe { bom_lattice_free(handle) };
}

#[test]
fn invalid_lattice_yields_no_handle() {
    let p = BomLatticeParams {
        cells: 0,
        ..lattice_params()
    };
    let mut handle: *mut BomLattice = std::ptr::null_mut();
    assert_eq!(
        unsafe { bom_lattice_new(&p, &mut handle) },
        BomStatus::InvalidParams
    );
    assert!(handle.is_null());
}

#[test]
fn spectrum_fills_buffers() {
    let p = lattice_params();
    let mut handle: *mut BomLattice = std::ptr::null_mut();
    assert_eq!(unsafe { bom_lattice_new(&p, &mut handle) }, BomStatus::Ok);

    let omegas: Vec<f64> = (0..11).map(|i| -5.0 + i as f64).collect();
    let mut t31 = vec![0.0; omegas.len()];
    let mut t13 = vec![0.0; omegas.len()];
    let mut iso = vec![0.0; omegas.len()];
    let status = unsafe {
        bom_lattice_spectrum(
            handle,
            omegas.as_ptr(),
            omegas.len(),
            t31.as_mut_ptr(),
            t13.as_mut_ptr(),
            iso.as_mut_ptr(),
        )
    };
    assert_eq!(status, BomStatus::Ok);
    assert!(t31.iter().all(|t| (0.0..=1.0 + 1e-8).contains(t)));
    assert!(iso.iter().all(|i| i.is_finite()));

    // isolation output is optional
    let status = unsafe {
        bom_lattice_spectrum(
            handle,
            omegas.as_ptr(),
            omegas.len(),
            t31.as_mut_ptr(),
            t13.as_mut_ptr(),
            std::ptr::null_mut(),
        )
    };
    assert_eq!(status, BomStatus::Ok);
    unsafe { bom_lattice_free(handle) };
}

#[test]
fn bloch_bands_are_sorted_and_symmetric() {
    let p = lattice_params();
    let ks = [-1.0, 0.0, 1.0];
    let mut levels = vec![0.0; 6 * ks.len()];
    let status = unsafe { bom_bloch_bands(&p, ks.as_ptr(), ks.len(), levels.as_mut_ptr()) };
    assert_eq!(status, BomStatus::Ok);
    for chunk in levels.chunks(6) {
        assert!(chunk.windows(2).all(|w| w[0] <= w[1]));
        assert!((chunk[0] + chunk[5]).abs() < 1e-9);
    }
}

#[test]
fn bandwidth_reports_interval() {
    let p = BomLatticeParams {
        cells: 4,
        ..lattice_params()
    };
    let (mut lo, mut hi, mut width) = (0.0, 0.0, 0.0);
    let status = unsafe { bom_isolation_bandwidth(&p, -50.0, &mut lo, &mut hi, &mut width) };
    assert_eq!(status, BomStatus::Ok);
    assert!(lo < 0.0 && hi > 0.0);
    assert!((width - (hi - lo)).abs() < 1e-12);
}

#[test]
fn header_is_generated() {
    let header = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("include/bomsim.h");
    let text = std::fs::read_to_string(header).expect("cbindgen output exists");
    for symbol in [
        "BOMSIM_H",
        "BomStatus",
        "BomLattice",
        "bom_lattice_new",
        "bom_lattice_spectrum",
        "bom_single_cavity_coeffs",
        "bom_isolation_bandwidth",
    ] {
        assert!(text.contains(symbol), "{symbol} missing from header");
    }
}
