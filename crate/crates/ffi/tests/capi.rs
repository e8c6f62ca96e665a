use hyperdet_ffi::*;
use std::ffi::{CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr::{null, null_mut};

fn last_error() -> String {
    unsafe { CStr::from_ptr(hd_last_error()) }.to_str().unwrap().to_string()
}

fn surface(g: u32, q: u32, orders: &[u32]) -> *mut HdSurface {
    let mut s = null_mut();
    let st = unsafe { hd_surface_new(g, q, orders.as_ptr(), orders.len(), &mut s) };
    assert_eq!(st, HdStatus::Ok, "{}", last_error());
    s
}

#[test]
fn surface_handles() {
    let s = surface(0, 1, &[3, 2]);
    let mut a = 0.0;
    let mut d = 0u64;
    unsafe {
        assert_eq!(hd_surface_area(s, &mut a), HdStatus::Ok);
        assert_eq!(hd_dim_holomorphic(s, 6, &mut d), HdStatus::Ok);
        hd_surface_free(s);
        hd_surface_free(null_mut());
    }
    assert!((a - std::f64::consts::PI / 3.0).abs() < 1e-14);
    assert_eq!(d, 1);
    let mut bad = null_mut();
    assert_eq!(unsafe { hd_surface_new(1, 0, null(), 0, &mut bad) }, HdStatus::Domain);
    assert!(bad.is_null());
    assert!(last_error().contains("not hyperbolic"));
    let json = CString::new(r#"{"genus":2,"cusps":0}"#).unwrap();
    let mut s = null_mut();
    assert_eq!(unsafe { hd_surface_from_json(json.as_ptr(), &mut s) }, HdStatus::Ok);
    assert!(last_error().is_empty());
    unsafe { hd_surface_free(s) };
    let broken = CString::new("{").unwrap();
    assert_eq!(unsafe { hd_surface_from_json(broken.as_ptr(), &mut s) }, HdStatus::Config);
}

#[test]
fn null_pointers_are_reported() {
    let mut out = 0.0;
    assert_eq!(unsafe { hd_surface_area(null(), &mut out) }, HdStatus::NullPointer);
    assert!(last_error().contains("surface"));
    let s = surface(2, 0, &[]);
    assert_eq!(unsafe { hd_surface_area(s, null_mut()) }, HdStatus::NullPointer);
    assert_eq!(unsafe { hd_surface_new(2, 0, null(), 3, &mut null_mut()) }, HdStatus::NullPointer);
    assert_eq!(unsafe { hd_scattering_new(null(), &mut null_mut()) }, HdStatus::NullPointer);
    unsafe { hd_surface_free(s) };
}

#[test]
fn invalid_utf8() {
    let bytes = CString::new(vec![0xffu8, 0xfe]).unwrap();
    let mut m = null_mut();
    assert_eq!(unsafe { hd_scattering_new(bytes.as_ptr(), &mut m) }, HdStatus::InvalidString);
}

#[test]
fn trace_and_determinant() {
    let s = surface(0, 1, &[2, 3]);
    let spec_json = CString::new(r#"{"entries":[{"norm":7.0,"multiplicity":1},{"norm":20.0,"multiplicity":2}]}"#).unwrap();
    let modular = CString::new("modular").unwrap();
    let (mut spec, mut model) = (null_mut(), null_mut());
    unsafe {
        assert_eq!(hd_spectrum_from_json(spec_json.as_ptr(), &mut spec), HdStatus::Ok);
        assert_eq!(hd_scattering_new(modular.as_ptr(), &mut model), HdStatus::Ok);
    }
    let mut t = HdTrace::default();
    assert_eq!(unsafe { hd_geometric_trace(s, 1, 2.0, spec, model, 200, false, &mut t) }, HdStatus::Ok);
    assert!(t.has_sigma && !t.partial);
    assert!((t.identity + t.hyperbolic + t.elliptic + t.parabolic - t.total).abs() < 1e-14);
    // missing scattering model on a cusped surface
    assert_eq!(unsafe { hd_geometric_trace(s, 1, 2.0, spec, null(), 64, false, &mut t) }, HdStatus::Model);
    assert_eq!(unsafe { hd_geometric_trace(s, 1, 2.0, spec, null(), 64, true, &mut t) }, HdStatus::Ok);
    assert!(t.partial && !t.has_sigma);

    let f = |x: f64| {
        let mut v = 0.0;
        assert_eq!(unsafe { hd_log_det(s, 1, x, spec, model, 200, &mut v) }, HdStatus::Ok);
        v
    };
    let h = 1e-5;
    let fd = (f(2.0 + h) - f(2.0 - h)) / (2.0 * h) / 5.0;
    let mut full = HdTrace::default();
    unsafe { hd_geometric_trace(s, 1, 2.0, spec, model, 200, true, &mut full) };
    assert!((fd - full.total).abs() < 1e-6);

    let mut c = HdConstants::default();
    assert_eq!(unsafe { hd_constants(s, 2, model, 0, &mut c) }, HdStatus::Ok);
    assert_eq!((c.a, c.d_n, c.sign_c), (2, 0, 1));
    let mut det = 0.0;
    assert_eq!(unsafe { hd_det_prime(s, 2, spec, model, 0, 200, &mut det) }, HdStatus::Ok);
    assert!(det > 0.0 && det.is_finite());
    let (mut l, mut tail) = (0.0, 0.0);
    assert_eq!(unsafe { hd_selberg_zeta(spec, 0.01, 1, &mut l, &mut tail) }, HdStatus::Convergence);
    assert_eq!(unsafe { hd_selberg_zeta(null(), 2.0, 64, &mut l, &mut tail) }, HdStatus::Ok);
    assert_eq!(l, 0.0);
    unsafe {
        hd_spectrum_free(spec);
        hd_scattering_free(model);
        hd_surface_free(s);
    }
}

#[test]
fn errors_are_thread_local() {
    let mut out = 0.0;
    assert_eq!(unsafe { hd_surface_area(null(), &mut out) }, HdStatus::NullPointer);
    let other = std::thread::spawn(last_error).join().unwrap();
    assert!(other.is_empty());
    assert!(!last_error().is_empty());
}

#[test]
fn status_names() {
    let name = |s| unsafe { CStr::from_ptr(hd_status_name(s)) }.to_str().unwrap();
    assert_eq!(name(HdStatus::Ok), "ok");
    assert_eq!(name(HdStatus::Convergence), "convergence");
    assert_eq!(HdStatus::Model as i32, 4);
}

fn header() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("include/hyperdet.h")
}

#[test]
fn header_declares_the_api() {
    let h = std::fs::read_to_string(header()).unwrap();
    for name in [
        "hd_surface_new", "hd_surface_free", "hd_spectrum_from_json", "hd_scattering_new", "hd_geometric_trace",
        "hd_log_det", "hd_constants", "hd_selberg_zeta", "hd_det_prime", "hd_last_error", "HD_STATUS_MODEL",
        "typedef struct HdSurface HdSurface",
    ] {
        assert!(h.contains(name), "{name}");
    }
}

/// The static library built next to this test binary.
fn staticlib() -> PathBuf {
    let exe = std::env::current_exe().unwrap();
    exe.parent().and_then(Path::parent).unwrap().join("libhyperdet_ffi.a")
}

#[test]
fn c_program_links_and_runs() {
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("use.c");
    std::fs::write(
        &src,
        "#include \"hyperdet.h\"\n\
         int probe(void) {\n\
           HdSurface *s = 0; unsigned orders[2] = {2, 3}; HdTrace t; double area;\n\
           if (hd_surface_new(0, 1, orders, 2, &s) != HD_STATUS_OK) return 1;\n\
           hd_surface_area(s, &area);\n\
           hd_geometric_trace(s, 1, 2.0, 0, 0, 64, true, &t);\n\
           hd_surface_free(s);\n\
           return t.partial && area > 1.047 && area < 1.048 ? 0 : 2;\n\
         }\n\
         int main(void) { return probe(); }\n",
    )
    .unwrap();
    let out = Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-I"])
        .arg(header().parent().unwrap())
        .arg(&src)
        .arg(staticlib())
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(dir.path().join("use"))
        .output()
        .expect("C compiler available");
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let run = Command::new(dir.path().join("use")).status().unwrap();
    assert_eq!(run.code(), Some(0));
}
