//! C ABI over the hyperdet library.
//!
//! Every function returns an [`HdStatus`]; results go through out-pointers.
//! On failure [`hd_last_error`] holds a message for the calling thread.
//! Handles are created by `*_new` / `*_from_*` functions and released with
//! the matching `*_free`.

use hyperdet::scattering::ScatteringModel;
use hyperdet::special::real;
use hyperdet::surface::{area, dim_holomorphic, SurfaceSignature};
use hyperdet::trace_geom::{geometric_trace, LengthSpectrum, TraceOptions};
use hyperdet::zeta_det::{a_for, b_d_constants, c_constant, det_prime, log_det_resolvent, selberg_zeta_trunc};
use hyperdet::Error;
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HdStatus {
    Ok = 0,
    Pole = 1,
    Domain = 2,
    Convergence = 3,
    Model = 4,
    Internal = 5,
    Diagnostic = 6,
    Overflow = 7,
    Config = 8,
    NullPointer = 9,
    InvalidString = 10,
    Panic = 11,
}

/// Opaque surface signature.
pub struct HdSurface(SurfaceSignature);

/// Opaque length spectrum.
pub struct HdSpectrum(LengthSpectrum);

/// Opaque scattering model.
pub struct HdScattering(ScatteringModel);

/// Real parts of the geometric trace at a real evaluation point.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct HdTrace {
    pub identity: f64,
    pub hyperbolic: f64,
    pub elliptic: f64,
    pub parabolic: f64,
    pub total: f64,
    pub truncation_error: f64,
    /// Sigma(s); meaningful only when `has_sigma`.
    pub sigma: f64,
    pub has_sigma: bool,
    pub partial: bool,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct HdConstants {
    pub d_n: u64,
    pub a: i64,
    pub b: f64,
    pub d: f64,
    pub log_abs_c: f64,
    /// +1 or -1
    pub sign_c: i32,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> HdStatus {
    match e {
        Error::Pole(_) => HdStatus::Pole,
        Error::Domain(_) => HdStatus::Domain,
        Error::Convergence(_) => HdStatus::Convergence,
        Error::Model(_) => HdStatus::Model,
        Error::Internal(_) => HdStatus::Internal,
        Error::Diagnostic(_) => HdStatus::Diagnostic,
        Error::Overflow(_) => HdStatus::Overflow,
        Error::Config(_) => HdStatus::Config,
    }
}

enum Fail {
    Lib(Error),
    Null(&'static str),
    Str(&'static str),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Lib(e)
    }
}

fn guard<F: FnOnce() -> Result<(), Fail>>(f: F) -> HdStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            HdStatus::Ok
        }
        Ok(Err(Fail::Lib(e))) => {
            set_error(&e.to_string());
            status_of(&e)
        }
        Ok(Err(Fail::Null(what))) => {
            set_error(&format!("{what} is NULL"));
            HdStatus::NullPointer
        }
        Ok(Err(Fail::Str(what))) => {
            set_error(&format!("{what} is not valid UTF-8"));
            HdStatus::InvalidString
        }
        Err(_) => {
            set_error("panic inside hyperdet");
            HdStatus::Panic
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, what: &'static str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or(Fail::Null(what))
}

unsafe fn out<'a, T>(p: *mut T, what: &'static str) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or(Fail::Null(what))
}

unsafe fn string<'a>(p: *const c_char, what: &'static str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail::Null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail::Str(what))
}

static EMPTY: LengthSpectrum = LengthSpectrum { entries: Vec::new() };
static NO_MODEL: ScatteringModel = ScatteringModel::None;

unsafe fn spectrum_or_empty<'a>(p: *const HdSpectrum) -> &'a LengthSpectrum {
    p.as_ref().map_or(&EMPTY, |s| &s.0)
}

unsafe fn model_or_none<'a>(p: *const HdScattering) -> &'a ScatteringModel {
    p.as_ref().map_or(&NO_MODEL, |m| &m.0)
}

/// Message for the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next hyperdet call on the same thread.
#[no_mangle]
pub extern "C" fn hd_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Static name of a status code.
#[no_mangle]
pub extern "C" fn hd_status_name(status: HdStatus) -> *const c_char {
    let s: &'static CStr = match status {
        HdStatus::Ok => c"ok",
        HdStatus::Pole => c"pole",
        HdStatus::Domain => c"domain",
        HdStatus::Convergence => c"convergence",
        HdStatus::Model => c"model",
        HdStatus::Internal => c"internal",
        HdStatus::Diagnostic => c"diagnostic",
        HdStatus::Overflow => c"overflow",
        HdStatus::Config => c"config",
        HdStatus::NullPointer => c"null pointer",
        HdStatus::InvalidString => c"invalid string",
        HdStatus::Panic => c"panic",
    };
    s.as_ptr()
}

/// # Safety
/// `orders` points to `len` readable values (may be NULL when `len` is 0);
/// `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn hd_surface_new(
    genus: u32,
    cusps: u32,
    orders: *const u32,
    len: usize,
    out_surface: *mut *mut HdSurface,
) -> HdStatus {
    guard(|| {
        let o = out(out_surface, "out_surface")?;
        let orders = if len == 0 {
            Vec::new()
        } else {
            if orders.is_null() {
                return Err(Fail::Null("orders"));
            }
            std::slice::from_raw_parts(orders, len).to_vec()
        };
        *o = Box::into_raw(Box::new(HdSurface(SurfaceSignature::new(genus, cusps, orders)?)));
        Ok(())
    })
}

/// # Safety
/// `json` is a NUL-terminated string; `out_surface` is writable.
#[no_mangle]
pub unsafe extern "C" fn hd_surface_from_json(json: *const c_char, out_surface: *mut *mut HdSurface) -> HdStatus {
    guard(|| {
        let o = out(out_surface, "out_surface")?;
        *o = Box::into_raw(Box::new(HdSurface(SurfaceSignature::from_json(string(json, "json")?)?)));
        Ok(())
    })
}

/// # Safety
/// `surface` comes from this library and is not used afterwards; NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn hd_surface_free(surface: *mut HdSurface) {
    if !surface.is_null() {
        drop(Box::from_raw(surface));
    }
}

/// # Safety
/// Pointers are valid.
#[no_mangle]
pub unsafe extern "C" fn hd_surface_area(surface: *const HdSurface, out_area: *mut f64) -> HdStatus {
    guard(|| {
        *out(out_area, "out_area")? = area(&deref(surface, "surface")?.0);
        Ok(())
    })
}

/// # Safety
/// Pointers are valid.
#[no_mangle]
pub unsafe extern "C" fn hd_dim_holomorphic(surface: *const HdSurface, n: u32, out_dim: *mut u64) -> HdStatus {
    guard(|| {
        *out(out_dim, "out_dim")? = dim_holomorphic(&deref(surface, "surface")?.0, n)?;
        Ok(())
    })
}

/// # Safety
/// `json` is a NUL-terminated string; `out_spectrum` is writable.
#[no_mangle]
pub unsafe extern "C" fn hd_spectrum_from_json(json: *const c_char, out_spectrum: *mut *mut HdSpectrum) -> HdStatus {
    guard(|| {
        let o = out(out_spectrum, "out_spectrum")?;
        *o = Box::into_raw(Box::new(HdSpectrum(LengthSpectrum::from_json(string(json, "json")?)?)));
        Ok(())
    })
}

/// # Safety
/// `spectrum` comes from this library and is not used afterwards; NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn hd_spectrum_free(spectrum: *mut HdSpectrum) {
    if !spectrum.is_null() {
        drop(Box::from_raw(spectrum));
    }
}

/// `spec` is "none", "modular" or "file:PATH".
///
/// # Safety
/// `spec` is a NUL-terminated string; `out_model` is writable.
#[no_mangle]
pub unsafe extern "C" fn hd_scattering_new(spec: *const c_char, out_model: *mut *mut HdScattering) -> HdStatus {
    guard(|| {
        let o = out(out_model, "out_model")?;
        *o = Box::into_raw(Box::new(HdScattering(ScatteringModel::from_spec(string(spec, "spec")?)?)));
        Ok(())
    })
}

/// # Safety
/// `model` comes from this library and is not used afterwards; NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn hd_scattering_free(model: *mut HdScattering) {
    if !model.is_null() {
        drop(Box::from_raw(model));
    }
}

/// Geometric trace at real s. NULL `spectrum` means no hyperbolic classes,
/// NULL `model` means no scattering model.
///
/// # Safety
/// Non-NULL pointers are valid; `out_trace` is writable.
#[no_mangle]
pub unsafe extern "C" fn hd_geometric_trace(
    surface: *const HdSurface,
    n: u32,
    s: f64,
    spectrum: *const HdSpectrum,
    model: *const HdScattering,
    kmax: u32,
    skip_scattering: bool,
    out_trace: *mut HdTrace,
) -> HdStatus {
    guard(|| {
        let o = out(out_trace, "out_trace")?;
        let sig = &deref(surface, "surface")?.0;
        let opts = TraceOptions { kmax, skip_scattering };
        let b = geometric_trace(sig, n, real(s), spectrum_or_empty(spectrum), model_or_none(model), &opts)?;
        *o = HdTrace {
            identity: b.identity.re,
            hyperbolic: b.hyperbolic.re,
            elliptic: b.elliptic.re,
            parabolic: b.parabolic.re,
            total: b.total.re,
            truncation_error: b.truncation_error,
            sigma: b.sigma.map_or(0.0, |v| v.re),
            has_sigma: b.sigma.is_some(),
            partial: b.partial,
        };
        Ok(())
    })
}

/// log det(Delta_n + s(s+2n-1)) at real s.
///
/// # Safety
/// Non-NULL pointers are valid; `out_log_det` is writable.
#[no_mangle]
pub unsafe extern "C" fn hd_log_det(
    surface: *const HdSurface,
    n: u32,
    s: f64,
    spectrum: *const HdSpectrum,
    model: *const HdScattering,
    kmax: u32,
    out_log_det: *mut f64,
) -> HdStatus {
    guard(|| {
        let o = out(out_log_det, "out_log_det")?;
        let sig = &deref(surface, "surface")?.0;
        let a = a_for(sig, model_or_none(model))?;
        *o = log_det_resolvent(sig, n, real(s), spectrum_or_empty(spectrum), a, kmax)?.log_det.re;
        Ok(())
    })
}

/// A, B, D, C_n and d_n. `n0` only matters for n = 0.
///
/// # Safety
/// Non-NULL pointers are valid; `out_constants` is writable.
#[no_mangle]
pub unsafe extern "C" fn hd_constants(
    surface: *const HdSurface,
    n: u32,
    model: *const HdScattering,
    n0: u32,
    out_constants: *mut HdConstants,
) -> HdStatus {
    guard(|| {
        let o = out(out_constants, "out_constants")?;
        let sig = &deref(surface, "surface")?.0;
        let a = a_for(sig, model_or_none(model))?;
        let (b, d) = b_d_constants(sig, n)?;
        let c = c_constant(sig, n, a, n0)?;
        *o = HdConstants { d_n: dim_holomorphic(sig, n)?, a, b, d, log_abs_c: c.log_abs, sign_c: c.sign as i32 };
        Ok(())
    })
}

/// log Z(s) of the truncated Euler product and a bound on its tail.
///
/// # Safety
/// Non-NULL pointers are valid; out-pointers are writable.
#[no_mangle]
pub unsafe extern "C" fn hd_selberg_zeta(
    spectrum: *const HdSpectrum,
    s: f64,
    kmax: u32,
    out_log: *mut f64,
    out_tail: *mut f64,
) -> HdStatus {
    guard(|| {
        let l = out(out_log, "out_log")?;
        let t = out(out_tail, "out_tail")?;
        let z = selberg_zeta_trunc(spectrum_or_empty(spectrum), real(s), kmax)?;
        *l = z.log.re;
        *t = z.tail;
        Ok(())
    })
}

/// det' Delta_n. For n = 0 the product's leading coefficient at 0 is used.
///
/// # Safety
/// Non-NULL pointers are valid; `out_det` is writable.
#[no_mangle]
pub unsafe extern "C" fn hd_det_prime(
    surface: *const HdSurface,
    n: u32,
    spectrum: *const HdSpectrum,
    model: *const HdScattering,
    n0: u32,
    kmax: u32,
    out_det: *mut f64,
) -> HdStatus {
    guard(|| {
        let o = out(out_det, "out_det")?;
        let sig = &deref(surface, "surface")?.0;
        *o = det_prime(sig, n, spectrum_or_empty(spectrum), model_or_none(model), n0, None, kmax)?.value;
        Ok(())
    })
}
