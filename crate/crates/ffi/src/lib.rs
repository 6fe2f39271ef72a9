//! C ABI over `charvar`.
//!
//! Every entry point returns a [`CvStatus`]; results come back through out
//! pointers. Polynomials are opaque [`CvPoly`] handles freed with
//! [`cv_poly_free`], strings are freed with [`cv_string_free`]. After a
//! non-OK status, [`cv_last_error_message`] describes the failure on the
//! calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use charvar::charpoly::{self, Check, Variant};
use charvar::exact::{poly_to_json, LaurentPoly};
use charvar::{gloracle, n2ring, Error};

/// Status codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CvStatus {
    Ok = 0,
    /// Bad arguments.
    Usage = 1,
    /// Request too large.
    Budget = 2,
    /// An identity that must hold exactly failed.
    Consistency = 3,
    /// Arithmetic failure (division by zero, mismatched variables).
    Arithmetic = 4,
    Parse = 5,
    /// A required pointer was null.
    NullPointer = 6,
    /// The library panicked; this is a bug.
    Panic = 7,
}

/// A Laurent polynomial with rational coefficients.
pub struct CvPoly(LaurentPoly);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> CvStatus {
    match e {
        Error::Usage(_) => CvStatus::Usage,
        Error::Budget(_) => CvStatus::Budget,
        Error::Consistency(_) => CvStatus::Consistency,
        Error::Parse(_) => CvStatus::Parse,
        Error::VarMismatch { .. } | Error::HalfIntegerResidue { .. } | Error::DivisionByZero => CvStatus::Arithmetic,
    }
}

fn guard<F: FnOnce() -> Result<(), Error>>(f: F) -> CvStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            CvStatus::Ok
        }
        Ok(Err(e)) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_error("internal panic".into());
            CvStatus::Panic
        }
    }
}

fn null_error(what: &str) -> Error {
    Error::Usage(format!("{what} is null"))
}

unsafe fn put_poly(out: *mut *mut CvPoly, p: LaurentPoly) -> Result<(), Error> {
    if out.is_null() {
        return Err(null_error("output pointer"));
    }
    *out = Box::into_raw(Box::new(CvPoly(p)));
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Error> {
    if out.is_null() {
        return Err(null_error("output pointer"));
    }
    *out = CString::new(s).map_err(|_| Error::Usage("string contains NUL".into()))?.into_raw();
    Ok(())
}

fn check_null<T>(p: *const T, what: &str) -> Result<(), Error> {
    if p.is_null() {
        Err(null_error(what))
    } else {
        Ok(())
    }
}

macro_rules! null_checked {
    ($p:expr) => {
        if $p.is_null() {
            set_error("output pointer is null".into());
            return CvStatus::NullPointer;
        }
    };
}

/// `E_n(q)`.
///
/// # Safety
/// `out` must be valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn cv_epoly(n: u32, g: u32, out: *mut *mut CvPoly) -> CvStatus {
    null_checked!(out);
    guard(|| put_poly(out, charpoly::e_poly(n, g)?))
}

/// `H̄_n(z, w)`.
///
/// # Safety
/// `out` must be valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn cv_hbar(n: u32, g: u32, out: *mut *mut CvPoly) -> CvStatus {
    null_checked!(out);
    guard(|| put_poly(out, charpoly::h_bar(n, g)?))
}

/// Conjectural mixed Hodge polynomial in `(q, t)`; `pgl` divides out `(1+qt)^{2g}`.
///
/// # Safety
/// `out` must be valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn cv_mhp(n: u32, g: u32, pgl: bool, out: *mut *mut CvPoly) -> CvStatus {
    null_checked!(out);
    let v = if pgl { Variant::Pgl } else { Variant::Gl };
    guard(|| put_poly(out, charpoly::mhp_conj(n, g, v)?))
}

/// `A_n(q)`, computed by both routes and compared.
///
/// # Safety
/// `out` must be valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn cv_apoly(n: u32, g: u32, out: *mut *mut CvPoly) -> CvStatus {
    null_checked!(out);
    guard(|| {
        let a = charpoly::a_poly_checked(n, g)?;
        put_poly(out, a)
    })
}

/// Euler characteristic of the PGL_n variety.
///
/// # Safety
/// `out` must be valid for writing one `int64_t`.
#[no_mangle]
pub unsafe extern "C" fn cv_euler(n: u32, g: u32, out: *mut i64) -> CvStatus {
    null_checked!(out);
    guard(|| {
        *out = charpoly::euler_char_pgl(n, g)?;
        Ok(())
    })
}

/// Coefficient of `T^n` in the untwisted series at genus `g`.
///
/// # Safety
/// `out` must be valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn cv_untwisted_coeff(g: u32, n: u32, out: *mut *mut CvPoly) -> CvStatus {
    null_checked!(out);
    guard(|| put_poly(out, charpoly::untwisted_series(g, n)?.coeff(n as usize).clone()))
}

/// Mixed Hodge polynomial of the rank-2 variety from its cohomology ring.
///
/// # Safety
/// `out` must be valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn cv_m2_ring(g: u32, out: *mut *mut CvPoly) -> CvStatus {
    null_checked!(out);
    guard(|| {
        if g == 0 {
            return Err(Error::Usage("g must be at least 1".into()));
        }
        put_poly(out, n2ring::mhp_m2_ring(g))
    })
}

/// Brute-force count of `2g`-tuples in `GL_n(F_q)` whose product of
/// commutators is `ζ_n I` (`twisted`) or `I`, as a decimal string.
///
/// # Safety
/// `out` must be valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn cv_oracle_genus_count(n: u32, q: u32, g: u32, twisted: bool, out: *mut *mut c_char) -> CvStatus {
    null_checked!(out);
    guard(|| {
        let count = if twisted { gloracle::twisted_count(n, q, g)? } else { gloracle::hom_count(n, q, g)? };
        put_string(out, count.to_string())
    })
}

/// Runs a named identity check (`g0`, `g0u`, `g1`, `gh`, `duality`, `t-minus-one`).
/// A failed identity is reported through `passed`, not the status.
///
/// # Safety
/// `check` must be a NUL-terminated string; `passed` must be valid for writing.
#[no_mangle]
pub unsafe extern "C" fn cv_verify(check: *const c_char, order: u32, g: u32, passed: *mut bool) -> CvStatus {
    null_checked!(passed);
    guard(|| {
        check_null(check, "check name")?;
        let name = CStr::from_ptr(check).to_str().map_err(|_| Error::Parse("check name is not UTF-8".into()))?;
        let c: Check = name.parse()?;
        *passed = charpoly::verify(c, order, g)?.passed;
        Ok(())
    })
}

/// Canonical JSON `{"vars":[..],"terms":[{"e":[..],"c":"num/den"}]}`.
///
/// # Safety
/// `p` must be a live handle; `out` must be valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn cv_poly_to_json(p: *const CvPoly, out: *mut *mut c_char) -> CvStatus {
    null_checked!(out);
    guard(|| {
        check_null(p, "polynomial")?;
        put_string(out, poly_to_json(&(*p).0).to_string())
    })
}

/// Canonical text form, e.g. `1 - 2*q + q^2`.
///
/// # Safety
/// `p` must be a live handle; `out` must be valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn cv_poly_to_string(p: *const CvPoly, out: *mut *mut c_char) -> CvStatus {
    null_checked!(out);
    guard(|| {
        check_null(p, "polynomial")?;
        put_string(out, (*p).0.to_string())
    })
}

/// Number of nonzero terms, or 0 for a null handle.
///
/// # Safety
/// `p` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cv_poly_num_terms(p: *const CvPoly) -> usize {
    if p.is_null() {
        0
    } else {
        (*p).0.len()
    }
}

/// Frees a handle. Null is ignored.
///
/// # Safety
/// `p` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cv_poly_free(p: *mut CvPoly) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Frees a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cv_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failure on this thread, or null. Owned by the
/// library and valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn cv_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}
