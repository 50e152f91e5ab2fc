//! C ABI for the `raycap` library.
//!
//! Every function returns a [`RaycapStatus`]; results are written through
//! out-pointers. Objects are opaque handles released with the matching
//! `*_free` function. Strings returned to the caller are released with
//! [`raycap_string_free`]. On failure, [`raycap_last_error`] describes the
//! most recent error on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use raycap::ambigcheck::{ambiguous_report, AmbigCase};
use raycap::biquad::VerifyStatus;
use raycap::capsearch::SearchOutcome;
use raycap::cli::{search_report, verify_certificate, CertificateFile, SearchArgs};
use raycap::quadfield::{Modulus, QuadraticField, RayClassGroup};
use raycap::Error;

/// Status codes; the nonzero values match the command-line exit codes where they overlap.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RaycapStatus {
    Ok = 0,
    Internal = 1,
    InvalidInput = 2,
    NotFound = 3,
    PowerBlocked = 4,
    VerifyFailed = 5,
    Budget = 6,
    UnverifiedComposite = 7,
    NullPointer = 8,
    Panic = 9,
}

/// Real or imaginary quadratic field `Q(sqrt d)`.
pub struct RaycapField(QuadraticField);

/// Ray class group of a quadratic field modulo a squarefree integer.
pub struct RaycapRayClassGroup(RayClassGroup);

/// Stamped capitulation certificate.
pub struct RaycapCertificate(CertificateFile);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let s = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = s);
}

fn from_error(e: &Error) -> RaycapStatus {
    set_error(e.to_string());
    match e {
        Error::Budget(_) => RaycapStatus::Budget,
        Error::Inconsistent(_) => RaycapStatus::Internal,
        _ => RaycapStatus::InvalidInput,
    }
}

fn guard(f: impl FnOnce() -> RaycapStatus) -> RaycapStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => {
            set_error("panic inside raycap");
            RaycapStatus::Panic
        }
    }
}

macro_rules! try_status {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(e) => return from_error(&e),
        }
    };
}

macro_rules! non_null {
    ($($p:expr),+) => {
        if $($p.is_null())||+ {
            set_error("null pointer argument");
            return RaycapStatus::NullPointer;
        }
    };
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> RaycapStatus {
    match CString::new(s) {
        Ok(c) => {
            *out = c.into_raw();
            RaycapStatus::Ok
        }
        Err(_) => {
            set_error("string contains a NUL byte");
            RaycapStatus::Internal
        }
    }
}

/// Message of the last error on this thread; valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn raycap_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Release a string returned by this library.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn raycap_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Create `Q(sqrt d)` for squarefree `d != 0, 1`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn raycap_field_new(d: i64, out: *mut *mut RaycapField) -> RaycapStatus {
    guard(|| {
        non_null!(out);
        let k = try_status!(QuadraticField::new(d));
        *out = Box::into_raw(Box::new(RaycapField(k)));
        RaycapStatus::Ok
    })
}

/// Field discriminant.
///
/// # Safety
/// `field` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn raycap_field_disc(field: *const RaycapField, out: *mut i64) -> RaycapStatus {
    guard(|| {
        non_null!(field, out);
        *out = (*field).0.disc();
        RaycapStatus::Ok
    })
}

/// # Safety
/// `field` must come from [`raycap_field_new`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn raycap_field_free(field: *mut RaycapField) {
    if !field.is_null() {
        drop(Box::from_raw(field));
    }
}

/// Ray class group modulo every prime above the squarefree integer `m`.
///
/// # Safety
/// `field` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn raycap_rayclass_new(field: *const RaycapField, m: u64, out: *mut *mut RaycapRayClassGroup) -> RaycapStatus {
    guard(|| {
        non_null!(field, out);
        let k = &(*field).0;
        let md = try_status!(Modulus::from_rational(k, m, None));
        let rcg = try_status!(RayClassGroup::compute(k, md));
        *out = Box::into_raw(Box::new(RaycapRayClassGroup(rcg)));
        RaycapStatus::Ok
    })
}

/// Group order.
///
/// # Safety
/// `g` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn raycap_rayclass_order(g: *const RaycapRayClassGroup, out: *mut u64) -> RaycapStatus {
    guard(|| {
        non_null!(g, out);
        match u64::try_from((*g).0.order()) {
            Ok(v) => {
                *out = v;
                RaycapStatus::Ok
            }
            Err(_) => {
                set_error("order exceeds 64 bits");
                RaycapStatus::InvalidInput
            }
        }
    })
}

/// Number of invariant factors.
///
/// # Safety
/// `g` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn raycap_rayclass_rank(g: *const RaycapRayClassGroup, out: *mut usize) -> RaycapStatus {
    guard(|| {
        non_null!(g, out);
        *out = (*g).0.group.rank();
        RaycapStatus::Ok
    })
}

/// Invariant factor `i`, in divisibility order.
///
/// # Safety
/// `g` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn raycap_rayclass_invariant(g: *const RaycapRayClassGroup, i: usize, out: *mut u64) -> RaycapStatus {
    guard(|| {
        non_null!(g, out);
        match (*g).0.group.invariants().get(i) {
            Some(&v) => {
                *out = v;
                RaycapStatus::Ok
            }
            None => {
                set_error(format!("index {i} out of range"));
                RaycapStatus::InvalidInput
            }
        }
    })
}

/// # Safety
/// `g` must come from [`raycap_rayclass_new`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn raycap_rayclass_free(g: *mut RaycapRayClassGroup) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Search for a principalizing prime `p <= bound` for the class selected by
/// `class_sel` (`"trivial"`, `"auto-K"` or comma-separated coordinates).
/// Writes a certificate on [`RaycapStatus::Ok`]; returns `NotFound` or
/// `PowerBlocked` otherwise. `h < 0` selects the default.
///
/// # Safety
/// `class_sel` must be a NUL-terminated string; `out` must be valid.
#[no_mangle]
#[allow(clippy::too_many_arguments)]
pub unsafe extern "C" fn raycap_search(
    d: i64,
    m: u64,
    class_sel: *const c_char,
    ell: u64,
    n: u32,
    h: i32,
    bound: u64,
    jobs: usize,
    out: *mut *mut RaycapCertificate,
) -> RaycapStatus {
    guard(|| {
        non_null!(class_sel, out);
        let Ok(class) = CStr::from_ptr(class_sel).to_str() else {
            set_error("class selector is not UTF-8");
            return RaycapStatus::InvalidInput;
        };
        let args = SearchArgs {
            d,
            modulus: m,
            class: class.to_string(),
            ell,
            n,
            h: u32::try_from(h).ok(),
            bound,
            out: None,
        };
        let rep = try_status!(search_report(&args, jobs.max(1)));
        match rep.outcome {
            SearchOutcome::Found { certificate, field, .. } => {
                *out = Box::into_raw(Box::new(RaycapCertificate(CertificateFile::new(certificate, Some(field)))));
                RaycapStatus::Ok
            }
            SearchOutcome::NotFound { stats } => {
                set_error(format!("no prime up to {}", stats.bound));
                RaycapStatus::NotFound
            }
            SearchOutcome::PowerBlocked { hint } => {
                set_error(hint.requirement);
                RaycapStatus::PowerBlocked
            }
        }
    })
}

/// The principalizing prime recorded in the certificate.
///
/// # Safety
/// `cert` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn raycap_certificate_prime(cert: *const RaycapCertificate, out: *mut u64) -> RaycapStatus {
    guard(|| {
        non_null!(cert, out);
        *out = (*cert).0.certificate.p;
        RaycapStatus::Ok
    })
}

/// Certificate file JSON; free with [`raycap_string_free`].
///
/// # Safety
/// `cert` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn raycap_certificate_to_json(cert: *const RaycapCertificate, out: *mut *mut c_char) -> RaycapStatus {
    guard(|| {
        non_null!(cert, out);
        write_string(out, (*cert).0.to_json())
    })
}

/// Parse a certificate file; fails with `VerifyFailed` if the hash stamp does not match.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn raycap_certificate_from_json(json: *const c_char, out: *mut *mut RaycapCertificate) -> RaycapStatus {
    guard(|| {
        non_null!(json, out);
        let Ok(s) = CStr::from_ptr(json).to_str() else {
            set_error("certificate is not UTF-8");
            return RaycapStatus::InvalidInput;
        };
        let file = try_status!(CertificateFile::from_json(s));
        if !file.stamp_ok() {
            set_error("hash stamp mismatch");
            return RaycapStatus::VerifyFailed;
        }
        *out = Box::into_raw(Box::new(RaycapCertificate(file)));
        RaycapStatus::Ok
    })
}

/// Re-check the certificate and decide capitulation in the biquadratic field.
/// When `report_json` is not null it receives the verification report.
///
/// # Safety
/// `cert` must be valid; `report_json` may be null.
#[no_mangle]
pub unsafe extern "C" fn raycap_verify(cert: *const RaycapCertificate, budget: u64, report_json: *mut *mut c_char) -> RaycapStatus {
    guard(|| {
        non_null!(cert);
        let rep = try_status!(verify_certificate(&(*cert).0, budget));
        if !report_json.is_null() {
            let s = serde_json::to_string(&rep).unwrap_or_default();
            let st = write_string(report_json, s);
            if st != RaycapStatus::Ok {
                return st;
            }
        }
        match rep.status {
            VerifyStatus::Success => RaycapStatus::Ok,
            VerifyStatus::Fail => {
                set_error(rep.reason.unwrap_or_default());
                RaycapStatus::VerifyFailed
            }
            VerifyStatus::Budget => RaycapStatus::Budget,
            VerifyStatus::UnverifiedComposite => RaycapStatus::UnverifiedComposite,
        }
    })
}

/// # Safety
/// `cert` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn raycap_certificate_free(cert: *mut RaycapCertificate) {
    if !cert.is_null() {
        drop(Box::from_raw(cert));
    }
}

/// Ambiguous class count of `Q(sqrt d) / Q` modulo `m`: formula value and direct count.
///
/// # Safety
/// `formula` and `direct` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn raycap_ambig_quadratic(d: i64, m: u64, formula: *mut u64, direct: *mut u64) -> RaycapStatus {
    guard(|| {
        non_null!(formula, direct);
        let r = try_status!(ambiguous_report(AmbigCase::Quadratic { d }, m));
        *formula = r.formula;
        *direct = r.direct;
        RaycapStatus::Ok
    })
}
