//! C ABI over the height-bound engine. Conventions:
//!
//! - every entry point returns a status code (`JB_OK` on success) and writes
//!   results through out-pointers;
//! - strings are NUL-terminated UTF-8, owned by the library, and must be
//!   released with `jb_string_free`;
//! - group handles are opaque and released with `jb_group_free`;
//! - on any non-OK status, `jb_last_error_message` returns a copy of the
//!   thread-local error text.
//!
//! Status codes match the CLI exit codes (1 check failure, 2 invalid input,
//! 3 resource cap), with two ABI-only additions for null arguments and
//! caught panics.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use jbound::cli::{cmd_bound, cmd_inspect, cmd_verify, Config, Report};
use jbound::modgroup::{Subgroup, GL2};
use jbound::Error;

pub const JB_OK: i32 = 0;
pub const JB_CHECK_FAILURE: i32 = 1;
pub const JB_INVALID_INPUT: i32 = 2;
pub const JB_RESOURCE_CAP: i32 = 3;
pub const JB_NULL_ARGUMENT: i32 = 4;
pub const JB_INTERNAL: i32 = 5;

/// An opaque subgroup handle.
pub struct JbGroup {
    inner: Subgroup,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul-free");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn fail(e: &Error) -> i32 {
    set_error(e.to_string());
    e.exit_code()
}

/// Runs a closure with panics converted to JB_INTERNAL.
fn guarded(f: impl FnOnce() -> i32) -> i32 {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(code) => code,
        Err(_) => {
            set_error("internal panic".into());
            JB_INTERNAL
        }
    }
}

/// # Safety
/// `p` must be null or a NUL-terminated string.
unsafe fn str_arg<'a>(p: *const c_char, name: &str) -> Result<&'a str, i32> {
    if p.is_null() {
        set_error(format!("{name} must not be null"));
        return Err(JB_NULL_ARGUMENT);
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error(format!("{name} must be valid UTF-8"));
        JB_INVALID_INPUT
    })
}

fn hand_out(s: String, out: *mut *mut c_char) -> i32 {
    let c = CString::new(s.replace('\0', " ")).expect("nul-free");
    unsafe { *out = c.into_raw() };
    JB_OK
}

fn report_json(report: &Report, out: *mut *mut c_char) -> i32 {
    let status = hand_out(report.to_json(), out);
    if status == JB_OK && report.passed == Some(false) {
        set_error("one or more verification checks failed".into());
        return JB_CHECK_FAILURE;
    }
    status
}

/// Version of the library as a static NUL-terminated string; never freed.
#[no_mangle]
pub extern "C" fn jb_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Copy of the most recent error message on this thread, or null when the
/// last call succeeded. Free with `jb_string_free`.
#[no_mangle]
pub extern "C" fn jb_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|e| match &*e.borrow() {
        Some(c) => c.clone().into_raw(),
        None => std::ptr::null_mut(),
    })
}

/// Releases a string returned by this library. Null is a no-op.
///
/// # Safety
/// `s` must be null or a pointer previously returned by this library and
/// not yet freed.
#[no_mangle]
pub unsafe extern "C" fn jb_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds a subgroup of GL2(Z/level) from `count` generator matrices laid
/// out row-major as 4 i64 entries each ([a, b, c, d] for [[a, b], [c, d]]).
/// `count` may be zero for the trivial subgroup. `level_cap` of 0 selects
/// the built-in default cap.
///
/// # Safety
/// `entries` must point to `4 * count` readable i64 values (or be null when
/// `count` is 0); `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn jb_group_new(
    level: u32,
    entries: *const i64,
    count: usize,
    level_cap: u32,
    out: *mut *mut JbGroup,
) -> i32 {
    guarded(|| {
        clear_error();
        if out.is_null() || (entries.is_null() && count > 0) {
            set_error("jb_group_new: null argument".into());
            return JB_NULL_ARGUMENT;
        }
        let cap = if level_cap == 0 {
            jbound::modgroup::LEVEL_CAP
        } else {
            level_cap
        };
        let raw = if count == 0 {
            &[][..]
        } else {
            std::slice::from_raw_parts(entries, 4 * count)
        };
        let gens: Result<Vec<GL2>, Error> = raw
            .chunks_exact(4)
            .map(|c| GL2::new(level, [c[0], c[1], c[2], c[3]]))
            .collect();
        let gens = match gens {
            Ok(g) => g,
            Err(e) => return fail(&e),
        };
        match Subgroup::new(level, &gens, cap) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(JbGroup { inner }));
                JB_OK
            }
            Err(e) => fail(&e),
        }
    })
}

/// Releases a group handle. Null is a no-op.
///
/// # Safety
/// `g` must be null or an unfreed handle from `jb_group_new`.
#[no_mangle]
pub unsafe extern "C" fn jb_group_free(g: *mut JbGroup) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

unsafe fn group_arg<'a>(g: *const JbGroup) -> Result<&'a JbGroup, i32> {
    if g.is_null() {
        set_error("group handle must not be null".into());
        return Err(JB_NULL_ARGUMENT);
    }
    Ok(&*g)
}

/// Number of elements of the subgroup (with -1 adjoined).
///
/// # Safety
/// `g` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn jb_group_order(g: *const JbGroup, out: *mut u64) -> i32 {
    guarded(|| {
        clear_error();
        if out.is_null() {
            set_error("out must not be null".into());
            return JB_NULL_ARGUMENT;
        }
        match group_arg(g) {
            Ok(h) => {
                *out = h.inner.order();
                JB_OK
            }
            Err(code) => code,
        }
    })
}

/// Number of cusps of the associated curve.
///
/// # Safety
/// `g` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn jb_group_nu_infty(g: *const JbGroup, out: *mut u64) -> i32 {
    guarded(|| {
        clear_error();
        if out.is_null() {
            set_error("out must not be null".into());
            return JB_NULL_ARGUMENT;
        }
        match group_arg(g) {
            Ok(h) => {
                *out = h.inner.nu_infty() as u64;
                JB_OK
            }
            Err(code) => code,
        }
    })
}

/// Rank of the modular-unit divisor lattice (always cusps - 1).
///
/// # Safety
/// `g` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn jb_group_divisor_rank(g: *const JbGroup, out: *mut u64) -> i32 {
    guarded(|| {
        clear_error();
        if out.is_null() {
            set_error("out must not be null".into());
            return JB_NULL_ARGUMENT;
        }
        match group_arg(g) {
            Ok(h) => match h.inner.divisor_rank() {
                Ok(r) => {
                    *out = r as u64;
                    JB_OK
                }
                Err(e) => fail(&e),
            },
            Err(code) => code,
        }
    })
}

/// Evaluates bound reports for a JSON config (same schema as the CLI) and
/// a theorem selector ("1", "2", "3", "pipeline", "lambda1", or "all").
/// On JB_OK, `*out_json` holds the report; free it with `jb_string_free`.
///
/// # Safety
/// `config_json` and `theorem` must be NUL-terminated; `out_json` valid.
#[no_mangle]
pub unsafe extern "C" fn jb_bound_json(
    config_json: *const c_char,
    theorem: *const c_char,
    out_json: *mut *mut c_char,
) -> i32 {
    guarded(|| {
        clear_error();
        if out_json.is_null() {
            set_error("out_json must not be null".into());
            return JB_NULL_ARGUMENT;
        }
        let (text, theorem) = match (str_arg(config_json, "config_json"), str_arg(theorem, "theorem")) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(c), _) | (_, Err(c)) => return c,
        };
        match Config::from_json(text).and_then(|cfg| cmd_bound(&cfg, theorem)) {
            Ok(report) => report_json(&report, out_json),
            Err(e) => fail(&e),
        }
    })
}

/// Produces a listing report ("orbits", "cusps", "units", or "siegel");
/// `point` is "k1,k2" for "siegel" and may be null otherwise.
///
/// # Safety
/// Non-null arguments must be NUL-terminated; `out_json` valid.
#[no_mangle]
pub unsafe extern "C" fn jb_inspect_json(
    config_json: *const c_char,
    what: *const c_char,
    point: *const c_char,
    out_json: *mut *mut c_char,
) -> i32 {
    guarded(|| {
        clear_error();
        if out_json.is_null() {
            set_error("out_json must not be null".into());
            return JB_NULL_ARGUMENT;
        }
        let (text, what) = match (str_arg(config_json, "config_json"), str_arg(what, "what")) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(c), _) | (_, Err(c)) => return c,
        };
        let point = if point.is_null() {
            None
        } else {
            match str_arg(point, "point") {
                Ok(p) => Some(p),
                Err(c) => return c,
            }
        };
        match Config::from_json(text).and_then(|cfg| cmd_inspect(&cfg, what, point)) {
            Ok(report) => report_json(&report, out_json),
            Err(e) => fail(&e),
        }
    })
}

/// Runs a verification suite ("product", "coeff-bounds", "numeric",
/// "divisors", "bounds-oracle", or "all"). The report is written on both
/// JB_OK and JB_CHECK_FAILURE; the latter means some check failed.
///
/// # Safety
/// `config_json` and `suite` must be NUL-terminated; `out_json` valid.
#[no_mangle]
pub unsafe extern "C" fn jb_verify_json(
    config_json: *const c_char,
    suite: *const c_char,
    out_json: *mut *mut c_char,
) -> i32 {
    guarded(|| {
        clear_error();
        if out_json.is_null() {
            set_error("out_json must not be null".into());
            return JB_NULL_ARGUMENT;
        }
        let (text, suite) = match (str_arg(config_json, "config_json"), str_arg(suite, "suite")) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(c), _) | (_, Err(c)) => return c,
        };
        match Config::from_json(text).and_then(|cfg| cmd_verify(&cfg, suite)) {
            Ok(report) => report_json(&report, out_json),
            Err(e) => fail(&e),
        }
    })
}
