//! C ABI over the qtorus library: opaque context handles, status codes, and
//! JSON-returning entry points mirroring the CLI subcommands. Strings
//! returned by this library are heap-allocated and must be released with
//! [`qt_string_free`].

use qtorus::cli::{self, OutputFormat};
use qtorus::dimensions::Flavor;
use qtorus::koszul::Direction;
use qtorus::seminorms::SmoothWeight;
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

/// Status codes shared with the CLI exit contract.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QtStatus {
    Ok = 0,
    CheckFailed = 1,
    InvalidInput = 2,
    Infeasible = 3,
    InternalError = 4,
}

/// Algebra flavor selector for dimension reports.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QtFlavor {
    Regular = 0,
    Holomorphic = 1,
    Smooth = 2,
}

/// Opaque handle around a validated context file.
pub struct QtContext {
    text: String,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    LAST_ERROR.with(|e| {
        *e.borrow_mut() = CString::new(message).ok();
    });
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn write_status(status: *mut QtStatus, value: QtStatus) {
    if !status.is_null() {
        unsafe { *status = value };
    }
}

fn exit_to_status(exit: i32) -> QtStatus {
    match exit {
        0 => QtStatus::Ok,
        1 => QtStatus::CheckFailed,
        2 => QtStatus::InvalidInput,
        3 => QtStatus::Infeasible,
        _ => QtStatus::InternalError,
    }
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

/// # Safety
/// `text` must be a valid NUL-terminated UTF-8 string.
unsafe fn read_str<'a>(text: *const c_char) -> Option<&'a str> {
    if text.is_null() {
        return None;
    }
    CStr::from_ptr(text).to_str().ok()
}

/// Library version as a static string; do not free.
#[no_mangle]
pub extern "C" fn qt_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Message for the most recent failure on this thread, or NULL. The pointer
/// stays valid until the next failing call on the same thread; do not free.
#[no_mangle]
pub extern "C" fn qt_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Parse and validate a context file. Returns NULL on invalid input, with
/// the diagnostic available through [`qt_last_error_message`].
///
/// # Safety
/// `text` must be a valid NUL-terminated string; `status` may be NULL.
#[no_mangle]
pub unsafe extern "C" fn qt_context_parse(
    text: *const c_char,
    status: *mut QtStatus,
) -> *mut QtContext {
    let Some(text) = read_str(text) else {
        set_error("context text is null or not UTF-8".to_string());
        write_status(status, QtStatus::InvalidInput);
        return ptr::null_mut();
    };
    match cli::ContextFile::parse(text) {
        Ok(_) => {
            clear_error();
            write_status(status, QtStatus::Ok);
            Box::into_raw(Box::new(QtContext { text: text.to_string() }))
        }
        Err(e) => {
            set_error(e.to_string());
            write_status(status, QtStatus::InvalidInput);
            ptr::null_mut()
        }
    }
}

/// Release a context handle. NULL is allowed.
///
/// # Safety
/// `ctx` must have come from [`qt_context_parse`] and not yet be freed.
#[no_mangle]
pub unsafe extern "C" fn qt_context_free(ctx: *mut QtContext) {
    if !ctx.is_null() {
        drop(Box::from_raw(ctx));
    }
}

/// Release a string returned by this library. NULL is allowed.
///
/// # Safety
/// `s` must have come from a qtorus FFI call and not yet be freed.
#[no_mangle]
pub unsafe extern "C" fn qt_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

fn run_outcome(
    result: Result<cli::Outcome, cli::Failure>,
    status: *mut QtStatus,
) -> *mut c_char {
    match result {
        Ok(outcome) => {
            clear_error();
            write_status(status, exit_to_status(outcome.exit));
            to_c_string(outcome.document)
        }
        Err(failure) => {
            set_error(failure.message);
            write_status(status, exit_to_status(failure.exit));
            ptr::null_mut()
        }
    }
}

/// JSON dimension report for one flavor.
///
/// # Safety
/// `ctx` must be a live handle from [`qt_context_parse`]; `status` may be NULL.
#[no_mangle]
pub unsafe extern "C" fn qt_report_json(
    ctx: *const QtContext,
    flavor: QtFlavor,
    bound: i64,
    status: *mut QtStatus,
) -> *mut c_char {
    let Some(ctx) = ctx.as_ref() else {
        set_error("null context".to_string());
        write_status(status, QtStatus::InvalidInput);
        return ptr::null_mut();
    };
    let flavor = match flavor {
        QtFlavor::Regular => Flavor::Regular,
        QtFlavor::Holomorphic => Flavor::Holomorphic,
        QtFlavor::Smooth => Flavor::Smooth,
    };
    run_outcome(cli::cmd_report(&ctx.text, flavor, bound, OutputFormat::Json), status)
}

/// JSON Hochschild table. `cohomology = false` selects homology.
///
/// # Safety
/// `ctx` must be a live handle; `twist` a valid NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn qt_hh_json(
    ctx: *const QtContext,
    twist: *const c_char,
    cohomology: bool,
    box_radius: i64,
    status: *mut QtStatus,
) -> *mut c_char {
    let Some(ctx) = ctx.as_ref() else {
        set_error("null context".to_string());
        write_status(status, QtStatus::InvalidInput);
        return ptr::null_mut();
    };
    let Some(twist) = read_str(twist) else {
        set_error("twist is null or not UTF-8".to_string());
        write_status(status, QtStatus::InvalidInput);
        return ptr::null_mut();
    };
    let dir = if cohomology { Direction::Cohomology } else { Direction::Homology };
    run_outcome(cli::cmd_hh(&ctx.text, twist, dir, box_radius, OutputFormat::Json), status)
}

/// JSON verification document; `status` distinguishes pass, check failure,
/// invalid input and infeasible requests.
///
/// # Safety
/// `ctx` must be a live handle; `check` and `twist` valid NUL-terminated strings.
#[no_mangle]
pub unsafe extern "C" fn qt_verify_json(
    ctx: *const QtContext,
    check: *const c_char,
    twist: *const c_char,
    seed: u64,
    box_radius: i64,
    oracle_bound: i64,
    status: *mut QtStatus,
) -> *mut c_char {
    let Some(ctx) = ctx.as_ref() else {
        set_error("null context".to_string());
        write_status(status, QtStatus::InvalidInput);
        return ptr::null_mut();
    };
    let (Some(check), Some(twist)) = (read_str(check), read_str(twist)) else {
        set_error("check/twist is null or not UTF-8".to_string());
        write_status(status, QtStatus::InvalidInput);
        return ptr::null_mut();
    };
    run_outcome(
        cli::cmd_verify(&ctx.text, check, twist, seed, box_radius, oracle_bound, OutputFormat::Json),
        status,
    )
}

/// JSON seminorm evaluation of an element given as `(a1,..):coeff; ...`.
///
/// # Safety
/// `ctx` must be a live handle; `terms` a valid NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn qt_seminorm_json(
    ctx: *const QtContext,
    terms: *const c_char,
    rho: f64,
    k: u32,
    shifted_weight: bool,
    status: *mut QtStatus,
) -> *mut c_char {
    let Some(ctx) = ctx.as_ref() else {
        set_error("null context".to_string());
        write_status(status, QtStatus::InvalidInput);
        return ptr::null_mut();
    };
    let Some(terms) = read_str(terms) else {
        set_error("terms is null or not UTF-8".to_string());
        write_status(status, QtStatus::InvalidInput);
        return ptr::null_mut();
    };
    let weight = if shifted_weight { SmoothWeight::Shifted } else { SmoothWeight::Paper };
    run_outcome(cli::cmd_seminorm(&ctx.text, terms, rho, k, weight, OutputFormat::Json), status)
}

#[cfg(test)]
mod tests {
    use super::*;

    const GENERIC: &str = "n = 2\nd = 1\ns = 1\nC = [[0, 0], [0, 0]]\nM1 = [[0, 1], [-1, 0]]\n";

    fn cstr(s: &str) -> CString {
        CString::new(s).unwrap()
    }

    #[test]
    fn parse_report_roundtrip() {
        let text = cstr(GENERIC);
        let mut status = QtStatus::InternalError;
        let ctx = unsafe { qt_context_parse(text.as_ptr(), &mut status) };
        assert_eq!(status, QtStatus::Ok);
        assert!(!ctx.is_null());

        let doc = unsafe { qt_report_json(ctx, QtFlavor::Regular, 2, &mut status) };
        assert_eq!(status, QtStatus::Ok);
        let json = unsafe { CStr::from_ptr(doc) }.to_str().unwrap();
        assert!(json.contains("\"dg\""));
        assert!(json.contains("\"value\": 1"));
        unsafe { qt_string_free(doc) };
        unsafe { qt_context_free(ctx) };
    }

    #[test]
    fn invalid_input_sets_error() {
        let text = cstr("n = 2\n");
        let mut status = QtStatus::Ok;
        let ctx = unsafe { qt_context_parse(text.as_ptr(), &mut status) };
        assert!(ctx.is_null());
        assert_eq!(status, QtStatus::InvalidInput);
        let msg = qt_last_error_message();
        assert!(!msg.is_null());
        let msg = unsafe { CStr::from_ptr(msg) }.to_str().unwrap();
        assert!(msg.contains('s'), "{msg}");
    }

    #[test]
    fn verify_and_hh_through_ffi() {
        let text = cstr(GENERIC);
        let mut status = QtStatus::InternalError;
        let ctx = unsafe { qt_context_parse(text.as_ptr(), &mut status) };
        let twist = cstr("id");
        let doc = unsafe { qt_hh_json(ctx, twist.as_ptr(), false, 2, &mut status) };
        assert_eq!(status, QtStatus::Ok);
        let json = unsafe { CStr::from_ptr(doc) }.to_str().unwrap();
        assert!(json.contains("\"multiplicity\": 2"));
        unsafe { qt_string_free(doc) };

        let check = cstr("duality");
        let doc = unsafe {
            qt_verify_json(ctx, check.as_ptr(), twist.as_ptr(), 7, 3, 2, &mut status)
        };
        assert_eq!(status, QtStatus::Ok);
        unsafe { qt_string_free(doc) };
        unsafe { qt_context_free(ctx) };
    }

    #[test]
    fn infeasible_maps_to_status() {
        let text = cstr("n = 3\nd = 1\ns = 0\nC = [[0,0,0],[0,0,0],[0,0,0]]\n");
        let mut status = QtStatus::Ok;
        let ctx = unsafe { qt_context_parse(text.as_ptr(), &mut status) };
        let check = cstr("oracle");
        let twist = cstr("id");
        let doc = unsafe {
            qt_verify_json(ctx, check.as_ptr(), twist.as_ptr(), 7, 3, 3, &mut status)
        };
        assert!(doc.is_null());
        assert_eq!(status, QtStatus::Infeasible);
        unsafe { qt_context_free(ctx) };
    }
}
