//! C ABI for `smallorb`.
//!
//! Polytopes live behind opaque handles. Every call returns a
//! [`SmallorbStatus`]; on failure a message is available from
//! [`smallorb_last_error`] on the same thread. Strings returned by the library
//! must be released with [`smallorb_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use smallorb::characteristic::search_schar;
use smallorb::cli::commands::{Command, Options};
use smallorb::cli::{generate, parse_polytope, run_command, ParsedInput, PolytopeDocument};
use smallorb::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SmallorbStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    ValidationError = 4,
    NoCharacteristic = 5,
    BufferTooSmall = 6,
    Internal = 7,
    Panic = 8,
}

/// A validated polytope together with its source document.
pub struct SmallorbPolytope {
    input: ParsedInput,
    document: String,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn fail(status: SmallorbStatus, msg: impl AsRef<str>) -> SmallorbStatus {
    set_error(msg.as_ref());
    status
}

fn from_error(e: &Error) -> SmallorbStatus {
    let status = match e {
        Error::Parse(_) | Error::Json(_) => SmallorbStatus::ParseError,
        Error::NotSimple(_)
        | Error::InvalidPolytope(_)
        | Error::DimensionMismatch(_)
        | Error::InvalidCharacteristic(_) => SmallorbStatus::ValidationError,
        _ => SmallorbStatus::Internal,
    };
    fail(status, e.to_string())
}

fn guard(f: impl FnOnce() -> SmallorbStatus) -> SmallorbStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => {
            if s == SmallorbStatus::Ok {
                set_error("");
            }
            s
        }
        Err(_) => fail(SmallorbStatus::Panic, "panic inside smallorb"),
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, SmallorbStatus> {
    if p.is_null() {
        return Err(fail(SmallorbStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| fail(SmallorbStatus::InvalidUtf8, e.to_string()))
}

fn into_handle(document: String, out: *mut *mut SmallorbPolytope) -> SmallorbStatus {
    match parse_polytope(&document) {
        Ok(input) => {
            let h = Box::new(SmallorbPolytope { input, document });
            unsafe { *out = Box::into_raw(h) };
            SmallorbStatus::Ok
        }
        Err(e) => from_error(&e),
    }
}

/// Parses and validates a JSON polytope document.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn smallorb_polytope_from_json(
    json: *const c_char,
    out: *mut *mut SmallorbPolytope,
) -> SmallorbStatus {
    guard(|| {
        if out.is_null() {
            return fail(SmallorbStatus::NullPointer, "null output pointer");
        }
        *out = ptr::null_mut();
        match read_str(json) {
            Ok(s) => into_handle(s.to_owned(), out),
            Err(s) => s,
        }
    })
}

/// Builds a polytope from a family name (`cube`, `polygon`, `simplex`,
/// `prism`, `product`) and its integer parameters.
///
/// # Safety
/// `family` must be NUL-terminated, `params` must point to `nparams` values
/// (or be null when `nparams` is 0), and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn smallorb_polytope_generate(
    family: *const c_char,
    params: *const usize,
    nparams: usize,
    out: *mut *mut SmallorbPolytope,
) -> SmallorbStatus {
    guard(|| {
        if out.is_null() || (params.is_null() && nparams > 0) {
            return fail(SmallorbStatus::NullPointer, "null pointer argument");
        }
        *out = ptr::null_mut();
        let family = match read_str(family) {
            Ok(s) => s,
            Err(s) => return s,
        };
        let params = if nparams == 0 { &[][..] } else { std::slice::from_raw_parts(params, nparams) };
        match generate::by_name(family, params) {
            Ok(data) => into_handle(PolytopeDocument::from_data(&data).to_json(), out),
            Err(e) => from_error(&e),
        }
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `p` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn smallorb_polytope_free(p: *mut SmallorbPolytope) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// # Safety
/// `p` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn smallorb_polytope_dim(p: *const SmallorbPolytope, out: *mut usize) -> SmallorbStatus {
    guard(|| match (p.as_ref(), out.is_null()) {
        (Some(h), false) => {
            *out = h.input.polytope.dim();
            SmallorbStatus::Ok
        }
        _ => fail(SmallorbStatus::NullPointer, "null pointer argument"),
    })
}

/// Writes the h-vector (`dim + 1` entries). `written` always receives the
/// required length; a short buffer yields `BUFFER_TOO_SMALL`.
///
/// # Safety
/// `buf` must hold `len` values; `p` and `written` must be valid.
#[no_mangle]
pub unsafe extern "C" fn smallorb_h_vector(
    p: *const SmallorbPolytope,
    buf: *mut i64,
    len: usize,
    written: *mut usize,
) -> SmallorbStatus {
    guard(|| {
        let (Some(h), false) = (p.as_ref(), written.is_null()) else {
            return fail(SmallorbStatus::NullPointer, "null pointer argument");
        };
        let hv = h.input.polytope.h_vector();
        *written = hv.len();
        if len < hv.len() || buf.is_null() {
            return fail(SmallorbStatus::BufferTooSmall, format!("need {} entries", hv.len()));
        }
        std::slice::from_raw_parts_mut(buf, hv.len()).copy_from_slice(&hv);
        SmallorbStatus::Ok
    })
}

/// Counts s-characteristic functions, stopping after `limit` (0 means no limit).
///
/// # Safety
/// `p`, `count` and `exhaustive` must be valid.
#[no_mangle]
pub unsafe extern "C" fn smallorb_search_count(
    p: *const SmallorbPolytope,
    limit: usize,
    count: *mut usize,
    exhaustive: *mut bool,
) -> SmallorbStatus {
    guard(|| {
        let (Some(h), false, false) = (p.as_ref(), count.is_null(), exhaustive.is_null()) else {
            return fail(SmallorbStatus::NullPointer, "null pointer argument");
        };
        match search_schar(&h.input.polytope, (limit > 0).then_some(limit)) {
            Ok(s) => {
                *count = s.results.len();
                *exhaustive = s.exhaustive;
                SmallorbStatus::Ok
            }
            Err(e) => from_error(&e),
        }
    })
}

/// Writes the first s-characteristic function found by search as bit rows,
/// facet by facet (`facets * (dim - 1)` bytes).
///
/// # Safety
/// `buf` must hold `len` bytes; `p` and `written` must be valid.
#[no_mangle]
pub unsafe extern "C" fn smallorb_first_schar(
    p: *const SmallorbPolytope,
    buf: *mut u8,
    len: usize,
    written: *mut usize,
) -> SmallorbStatus {
    guard(|| {
        let (Some(h), false) = (p.as_ref(), written.is_null()) else {
            return fail(SmallorbStatus::NullPointer, "null pointer argument");
        };
        let s = match search_schar(&h.input.polytope, Some(1)) {
            Ok(s) => s,
            Err(e) => return from_error(&e),
        };
        let Some(theta) = s.results.first() else {
            return fail(SmallorbStatus::NoCharacteristic, "no s-characteristic function exists");
        };
        let bits: Vec<u8> = theta.to_bit_rows().concat();
        *written = bits.len();
        if len < bits.len() || buf.is_null() {
            return fail(SmallorbStatus::BufferTooSmall, format!("need {} bytes", bits.len()));
        }
        std::slice::from_raw_parts_mut(buf, bits.len()).copy_from_slice(&bits);
        SmallorbStatus::Ok
    })
}

fn command_by_name(name: &str) -> Option<Command> {
    Some(match name {
        "validate" => Command::Validate,
        "search" => Command::Search,
        "hvector" => Command::Hvector,
        "homology" => Command::Homology,
        "toric" => Command::Toric,
        "ring" => Command::Ring,
        "pi1orb" => Command::Pi1orb,
        "oracle" => Command::Oracle,
        "crosscheck" => Command::Crosscheck,
        _ => return None,
    })
}

/// Runs a subcommand (`homology`, `crosscheck`, ...) and returns its JSON
/// report in `report`, to be freed with [`smallorb_string_free`]. `exit_code`
/// receives the command's exit code: 0 success, 1 input error, 2 disagreement.
///
/// # Safety
/// `p` must be live; `command` NUL-terminated; `report` and `exit_code` valid.
#[no_mangle]
pub unsafe extern "C" fn smallorb_run_command(
    p: *const SmallorbPolytope,
    command: *const c_char,
    seed: u64,
    report: *mut *mut c_char,
    exit_code: *mut i32,
) -> SmallorbStatus {
    guard(|| {
        let (Some(h), false, false) = (p.as_ref(), report.is_null(), exit_code.is_null()) else {
            return fail(SmallorbStatus::NullPointer, "null pointer argument");
        };
        *report = ptr::null_mut();
        let name = match read_str(command) {
            Ok(s) => s,
            Err(s) => return s,
        };
        let Some(cmd) = command_by_name(name) else {
            return fail(SmallorbStatus::ParseError, format!("unknown command `{name}`"));
        };
        let opts = Options { seed, ..Options::default() };
        let outcome = run_command(cmd, &h.document, &opts);
        *exit_code = outcome.exit_code;
        match CString::new(outcome.report.to_json()) {
            Ok(c) => {
                *report = c.into_raw();
                SmallorbStatus::Ok
            }
            Err(e) => fail(SmallorbStatus::Internal, e.to_string()),
        }
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn smallorb_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the most recent failure on this thread, or an empty string.
/// Valid until the next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn smallorb_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}
