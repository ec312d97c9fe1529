//! C interface to `homext`.
//!
//! Documents are opaque handles. Every function returns a [`HomextStatus`];
//! on failure a message is available from [`homext_last_error`] until the
//! next call on the same thread. Strings handed out must be released with
//! [`homext_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use homext::cli::run_with_document;
use homext::dsl::{parse, Document};

/// A parsed document.
pub struct HomextDocument {
    doc: Document,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HomextStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    /// The command line was rejected or named missing definitions.
    Usage = 4,
    /// The command ran and some check failed.
    CheckFailed = 5,
    Internal = 6,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(CString::new(msg).expect("no interior nul")));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn guarded(f: impl FnOnce() -> HomextStatus) -> HomextStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal error: {msg}"));
            HomextStatus::Internal
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, HomextStatus> {
    if p.is_null() {
        set_error("null pointer");
        return Err(HomextStatus::NullPointer);
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error("input is not valid UTF-8");
        HomextStatus::InvalidUtf8
    })
}

fn to_c(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("no interior nul").into_raw()
}

/// The last error message on this thread, or null. Owned by the library.
#[no_mangle]
pub extern "C" fn homext_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Parses `text` into a new document stored in `*out`.
///
/// # Safety
/// `text` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn homext_document_parse(text: *const c_char, out: *mut *mut HomextDocument) -> HomextStatus {
    guarded(|| {
        if out.is_null() {
            set_error("null pointer");
            return HomextStatus::NullPointer;
        }
        *out = ptr::null_mut();
        let text = match read_str(text) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match parse(text) {
            Ok(doc) => {
                *out = Box::into_raw(Box::new(HomextDocument { doc }));
                HomextStatus::Ok
            }
            Err(e) => {
                set_error(e.to_string());
                HomextStatus::Parse
            }
        }
    })
}

/// Canonical text of `doc`, stored in `*out`.
///
/// # Safety
/// `doc` must come from [`homext_document_parse`]; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn homext_document_serialize(doc: *const HomextDocument, out: *mut *mut c_char) -> HomextStatus {
    guarded(|| {
        if doc.is_null() || out.is_null() {
            set_error("null pointer");
            return HomextStatus::NullPointer;
        }
        *out = to_c((*doc).doc.to_string());
        HomextStatus::Ok
    })
}

/// Number of definitions in `doc`, or -1 for a null handle.
///
/// # Safety
/// `doc` must be null or come from [`homext_document_parse`].
#[no_mangle]
pub unsafe extern "C" fn homext_document_len(doc: *const HomextDocument) -> i64 {
    if doc.is_null() {
        return -1;
    }
    (*doc).doc.defs.len() as i64
}

/// # Safety
/// `doc` must be null or come from [`homext_document_parse`], and must not
/// be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn homext_document_free(doc: *mut HomextDocument) {
    if !doc.is_null() {
        drop(Box::from_raw(doc));
    }
}

/// Runs a whitespace-separated command line such as
/// `"check datum --datum D"`. With a non-null `doc` the document file
/// argument may be omitted. The report (or error text) goes to `*out` and
/// the CLI exit code to `*exit_code`.
///
/// # Safety
/// `doc` must be null or a live handle; `command` a nul-terminated string;
/// `out` and `exit_code` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn homext_run(
    doc: *const HomextDocument,
    command: *const c_char,
    out: *mut *mut c_char,
    exit_code: *mut i32,
) -> HomextStatus {
    guarded(|| {
        if out.is_null() || exit_code.is_null() {
            set_error("null pointer");
            return HomextStatus::NullPointer;
        }
        *out = ptr::null_mut();
        let command = match read_str(command) {
            Ok(c) => c,
            Err(s) => return s,
        };
        let args = std::iter::once("homext").chain(command.split_whitespace());
        let d = if doc.is_null() { None } else { Some(&(*doc).doc) };
        let res = run_with_document(args, d);
        *exit_code = res.code;
        match res.code {
            0 => {
                *out = to_c(res.stdout);
                HomextStatus::Ok
            }
            1 => {
                *out = to_c(res.stdout);
                set_error("a check failed");
                HomextStatus::CheckFailed
            }
            _ => {
                set_error(res.stderr.trim_end());
                *out = to_c(res.stderr);
                HomextStatus::Usage
            }
        }
    })
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn homext_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Library version, owned by the library.
#[no_mangle]
pub extern "C" fn homext_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
