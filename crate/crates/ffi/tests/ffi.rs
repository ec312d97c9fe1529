use std::ffi::{CStr, CString};
use std::ptr;

use homext_ffi::*;

fn take(s: *mut std::ffi::c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { homext_string_free(s) };
    out
}

fn last_error() -> String {
    let p = homext_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string()
}

fn daleth_text() -> String {
    homext::documents::daleth_document(3, 2, homext::scalar::ScalarRing::PrimeField(2), None, 1 << 20)
        .unwrap()
        .to_string()
}

fn parse(text: &str) -> *mut HomextDocument {
    let c = CString::new(text).unwrap();
    let mut doc = ptr::null_mut();
    assert_eq!(unsafe { homext_document_parse(c.as_ptr(), &mut doc) }, HomextStatus::Ok);
    doc
}

fn run(doc: *const HomextDocument, cmd: &str) -> (HomextStatus, i32, String) {
    let c = CString::new(cmd).unwrap();
    let mut out = ptr::null_mut();
    let mut code = -1;
    let st = unsafe { homext_run(doc, c.as_ptr(), &mut out, &mut code) };
    (st, code, take(out))
}

#[test]
fn parse_serialize_round_trip() {
    let text = daleth_text();
    let doc = parse(&text);
    assert_eq!(unsafe { homext_document_len(doc) }, 5);
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { homext_document_serialize(doc, &mut out) }, HomextStatus::Ok);
    assert_eq!(take(out), text);
    unsafe { homext_document_free(doc) };
}

#[test]
fn parse_error_is_positioned() {
    let c = CString::new("algebra A field Q dim 1\nsc 1 1 1 1/0\nend\n").unwrap();
    let mut doc = ptr::null_mut();
    assert_eq!(unsafe { homext_document_parse(c.as_ptr(), &mut doc) }, HomextStatus::Parse);
    assert!(doc.is_null());
    let msg = last_error();
    assert!(msg.contains("line 2") && msg.contains("DivByZeroDenominator"), "{msg}");
}

#[test]
fn run_on_handle() {
    let doc = parse(&daleth_text());
    let (st, code, out) = run(doc, "check datum");
    assert_eq!((st, code), (HomextStatus::Ok, 0));
    assert!(out.contains("PASS datum axioms"), "{out}");
    let (st, code, out) = run(doc, "solve-w --varsigma 0 --json");
    assert_eq!((st, code), (HomextStatus::Ok, 0));
    assert!(out.contains("\"schema\": 1") && out.contains("w solutions (13)"), "{out}");
    unsafe { homext_document_free(doc) };
}

#[test]
fn failing_check_and_usage_errors() {
    let mut text = daleth_text();
    text = text.replace("s 0 0 0 0 0", "s 1 0 0 0 0");
    let doc = parse(&text);
    let (st, code, out) = run(doc, "check datum");
    assert_eq!((st, code), (HomextStatus::CheckFailed, 1));
    assert!(out.contains("FAIL"), "{out}");
    let (st, code, _) = run(doc, "check datum --datum nope");
    assert_eq!((st, code), (HomextStatus::Usage, 2));
    assert!(last_error().contains("nope"));
    let (st, code, _) = run(ptr::null(), "check datum");
    assert_eq!((st, code), (HomextStatus::Usage, 2));
    unsafe { homext_document_free(doc) };
}

#[test]
fn null_and_utf8_guards() {
    let mut doc = ptr::null_mut();
    assert_eq!(unsafe { homext_document_parse(ptr::null(), &mut doc) }, HomextStatus::NullPointer);
    let bad = [0xffu8, 0];
    assert_eq!(
        unsafe { homext_document_parse(bad.as_ptr().cast(), &mut doc) },
        HomextStatus::InvalidUtf8
    );
    assert_eq!(unsafe { homext_document_len(ptr::null()) }, -1);
    unsafe {
        homext_document_free(ptr::null_mut());
        homext_string_free(ptr::null_mut());
    }
    let v = unsafe { CStr::from_ptr(homext_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_declares_every_export() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/homext.h")).unwrap();
    for sym in [
        "homext_last_error",
        "homext_document_parse",
        "homext_document_serialize",
        "homext_document_len",
        "homext_document_free",
        "homext_run",
        "homext_string_free",
        "homext_version",
        "typedef struct HomextDocument HomextDocument",
        "HOMEXT_STATUS_CHECK_FAILED = 5",
    ] {
        assert!(header.contains(sym), "missing {sym}");
    }
}
