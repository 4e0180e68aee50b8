//! C ABI over the galdual engine.
//!
//! Objects cross the boundary as opaque handles created by `*_from_json` or
//! by a computation and released with the matching `*_free`. Every fallible
//! call returns a [`GdStatus`]; on failure [`gd_last_error_message`] describes
//! the error on the calling thread. Strings returned to the caller are owned
//! by the caller and released with [`gd_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use galdual::cli::{self, CheckOptions, Law, StructureDocument, TransformDocument};
use galdual::duality::aut;
use galdual::groups::{generate, k_closure, PermutationSet};
use galdual::model::Structure;
use galdual::similarity::sim_equiv;
use galdual::{Error, Limits};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GdStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidInput = 4,
    LimitExceeded = 5,
    Precondition = 6,
    LawFailed = 7,
    BufferTooSmall = 8,
    Internal = 9,
}

/// A validated structure.
pub struct GdStructure {
    inner: Structure,
}

/// A set of permutations of one degree; a group when produced by a closure.
pub struct GdPermSet {
    inner: PermutationSet,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: impl Into<String>) {
    let text = message.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).expect("nul bytes removed"));
}

fn status_of(err: &Error) -> GdStatus {
    match err {
        Error::Parse { .. } => GdStatus::ParseError,
        Error::ResourceLimit { .. } => GdStatus::LimitExceeded,
        Error::Precondition(_) => GdStatus::Precondition,
        _ => GdStatus::InvalidInput,
    }
}

fn fail(err: Error) -> GdStatus {
    set_error(err.to_string());
    status_of(&err)
}

/// Runs `f`, turning panics into [`GdStatus::Internal`].
fn guarded(f: impl FnOnce() -> GdStatus) -> GdStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => {
            set_error("internal panic");
            GdStatus::Internal
        }
    }
}

unsafe fn read_str<'a>(text: *const c_char) -> Result<&'a str, GdStatus> {
    if text.is_null() {
        set_error("null string argument");
        return Err(GdStatus::NullPointer);
    }
    CStr::from_ptr(text).to_str().map_err(|e| {
        set_error(format!("argument is not UTF-8: {e}"));
        GdStatus::InvalidUtf8
    })
}

fn null_arg() -> GdStatus {
    set_error("null pointer argument");
    GdStatus::NullPointer
}

fn into_c_string(text: String) -> *mut c_char {
    CString::new(text.replace('\0', " ")).expect("nul bytes removed").into_raw()
}

/// Message for the last failed call on this thread; empty if none. The
/// pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn gd_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn gd_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gd_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses and validates a structure document.
///
/// # Safety
/// `json` must be a nul-terminated string; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gd_structure_from_json(json: *const c_char, out: *mut *mut GdStructure) -> GdStatus {
    guarded(|| {
        if out.is_null() {
            return null_arg();
        }
        let text = match read_str(json) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match StructureDocument::parse(text).and_then(|d| d.to_structure()) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(GdStructure { inner }));
                GdStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `s` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gd_structure_free(s: *mut GdStructure) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Domain size of a structure; 0 for a null handle.
///
/// # Safety
/// `s` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn gd_structure_size(s: *const GdStructure) -> usize {
    s.as_ref().map_or(0, |s| s.inner.size())
}

/// Canonical JSON of a structure.
///
/// # Safety
/// `s` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gd_structure_to_json(s: *const GdStructure, out: *mut *mut c_char) -> GdStatus {
    guarded(|| {
        let (Some(s), false) = (s.as_ref(), out.is_null()) else {
            return null_arg();
        };
        match StructureDocument::from_structure(&s.inner).to_canonical_json() {
            Ok(text) => {
                *out = into_c_string(text);
                GdStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Automorphism group of a structure.
///
/// # Safety
/// `s` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gd_aut(s: *const GdStructure, out: *mut *mut GdPermSet) -> GdStatus {
    guarded(|| {
        let (Some(s), false) = (s.as_ref(), out.is_null()) else {
            return null_arg();
        };
        match aut(&s.inner, &Limits::default()) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(GdPermSet { inner }));
                GdStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Writes the block label of each element under `∼` into `labels`, which
/// must hold at least the domain size.
///
/// # Safety
/// `s` must be a live handle; `labels` must point to `labels_len` writable values.
#[no_mangle]
pub unsafe extern "C" fn gd_sim_equiv(s: *const GdStructure, labels: *mut usize, labels_len: usize) -> GdStatus {
    guarded(|| {
        let (Some(s), false) = (s.as_ref(), labels.is_null()) else {
            return null_arg();
        };
        let n = s.inner.size();
        if labels_len < n {
            set_error(format!("label buffer holds {labels_len}, domain size is {n}"));
            return GdStatus::BufferTooSmall;
        }
        match sim_equiv(&s.inner, &Limits::default()) {
            Ok(e) => {
                std::slice::from_raw_parts_mut(labels, n).copy_from_slice(e.labels());
                GdStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// The permutations of a transform document, as given (not closed).
///
/// # Safety
/// `json` must be a nul-terminated string; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gd_permset_from_json(json: *const c_char, out: *mut *mut GdPermSet) -> GdStatus {
    guarded(|| {
        if out.is_null() {
            return null_arg();
        }
        let text = match read_str(json) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let parsed = TransformDocument::parse(text)
            .and_then(|d| d.to_transforms())
            .and_then(|t| PermutationSet::new(t.size, t.permutations));
        match parsed {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(GdPermSet { inner }));
                GdStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `p` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gd_permset_free(p: *mut GdPermSet) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Number of elements; 0 for a null handle.
///
/// # Safety
/// `p` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn gd_permset_len(p: *const GdPermSet) -> usize {
    p.as_ref().map_or(0, |p| p.inner.len())
}

/// Degree; 0 for a null handle.
///
/// # Safety
/// `p` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn gd_permset_degree(p: *const GdPermSet) -> usize {
    p.as_ref().map_or(0, |p| p.inner.degree())
}

/// Copies the images of element `index` into `images`.
///
/// # Safety
/// `p` must be a live handle; `images` must point to `images_len` writable values.
#[no_mangle]
pub unsafe extern "C" fn gd_permset_element(
    p: *const GdPermSet,
    index: usize,
    images: *mut usize,
    images_len: usize,
) -> GdStatus {
    guarded(|| {
        let (Some(p), false) = (p.as_ref(), images.is_null()) else {
            return null_arg();
        };
        let Some(g) = p.inner.elements().get(index) else {
            set_error(format!("index {index} out of range for {} elements", p.inner.len()));
            return GdStatus::InvalidInput;
        };
        if images_len < g.degree() {
            set_error(format!("image buffer holds {images_len}, degree is {}", g.degree()));
            return GdStatus::BufferTooSmall;
        }
        std::slice::from_raw_parts_mut(images, g.degree()).copy_from_slice(g.images());
        GdStatus::Ok
    })
}

fn permset_op(
    p: *const GdPermSet,
    out: *mut *mut GdPermSet,
    op: impl FnOnce(&PermutationSet) -> galdual::Result<PermutationSet>,
) -> GdStatus {
    guarded(|| {
        // SAFETY: callers pass null or a live handle.
        let (Some(p), false) = (unsafe { p.as_ref() }, out.is_null()) else {
            return null_arg();
        };
        match op(&p.inner) {
            Ok(inner) => {
                // SAFETY: `out` is non-null and valid per the caller's contract.
                unsafe { *out = Box::into_raw(Box::new(GdPermSet { inner })) };
                GdStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// The group generated by a permutation set.
///
/// # Safety
/// `p` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gd_group_generate(p: *const GdPermSet, out: *mut *mut GdPermSet) -> GdStatus {
    permset_op(p, out, |h| generate(h, &Limits::default()))
}

/// The `k`-closure of the group generated by a permutation set.
///
/// # Safety
/// `p` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gd_k_closure(p: *const GdPermSet, k: usize, out: *mut *mut GdPermSet) -> GdStatus {
    permset_op(p, out, |h| k_closure(h, k, &Limits::default()))
}

/// Checks `law` (a `check --law` name) on a structure or transform document,
/// or on `count` seeded instances of size `n` when `input_json` is null
/// (0 selects the defaults). Writes the JSON report to `out_report` and
/// returns [`GdStatus::LawFailed`] when the law does not hold.
///
/// # Safety
/// `law` must be a nul-terminated string; `input_json` null or nul-terminated;
/// `out_report` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gd_check_law_json(
    law: *const c_char,
    input_json: *const c_char,
    n: usize,
    count: usize,
    seed: u64,
    out_report: *mut *mut c_char,
) -> GdStatus {
    guarded(|| {
        if out_report.is_null() {
            return null_arg();
        }
        let law: Law = match read_str(law).map(str::parse) {
            Ok(Ok(l)) => l,
            Ok(Err(e)) => return fail(e),
            Err(s) => return s,
        };
        let input = if input_json.is_null() {
            None
        } else {
            match read_str(input_json) {
                Ok(t) => Some(t),
                Err(s) => return s,
            }
        };
        let mut opts = CheckOptions::new(law);
        opts.n = (n > 0).then_some(n);
        opts.count = (count > 0).then_some(count);
        opts.seed = seed;
        match cli::check(input, &opts, &Limits::default()) {
            Ok(report) => {
                *out_report = into_c_string(report.to_json());
                if report.pass() {
                    GdStatus::Ok
                } else {
                    set_error(report.counterexample.clone().unwrap_or_else(|| "law failed".into()));
                    GdStatus::LawFailed
                }
            }
            Err(e) => fail(e),
        }
    })
}
