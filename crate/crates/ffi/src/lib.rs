//! C interface to the borsuk-ulam classifier.
//!
//! Matrices and analyses are opaque handles owned by the caller and released
//! with the matching `_free` function. Every fallible call returns a
//! [`BuStatus`]; the message for the most recent failure on the calling
//! thread is available from [`bu_last_error_message`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use borsuk_ulam::cli::{analyze_presentation, CliError, Flags};
use borsuk_ulam::report::Report;
use borsuk_ulam::surgery::{lens_presentation, linking_matrix, parse_presentation};
use borsuk_ulam::{Error, IntMatrix, QmodZ, SurgeryPresentation};

/// Result codes. Zero is success.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BuStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidInput = 4,
    CapExceeded = 5,
    Invariant = 6,
    OutOfRange = 7,
    Panic = 8,
}

/// Opaque symmetric linking matrix.
pub struct BuMatrix {
    pres: SurgeryPresentation,
}

/// Opaque classification of every cover class of a matrix.
pub struct BuAnalysis {
    report: Report,
}

/// Verdict for one cover class.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct BuClassSummary {
    /// Z/2-index: 1, 2 or 3.
    pub index: u8,
    /// `XᵀBX / 2 mod 2`.
    pub triple_cup: u8,
    pub beta_vanishes: bool,
    /// 1 if the self-linking of the Bockstein class is 1/2, 0 if it is 0,
    /// -1 if it was not computed.
    pub self_linking_half: i8,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(status: BuStatus, message: impl Into<String>) -> BuStatus {
    set_error(message.into());
    status
}

fn status_of_core(e: &Error) -> BuStatus {
    match e {
        Error::CapExceeded { .. } => BuStatus::CapExceeded,
        Error::Invariant(_) => BuStatus::Invariant,
        Error::Parse(_) => BuStatus::Parse,
        _ => BuStatus::InvalidInput,
    }
}

fn status_of_cli(e: &CliError) -> BuStatus {
    match e {
        CliError::Core(core) => status_of_core(core),
        CliError::Parse(_) => BuStatus::Parse,
        CliError::Io { .. } => BuStatus::InvalidInput,
    }
}

/// Runs `f`, turning panics into [`BuStatus::Panic`].
fn guard(f: impl FnOnce() -> BuStatus) -> BuStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".to_string());
            fail(BuStatus::Panic, format!("internal panic: {msg}"))
        }
    }
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, BuStatus> {
    if s.is_null() {
        return Err(fail(BuStatus::NullPointer, "string argument is null"));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|e| fail(BuStatus::InvalidUtf8, e.to_string()))
}

unsafe fn put<T>(out: *mut *mut T, value: T) -> BuStatus {
    *out = Box::into_raw(Box::new(value));
    BuStatus::Ok
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

/// Message for the last failing call on this thread, or NULL. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn bu_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn bu_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Builds a matrix from `rows * rows` row-major entries. The matrix must be
/// symmetric.
///
/// # Safety
/// `entries` must point to `rows * rows` readable values (it may be NULL
/// when `rows` is 0) and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bu_matrix_new(
    rows: usize,
    entries: *const i64,
    out: *mut *mut BuMatrix,
) -> BuStatus {
    guard(|| {
        if out.is_null() || (entries.is_null() && rows > 0) {
            return fail(BuStatus::NullPointer, "null argument");
        }
        let Some(len) = rows.checked_mul(rows) else {
            return fail(BuStatus::OutOfRange, "matrix size overflows");
        };
        let values: &[i64] = if len == 0 {
            &[]
        } else {
            std::slice::from_raw_parts(entries, len)
        };
        let b = match IntMatrix::new(rows, rows, values.iter().map(|&x| x.into()).collect()) {
            Ok(b) => b,
            Err(e) => return fail(status_of_core(&e), e.to_string()),
        };
        match SurgeryPresentation::from_matrix(&b) {
            Ok(pres) => put(out, BuMatrix { pres }),
            Err(e) => fail(status_of_core(&e), e.to_string()),
        }
    })
}

/// Parses a JSON input document (`{"matrix": ...}` or `{"preset": ...}`).
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bu_matrix_from_json(
    json: *const c_char,
    out: *mut *mut BuMatrix,
) -> BuStatus {
    guard(|| {
        if out.is_null() {
            return fail(BuStatus::NullPointer, "out is null");
        }
        let text = match read_str(json) {
            Ok(t) => t,
            Err(status) => return status,
        };
        match parse_presentation(text) {
            Ok(pres) => put(out, BuMatrix { pres }),
            Err(e) => fail(BuStatus::Parse, e.to_string()),
        }
    })
}

/// Chain presentation of the lens space L(p, q).
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bu_matrix_lens(p: i64, q: i64, out: *mut *mut BuMatrix) -> BuStatus {
    guard(|| {
        if out.is_null() {
            return fail(BuStatus::NullPointer, "out is null");
        }
        match lens_presentation(p, q) {
            Ok(pres) => put(out, BuMatrix { pres }),
            Err(e) => fail(status_of_core(&e), e.to_string()),
        }
    })
}

/// Number of rows (link components).
///
/// # Safety
/// `m` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn bu_matrix_size(m: *const BuMatrix) -> usize {
    m.as_ref().map_or(0, |m| m.pres.component_count())
}

/// # Safety
/// `m` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn bu_matrix_free(m: *mut BuMatrix) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Classifies every cover class. With `allow_truncate` false, more than
/// `cap` classes is an error; otherwise only a kernel basis is classified.
///
/// # Safety
/// `m` must be a live handle and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bu_analysis_run(
    m: *const BuMatrix,
    cap: usize,
    allow_truncate: bool,
    out: *mut *mut BuAnalysis,
) -> BuStatus {
    guard(|| {
        let (Some(m), false) = (m.as_ref(), out.is_null()) else {
            return fail(BuStatus::NullPointer, "null argument");
        };
        let flags = Flags {
            cap,
            allow_truncate,
            crosscheck: true,
        };
        match analyze_presentation(&m.pres, "analyze", flags) {
            Ok(report) => put(out, BuAnalysis { report }),
            Err(e) => fail(status_of_cli(&e), e.to_string()),
        }
    })
}

/// # Safety
/// `a` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn bu_analysis_free(a: *mut BuAnalysis) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

/// Number of classified cover classes.
///
/// # Safety
/// `a` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn bu_analysis_class_count(a: *const BuAnalysis) -> usize {
    a.as_ref().map_or(0, |a| a.report.classes.len())
}

/// Dimension of H¹(N; Z/2).
///
/// # Safety
/// `a` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn bu_analysis_kernel_dim(a: *const BuAnalysis) -> usize {
    a.as_ref().map_or(0, |a| a.report.k)
}

/// Whether only a kernel basis was classified.
///
/// # Safety
/// `a` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn bu_analysis_truncated(a: *const BuAnalysis) -> bool {
    a.as_ref().is_some_and(|a| a.report.truncated)
}

/// Verdict for class `i`.
///
/// # Safety
/// `a` must be a live handle and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bu_analysis_class(
    a: *const BuAnalysis,
    i: usize,
    out: *mut BuClassSummary,
) -> BuStatus {
    guard(|| {
        let (Some(a), false) = (a.as_ref(), out.is_null()) else {
            return fail(BuStatus::NullPointer, "null argument");
        };
        let Some(r) = a.report.classes.get(i) else {
            return fail(BuStatus::OutOfRange, format!("class {i} out of range"));
        };
        *out = BuClassSummary {
            index: r.index.value(),
            triple_cup: r.triple_cup,
            beta_vanishes: r.beta_vanishes,
            self_linking_half: match &r.self_linking {
                None => -1,
                Some(l) if *l == QmodZ::half() => 1,
                Some(_) => 0,
            },
        };
        BuStatus::Ok
    })
}

/// Copies the bits of class `i` into `bits`, which must have room for
/// `bu_matrix_size` entries.
///
/// # Safety
/// `a` must be a live handle and `bits` must point to `len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn bu_analysis_class_bits(
    a: *const BuAnalysis,
    i: usize,
    bits: *mut u8,
    len: usize,
) -> BuStatus {
    guard(|| {
        let (Some(a), false) = (a.as_ref(), bits.is_null()) else {
            return fail(BuStatus::NullPointer, "null argument");
        };
        let Some(r) = a.report.classes.get(i) else {
            return fail(BuStatus::OutOfRange, format!("class {i} out of range"));
        };
        let src = r.class.bits().to_bits();
        if len < src.len() {
            return fail(
                BuStatus::OutOfRange,
                format!("buffer of {len} bytes, class has {}", src.len()),
            );
        }
        ptr::copy_nonoverlapping(src.as_ptr(), bits, src.len());
        BuStatus::Ok
    })
}

/// JSON report for the analysis. Release with [`bu_string_free`]. Returns
/// NULL if `a` is NULL.
///
/// # Safety
/// `a` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn bu_analysis_to_json(a: *const BuAnalysis) -> *mut c_char {
    match a.as_ref() {
        Some(a) => into_c_string(a.report.to_json()),
        None => {
            set_error("analysis is null".into());
            ptr::null_mut()
        }
    }
}

/// Linking matrix of a handle as JSON, `[[a,b],[c,d]]`. Release with
/// [`bu_string_free`].
///
/// # Safety
/// `m` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn bu_matrix_to_string(m: *const BuMatrix) -> *mut c_char {
    match m.as_ref() {
        Some(m) => into_c_string(linking_matrix(&m.pres).to_string()),
        None => {
            set_error("matrix is null".into());
            ptr::null_mut()
        }
    }
}

/// # Safety
/// `s` must be NULL or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn bu_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
