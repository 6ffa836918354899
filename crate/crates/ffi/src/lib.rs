//! C ABI for the `sweepmap` library.
//!
//! Every fallible call returns a [`SweepStatus`] and writes its result
//! through an out-pointer. Strings handed back to the caller are owned by
//! the caller and must be released with [`sweep_string_free`]; pairs are
//! opaque handles released with [`sweep_pair_free`]. After a non-OK status,
//! [`sweep_last_error`] describes the failure on the calling thread.
//!
//! The header `include/sweepmap.h` is regenerated by the build script.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use sweepmap::{
    area, enumerate_dyck, invert, is_dyck, rational_catalan, step_ranks, sweep, verify_bijection,
    Algorithm, CoprimePair, DyckWord, Error, TraceDocument, TraceLevel,
};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepStatus {
    Ok = 0,
    /// Non-coprime pair, malformed word, non-Dyck word, bad ranks.
    InvalidInput = 1,
    /// An internal invariant failed; this is a bug.
    Internal = 2,
    NullPointer = 3,
    InvalidUtf8 = 4,
    /// The result does not fit the output type.
    Overflow = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepAlgorithm {
    Weak = 0,
    Strong = 1,
}

impl From<SweepAlgorithm> for Algorithm {
    fn from(a: SweepAlgorithm) -> Self {
        match a {
            SweepAlgorithm::Weak => Algorithm::Weak,
            SweepAlgorithm::Strong => Algorithm::Strong,
        }
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepTraceLevel {
    None = 0,
    Rows = 1,
    Full = 2,
}

impl From<SweepTraceLevel> for TraceLevel {
    fn from(l: SweepTraceLevel) -> Self {
        match l {
            SweepTraceLevel::None => TraceLevel::None,
            SweepTraceLevel::Rows => TraceLevel::Rows,
            SweepTraceLevel::Full => TraceLevel::Full,
        }
    }
}

/// Opaque coprime pair `(m, n)`.
pub struct SweepPair {
    pair: CoprimePair,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: String) {
    let message = CString::new(message.replace('\0', " ")).expect("NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(message));
}

struct Failure(SweepStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = if e.is_internal() {
            SweepStatus::Internal
        } else {
            SweepStatus::InvalidInput
        };
        Failure(status, e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> SweepStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SweepStatus::Ok,
        Ok(Err(Failure(status, message))) => {
            set_last_error(message);
            status
        }
        Err(_) => {
            set_last_error("panic inside sweepmap".into());
            SweepStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(SweepStatus::NullPointer, format!("{what} is NULL"))
}

unsafe fn pair_ref<'a>(pair: *const SweepPair) -> Result<&'a SweepPair, Failure> {
    pair.as_ref().ok_or_else(|| null("pair"))
}

unsafe fn word_arg(word: *const c_char) -> Result<DyckWord, Failure> {
    if word.is_null() {
        return Err(null("word"));
    }
    let text = CStr::from_ptr(word)
        .to_str()
        .map_err(|e| Failure(SweepStatus::InvalidUtf8, format!("word: {e}")))?;
    Ok(DyckWord::parse(text)?)
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, text: String) -> Result<(), Failure> {
    let s = CString::new(text).map_err(|e| Failure(SweepStatus::Internal, e.to_string()))?;
    write_out(out, s.into_raw())
}

/// Creates a pair handle. Fails with `INVALID_INPUT` unless `m, n >= 1` and `gcd(m, n) = 1`.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn sweep_pair_new(m: u32, n: u32, out: *mut *mut SweepPair) -> SweepStatus {
    guard(|| {
        let pair = CoprimePair::new(m, n)?;
        write_out(out, Box::into_raw(Box::new(SweepPair { pair })))
    })
}

/// Releases a handle from [`sweep_pair_new`]. NULL is ignored.
///
/// # Safety
/// `pair` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sweep_pair_free(pair: *mut SweepPair) {
    if !pair.is_null() {
        drop(Box::from_raw(pair));
    }
}

/// # Safety
/// `pair` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn sweep_pair_m(pair: *const SweepPair) -> u32 {
    pair.as_ref().map_or(0, |p| p.pair.m())
}

/// # Safety
/// `pair` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn sweep_pair_n(pair: *const SweepPair) -> u32 {
    pair.as_ref().map_or(0, |p| p.pair.n())
}

/// Writes whether `word` is an (m,n)-Dyck word.
///
/// # Safety
/// `pair` must be a live handle, `word` a NUL-terminated string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sweep_is_dyck(
    pair: *const SweepPair,
    word: *const c_char,
    out: *mut bool,
) -> SweepStatus {
    guard(|| {
        let pair = pair_ref(pair)?.pair;
        let word = word_arg(word)?;
        write_out(out, is_dyck(&word, pair)?)
    })
}

/// Writes the comma-separated starting ranks of `word`.
///
/// # Safety
/// As [`sweep_is_dyck`]; the string written to `out` must be freed with [`sweep_string_free`].
#[no_mangle]
pub unsafe extern "C" fn sweep_step_ranks(
    pair: *const SweepPair,
    word: *const c_char,
    out: *mut *mut c_char,
) -> SweepStatus {
    guard(|| {
        let pair = pair_ref(pair)?.pair;
        let word = word_arg(word)?;
        write_string(out, step_ranks(&word, pair)?.to_string())
    })
}

/// Writes the sweep image of `word` in the S/W alphabet.
///
/// # Safety
/// As [`sweep_step_ranks`].
#[no_mangle]
pub unsafe extern "C" fn sweep_map(
    pair: *const SweepPair,
    word: *const c_char,
    out: *mut *mut c_char,
) -> SweepStatus {
    guard(|| {
        let pair = pair_ref(pair)?.pair;
        let word = word_arg(word)?;
        write_string(out, sweep(&word, pair)?.to_string())
    })
}

/// Writes the sweep pre-image of `word`.
///
/// # Safety
/// As [`sweep_step_ranks`].
#[no_mangle]
pub unsafe extern "C" fn sweep_invert(
    pair: *const SweepPair,
    word: *const c_char,
    algorithm: SweepAlgorithm,
    out: *mut *mut c_char,
) -> SweepStatus {
    guard(|| {
        let pair = pair_ref(pair)?.pair;
        let word = word_arg(word)?;
        write_string(out, invert(&word, pair, algorithm.into())?.to_string())
    })
}

/// Writes the area of a Dyck word.
///
/// # Safety
/// As [`sweep_is_dyck`].
#[no_mangle]
pub unsafe extern "C" fn sweep_area(
    pair: *const SweepPair,
    word: *const c_char,
    out: *mut u64,
) -> SweepStatus {
    guard(|| {
        let pair = pair_ref(pair)?.pair;
        let word = word_arg(word)?;
        write_out(out, area(&word, pair)?)
    })
}

/// Writes `C(m+n, n) / (m+n)`; `OVERFLOW` if it exceeds 64 bits.
///
/// # Safety
/// `pair` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sweep_rational_catalan(
    pair: *const SweepPair,
    out: *mut u64,
) -> SweepStatus {
    guard(|| {
        let count = rational_catalan(pair_ref(pair)?.pair);
        let value = u64::try_from(&count).map_err(|_| {
            Failure(
                SweepStatus::Overflow,
                format!("{count} does not fit 64 bits"),
            )
        })?;
        write_out(out, value)
    })
}

/// Writes every Dyck word of the pair, one per line, in lexicographic order.
///
/// # Safety
/// As [`sweep_rational_catalan`]; free the string with [`sweep_string_free`].
#[no_mangle]
pub unsafe extern "C" fn sweep_enumerate(
    pair: *const SweepPair,
    out: *mut *mut c_char,
) -> SweepStatus {
    guard(|| {
        let words = enumerate_dyck(pair_ref(pair)?.pair)?;
        let text: Vec<String> = words.iter().map(ToString::to_string).collect();
        write_string(out, text.join("\n"))
    })
}

/// Runs an inversion and writes its trace document as JSON.
///
/// # Safety
/// As [`sweep_step_ranks`].
#[no_mangle]
pub unsafe extern "C" fn sweep_trace_json(
    pair: *const SweepPair,
    word: *const c_char,
    algorithm: SweepAlgorithm,
    level: SweepTraceLevel,
    out: *mut *mut c_char,
) -> SweepStatus {
    guard(|| {
        let pair = pair_ref(pair)?.pair;
        let word = word_arg(word)?;
        let doc = TraceDocument::run(&word, pair, algorithm.into(), level.into())?;
        write_string(out, doc.to_json())
    })
}

/// Verifies the pair exhaustively and writes the report as JSON. The call
/// itself succeeds even when the report's `bijection_ok` is false.
///
/// # Safety
/// As [`sweep_enumerate`].
#[no_mangle]
pub unsafe extern "C" fn sweep_verify_json(
    pair: *const SweepPair,
    out: *mut *mut c_char,
) -> SweepStatus {
    guard(|| {
        let report = verify_bijection(pair_ref(pair)?.pair)?;
        write_string(out, report.to_json())
    })
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must be NULL or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sweep_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failed call on this thread, or NULL. Valid until
/// the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn sweep_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}
