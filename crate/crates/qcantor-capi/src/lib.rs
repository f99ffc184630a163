//! C ABI for the qcantor library.
//!
//! Conventions: every function returns a [`QcsStatus`]; results come back
//! through out-pointers. Handles (`QcsSequence`, `QcsStream`,
//! `QcsAdversarial`) are opaque and must be released with their matching
//! `_free` function. Strings written through out-pointers are NUL-terminated,
//! heap-allocated, and must be released with `qcs_string_free`. Exact
//! rationals cross the boundary as "p/q" strings. After any non-OK return,
//! `qcs_last_error_message` describes the failure for the calling thread.
//!
//! Safety contract, shared by every `unsafe` function here: string arguments
//! must be NUL-terminated and readable; handle arguments must come from this
//! library and not have been freed; buffer arguments must be writable for the
//! stated capacity; out-pointers must be writable. NULL is always detected
//! and reported, but a dangling or undersized pointer cannot be.
#![warn(unsafe_op_in_unsafe_fn)]
// The per-function safety requirements are the crate-level contract above;
// repeating them on all two dozen functions would only bloat the C header.
#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use qcantor::blocks::{count_block, qn_of_block, Block};
use qcantor::construct::{adversarial_frequency, build_adversarial, AdversarialResult};
use qcantor::digits::DigitStream;
use qcantor::error::Error;
use qcantor::expansion::{orbit_point, reconstruct};
use qcantor::interval::UnitInterval;
use qcantor::rational::{parse_rational, rational_string, ExactRational};
use qcantor::sequence::{bases_equivalent, BasicSequence};
use qcantor::stats::star_discrepancy;

/// Result code of every C API call.
#[repr(C)]
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum QcsStatus {
    /// The call succeeded.
    Ok = 0,
    /// A required pointer argument was NULL.
    NullPointer = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// Text input (sequence encoding, rational, block) failed to parse.
    ParseError = 3,
    /// Arguments were outside the mathematical domain of the operation.
    DomainError = 4,
    /// An index, digit budget, or buffer length was out of range.
    RangeError = 5,
    /// A stream-backed point could not be separated from an interval
    /// endpoint within the lookahead budget.
    Unresolved = 6,
    /// File input or output failed.
    IoError = 7,
    /// The library panicked; the handle state is still valid but the call
    /// produced nothing.
    InternalPanic = 8,
}

/// Opaque handle to a base sequence.
pub struct QcsSequence(BasicSequence);

/// Opaque handle to a digit stream.
pub struct QcsStream(DigitStream);

/// Opaque handle to a marker-splitting construction result.
pub struct QcsAdversarial(AdversarialResult);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn status_of(e: &Error) -> QcsStatus {
    match e {
        Error::Parse(_) => QcsStatus::ParseError,
        Error::IndexOutOfRange { .. }
        | Error::RotationOutOfRange { .. }
        | Error::InsufficientDigits { .. } => QcsStatus::RangeError,
        Error::UnresolvedBoundary { .. } => QcsStatus::Unresolved,
        Error::Io(_) => QcsStatus::IoError,
        _ => QcsStatus::DomainError,
    }
}

fn remember_error(e: &Error) -> QcsStatus {
    let message = CString::new(e.to_string()).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(message));
    status_of(e)
}

fn remember_text(text: &str, status: QcsStatus) -> QcsStatus {
    let message = CString::new(text).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(message));
    status
}

fn guarded(f: impl FnOnce() -> QcsStatus) -> QcsStatus {
    catch_unwind(AssertUnwindSafe(f))
        .unwrap_or_else(|_| remember_text("internal panic", QcsStatus::InternalPanic))
}

fn read_str<'a>(p: *const c_char) -> Result<&'a str, QcsStatus> {
    if p.is_null() {
        return Err(remember_text("null string pointer", QcsStatus::NullPointer));
    }
    unsafe { CStr::from_ptr(p) }
        .to_str()
        .map_err(|_| remember_text("string is not valid UTF-8", QcsStatus::InvalidUtf8))
}

fn read_rational(p: *const c_char) -> Result<ExactRational, QcsStatus> {
    parse_rational(read_str(p)?).map_err(|e| remember_error(&e))
}

fn read_digits<'a>(ptr: *const u64, len: usize) -> Result<&'a [u64], QcsStatus> {
    if len == 0 {
        return Ok(&[]);
    }
    if ptr.is_null() {
        return Err(remember_text("null digit buffer", QcsStatus::NullPointer));
    }
    Ok(unsafe { std::slice::from_raw_parts(ptr, len) })
}

fn read_block(ptr: *const u64, len: usize) -> Result<Block, QcsStatus> {
    Block::new(read_digits(ptr, len)?.to_vec()).map_err(|e| remember_error(&e))
}

fn sequence_ref<'a>(p: *const QcsSequence) -> Result<&'a BasicSequence, QcsStatus> {
    unsafe { p.as_ref() }
        .map(|s| &s.0)
        .ok_or_else(|| remember_text("null sequence handle", QcsStatus::NullPointer))
}

fn stream_ref<'a>(p: *const QcsStream) -> Result<&'a DigitStream, QcsStatus> {
    unsafe { p.as_ref() }
        .map(|s| &s.0)
        .ok_or_else(|| remember_text("null stream handle", QcsStatus::NullPointer))
}

fn adversarial_ref<'a>(p: *const QcsAdversarial) -> Result<&'a AdversarialResult, QcsStatus> {
    unsafe { p.as_ref() }
        .map(|s| &s.0)
        .ok_or_else(|| remember_text("null construction handle", QcsStatus::NullPointer))
}

fn write_value<T>(out: *mut T, value: T) -> QcsStatus {
    if out.is_null() {
        return remember_text("null out pointer", QcsStatus::NullPointer);
    }
    unsafe { *out = value };
    QcsStatus::Ok
}

fn write_string(out: *mut *mut c_char, text: String) -> QcsStatus {
    match CString::new(text) {
        Ok(c) => write_value(out, c.into_raw()),
        Err(_) => remember_text("result contained a NUL byte", QcsStatus::InternalPanic),
    }
}

fn fill_buffer(out: *mut u64, out_len: usize, values: &[u64]) -> QcsStatus {
    if out.is_null() {
        return remember_text("null out buffer", QcsStatus::NullPointer);
    }
    if out_len < values.len() {
        return remember_text(
            &format!("buffer holds {out_len} entries, {} required", values.len()),
            QcsStatus::RangeError,
        );
    }
    unsafe { std::ptr::copy_nonoverlapping(values.as_ptr(), out, values.len()) };
    QcsStatus::Ok
}

/// Message for the most recent failure on this thread, or NULL if no call
/// has failed yet. The pointer stays valid until the next failing call on
/// the same thread; do not free it.
#[no_mangle]
pub extern "C" fn qcs_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow()
            .as_ref()
            .map_or(std::ptr::null(), |m| m.as_ptr())
    })
}

/// Static, never-freed name of a status code (e.g. "parse error").
#[no_mangle]
pub extern "C" fn qcs_status_name(status: QcsStatus) -> *const c_char {
    let name: &CStr = match status {
        QcsStatus::Ok => c"ok",
        QcsStatus::NullPointer => c"null pointer",
        QcsStatus::InvalidUtf8 => c"invalid UTF-8",
        QcsStatus::ParseError => c"parse error",
        QcsStatus::DomainError => c"domain error",
        QcsStatus::RangeError => c"range error",
        QcsStatus::Unresolved => c"unresolved boundary",
        QcsStatus::IoError => c"io error",
        QcsStatus::InternalPanic => c"internal panic",
    };
    name.as_ptr()
}

/// Releases a string allocated by this library. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn qcs_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Parses a base-sequence encoding such as "period=2,3",
/// "prefix=5;period=2,3", or "prefix=2,2,2" into a new handle.
#[no_mangle]
pub unsafe extern "C" fn qcs_sequence_parse(
    text: *const c_char,
    out: *mut *mut QcsSequence,
) -> QcsStatus {
    guarded(|| {
        let text = match read_str(text) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match text.parse::<BasicSequence>() {
            Ok(seq) => write_value(out, Box::into_raw(Box::new(QcsSequence(seq)))),
            Err(e) => remember_error(&e),
        }
    })
}

/// Writes the canonical encoding of a sequence.
#[no_mangle]
pub unsafe extern "C" fn qcs_sequence_format(
    seq: *const QcsSequence,
    out: *mut *mut c_char,
) -> QcsStatus {
    guarded(|| match sequence_ref(seq) {
        Ok(s) => write_string(out, s.encode()),
        Err(status) => status,
    })
}

/// Releases a sequence handle. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn qcs_sequence_free(seq: *mut QcsSequence) {
    if !seq.is_null() {
        drop(unsafe { Box::from_raw(seq) });
    }
}

/// Writes the base at 1-indexed `position`.
#[no_mangle]
pub unsafe extern "C" fn qcs_sequence_base_at(
    seq: *const QcsSequence,
    position: usize,
    out: *mut u64,
) -> QcsStatus {
    guarded(|| {
        let s = match sequence_ref(seq) {
            Ok(s) => s,
            Err(status) => return status,
        };
        match s.q_at(position) {
            Ok(base) => write_value(out, base),
            Err(e) => remember_error(&e),
        }
    })
}

/// Writes the product of one period of an eventually periodic sequence.
#[no_mangle]
pub unsafe extern "C" fn qcs_sequence_period_product(
    seq: *const QcsSequence,
    out: *mut u64,
) -> QcsStatus {
    guarded(|| {
        let s = match sequence_ref(seq) {
            Ok(s) => s,
            Err(status) => return status,
        };
        match s.period_product() {
            Ok(product) => write_value(out, product),
            Err(e) => remember_error(&e),
        }
    })
}

/// Writes whether constant bases r and s admit digit-wise conversion, i.e.
/// whether both are integer powers of a common integer.
#[no_mangle]
pub unsafe extern "C" fn qcs_bases_equivalent(r: u64, s: u64, out: *mut bool) -> QcsStatus {
    guarded(|| match bases_equivalent(r, s) {
        Ok(value) => write_value(out, value),
        Err(e) => remember_error(&e),
    })
}

/// Creates the digit stream of rational `value` (a "p/q" or decimal string
/// in [0, 1)) over the given sequence.
#[no_mangle]
pub unsafe extern "C" fn qcs_stream_from_rational(
    value: *const c_char,
    seq: *const QcsSequence,
    out: *mut *mut QcsStream,
) -> QcsStatus {
    guarded(|| {
        let x = match read_rational(value) {
            Ok(x) => x,
            Err(status) => return status,
        };
        let s = match sequence_ref(seq) {
            Ok(s) => s,
            Err(status) => return status,
        };
        match DigitStream::from_rational(x, s.clone()) {
            Ok(stream) => write_value(out, Box::into_raw(Box::new(QcsStream(stream)))),
            Err(e) => remember_error(&e),
        }
    })
}

/// Creates a stream from explicit digits over the given sequence; the digits
/// are validated against the bases position by position.
#[no_mangle]
pub unsafe extern "C" fn qcs_stream_from_digits(
    seq: *const QcsSequence,
    digits: *const u64,
    digits_len: usize,
    out: *mut *mut QcsStream,
) -> QcsStatus {
    guarded(|| {
        let s = match sequence_ref(seq) {
            Ok(s) => s,
            Err(status) => return status,
        };
        let d = match read_digits(digits, digits_len) {
            Ok(d) => d,
            Err(status) => return status,
        };
        match DigitStream::from_digits(s.clone(), d.to_vec()) {
            Ok(stream) => write_value(out, Box::into_raw(Box::new(QcsStream(stream)))),
            Err(e) => remember_error(&e),
        }
    })
}

/// Creates the base-b Champernowne stream (all positive integers written in
/// base b and concatenated) over the constant sequence (b, b, b, ...).
#[no_mangle]
pub unsafe extern "C" fn qcs_stream_champernowne(
    base: u64,
    out: *mut *mut QcsStream,
) -> QcsStatus {
    guarded(|| match DigitStream::champernowne(base) {
        Ok(stream) => write_value(out, Box::into_raw(Box::new(QcsStream(stream)))),
        Err(e) => remember_error(&e),
    })
}

/// Releases a stream handle. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn qcs_stream_free(stream: *mut QcsStream) {
    if !stream.is_null() {
        drop(unsafe { Box::from_raw(stream) });
    }
}

/// Copies the first n digits of the stream into `out` (capacity `out_len`).
#[no_mangle]
pub unsafe extern "C" fn qcs_stream_prefix(
    stream: *const QcsStream,
    n: usize,
    out: *mut u64,
    out_len: usize,
) -> QcsStatus {
    guarded(|| {
        let s = match stream_ref(stream) {
            Ok(s) => s,
            Err(status) => return status,
        };
        match s.prefix(n) {
            Ok(digits) => fill_buffer(out, out_len, &digits),
            Err(e) => remember_error(&e),
        }
    })
}

/// Writes the exact value (as a "p/q" string) represented by the given
/// digits over the sequence.
#[no_mangle]
pub unsafe extern "C" fn qcs_reconstruct(
    seq: *const QcsSequence,
    digits: *const u64,
    digits_len: usize,
    out: *mut *mut c_char,
) -> QcsStatus {
    guarded(|| {
        let s = match sequence_ref(seq) {
            Ok(s) => s,
            Err(status) => return status,
        };
        let d = match read_digits(digits, digits_len) {
            Ok(d) => d,
            Err(status) => return status,
        };
        match reconstruct(d, s) {
            Ok(value) => write_string(out, rational_string(&value)),
            Err(e) => remember_error(&e),
        }
    })
}

/// Writes the number of occurrences of the block fully inside the first n
/// digits of the stream.
#[no_mangle]
pub unsafe extern "C" fn qcs_count_block(
    stream: *const QcsStream,
    block: *const u64,
    block_len: usize,
    n: usize,
    out: *mut usize,
) -> QcsStatus {
    guarded(|| {
        let s = match stream_ref(stream) {
            Ok(s) => s,
            Err(status) => return status,
        };
        let b = match read_block(block, block_len) {
            Ok(b) => b,
            Err(status) => return status,
        };
        match count_block(s, &b, n) {
            Ok(count) => write_value(out, count),
            Err(e) => remember_error(&e),
        }
    })
}

/// Writes the expected occurrence weight of the block over the first n
/// positions (the normalizer of the occurrence ratio) as a "p/q" string.
#[no_mangle]
pub unsafe extern "C" fn qcs_block_weight(
    seq: *const QcsSequence,
    block: *const u64,
    block_len: usize,
    n: usize,
    out: *mut *mut c_char,
) -> QcsStatus {
    guarded(|| {
        let s = match sequence_ref(seq) {
            Ok(s) => s,
            Err(status) => return status,
        };
        let b = match read_block(block, block_len) {
            Ok(b) => b,
            Err(status) => return status,
        };
        match qn_of_block(s, &b, n) {
            Ok(weight) => write_string(out, rational_string(&weight)),
            Err(e) => remember_error(&e),
        }
    })
}

/// Writes the n-th orbit point (q_n ... q_1 x mod 1) of a rational value as
/// a "p/q" string; n = 0 returns the value itself.
#[no_mangle]
pub unsafe extern "C" fn qcs_orbit_point(
    value: *const c_char,
    seq: *const QcsSequence,
    n: usize,
    out: *mut *mut c_char,
) -> QcsStatus {
    guarded(|| {
        let x = match read_rational(value) {
            Ok(x) => x,
            Err(status) => return status,
        };
        let s = match sequence_ref(seq) {
            Ok(s) => s,
            Err(status) => return status,
        };
        match orbit_point(&x, s, n) {
            Ok(point) => write_string(out, rational_string(&point)),
            Err(e) => remember_error(&e),
        }
    })
}

/// Writes the exact star discrepancy of `count` rational points in [0, 1)
/// (each a "p/q" or decimal string) as a "p/q" string.
#[no_mangle]
pub unsafe extern "C" fn qcs_star_discrepancy(
    values: *const *const c_char,
    count: usize,
    out: *mut *mut c_char,
) -> QcsStatus {
    guarded(|| {
        if count > 0 && values.is_null() {
            return remember_text("null value array", QcsStatus::NullPointer);
        }
        let raw = unsafe { std::slice::from_raw_parts(values, count) };
        let mut points = Vec::with_capacity(count);
        for &p in raw {
            match read_rational(p) {
                Ok(x) => points.push(x),
                Err(status) => return status,
            }
        }
        match star_discrepancy(&points, count) {
            Ok(d) => write_string(out, rational_string(&d)),
            Err(e) => remember_error(&e),
        }
    })
}

/// Runs the marker-splitting construction on the first n digits of a stream
/// over the constant base g^2. Digits equal to g^2 - 1 are split into a pair
/// of base-g digits (g-1, g-1); every other digit passes through over base
/// g^2. The output never contains the digit g^2 - 1.
#[no_mangle]
pub unsafe extern "C" fn qcs_adversarial_build(
    g: u64,
    stream: *const QcsStream,
    n: usize,
    out: *mut *mut QcsAdversarial,
) -> QcsStatus {
    guarded(|| {
        let s = match stream_ref(stream) {
            Ok(s) => s,
            Err(status) => return status,
        };
        match build_adversarial(g, s, n) {
            Ok(result) => write_value(out, Box::into_raw(Box::new(QcsAdversarial(result)))),
            Err(e) => remember_error(&e),
        }
    })
}

/// Releases a construction handle. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn qcs_adversarial_free(handle: *mut QcsAdversarial) {
    if !handle.is_null() {
        drop(unsafe { Box::from_raw(handle) });
    }
}

/// Writes the number of output digits (input length plus one per split
/// marker).
#[no_mangle]
pub unsafe extern "C" fn qcs_adversarial_len(
    handle: *const QcsAdversarial,
    out: *mut usize,
) -> QcsStatus {
    guarded(|| match adversarial_ref(handle) {
        Ok(r) => write_value(out, r.p_len()),
        Err(status) => status,
    })
}

/// Writes the number of input digits that were split into marker pairs.
#[no_mangle]
pub unsafe extern "C" fn qcs_adversarial_marker_count(
    handle: *const QcsAdversarial,
    out: *mut usize,
) -> QcsStatus {
    guarded(|| match adversarial_ref(handle) {
        Ok(r) => write_value(out, r.marker_count()),
        Err(status) => status,
    })
}

/// Copies the output base sequence (mixing g^2 and g entries) into `out`.
/// The required capacity is the value written by `qcs_adversarial_len`.
#[no_mangle]
pub unsafe extern "C" fn qcs_adversarial_bases(
    handle: *const QcsAdversarial,
    out: *mut u64,
    out_len: usize,
) -> QcsStatus {
    guarded(|| match adversarial_ref(handle) {
        Ok(r) => fill_buffer(out, out_len, r.sequence().prefix()),
        Err(status) => status,
    })
}

/// Copies the output digits into `out`. The required capacity is the value
/// written by `qcs_adversarial_len`.
#[no_mangle]
pub unsafe extern "C" fn qcs_adversarial_digits(
    handle: *const QcsAdversarial,
    out: *mut u64,
    out_len: usize,
) -> QcsStatus {
    guarded(|| match adversarial_ref(handle) {
        Ok(r) => fill_buffer(out, out_len, r.p_digits()),
        Err(status) => status,
    })
}

/// Writes the fraction (as a "p/q" string) of the first m output orbit
/// points that land in [lo, hi), where lo and hi are rational strings.
#[no_mangle]
pub unsafe extern "C" fn qcs_adversarial_frequency(
    handle: *const QcsAdversarial,
    lo: *const c_char,
    hi: *const c_char,
    m: usize,
    out: *mut *mut c_char,
) -> QcsStatus {
    guarded(|| {
        let r = match adversarial_ref(handle) {
            Ok(r) => r,
            Err(status) => return status,
        };
        let lo = match read_rational(lo) {
            Ok(x) => x,
            Err(status) => return status,
        };
        let hi = match read_rational(hi) {
            Ok(x) => x,
            Err(status) => return status,
        };
        let interval = match UnitInterval::new(lo, hi) {
            Ok(e) => e,
            Err(e) => return remember_error(&e),
        };
        match adversarial_frequency(r, &interval, m) {
            Ok(freq) => write_string(out, rational_string(&freq)),
            Err(e) => remember_error(&e),
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::path::Path;
    use std::ptr;

    fn c(text: &str) -> CString {
        CString::new(text).unwrap()
    }

    fn own_string(p: *mut c_char) -> String {
        assert!(!p.is_null());
        let text = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string();
        unsafe { qcs_string_free(p) };
        text
    }

    fn parsed(text: &str) -> *mut QcsSequence {
        let mut seq = ptr::null_mut();
        let status = unsafe { qcs_sequence_parse(c(text).as_ptr(), &mut seq) };
        assert_eq!(status, QcsStatus::Ok);
        seq
    }

    #[test]
    fn sequence_roundtrip_and_queries() {
        unsafe {
            let seq = parsed("prefix=5;period=2,3");
            let mut text = ptr::null_mut();
            assert_eq!(qcs_sequence_format(seq, &mut text), QcsStatus::Ok);
            assert_eq!(own_string(text), "prefix=5;period=2,3");

            let mut base = 0u64;
            assert_eq!(qcs_sequence_base_at(seq, 1, &mut base), QcsStatus::Ok);
            assert_eq!(base, 5);
            assert_eq!(qcs_sequence_base_at(seq, 3, &mut base), QcsStatus::Ok);
            assert_eq!(base, 3);
            assert_eq!(qcs_sequence_base_at(seq, 4, &mut base), QcsStatus::Ok);
            assert_eq!(base, 2);
            assert_eq!(qcs_sequence_base_at(seq, 0, &mut base), QcsStatus::RangeError);

            let mut product = 0u64;
            assert_eq!(qcs_sequence_period_product(seq, &mut product), QcsStatus::Ok);
            assert_eq!(product, 6);
            qcs_sequence_free(seq);
        }
    }

    #[test]
    fn parse_failures_set_the_error_message() {
        unsafe {
            let mut seq = ptr::null_mut();
            assert_eq!(
                qcs_sequence_parse(c("period=1").as_ptr(), &mut seq),
                QcsStatus::DomainError
            );
            let message = qcs_last_error_message();
            assert!(!message.is_null());
            let text = CStr::from_ptr(message).to_str().unwrap();
            assert!(text.contains('1'), "message: {text}");

            assert_eq!(
                qcs_sequence_parse(ptr::null(), &mut seq),
                QcsStatus::NullPointer
            );
            let bad = CString::new([0xFFu8, 0xFE].to_vec()).unwrap();
            assert_eq!(
                qcs_sequence_parse(bad.as_ptr(), &mut seq),
                QcsStatus::InvalidUtf8
            );
        }
    }

    #[test]
    fn equivalence_spot_checks() {
        unsafe {
            let mut value = false;
            assert_eq!(qcs_bases_equivalent(2, 8, &mut value), QcsStatus::Ok);
            assert!(value);
            assert_eq!(qcs_bases_equivalent(2, 6, &mut value), QcsStatus::Ok);
            assert!(!value);
            assert_eq!(qcs_bases_equivalent(1, 6, &mut value), QcsStatus::DomainError);
        }
    }

    #[test]
    fn stream_prefix_and_reconstruct() {
        unsafe {
            let seq = parsed("period=2,3");
            let mut stream = ptr::null_mut();
            assert_eq!(
                qcs_stream_from_rational(c("5/6").as_ptr(), seq, &mut stream),
                QcsStatus::Ok
            );
            let mut digits = [0u64; 4];
            assert_eq!(
                qcs_stream_prefix(stream, 4, digits.as_mut_ptr(), digits.len()),
                QcsStatus::Ok
            );
            assert_eq!(digits, [1, 2, 0, 0]);
            // A short buffer is rejected before writing.
            assert_eq!(
                qcs_stream_prefix(stream, 4, digits.as_mut_ptr(), 2),
                QcsStatus::RangeError
            );

            let mut value = ptr::null_mut();
            assert_eq!(
                qcs_reconstruct(seq, digits.as_ptr(), 2, &mut value),
                QcsStatus::Ok
            );
            assert_eq!(own_string(value), "5/6");

            qcs_stream_free(stream);
            qcs_sequence_free(seq);
        }
    }

    #[test]
    fn block_counting_and_weight() {
        unsafe {
            let mut stream = ptr::null_mut();
            assert_eq!(qcs_stream_champernowne(2, &mut stream), QcsStatus::Ok);
            let block = [1u64, 1];
            let mut count = 0usize;
            assert_eq!(
                qcs_count_block(stream, block.as_ptr(), block.len(), 12, &mut count),
                QcsStatus::Ok
            );
            // 1 10 11 100 101 1 -> 110111001011: pairs (1,1) at 4 positions.
            assert_eq!(count, 4);
            qcs_stream_free(stream);

            let seq = parsed("period=2");
            let single = [1u64];
            let mut weight = ptr::null_mut();
            assert_eq!(
                qcs_block_weight(seq, single.as_ptr(), 1, 4, &mut weight),
                QcsStatus::Ok
            );
            // Rationals always cross the boundary in p/q form, integers included.
            assert_eq!(own_string(weight), "2/1");
            qcs_sequence_free(seq);
        }
    }

    #[test]
    fn orbit_and_discrepancy() {
        unsafe {
            let seq = parsed("period=2,3");
            let mut point = ptr::null_mut();
            assert_eq!(
                qcs_orbit_point(c("1/7").as_ptr(), seq, 2, &mut point),
                QcsStatus::Ok
            );
            assert_eq!(own_string(point), "6/7");
            qcs_sequence_free(seq);

            let a = c("0");
            let b = c("1/2");
            let values = [a.as_ptr(), b.as_ptr()];
            let mut d = ptr::null_mut();
            assert_eq!(
                qcs_star_discrepancy(values.as_ptr(), values.len(), &mut d),
                QcsStatus::Ok
            );
            assert_eq!(own_string(d), "1/2");

            assert_eq!(
                qcs_star_discrepancy(values.as_ptr(), 0, &mut d),
                QcsStatus::DomainError
            );
        }
    }

    #[test]
    fn adversarial_construction_via_the_c_surface() {
        unsafe {
            let seq = parsed("period=4");
            let input = [1u64, 3, 2, 1, 1, 3];
            let mut stream = ptr::null_mut();
            assert_eq!(
                qcs_stream_from_digits(seq, input.as_ptr(), input.len(), &mut stream),
                QcsStatus::Ok
            );
            let mut handle = ptr::null_mut();
            assert_eq!(qcs_adversarial_build(2, stream, 6, &mut handle), QcsStatus::Ok);

            let mut len = 0usize;
            assert_eq!(qcs_adversarial_len(handle, &mut len), QcsStatus::Ok);
            assert_eq!(len, 8);
            let mut markers = 0usize;
            assert_eq!(qcs_adversarial_marker_count(handle, &mut markers), QcsStatus::Ok);
            assert_eq!(markers, 2);

            let mut bases = [0u64; 8];
            assert_eq!(
                qcs_adversarial_bases(handle, bases.as_mut_ptr(), bases.len()),
                QcsStatus::Ok
            );
            assert_eq!(bases, [4, 2, 2, 4, 4, 4, 2, 2]);
            let mut digits = [0u64; 8];
            assert_eq!(
                qcs_adversarial_digits(handle, digits.as_mut_ptr(), digits.len()),
                QcsStatus::Ok
            );
            assert_eq!(digits, [1, 1, 1, 2, 1, 1, 1, 1]);

            let mut freq = ptr::null_mut();
            assert_eq!(
                qcs_adversarial_frequency(
                    handle,
                    c("0").as_ptr(),
                    c("1/2").as_ptr(),
                    8,
                    &mut freq
                ),
                QcsStatus::Ok
            );
            assert_eq!(own_string(freq), "3/8");

            qcs_adversarial_free(handle);
            qcs_stream_free(stream);
            qcs_sequence_free(seq);
        }
    }

    #[test]
    fn null_handles_are_rejected() {
        unsafe {
            let mut out = 0u64;
            assert_eq!(
                qcs_sequence_base_at(ptr::null(), 1, &mut out),
                QcsStatus::NullPointer
            );
            let seq = parsed("period=2");
            assert_eq!(
                qcs_sequence_base_at(seq, 1, ptr::null_mut()),
                QcsStatus::NullPointer
            );
            qcs_sequence_free(seq);
            qcs_sequence_free(ptr::null_mut());
            qcs_stream_free(ptr::null_mut());
            qcs_adversarial_free(ptr::null_mut());
            qcs_string_free(ptr::null_mut());
        }
    }

    #[test]
    fn status_names_are_static() {
        for status in [
            QcsStatus::Ok,
            QcsStatus::ParseError,
            QcsStatus::DomainError,
            QcsStatus::InternalPanic,
        ] {
            let name = qcs_status_name(status);
            assert!(!name.is_null());
            assert!(!unsafe { CStr::from_ptr(name) }.to_str().unwrap().is_empty());
        }
    }

    #[test]
    fn header_is_generated_with_the_public_surface() {
        let header_path = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/qcantor.h");
        let header = std::fs::read_to_string(header_path).unwrap();
        for symbol in [
            "qcs_sequence_parse",
            "qcs_stream_from_rational",
            "qcs_count_block",
            "qcs_star_discrepancy",
            "qcs_adversarial_build",
            "qcs_last_error_message",
            "QCS_STATUS_OK",
        ] {
            assert!(header.contains(symbol), "header lacks {symbol}");
        }
    }
}
