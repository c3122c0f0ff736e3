//! C ABI over the core library: opaque group and order handles, status
//! codes, and flat string-in/string-out calls. Every returned string comes
//! from [`of_normal_form`]-style out-parameters and must be released with
//! [`of_string_free`]; handles are released with their matching `_free`.
//! On any non-OK status, [`of_last_error`] returns a message describing the
//! failure (thread-local, valid until the next failing call on the thread).

use std::cell::RefCell;
use std::cmp::Ordering;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use ordforge::braid;
use ordforge::groups::GroupCtx;
use ordforge::orders::config::parse_order_spec;
use ordforge::orders::OrderSpec;
use ordforge::word::Word;
use ordforge::{Error, Sign};

/// Status code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OfStatus {
    /// The call succeeded.
    Ok = 0,
    /// A required pointer was null.
    NullPointer = 1,
    /// A string was not valid UTF-8.
    InvalidUtf8 = 2,
    /// A word, descriptor, or order spec failed to parse.
    ParseError = 3,
    /// The arguments do not fit together (wrong group kind, alphabet
    /// mismatch, window exceeded, bad configuration).
    InvalidArgument = 4,
    /// The operation is not defined for this group.
    Unsupported = 5,
    /// An enumeration or rewriting budget ran out.
    BudgetExceeded = 6,
    /// The computation failed internally.
    ComputationError = 7,
}

/// Opaque group handle.
pub struct OfGroup {
    ctx: GroupCtx,
}

/// Opaque order handle, bound to the group it was created against.
pub struct OfOrder {
    ctx: GroupCtx,
    spec: OrderSpec,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn record_error(message: String) {
    let stored = CString::new(message)
        .unwrap_or_else(|_| CString::new("error message contained a NUL byte").unwrap());
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(stored));
}

fn status_of(err: &Error) -> OfStatus {
    match err {
        Error::Parse(_) | Error::InvalidGenerator(_) | Error::ExponentOverflow(_) => {
            OfStatus::ParseError
        }
        Error::AlphabetMismatch(_)
        | Error::WindowExceeded { .. }
        | Error::IncompatibleSpec(_)
        | Error::MissingImage(_)
        | Error::Config(_) => OfStatus::InvalidArgument,
        Error::UnsupportedGroup { .. } => OfStatus::Unsupported,
        Error::BallBudgetExceeded { .. } | Error::ReductionBudgetExceeded { .. } => {
            OfStatus::BudgetExceeded
        }
        Error::IdentityHasNoLeadingTerm
        | Error::MixedSignsAtLowestIndex { .. }
        | Error::MagnusInconclusive
        | Error::NotEventuallyShifting
        | Error::NoDiscretenessWitness(_) => OfStatus::ComputationError,
    }
}

fn fail(err: Error) -> OfStatus {
    let status = status_of(&err);
    record_error(err.to_string());
    status
}

/// Runs a fallible body with panics converted to `ComputationError`.
fn guarded(body: impl FnOnce() -> Result<(), OfStatus>) -> OfStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => OfStatus::Ok,
        Ok(Err(status)) => status,
        Err(_) => {
            record_error("internal panic".to_string());
            OfStatus::ComputationError
        }
    }
}

/// Reads a required C string argument.
///
/// # Safety
/// `raw` must be null or point to a NUL-terminated string.
unsafe fn read_str<'a>(raw: *const c_char, what: &str) -> Result<&'a str, OfStatus> {
    if raw.is_null() {
        record_error(format!("{what} is null"));
        return Err(OfStatus::NullPointer);
    }
    unsafe { CStr::from_ptr(raw) }.to_str().map_err(|_| {
        record_error(format!("{what} is not valid UTF-8"));
        OfStatus::InvalidUtf8
    })
}

fn require<'a, T>(raw: *const T, what: &str) -> Result<&'a T, OfStatus> {
    if raw.is_null() {
        record_error(format!("{what} is null"));
        return Err(OfStatus::NullPointer);
    }
    Ok(unsafe { &*raw })
}

fn require_out<'a, T>(raw: *mut T, what: &str) -> Result<&'a mut T, OfStatus> {
    if raw.is_null() {
        record_error(format!("{what} is null"));
        return Err(OfStatus::NullPointer);
    }
    Ok(unsafe { &mut *raw })
}

fn export_string(s: String, what: &str) -> Result<*mut c_char, OfStatus> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|_| {
            record_error(format!("{what} contained a NUL byte"));
            OfStatus::ComputationError
        })
}

fn parse_word(text: &str, ctx: &GroupCtx) -> Result<Word, OfStatus> {
    let word: Word = text.parse().map_err(fail)?;
    ctx.validate_word(&word).map_err(fail)?;
    Ok(word)
}

/// The message of the most recent failure on this thread, or null if no
/// call has failed yet. The pointer stays valid until the next failing call
/// on the same thread; do not free it.
#[no_mangle]
pub extern "C" fn of_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow()
            .as_ref()
            .map_or(ptr::null(), |msg| msg.as_ptr())
    })
}

/// Creates a group from a descriptor (`klein`, `eg`, `free:N`, `braid:N`,
/// `eg:t=ACTION`, `gu`, `j`, `zx:BASE`). `window` bounds the indexed
/// alphabet; pass 32 unless a wider range is needed.
#[no_mangle]
pub unsafe extern "C" fn of_group_new(
    descriptor: *const c_char,
    window: i64,
    out: *mut *mut OfGroup,
) -> OfStatus {
    guarded(|| {
        let out = require_out(out, "out")?;
        let descriptor = unsafe { read_str(descriptor, "descriptor") }?;
        let ctx = GroupCtx::from_descriptor(descriptor, window).map_err(fail)?;
        *out = Box::into_raw(Box::new(OfGroup { ctx }));
        Ok(())
    })
}

/// Releases a group handle. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn of_group_free(group: *mut OfGroup) {
    if !group.is_null() {
        drop(unsafe { Box::from_raw(group) });
    }
}

/// Parses a JSON order spec against a group and returns an order handle
/// bound to that group.
#[no_mangle]
pub unsafe extern "C" fn of_order_new(
    group: *const OfGroup,
    spec_json: *const c_char,
    out: *mut *mut OfOrder,
) -> OfStatus {
    guarded(|| {
        let out = require_out(out, "out")?;
        let group = require(group, "group")?;
        let text = unsafe { read_str(spec_json, "spec_json") }?;
        let value: serde_json::Value = serde_json::from_str(text)
            .map_err(|e| fail(Error::Config(format!("order spec is not valid JSON: {e}"))))?;
        let spec = parse_order_spec(&value, &group.ctx).map_err(fail)?;
        spec.validate(&group.ctx).map_err(fail)?;
        *out = Box::into_raw(Box::new(OfOrder {
            ctx: group.ctx.clone(),
            spec,
        }));
        Ok(())
    })
}

/// Releases an order handle. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn of_order_free(order: *mut OfOrder) {
    if !order.is_null() {
        drop(unsafe { Box::from_raw(order) });
    }
}

/// Writes the normal form of `word` to `out` as a newly allocated string;
/// release it with [`of_string_free`].
#[no_mangle]
pub unsafe extern "C" fn of_normal_form(
    group: *const OfGroup,
    word: *const c_char,
    out: *mut *mut c_char,
) -> OfStatus {
    guarded(|| {
        let out = require_out(out, "out")?;
        let group = require(group, "group")?;
        let text = unsafe { read_str(word, "word") }?;
        let word = parse_word(text, &group.ctx)?;
        let nf = group.ctx.normal_form(&word).map_err(fail)?;
        *out = export_string(nf.to_string(), "normal form")?;
        Ok(())
    })
}

/// Writes 1 to `out` when the two words are the same group element, 0
/// otherwise.
#[no_mangle]
pub unsafe extern "C" fn of_equal(
    group: *const OfGroup,
    left: *const c_char,
    right: *const c_char,
    out: *mut i32,
) -> OfStatus {
    guarded(|| {
        let out = require_out(out, "out")?;
        let group = require(group, "group")?;
        let left = parse_word(unsafe { read_str(left, "left") }?, &group.ctx)?;
        let right = parse_word(unsafe { read_str(right, "right") }?, &group.ctx)?;
        *out = i32::from(group.ctx.equal(&left, &right).map_err(fail)?);
        Ok(())
    })
}

/// Writes the sign of `word` under the order to `out`: -1 negative, 0 the
/// identity, 1 positive.
#[no_mangle]
pub unsafe extern "C" fn of_sign(
    order: *const OfOrder,
    word: *const c_char,
    out: *mut i32,
) -> OfStatus {
    guarded(|| {
        let out = require_out(out, "out")?;
        let order = require(order, "order")?;
        let word = parse_word(unsafe { read_str(word, "word") }?, &order.ctx)?;
        *out = match order.spec.sign(&order.ctx, &word).map_err(fail)? {
            Sign::Negative => -1,
            Sign::Identity => 0,
            Sign::Positive => 1,
        };
        Ok(())
    })
}

/// Writes the comparison of `left` and `right` under the order to `out`:
/// -1 for less, 0 for equal, 1 for greater.
#[no_mangle]
pub unsafe extern "C" fn of_compare(
    order: *const OfOrder,
    left: *const c_char,
    right: *const c_char,
    out: *mut i32,
) -> OfStatus {
    guarded(|| {
        let out = require_out(out, "out")?;
        let order = require(order, "order")?;
        let left = parse_word(unsafe { read_str(left, "left") }?, &order.ctx)?;
        let right = parse_word(unsafe { read_str(right, "right") }?, &order.ctx)?;
        *out = match order.spec.compare(&order.ctx, &left, &right).map_err(fail)? {
            Ordering::Less => -1,
            Ordering::Equal => 0,
            Ordering::Greater => 1,
        };
        Ok(())
    })
}

/// Handle-reduces a braid word (the group must be `braid:N`) and writes the
/// reduced word to `out`; release it with [`of_string_free`].
#[no_mangle]
pub unsafe extern "C" fn of_braid_reduce(
    group: *const OfGroup,
    word: *const c_char,
    out: *mut *mut c_char,
) -> OfStatus {
    guarded(|| {
        let out = require_out(out, "out")?;
        let group = require(group, "group")?;
        let GroupCtx::Braid { strands } = group.ctx else {
            return Err(fail(Error::Config(
                "braid reduction needs a braid:N group".into(),
            )));
        };
        let word = parse_word(unsafe { read_str(word, "word") }?, &group.ctx)?;
        let reduced = braid::handle_reduce(strands, &word, braid::DEFAULT_STEP_CAP).map_err(fail)?;
        *out = export_string(reduced.to_string(), "reduced word")?;
        Ok(())
    })
}

/// Finds the least positive element of the ball of `radius` over the
/// comma-separated generator words, under the order. Writes the element to
/// `out` as a newly allocated string, or null when the ball holds no
/// positive element; release the string with [`of_string_free`]. `budget`
/// caps how many products the enumeration examines, `seed` drives any pair
/// sampling.
#[no_mangle]
pub unsafe extern "C" fn of_min_positive(
    order: *const OfOrder,
    gens_csv: *const c_char,
    radius: u32,
    budget: usize,
    seed: u64,
    out: *mut *mut c_char,
) -> OfStatus {
    guarded(|| {
        let out = require_out(out, "out")?;
        let order = require(order, "order")?;
        let csv = unsafe { read_str(gens_csv, "gens_csv") }?;
        let gens = csv
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| parse_word(s, &order.ctx))
            .collect::<Result<Vec<Word>, OfStatus>>()?;
        let found =
            ordforge::verify::min_positive(&order.spec, &order.ctx, &gens, radius, budget, seed)
                .map_err(fail)?;
        *out = match found {
            Some((least, _witness)) => export_string(least.to_string(), "least element")?,
            None => ptr::null_mut(),
        };
        Ok(())
    })
}

/// Releases a string returned by this library. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn of_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}
