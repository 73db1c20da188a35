//! C ABI over the transformation engine.
//!
//! Programs cross the boundary as opaque handles created by
//! [`currycomb_program_parse`] and released by [`currycomb_program_free`].
//! Strings returned to the caller are NUL-terminated, owned by the caller,
//! and released with [`currycomb_string_free`]. Every entry point catches
//! panics and reports failure through [`CurrycombStatus`]; the detail text
//! for the most recent failure on the current thread is available from
//! [`currycomb_last_error_message`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use currycomb::cli::{parse_pipeline, parse_strategy};
use currycomb::ir::{decode_program, encode_program, is_anf};
use currycomb::strategy::{apply_pipeline, PipelineError, StrategyError};
use currycomb::Program;

/// Result of a C API call. Matches the process exit codes of the CLI.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurrycombStatus {
    /// The call succeeded.
    Ok = 0,
    /// The input was missing, not valid UTF-8, not decodable, or violated
    /// a program invariant.
    InvalidInput = 1,
    /// The pipeline named an unknown rule or the strategy name is unknown.
    UnknownName = 2,
    /// The rewrite budget ran out before a normal form was reached.
    FuelExhausted = 3,
}

/// Opaque handle to a decoded, validated program.
pub struct CurrycombProgram {
    inner: Program,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: impl Into<Vec<u8>>) {
    let text = CString::new(message).unwrap_or_else(|_| CString::new("invalid error text").unwrap());
    LAST_ERROR.with(|slot| *slot.borrow_mut() = text);
}

fn fail(status: CurrycombStatus, message: impl Into<Vec<u8>>) -> CurrycombStatus {
    set_error(message);
    status
}

/// Run `body` with panics converted to an `InvalidInput` failure so that
/// unwinding never crosses the ABI boundary.
fn guarded(body: impl FnOnce() -> CurrycombStatus) -> CurrycombStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(_) => fail(CurrycombStatus::InvalidInput, "internal panic"),
    }
}

/// # Safety
/// `text` must be null or a valid NUL-terminated string.
unsafe fn read_str<'a>(text: *const c_char, what: &str) -> Result<&'a str, CurrycombStatus> {
    if text.is_null() {
        return Err(fail(CurrycombStatus::InvalidInput, format!("{what} is null")));
    }
    CStr::from_ptr(text)
        .to_str()
        .map_err(|_| fail(CurrycombStatus::InvalidInput, format!("{what} is not valid UTF-8")))
}

fn pipeline_status(err: &PipelineError) -> CurrycombStatus {
    match err {
        PipelineError::Strategy { source: StrategyError::FuelExhausted { .. }, .. } => {
            CurrycombStatus::FuelExhausted
        }
    }
}

/// Detail text for the most recent failing call on this thread. The pointer
/// stays valid until the next failing call on the same thread; never free it.
#[no_mangle]
pub extern "C" fn currycomb_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Decode and validate a program from its JSON text. On success `*out`
/// receives a handle that must be released with [`currycomb_program_free`].
///
/// # Safety
/// `json` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn currycomb_program_parse(
    json: *const c_char,
    out: *mut *mut CurrycombProgram,
) -> CurrycombStatus {
    guarded(|| {
        if out.is_null() {
            return fail(CurrycombStatus::InvalidInput, "out pointer is null");
        }
        let text = match read_str(json, "program text") {
            Ok(t) => t,
            Err(status) => return status,
        };
        match decode_program(text) {
            Ok(program) => {
                *out = Box::into_raw(Box::new(CurrycombProgram { inner: program }));
                CurrycombStatus::Ok
            }
            Err(e) => fail(CurrycombStatus::InvalidInput, e.to_string()),
        }
    })
}

/// Encode the program back to JSON. Returns null only if `program` is null.
/// Release the returned string with [`currycomb_string_free`].
///
/// # Safety
/// `program` must be null or a handle from this library.
#[no_mangle]
pub unsafe extern "C" fn currycomb_program_to_json(
    program: *const CurrycombProgram,
) -> *mut c_char {
    if program.is_null() {
        set_error("program handle is null");
        return ptr::null_mut();
    }
    let json = encode_program(&(*program).inner);
    // Program text never contains NUL bytes; encode_program emits JSON.
    CString::new(json).map_or(ptr::null_mut(), CString::into_raw)
}

/// Number of functions in the program, or 0 if `program` is null.
///
/// # Safety
/// `program` must be null or a handle from this library.
#[no_mangle]
pub unsafe extern "C" fn currycomb_program_function_count(
    program: *const CurrycombProgram,
) -> usize {
    if program.is_null() {
        return 0;
    }
    (*program).inner.functions.len()
}

/// Apply a transformation pipeline to every function of the program.
///
/// `pipeline` uses the CLI mini-syntax: stages separated by `;`, rules in a
/// stage separated by `|`, e.g. `"orFloat; unDollar|caseCancel"` or `"anf"`.
/// `strategy` is `"cs"`, `"ms"`, or `"ds"`. `fuel` caps the rewrites per
/// function per stage. On success `*out` receives a new handle and, when
/// `total_rewrites` is non-null, the rewrite count is stored there.
///
/// # Safety
/// All pointers must be null or valid; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn currycomb_program_transform(
    program: *const CurrycombProgram,
    pipeline: *const c_char,
    strategy: *const c_char,
    fuel: usize,
    out: *mut *mut CurrycombProgram,
    total_rewrites: *mut usize,
) -> CurrycombStatus {
    guarded(|| {
        if program.is_null() {
            return fail(CurrycombStatus::InvalidInput, "program handle is null");
        }
        if out.is_null() {
            return fail(CurrycombStatus::InvalidInput, "out pointer is null");
        }
        let pipeline_text = match read_str(pipeline, "pipeline") {
            Ok(t) => t,
            Err(status) => return status,
        };
        let strategy_text = match read_str(strategy, "strategy") {
            Ok(t) => t,
            Err(status) => return status,
        };
        let Some(kind) = parse_strategy(strategy_text) else {
            return fail(
                CurrycombStatus::UnknownName,
                format!("unknown strategy `{strategy_text}` (expected cs, ms, or ds)"),
            );
        };
        let stages = match parse_pipeline(pipeline_text, kind) {
            Ok(stages) => stages,
            Err(message) => return fail(CurrycombStatus::UnknownName, message),
        };
        match apply_pipeline(&stages, &(*program).inner, fuel) {
            Ok((transformed, report)) => {
                if !total_rewrites.is_null() {
                    *total_rewrites = report.total_rewrites;
                }
                *out = Box::into_raw(Box::new(CurrycombProgram { inner: transformed }));
                CurrycombStatus::Ok
            }
            Err(e) => fail(pipeline_status(&e), e.to_string()),
        }
    })
}

/// Store whether every function body is in A-normal form into `*result`.
///
/// # Safety
/// `program` must be null or a handle from this library; `result` must be
/// a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn currycomb_program_is_anf(
    program: *const CurrycombProgram,
    result: *mut bool,
) -> CurrycombStatus {
    guarded(|| {
        if program.is_null() {
            return fail(CurrycombStatus::InvalidInput, "program handle is null");
        }
        if result.is_null() {
            return fail(CurrycombStatus::InvalidInput, "result pointer is null");
        }
        *result = (*program).inner.functions.iter().all(|f| is_anf(&f.body));
        CurrycombStatus::Ok
    })
}

/// Release a program handle. Null is accepted and ignored.
///
/// # Safety
/// `program` must be null or an unreleased handle from this library.
#[no_mangle]
pub unsafe extern "C" fn currycomb_program_free(program: *mut CurrycombProgram) {
    if !program.is_null() {
        drop(Box::from_raw(program));
    }
}

/// Release a string returned by this library. Null is accepted and ignored.
///
/// # Safety
/// `text` must be null or an unreleased string from this library.
#[no_mangle]
pub unsafe extern "C" fn currycomb_string_free(text: *mut c_char) {
    if !text.is_null() {
        drop(CString::from_raw(text));
    }
}
