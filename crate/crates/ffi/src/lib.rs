//! C ABI over `gas_core`.
//!
//! Every fallible function returns a [`GasStatus`]. On failure a message is
//! stored per thread and can be fetched with [`gas_last_error_message`].
//! Run results are returned as opaque [`GasTrace`] handles that the caller
//! releases with [`gas_trace_free`].

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, c_int, c_void, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::slice;

use gas_core::harness::Algorithm;
use gas_core::testbed::registry;
use gas_core::{BoxDomain, Error, ObjectiveSpec, RunStatus, RunTrace, Sense};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GasStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    UnknownFunction = 3,
    UnknownAlgorithm = 4,
    InvalidConfig = 5,
    InvalidDomain = 6,
    OutOfDomain = 7,
    IndexOutOfRange = 8,
    BufferTooSmall = 9,
    Panic = 10,
    Internal = 11,
}

/// How a run ended.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GasRunStatus {
    Solved = 0,
    BudgetExhausted = 1,
    StabilityHalt = 2,
}

impl From<RunStatus> for GasRunStatus {
    fn from(s: RunStatus) -> Self {
        match s {
            RunStatus::Solved => GasRunStatus::Solved,
            RunStatus::BudgetExhausted => GasRunStatus::BudgetExhausted,
            RunStatus::StabilityHalt => GasRunStatus::StabilityHalt,
        }
    }
}

/// Opaque result of one run.
pub struct GasTrace {
    trace: RunTrace,
}

/// Objective supplied by the caller: returns f(x) for `dim` coordinates.
pub type GasObjectiveFn =
    Option<unsafe extern "C" fn(x: *const f64, dim: usize, user_data: *mut c_void) -> f64>;

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn fail(status: GasStatus, msg: &str) -> GasStatus {
    set_error(msg);
    status
}

fn from_error(e: Error) -> GasStatus {
    let status = match &e {
        Error::UnknownFunction(_) => GasStatus::UnknownFunction,
        Error::UnknownAlgorithm(_) => GasStatus::UnknownAlgorithm,
        Error::InvalidConfig(_) => GasStatus::InvalidConfig,
        Error::InvalidDomain(_) => GasStatus::InvalidDomain,
        Error::Eval(gas_core::EvalError::OutOfDomain) => GasStatus::OutOfDomain,
        _ => GasStatus::Internal,
    };
    fail(status, &e.to_string())
}

/// Runs `f`, turning panics into [`GasStatus::Panic`].
fn guard(f: impl FnOnce() -> Result<(), GasStatus>) -> GasStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            GasStatus::Ok
        }
        Ok(Err(s)) => s,
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            fail(GasStatus::Panic, &msg)
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, GasStatus> {
    if p.is_null() {
        return Err(fail(GasStatus::NullPointer, &format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(GasStatus::InvalidUtf8, &format!("{what} is not UTF-8")))
}

unsafe fn slice_arg<'a, T>(p: *const T, len: usize, what: &str) -> Result<&'a [T], GasStatus> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(fail(GasStatus::NullPointer, &format!("{what} is null")));
    }
    Ok(slice::from_raw_parts(p, len))
}

fn out_arg<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, GasStatus> {
    // SAFETY: non-null pointers are trusted to be valid and writable.
    unsafe { p.as_mut() }.ok_or_else(|| fail(GasStatus::NullPointer, &format!("{what} is null")))
}

fn trace_ref<'a>(trace: *const GasTrace) -> Result<&'a RunTrace, GasStatus> {
    // SAFETY: non-null handles come from gas_run or gas_run_custom.
    unsafe { trace.as_ref() }
        .map(|t| &t.trace)
        .ok_or_else(|| fail(GasStatus::NullPointer, "trace is null"))
}

fn hand_out(trace: RunTrace, out: *mut *mut GasTrace) -> Result<(), GasStatus> {
    let slot = out_arg(out, "out_trace")?;
    *slot = Box::into_raw(Box::new(GasTrace { trace }));
    Ok(())
}

/// Message for the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn gas_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn gas_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Number of registered test functions.
#[no_mangle]
pub extern "C" fn gas_function_count() -> usize {
    registry().len()
}

/// Name of registered function `index`. The string is static.
#[no_mangle]
pub unsafe extern "C" fn gas_function_name(
    index: usize,
    out_name: *mut *const c_char,
) -> GasStatus {
    guard(|| {
        static NAMES: std::sync::LazyLock<Vec<CString>> = std::sync::LazyLock::new(|| {
            registry()
                .names()
                .into_iter()
                .map(|n| CString::new(n).unwrap())
                .collect()
        });
        let name = NAMES.get(index).ok_or_else(|| {
            fail(
                GasStatus::IndexOutOfRange,
                &format!("function index {index} out of range"),
            )
        })?;
        *out_arg(out_name, "out_name")? = name.as_ptr();
        Ok(())
    })
}

/// Dimension and known minimum value of a registered function.
#[no_mangle]
pub unsafe extern "C" fn gas_function_info(
    name: *const c_char,
    out_dim: *mut usize,
    out_min_value: *mut f64,
) -> GasStatus {
    guard(|| {
        let spec = registry().get(str_arg(name, "name")?).map_err(from_error)?;
        *out_arg(out_dim, "out_dim")? = spec.dimension();
        *out_arg(out_min_value, "out_min_value")? = spec.known_min_value();
        Ok(())
    })
}

/// Copies the search box of a registered function into `lower` and `upper`,
/// each holding `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn gas_function_bounds(
    name: *const c_char,
    lower: *mut f64,
    upper: *mut f64,
    len: usize,
) -> GasStatus {
    guard(|| {
        let spec = registry().get(str_arg(name, "name")?).map_err(from_error)?;
        let d = spec.domain();
        if len < d.dim() {
            return Err(fail(
                GasStatus::BufferTooSmall,
                &format!("bounds need {} slots", d.dim()),
            ));
        }
        if lower.is_null() || upper.is_null() {
            return Err(fail(GasStatus::NullPointer, "bounds buffer is null"));
        }
        slice::from_raw_parts_mut(lower, d.dim()).copy_from_slice(d.lower());
        slice::from_raw_parts_mut(upper, d.dim()).copy_from_slice(d.upper());
        Ok(())
    })
}

/// Evaluates a registered function at `x` (`len` coordinates, which must
/// match its dimension and lie in its box).
#[no_mangle]
pub unsafe extern "C" fn gas_evaluate(
    name: *const c_char,
    x: *const f64,
    len: usize,
    out_value: *mut f64,
) -> GasStatus {
    guard(|| {
        let name = str_arg(name, "name")?;
        let x = slice_arg(x, len, "x")?;
        let spec = registry().get(name).map_err(from_error)?;
        if len != spec.dimension() {
            return Err(fail(
                GasStatus::InvalidDomain,
                &format!("{name} takes {} coordinates, got {len}", spec.dimension()),
            ));
        }
        let v = registry().evaluate(name, x).map_err(from_error)?;
        *out_arg(out_value, "out_value")? = v;
        Ok(())
    })
}

/// One run of `algo` ("gas", "bh", "cs" or "de") with default settings on a
/// registered function, aiming at its known minimum.
#[no_mangle]
pub unsafe extern "C" fn gas_run(
    algo: *const c_char,
    function: *const c_char,
    budget: u64,
    seed: u64,
    out_trace: *mut *mut GasTrace,
) -> GasStatus {
    guard(|| {
        let algo: Algorithm = str_arg(algo, "algo")?.parse().map_err(from_error)?;
        let function = str_arg(function, "function")?;
        let trace =
            gas_core::harness::run_single(algo, function, budget, seed).map_err(from_error)?;
        hand_out(trace, out_trace)
    })
}

struct Callback {
    f: unsafe extern "C" fn(*const f64, usize, *mut c_void) -> f64,
    user_data: *mut c_void,
}

// SAFETY: runs are sequential, so the callback is only ever invoked on the
// thread that called gas_run_custom.
unsafe impl Send for Callback {}
unsafe impl Sync for Callback {}

impl Callback {
    fn call(&self, x: &[f64]) -> f64 {
        // SAFETY: the caller guarantees the callback accepts `dim` doubles.
        unsafe { (self.f)(x.as_ptr(), x.len(), self.user_data) }
    }
}

/// One run on a caller-supplied objective over the box `[lower, upper]`
/// of dimension `dim`. `maximize` non-zero flips the sense. With
/// `has_target` non-zero the run stops once the best value is within
/// `tolerance` of `target`; otherwise GAS stops when its best value
/// stabilizes and the other solvers use the whole budget.
#[no_mangle]
pub unsafe extern "C" fn gas_run_custom(
    algo: *const c_char,
    objective: GasObjectiveFn,
    user_data: *mut c_void,
    dim: usize,
    lower: *const f64,
    upper: *const f64,
    maximize: c_int,
    has_target: c_int,
    target: f64,
    tolerance: f64,
    budget: u64,
    seed: u64,
    out_trace: *mut *mut GasTrace,
) -> GasStatus {
    guard(|| {
        let algo: Algorithm = str_arg(algo, "algo")?.parse().map_err(from_error)?;
        let f = objective.ok_or_else(|| fail(GasStatus::NullPointer, "objective is null"))?;
        if dim == 0 {
            return Err(fail(GasStatus::InvalidDomain, "dimension must be positive"));
        }
        let lower = slice_arg(lower, dim, "lower")?.to_vec();
        let upper = slice_arg(upper, dim, "upper")?.to_vec();
        let domain = BoxDomain::new(lower, upper).map_err(from_error)?;
        if has_target != 0 && (tolerance.is_nan() || tolerance <= 0.0) {
            return Err(fail(GasStatus::InvalidConfig, "tolerance must be positive"));
        }
        let cb = Callback { f, user_data };
        let mut spec = ObjectiveSpec::new("custom", domain, move |x: &[f64]| cb.call(x))
            .with_sense(if maximize != 0 {
                Sense::Maximize
            } else {
                Sense::Minimize
            });
        if has_target != 0 {
            spec = spec.with_known_min(target, None).with_tolerance(tolerance);
        }
        let target = (has_target != 0).then_some(target);
        let trace = algo.run(&spec, budget, seed, target).map_err(from_error)?;
        hand_out(trace, out_trace)
    })
}

/// Releases a trace. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn gas_trace_free(trace: *mut GasTrace) {
    if !trace.is_null() {
        drop(Box::from_raw(trace));
    }
}

#[no_mangle]
pub extern "C" fn gas_trace_status(
    trace: *const GasTrace,
    out_status: *mut GasRunStatus,
) -> GasStatus {
    guard(|| {
        *out_arg(out_status, "out_status")? = trace_ref(trace)?.status.into();
        Ok(())
    })
}

/// Best value found, in the objective's own sense.
#[no_mangle]
pub extern "C" fn gas_trace_best_value(trace: *const GasTrace, out_value: *mut f64) -> GasStatus {
    guard(|| {
        *out_arg(out_value, "out_value")? = trace_ref(trace)?.best_value;
        Ok(())
    })
}

#[no_mangle]
pub extern "C" fn gas_trace_reads_used(trace: *const GasTrace, out_reads: *mut u64) -> GasStatus {
    guard(|| {
        *out_arg(out_reads, "out_reads")? = trace_ref(trace)?.reads_used;
        Ok(())
    })
}

/// Writes 1 and the solving read count if the target was reached, 0
/// otherwise.
#[no_mangle]
pub extern "C" fn gas_trace_solved_at(
    trace: *const GasTrace,
    out_solved: *mut c_int,
    out_reads: *mut u64,
) -> GasStatus {
    guard(|| {
        let t = trace_ref(trace)?;
        let solved = out_arg(out_solved, "out_solved")?;
        let reads = out_arg(out_reads, "out_reads")?;
        *solved = t.solved_at_reads.is_some() as c_int;
        *reads = t.solved_at_reads.unwrap_or(0);
        Ok(())
    })
}

/// Length of the best position.
#[no_mangle]
pub extern "C" fn gas_trace_dimension(trace: *const GasTrace, out_dim: *mut usize) -> GasStatus {
    guard(|| {
        *out_arg(out_dim, "out_dim")? = trace_ref(trace)?.best_position.len();
        Ok(())
    })
}

/// Copies the best position into `out` (at least the trace dimension).
#[no_mangle]
pub unsafe extern "C" fn gas_trace_best_position(
    trace: *const GasTrace,
    out: *mut f64,
    len: usize,
) -> GasStatus {
    guard(|| {
        let t = trace_ref(trace)?;
        let n = t.best_position.len();
        if len < n {
            return Err(fail(
                GasStatus::BufferTooSmall,
                &format!("position needs {n} slots"),
            ));
        }
        if n > 0 {
            if out.is_null() {
                return Err(fail(GasStatus::NullPointer, "out is null"));
            }
            slice::from_raw_parts_mut(out, n).copy_from_slice(&t.best_position);
        }
        Ok(())
    })
}

/// Number of best-so-far samples.
#[no_mangle]
pub extern "C" fn gas_trace_sample_count(
    trace: *const GasTrace,
    out_count: *mut usize,
) -> GasStatus {
    guard(|| {
        *out_arg(out_count, "out_count")? = trace_ref(trace)?.samples.len();
        Ok(())
    })
}

/// Sample `index`: read count and best value at that point.
#[no_mangle]
pub extern "C" fn gas_trace_sample(
    trace: *const GasTrace,
    index: usize,
    out_reads: *mut u64,
    out_value: *mut f64,
) -> GasStatus {
    guard(|| {
        let s = *trace_ref(trace)?.samples.get(index).ok_or_else(|| {
            fail(
                GasStatus::IndexOutOfRange,
                &format!("sample {index} out of range"),
            )
        })?;
        *out_arg(out_reads, "out_reads")? = s.reads;
        *out_arg(out_value, "out_value")? = s.best_value;
        Ok(())
    })
}
