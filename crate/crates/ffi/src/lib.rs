//! C interface to the boardnet simulator.
//!
//! The surface is two opaque handle types and a small set of functions:
//! build a scenario from a preset, override parameters with the same keys a
//! config file uses, run it, then read the aggregate year by year or write
//! it as CSV. Every function that can fail returns a [`BnStatus`]; the
//! message behind the most recent failure on the current thread is available
//! through [`bn_last_error_message`].
//!
//! Handles own their data. Pass each one to its `bn_*_free` function exactly
//! once; none of the types are thread-safe to mutate concurrently.

use boardnet::config::FileConfig;
use boardnet::error::Error;
use boardnet::output;
use boardnet::scenarios::{preset, run_monte_carlo, RunAggregate, ScenarioSpec};
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::fs::File;
use std::io::BufWriter;
use std::panic::{catch_unwind, AssertUnwindSafe};

/// Result of every fallible call. `BN_OK` is zero; anything else is an
/// error and leaves a message for [`bn_last_error_message`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[allow(non_camel_case_types)]
pub enum BnStatus {
    BN_OK = 0,
    /// A required pointer argument was NULL.
    BN_ERR_NULL = 1,
    /// A string argument was not valid UTF-8.
    BN_ERR_UTF8 = 2,
    /// A parameter, key, scenario id or column name was rejected.
    BN_ERR_CONFIG = 3,
    /// The simulation itself failed.
    BN_ERR_RUNTIME = 4,
    /// A file could not be written.
    BN_ERR_IO = 5,
}

/// A scenario under construction: preset parameters plus any overrides.
pub struct BnScenario(ScenarioSpec);

/// Finished Monte Carlo output: per-year means and standard deviations.
pub struct BnAggregate(RunAggregate);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: &str) {
    let owned = CString::new(message.replace('\0', " ")).expect("NUL bytes stripped");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = owned);
}

fn fail(status: BnStatus, message: &str) -> BnStatus {
    set_error(message);
    status
}

fn status_for(err: &Error) -> BnStatus {
    match err {
        Error::RunFailed { source, .. } => status_for(source),
        Error::Io(_) => BnStatus::BN_ERR_IO,
        e if e.is_config() => BnStatus::BN_ERR_CONFIG,
        _ => BnStatus::BN_ERR_RUNTIME,
    }
}

fn fail_with(err: &Error) -> BnStatus {
    fail(status_for(err), &err.to_string())
}

/// # Safety
/// `ptr` must be NULL or point to a NUL-terminated string.
unsafe fn read_str<'a>(ptr: *const c_char, what: &str) -> Result<&'a str, BnStatus> {
    if ptr.is_null() {
        return Err(fail(BnStatus::BN_ERR_NULL, &format!("{what} is NULL")));
    }
    CStr::from_ptr(ptr)
        .to_str()
        .map_err(|_| fail(BnStatus::BN_ERR_UTF8, &format!("{what} is not valid UTF-8")))
}

/// Version of the library as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn bn_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Message of the most recent error on the calling thread, or an empty
/// string if there has been none. The pointer stays valid until the next
/// failing call on the same thread; copy it if you need to keep it.
#[no_mangle]
pub extern "C" fn bn_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Create a scenario from a preset id (A, B, C, D, E, Aprime or Bprime).
/// On success writes a handle to `out`; free it with [`bn_scenario_free`].
///
/// # Safety
/// `id` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bn_scenario_preset(
    id: *const c_char,
    out: *mut *mut BnScenario,
) -> BnStatus {
    if out.is_null() {
        return fail(BnStatus::BN_ERR_NULL, "out is NULL");
    }
    let id = match read_str(id, "id") {
        Ok(s) => s,
        Err(status) => return status,
    };
    match preset(id) {
        Ok(spec) => {
            *out = Box::into_raw(Box::new(BnScenario(spec)));
            BnStatus::BN_OK
        }
        Err(e) => fail_with(&e),
    }
}

const STRING_KEYS: &[&str] = &[
    "mode",
    "lambda_mode",
    "growth_mode",
    "endo_application",
    "growth_form",
];

const NUMBER_KEYS: &[&str] = &[
    "firms",
    "runs",
    "years",
    "master_seed",
    "m",
    "board_size_mean",
    "board_size_var",
    "min_board_size",
    "gamma",
    "initial_share",
    "retire_rate",
    "g_f",
    "target_share",
    "lambda_bar",
    "g_lambda",
    "y_m",
    "beta",
];

/// Override one parameter. Keys and values are exactly those of a config
/// file (numbers arrive as their decimal text, enum values as their names,
/// e.g. `mode` = `biased`). Range checks run when the scenario does.
///
/// # Safety
/// `scenario` must be a live handle; `key` and `value` must be
/// NUL-terminated strings.
#[no_mangle]
pub unsafe extern "C" fn bn_scenario_set(
    scenario: *mut BnScenario,
    key: *const c_char,
    value: *const c_char,
) -> BnStatus {
    if scenario.is_null() {
        return fail(BnStatus::BN_ERR_NULL, "scenario is NULL");
    }
    let key = match read_str(key, "key") {
        Ok(s) => s,
        Err(status) => return status,
    };
    let value = match read_str(value, "value") {
        Ok(s) => s,
        Err(status) => return status,
    };

    let line = if STRING_KEYS.contains(&key) {
        let quoted = value.replace('\\', "\\\\").replace('"', "\\\"");
        format!("{key} = \"{quoted}\"")
    } else if NUMBER_KEYS.contains(&key) {
        format!("{key} = {value}")
    } else {
        let valid = STRING_KEYS
            .iter()
            .chain(NUMBER_KEYS)
            .copied()
            .collect::<Vec<_>>()
            .join(", ");
        return fail_with(&Error::UnknownField {
            field: key.to_string(),
            valid,
        });
    };

    let overlay = match FileConfig::parse(&line) {
        Ok(f) => f,
        Err(e) => return fail_with(&e),
    };
    match overlay.apply(&mut (*scenario).0.config) {
        Ok(()) => BnStatus::BN_OK,
        Err(e) => fail_with(&e),
    }
}

/// Run the scenario's full Monte Carlo experiment. On success writes an
/// aggregate handle to `out`; free it with [`bn_aggregate_free`]. The
/// scenario handle stays valid and can be adjusted and run again.
///
/// # Safety
/// `scenario` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bn_scenario_run(
    scenario: *const BnScenario,
    out: *mut *mut BnAggregate,
) -> BnStatus {
    if scenario.is_null() || out.is_null() {
        return fail(BnStatus::BN_ERR_NULL, "scenario or out is NULL");
    }
    let spec = &(*scenario).0;
    let result = catch_unwind(AssertUnwindSafe(|| run_monte_carlo(spec)));
    match result {
        Ok(Ok(agg)) => {
            *out = Box::into_raw(Box::new(BnAggregate(agg)));
            BnStatus::BN_OK
        }
        Ok(Err(e)) => fail_with(&e),
        Err(_) => fail(BnStatus::BN_ERR_RUNTIME, "simulation panicked"),
    }
}

/// Number of year rows in the aggregate (the horizon plus the initial
/// year 0). Returns 0 for a NULL handle.
///
/// # Safety
/// `aggregate` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn bn_aggregate_num_years(aggregate: *const BnAggregate) -> usize {
    if aggregate.is_null() {
        return 0;
    }
    (*aggregate).0.n_years()
}

/// Number of Monte Carlo runs behind the aggregate. Returns 0 for a NULL
/// handle.
///
/// # Safety
/// `aggregate` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn bn_aggregate_runs(aggregate: *const BnAggregate) -> u32 {
    if aggregate.is_null() {
        return 0;
    }
    (*aggregate).0.runs()
}

/// Read one cell by CSV column name (e.g. `share_F_mean`). A cell that the
/// CSV leaves empty (a statistic undefined in every run) is returned as NaN
/// with `BN_OK`; an unknown column or out-of-range year is an error and
/// leaves `out` untouched.
///
/// # Safety
/// `aggregate` must be a live handle, `column` a NUL-terminated string and
/// `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bn_aggregate_value(
    aggregate: *const BnAggregate,
    year: usize,
    column: *const c_char,
    out: *mut f64,
) -> BnStatus {
    if aggregate.is_null() || out.is_null() {
        return fail(BnStatus::BN_ERR_NULL, "aggregate or out is NULL");
    }
    let column = match read_str(column, "column") {
        Ok(s) => s,
        Err(status) => return status,
    };
    match output::value_by_column(&(*aggregate).0, year, column) {
        Ok(Some(v)) => {
            *out = v;
            BnStatus::BN_OK
        }
        Ok(None) => {
            *out = f64::NAN;
            BnStatus::BN_OK
        }
        Err(e) => fail_with(&e),
    }
}

/// Write the aggregate as CSV to `path`, replacing any existing file. The
/// bytes are identical to what the command line tool writes.
///
/// # Safety
/// `aggregate` must be a live handle and `path` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn bn_aggregate_write_csv(
    aggregate: *const BnAggregate,
    path: *const c_char,
) -> BnStatus {
    if aggregate.is_null() {
        return fail(BnStatus::BN_ERR_NULL, "aggregate is NULL");
    }
    let path = match read_str(path, "path") {
        Ok(s) => s,
        Err(status) => return status,
    };
    let file = match File::create(path) {
        Ok(f) => f,
        Err(e) => return fail(BnStatus::BN_ERR_IO, &format!("cannot create {path}: {e}")),
    };
    match output::write_csv(&(*aggregate).0, BufWriter::new(file)) {
        Ok(()) => BnStatus::BN_OK,
        Err(e) => fail_with(&e),
    }
}

/// Release a scenario handle. NULL is a harmless no-op.
///
/// # Safety
/// `scenario` must be NULL or a handle not freed before.
#[no_mangle]
pub unsafe extern "C" fn bn_scenario_free(scenario: *mut BnScenario) {
    if !scenario.is_null() {
        drop(Box::from_raw(scenario));
    }
}

/// Release an aggregate handle. NULL is a harmless no-op.
///
/// # Safety
/// `aggregate` must be NULL or a handle not freed before.
#[no_mangle]
pub unsafe extern "C" fn bn_aggregate_free(aggregate: *mut BnAggregate) {
    if !aggregate.is_null() {
        drop(Box::from_raw(aggregate));
    }
}
