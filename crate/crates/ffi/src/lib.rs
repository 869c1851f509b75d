//! C ABI for `projgeo`.
//!
//! Configurations live behind the opaque [`ProjgeoConfig`] handle. Every
//! fallible call returns a [`ProjgeoStatus`]; on anything but
//! `PROJGEO_STATUS_OK` a message is available from
//! [`projgeo_last_error`] on the same thread. Strings handed out by the
//! library are freed with [`projgeo_string_free`], handles with
//! [`projgeo_config_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use projgeo::config::{parse_selection, ConfigDocument};
use projgeo::geodsl::{evaluate, format_diagnostics, parse};
use projgeo::render::{render_svg, Preset};
use projgeo::sharygin::PAIRS;
use projgeo::verifier::{check_ids, generate_qlpair, run_check, trial_rng, TrialConfig, VerifyError};

/// Result codes. Zero is success.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProjgeoStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    /// Malformed JSON, a schema error or an invalid (q,l)-pair.
    InvalidConfig = 3,
    /// Invalid arguments such as a bad selection, bound or preset.
    InvalidArgument = 4,
    /// A script did not parse or a construction in it failed.
    ScriptError = 5,
    /// A checked statement or script assertion failed; output is still set.
    CheckFailed = 6,
    UnknownCheck = 7,
    EmptyViewport = 8,
    ExhaustedAttempts = 9,
    /// The library panicked; this is a bug.
    Internal = 10,
}

/// Opaque configuration handle.
pub struct ProjgeoConfig {
    doc: ConfigDocument,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

type Outcome<T> = Result<T, (ProjgeoStatus, String)>;

fn guard(f: impl FnOnce() -> Outcome<ProjgeoStatus>) -> ProjgeoStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(status)) => status,
        Ok(Err((status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal error".into());
            ProjgeoStatus::Internal
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Outcome<&'a str> {
    if p.is_null() {
        return Err((ProjgeoStatus::NullArgument, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| (ProjgeoStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

unsafe fn optional_text<'a>(p: *const c_char, what: &str) -> Outcome<Option<&'a str>> {
    if p.is_null() {
        Ok(None)
    } else {
        text(p, what).map(Some)
    }
}

unsafe fn config<'a>(p: *const ProjgeoConfig) -> Outcome<&'a ProjgeoConfig> {
    p.as_ref().ok_or((ProjgeoStatus::NullArgument, "config is null".into()))
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Outcome<()> {
    if out.is_null() {
        return Err((ProjgeoStatus::NullArgument, "output pointer is null".into()));
    }
    let c = CString::new(s).map_err(|_| (ProjgeoStatus::Internal, "output contains nul".into()))?;
    *out = c.into_raw();
    Ok(())
}

unsafe fn put_config(out: *mut *mut ProjgeoConfig, doc: ConfigDocument) -> Outcome<()> {
    if out.is_null() {
        return Err((ProjgeoStatus::NullArgument, "output pointer is null".into()));
    }
    *out = Box::into_raw(Box::new(ProjgeoConfig { doc }));
    Ok(())
}

fn verify_status(e: VerifyError) -> (ProjgeoStatus, String) {
    let status = match e {
        VerifyError::InvalidConfig(_) => ProjgeoStatus::InvalidArgument,
        VerifyError::UnknownCheck(_) => ProjgeoStatus::UnknownCheck,
        VerifyError::ExhaustedAttempts => ProjgeoStatus::ExhaustedAttempts,
    };
    (status, e.to_string())
}

fn invalid_argument(e: impl ToString) -> (ProjgeoStatus, String) {
    (ProjgeoStatus::InvalidArgument, e.to_string())
}

fn invalid_config(e: impl ToString) -> (ProjgeoStatus, String) {
    (ProjgeoStatus::InvalidConfig, e.to_string())
}

/// Message for the last failed call on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn projgeo_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Frees a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn projgeo_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Frees a configuration handle. Null is ignored.
///
/// # Safety
/// `cfg` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn projgeo_config_free(cfg: *mut ProjgeoConfig) {
    if !cfg.is_null() {
        drop(Box::from_raw(cfg));
    }
}

/// A seeded random configuration with integer coordinates in
/// `[-bound, bound]`; `omega` makes g the line at infinity.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn projgeo_config_generate(
    seed: u64,
    bound: i64,
    omega: bool,
    out: *mut *mut ProjgeoConfig,
) -> ProjgeoStatus {
    guard(|| {
        TrialConfig::new(seed, 1, bound, omega).map_err(verify_status)?;
        let ql = generate_qlpair(&mut trial_rng(seed, "", 0), bound, omega).map_err(verify_status)?;
        put_config(out, ConfigDocument::from_qlpair(&ql))?;
        Ok(ProjgeoStatus::Ok)
    })
}

/// Parses and validates a JSON configuration document.
///
/// # Safety
/// `json` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn projgeo_config_from_json(
    json: *const c_char,
    out: *mut *mut ProjgeoConfig,
) -> ProjgeoStatus {
    guard(|| {
        let doc = ConfigDocument::from_json(text(json, "json")?).map_err(invalid_config)?;
        put_config(out, doc)?;
        Ok(ProjgeoStatus::Ok)
    })
}

/// Serializes a configuration; free the result with `projgeo_string_free`.
///
/// # Safety
/// `cfg` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn projgeo_config_to_json(
    cfg: *const ProjgeoConfig,
    out: *mut *mut c_char,
) -> ProjgeoStatus {
    guard(|| {
        put_string(out, config(cfg)?.doc.to_json())?;
        Ok(ProjgeoStatus::Ok)
    })
}

/// A new handle carrying every derived object for all six vertex pairs
/// and the given index selection (null means "1234").
///
/// # Safety
/// `cfg` must be a live handle, `selection` null or a nul-terminated
/// string, and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn projgeo_config_construct(
    cfg: *const ProjgeoConfig,
    selection: *const c_char,
    out: *mut *mut ProjgeoConfig,
) -> ProjgeoStatus {
    guard(|| {
        let cfg = config(cfg)?;
        let sel = parse_selection(optional_text(selection, "selection")?.unwrap_or("1234")).map_err(invalid_argument)?;
        let doc = cfg.doc.construct(&PAIRS, sel).map_err(invalid_config)?;
        put_config(out, doc)?;
        Ok(ProjgeoStatus::Ok)
    })
}

/// Runs one check (or all of them when `check` is null) and writes the
/// reports as JSON lines. Returns `CheckFailed` with the reports set when
/// any check fails.
///
/// # Safety
/// `check` must be null or a nul-terminated string; `report` a valid
/// pointer.
#[no_mangle]
pub unsafe extern "C" fn projgeo_verify(
    seed: u64,
    trials: u64,
    bound: i64,
    omega: bool,
    check: *const c_char,
    report: *mut *mut c_char,
) -> ProjgeoStatus {
    guard(|| {
        let cfg = TrialConfig::new(seed, trials, bound, omega).map_err(verify_status)?;
        let ids: Vec<String> = match optional_text(check, "check")? {
            Some(id) => vec![id.to_string()],
            None => check_ids().into_iter().map(String::from).collect(),
        };
        let mut lines = String::new();
        let mut failed = 0;
        for id in &ids {
            let r = run_check(id, &cfg).map_err(verify_status)?;
            if !r.passed {
                failed += 1;
            }
            lines.push_str(&r.to_json_line());
        }
        put_string(report, lines)?;
        if failed == 0 {
            Ok(ProjgeoStatus::Ok)
        } else {
            Err((ProjgeoStatus::CheckFailed, format!("{failed} checks failed")))
        }
    })
}

/// Parses and evaluates a construction script, writing its diagnostics.
/// Returns `CheckFailed` when an assertion fails and `ScriptError` when the
/// script does not parse or a construction fails.
///
/// # Safety
/// `source` must be a nul-terminated string; `diagnostics` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn projgeo_run_script(
    source: *const c_char,
    diagnostics: *mut *mut c_char,
) -> ProjgeoStatus {
    guard(|| {
        let script = parse(text(source, "source")?).map_err(|e| (ProjgeoStatus::ScriptError, e.to_string()))?;
        let eval = evaluate(&script);
        put_string(diagnostics, format_diagnostics(&eval))?;
        if let Some(e) = eval.error {
            return Err((ProjgeoStatus::ScriptError, e.to_string()));
        }
        if eval.all_passed() {
            Ok(ProjgeoStatus::Ok)
        } else {
            Err((ProjgeoStatus::CheckFailed, "assertion failed".into()))
        }
    })
}

/// Renders a figure preset (`quartets`, `theorem6`, `curves`, `prop4`,
/// `ninepoint`) with the default viewport.
///
/// # Safety
/// `cfg` must be a live handle, `preset` a nul-terminated string,
/// `selection` null or a nul-terminated string, and `svg` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn projgeo_render_svg(
    cfg: *const ProjgeoConfig,
    preset: *const c_char,
    selection: *const c_char,
    svg: *mut *mut c_char,
) -> ProjgeoStatus {
    guard(|| {
        let cfg = config(cfg)?;
        let preset: Preset = text(preset, "preset")?.parse().map_err(invalid_argument)?;
        let sel = parse_selection(optional_text(selection, "selection")?.unwrap_or("1234")).map_err(invalid_argument)?;
        let ql = cfg.doc.qlpair().map_err(invalid_config)?;
        let out = render_svg(&ql, preset, sel, None).map_err(|e| match e {
            projgeo::render::RenderError::EmptyViewport => (ProjgeoStatus::EmptyViewport, e.to_string()),
            other => invalid_config(other),
        })?;
        put_string(svg, out)?;
        Ok(ProjgeoStatus::Ok)
    })
}
