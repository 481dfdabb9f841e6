//! C ABI for `offdeg`.
//!
//! Curves live behind opaque handles created by `*_new` and released by
//! `*_free`. Every fallible call returns an [`OffdegStatus`]; on failure the
//! message is available from [`offdeg_last_error`] on the same thread until
//! the next call. Strings returned by the library must be released with
//! [`offdeg_string_free`].
//!
//! Parameter lists are strings of `NAME=RAT` pairs separated by commas or
//! semicolons, e.g. `"a=2, b=3/2"`. NULL or an empty string means none.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use offdeg::cli::{parse_inputs, JsonRecord};
use offdeg::formulas::{degree_report, CurveInput, DegreeReport, FormulaOptions};
use offdeg::parser::ExprRole;
use offdeg::poly::ResultantMethod;
use offdeg::{Error, ExitCategory, ImplicitCurve, RationalParametrization};

/// Result codes; 0 to 4 match the command-line exit codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OffdegStatus {
    Ok = 0,
    Internal = 1,
    Validation = 2,
    Degeneracy = 3,
    CostGuard = 4,
    NullArgument = 5,
    InvalidUtf8 = 6,
}

impl From<ExitCategory> for OffdegStatus {
    fn from(c: ExitCategory) -> Self {
        match c {
            ExitCategory::Success => OffdegStatus::Ok,
            ExitCategory::Internal => OffdegStatus::Internal,
            ExitCategory::Validation => OffdegStatus::Validation,
            ExitCategory::Degeneracy => OffdegStatus::Degeneracy,
            ExitCategory::CostGuard => OffdegStatus::CostGuard,
        }
    }
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OffdegResultant {
    Subresultant = 0,
    Bareiss = 1,
    Interpolation = 2,
}

impl From<OffdegResultant> for ResultantMethod {
    fn from(r: OffdegResultant) -> Self {
        match r {
            OffdegResultant::Subresultant => ResultantMethod::Subresultant,
            OffdegResultant::Bareiss => ResultantMethod::Bareiss,
            OffdegResultant::Interpolation => ResultantMethod::Interpolation,
        }
    }
}

/// Degrees of the generic offset. `delta_d` is meaningful only when
/// `has_delta_d` is set; the closed-form pair only for parametric input.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct OffdegDegrees {
    pub delta1: u32,
    pub delta2: u32,
    pub has_delta_d: bool,
    pub delta_d: u32,
    pub has_closed_form: bool,
    pub closed_form_delta1: u32,
    pub closed_form_delta2: u32,
}

impl From<&DegreeReport> for OffdegDegrees {
    fn from(r: &DegreeReport) -> Self {
        OffdegDegrees {
            delta1: r.delta1,
            delta2: r.delta2,
            has_delta_d: r.delta_d.is_some(),
            delta_d: r.delta_d.unwrap_or(0),
            has_closed_form: r.closed_form.is_some(),
            closed_form_delta1: r.closed_form.map_or(0, |c| c.0),
            closed_form_delta2: r.closed_form.map_or(0, |c| c.1),
        }
    }
}

/// An implicit curve `f(y1, y2) = 0`.
pub struct OffdegCurve {
    curve: ImplicitCurve,
    source: String,
}

/// A rational parametrization `(X/W, Y/W)` in `t`.
pub struct OffdegParametrization {
    param: RationalParametrization,
    source: String,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: &str) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

struct Failure(OffdegStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(e.category().into(), e.to_string())
    }
}

fn guarded(body: impl FnOnce() -> Result<(), Failure>) -> OffdegStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => OffdegStatus::Ok,
        Ok(Err(Failure(status, message))) => {
            set_error(&message);
            status
        }
        Err(_) => {
            set_error("internal panic");
            OffdegStatus::Internal
        }
    }
}

unsafe fn required_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(OffdegStatus::NullArgument, format!("{what} is NULL")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(OffdegStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

unsafe fn param_list(p: *const c_char) -> Result<Vec<String>, Failure> {
    if p.is_null() {
        return Ok(Vec::new());
    }
    Ok(required_str(p, "params")?
        .split([',', ';'])
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(String::from)
        .collect())
}

fn non_null<T>(p: *mut T, what: &str) -> Result<*mut T, Failure> {
    if p.is_null() {
        Err(Failure(OffdegStatus::NullArgument, format!("{what} is NULL")))
    } else {
        Ok(p)
    }
}

fn report_json(name: &str, report: &DegreeReport) -> Result<CString, Failure> {
    let rec = JsonRecord::from_report(name, report, true);
    let text = serde_json::to_string(&rec).map_err(|e| Failure(OffdegStatus::Internal, e.to_string()))?;
    CString::new(text).map_err(|e| Failure(OffdegStatus::Internal, e.to_string()))
}

/// Message of the last failed call on this thread, or NULL. The pointer
/// stays valid until the next library call on the same thread.
#[no_mangle]
pub extern "C" fn offdeg_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn offdeg_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `s` must be NULL or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn offdeg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses and validates an implicit curve. With `symbolic` set the
/// parameter values are ignored and parameters stay symbolic.
///
/// # Safety
/// `poly` and `params` must be NULL or NUL-terminated strings; `out` must be
/// NULL or point to writable storage for a handle.
#[no_mangle]
pub unsafe extern "C" fn offdeg_curve_new(
    poly: *const c_char,
    params: *const c_char,
    symbolic: bool,
    out: *mut *mut OffdegCurve,
) -> OffdegStatus {
    guarded(|| {
        let out = non_null(out, "out")?;
        *out = ptr::null_mut();
        let src = required_str(poly, "poly")?;
        let params = param_list(params)?;
        let (mut fs, universe) = parse_inputs(&[(src, ExprRole::ImplicitCurve)], &params, symbolic)?;
        let curve = ImplicitCurve::validate(fs.remove(0), &universe).map_err(Error::from)?;
        *out = Box::into_raw(Box::new(OffdegCurve {
            curve,
            source: src.to_string(),
        }));
        Ok(())
    })
}

/// # Safety
/// `curve` must be NULL or a handle from [`offdeg_curve_new`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn offdeg_curve_free(curve: *mut OffdegCurve) {
    if !curve.is_null() {
        drop(Box::from_raw(curve));
    }
}

/// Total degree of the curve equation.
///
/// # Safety
/// `curve` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn offdeg_curve_degree(curve: *const OffdegCurve, out: *mut u32) -> OffdegStatus {
    guarded(|| {
        let c = curve
            .as_ref()
            .ok_or_else(|| Failure(OffdegStatus::NullArgument, "curve is NULL".into()))?;
        *non_null(out, "out")? = c.curve.degree();
        Ok(())
    })
}

/// Computes `delta1`, `delta2` and `delta_d`.
///
/// # Safety
/// `curve` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn offdeg_curve_degrees(
    curve: *const OffdegCurve,
    method: OffdegResultant,
    out: *mut OffdegDegrees,
) -> OffdegStatus {
    guarded(|| {
        let out = non_null(out, "out")?;
        let c = curve
            .as_ref()
            .ok_or_else(|| Failure(OffdegStatus::NullArgument, "curve is NULL".into()))?;
        let report = implicit(c, method)?;
        *out = OffdegDegrees::from(&report);
        Ok(())
    })
}

/// Full report as a JSON record; release it with [`offdeg_string_free`].
///
/// # Safety
/// `curve` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn offdeg_curve_report_json(
    curve: *const OffdegCurve,
    method: OffdegResultant,
    out: *mut *mut c_char,
) -> OffdegStatus {
    guarded(|| {
        let out = non_null(out, "out")?;
        *out = ptr::null_mut();
        let c = curve
            .as_ref()
            .ok_or_else(|| Failure(OffdegStatus::NullArgument, "curve is NULL".into()))?;
        let report = implicit(c, method)?;
        *out = report_json(&c.source, &report)?.into_raw();
        Ok(())
    })
}

fn implicit(c: &OffdegCurve, method: OffdegResultant) -> Result<DegreeReport, Failure> {
    let opts = FormulaOptions {
        resultant: method.into(),
    };
    Ok(degree_report(CurveInput::Implicit(&c.curve), &opts).map_err(Error::from)?)
}

fn parametric(p: &OffdegParametrization, method: OffdegResultant) -> Result<DegreeReport, Failure> {
    let opts = FormulaOptions {
        resultant: method.into(),
    };
    Ok(degree_report(CurveInput::Parametric(&p.param), &opts).map_err(Error::from)?)
}

/// Parses and validates the parametrization `(x/w, y/w)`. `w` may be NULL
/// for a polynomial parametrization. With `reduce` set a common factor of
/// the three polynomials is divided out instead of being rejected.
///
/// # Safety
/// String arguments must be NULL or NUL-terminated; `out` must be NULL or
/// writable.
#[no_mangle]
pub unsafe extern "C" fn offdeg_parametrization_new(
    x: *const c_char,
    y: *const c_char,
    w: *const c_char,
    params: *const c_char,
    symbolic: bool,
    reduce: bool,
    out: *mut *mut OffdegParametrization,
) -> OffdegStatus {
    guarded(|| {
        let out = non_null(out, "out")?;
        *out = ptr::null_mut();
        let xs = required_str(x, "x")?;
        let ys = required_str(y, "y")?;
        let ws = if w.is_null() { "1" } else { required_str(w, "w")? };
        let params = param_list(params)?;
        let (mut ps, universe) = parse_inputs(
            &[
                (xs, ExprRole::ParamNumeratorX),
                (ys, ExprRole::ParamNumeratorY),
                (ws, ExprRole::ParamDenominator),
            ],
            &params,
            symbolic,
        )?;
        let (wp, yp, xp) = (ps.pop().unwrap(), ps.pop().unwrap(), ps.pop().unwrap());
        let param = RationalParametrization::new(xp, yp, wp, reduce, &universe).map_err(Error::from)?;
        *out = Box::into_raw(Box::new(OffdegParametrization {
            param,
            source: format!("({xs}, {ys}, {ws})"),
        }));
        Ok(())
    })
}

/// # Safety
/// `p` must be NULL or a handle from [`offdeg_parametrization_new`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn offdeg_parametrization_free(p: *mut OffdegParametrization) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Computes `delta1`, `delta2` by the resultant formula and, in the
/// closed-form fields, by the second formula. A disagreement is reported
/// through the fields, not the status.
///
/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn offdeg_parametrization_degrees(
    p: *const OffdegParametrization,
    method: OffdegResultant,
    out: *mut OffdegDegrees,
) -> OffdegStatus {
    guarded(|| {
        let out = non_null(out, "out")?;
        let p = p
            .as_ref()
            .ok_or_else(|| Failure(OffdegStatus::NullArgument, "parametrization is NULL".into()))?;
        *out = OffdegDegrees::from(&parametric(p, method)?);
        Ok(())
    })
}

/// Full report as a JSON record; release it with [`offdeg_string_free`].
///
/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn offdeg_parametrization_report_json(
    p: *const OffdegParametrization,
    method: OffdegResultant,
    out: *mut *mut c_char,
) -> OffdegStatus {
    guarded(|| {
        let out = non_null(out, "out")?;
        *out = ptr::null_mut();
        let p = p
            .as_ref()
            .ok_or_else(|| Failure(OffdegStatus::NullArgument, "parametrization is NULL".into()))?;
        let report = parametric(p, method)?;
        *out = report_json(&p.source, &report)?.into_raw();
        Ok(())
    })
}
