use std::ffi::{CStr, CString};
use std::ptr;

use offdeg_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    let p = offdeg_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string()
}

fn implicit(poly: &str, params: Option<&str>) -> Result<*mut OffdegCurve, OffdegStatus> {
    let poly = c(poly);
    let params = params.map(c);
    let mut out = ptr::null_mut();
    let status = unsafe {
        offdeg_curve_new(
            poly.as_ptr(),
            params.as_ref().map_or(ptr::null(), |p| p.as_ptr()),
            false,
            &mut out,
        )
    };
    if status == OffdegStatus::Ok {
        Ok(out)
    } else {
        assert!(out.is_null());
        Err(status)
    }
}

#[test]
fn circle_degrees() {
    let h = implicit("y1^2+y2^2-r^2", Some("r=5")).unwrap();
    let mut deg = OffdegDegrees::default();
    let mut n = 0;
    unsafe {
        assert_eq!(offdeg_curve_degree(h, &mut n), OffdegStatus::Ok);
        for m in [
            OffdegResultant::Subresultant,
            OffdegResultant::Bareiss,
            OffdegResultant::Interpolation,
        ] {
            assert_eq!(offdeg_curve_degrees(h, m, &mut deg), OffdegStatus::Ok);
            assert_eq!((deg.delta1, deg.delta2, deg.has_delta_d, deg.delta_d), (4, 4, true, 4));
            assert!(!deg.has_closed_form);
        }
        offdeg_curve_free(h);
    }
    assert_eq!(n, 2);
    assert!(offdeg_last_error().is_null());
}

#[test]
fn parabola_json_report() {
    let h = implicit("y2+a+b*y1+c*y1^2", Some("a=1; b=2, c=1")).unwrap();
    let mut s = ptr::null_mut();
    unsafe {
        assert_eq!(
            offdeg_curve_report_json(h, OffdegResultant::Subresultant, &mut s),
            OffdegStatus::Ok
        );
        let v: serde_json::Value = serde_json::from_str(CStr::from_ptr(s).to_str().unwrap()).unwrap();
        assert_eq!(v["schema"], 1);
        assert_eq!(v["delta1"], 6);
        assert_eq!(v["delta2"], 4);
        assert_eq!(v["delta_d"], 6);
        assert_eq!(v["method"], "implicit");
        offdeg_string_free(s);
        offdeg_curve_free(h);
    }
}

#[test]
fn cusp_parametrization_agrees_with_closed_form() {
    let (x, y) = (c("t^2"), c("t^3"));
    let mut h = ptr::null_mut();
    let mut deg = OffdegDegrees::default();
    unsafe {
        let st = offdeg_parametrization_new(x.as_ptr(), y.as_ptr(), ptr::null(), ptr::null(), false, false, &mut h);
        assert_eq!(st, OffdegStatus::Ok);
        assert_eq!(
            offdeg_parametrization_degrees(h, OffdegResultant::Subresultant, &mut deg),
            OffdegStatus::Ok
        );
        let mut s = ptr::null_mut();
        assert_eq!(
            offdeg_parametrization_report_json(h, OffdegResultant::Bareiss, &mut s),
            OffdegStatus::Ok
        );
        let v: serde_json::Value = serde_json::from_str(CStr::from_ptr(s).to_str().unwrap()).unwrap();
        assert_eq!(v["agreement"], true);
        offdeg_string_free(s);
        offdeg_parametrization_free(h);
    }
    assert_eq!((deg.delta1, deg.delta2, deg.has_delta_d), (8, 6, false));
    assert!(deg.has_closed_form);
    assert_eq!((deg.closed_form_delta1, deg.closed_form_delta2), (8, 6));
}

#[test]
fn common_factor_needs_reduce() {
    let (x, y, w) = (c("t^3"), c("t^4"), c("t"));
    let mut h = ptr::null_mut();
    unsafe {
        let st = offdeg_parametrization_new(x.as_ptr(), y.as_ptr(), w.as_ptr(), ptr::null(), false, false, &mut h);
        assert_eq!(st, OffdegStatus::Validation);
        assert!(h.is_null());
        assert!(!last_error().is_empty());
        let st = offdeg_parametrization_new(x.as_ptr(), y.as_ptr(), w.as_ptr(), ptr::null(), false, true, &mut h);
        assert_eq!(st, OffdegStatus::Ok);
        let mut deg = OffdegDegrees::default();
        assert_eq!(
            offdeg_parametrization_degrees(h, OffdegResultant::Subresultant, &mut deg),
            OffdegStatus::Ok
        );
        assert_eq!((deg.delta1, deg.delta2), (8, 6));
        offdeg_parametrization_free(h);
    }
}

#[test]
fn error_codes() {
    assert_eq!(implicit("y1^2+", None).unwrap_err(), OffdegStatus::Validation);
    assert!(last_error().contains("parse error"));
    assert_eq!(implicit("y1^2+y2^2-r^2", Some("q=1")).unwrap_err(), OffdegStatus::Validation);
    assert_eq!(implicit("y1^2+y2^2-1", Some("r")).unwrap_err(), OffdegStatus::Validation);
    assert_eq!(implicit("(y1+y2)^2", None).unwrap_err(), OffdegStatus::Validation);
    unsafe {
        let mut out = ptr::null_mut();
        assert_eq!(offdeg_curve_new(ptr::null(), ptr::null(), false, &mut out), OffdegStatus::NullArgument);
        let p = c("y1-y2^2");
        assert_eq!(offdeg_curve_new(p.as_ptr(), ptr::null(), false, ptr::null_mut()), OffdegStatus::NullArgument);
        let bad = [0xffu8, 0];
        assert_eq!(
            offdeg_curve_new(bad.as_ptr().cast(), ptr::null(), false, &mut out),
            OffdegStatus::InvalidUtf8
        );
        let mut deg = OffdegDegrees::default();
        assert_eq!(
            offdeg_curve_degrees(ptr::null(), OffdegResultant::Subresultant, &mut deg),
            OffdegStatus::NullArgument
        );
        offdeg_curve_free(ptr::null_mut());
        offdeg_parametrization_free(ptr::null_mut());
        offdeg_string_free(ptr::null_mut());
    }
}

#[test]
fn version_is_package_version() {
    let v = unsafe { CStr::from_ptr(offdeg_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_declares_the_api() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/offdeg.h")).unwrap();
    for name in [
        "offdeg_last_error",
        "offdeg_version",
        "offdeg_string_free",
        "offdeg_curve_new",
        "offdeg_curve_free",
        "offdeg_curve_degree",
        "offdeg_curve_degrees",
        "offdeg_curve_report_json",
        "offdeg_parametrization_new",
        "offdeg_parametrization_free",
        "offdeg_parametrization_degrees",
        "offdeg_parametrization_report_json",
        "typedef struct OffdegCurve OffdegCurve;",
        "OFFDEG_STATUS_COST_GUARD = 4",
    ] {
        assert!(header.contains(name), "{name} missing from header");
    }
}
