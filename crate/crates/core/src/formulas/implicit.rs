use std::time::Instant;

use crate::poly::{content_pp, resultant_with, sets, Poly, PolyError, Universe, VarId, VarSet};

use super::curve::ImplicitCurve;
use super::report::FormulaDiagnostics;
use super::{Axis, FormulaError, FormulaOptions};

/// `S = (F1^2 + F2^2)(y2 - k*y3)^2 - F2^2 * y3^2 * d^2`, homogeneous of
/// degree `2n` in `{y1, y2, y3}`.
pub fn build_auxiliary_s(c: &ImplicitCurve) -> Result<Poly, FormulaError> {
    let y2 = Poly::var(VarId::Y2);
    let y3 = Poly::var(VarId::Y3);
    let k = Poly::var(VarId::K);
    let d = Poly::var(VarId::D);
    let f1sq = c.big_f1().square();
    let f2sq = c.big_f2().square();
    let line = &y2 - &(&k * &y3);
    let s = &(&(&f1sq + &f2sq) * &line.square()) - &(&f2sq * &(&y3.square() * &d.square()));
    if s.degree(VarId::Y3) < 1 {
        return Err(FormulaError::DegenerateAuxiliary("S"));
    }
    Ok(s)
}

/// `N = -F2 (x1*y3 - y1) + F1 (x2*y3 - y2)`, the homogenized normal-line
/// polynomial; linear in `{x1, x2}`.
pub fn build_normal_n(c: &ImplicitCurve) -> Result<Poly, FormulaError> {
    let (y1, y2, y3) = (Poly::var(VarId::Y1), Poly::var(VarId::Y2), Poly::var(VarId::Y3));
    let (x1, x2) = (Poly::var(VarId::X1), Poly::var(VarId::X2));
    let a = &(&x1 * &y3) - &y1;
    let b = &(&x2 * &y3) - &y2;
    let n = &(c.big_f1() * &b) - &(c.big_f2() * &a);
    if n.degree(VarId::Y3) < 1 {
        return Err(FormulaError::DegenerateAuxiliary("N"));
    }
    Ok(n)
}

/// Degree in `{y1, y2}` of `Res_y3(p, q)` for forms `p`, `q` in
/// `{y1, y2, y3}`: `m*b + a*s - a*b` where `m`, `s` are the total degrees
/// and `a`, `b` the `y3`-degrees.
pub fn resultant_homogeneity_degree(p: &Poly, q: &Poly) -> i64 {
    let m = p.degree_in(sets::y123());
    let s = q.degree_in(sets::y123());
    let a = p.degree(VarId::Y3);
    let b = q.degree(VarId::Y3);
    m * b + a * s - a * b
}

struct Reduced {
    degree: i64,
    diag: FormulaDiagnostics,
}

fn reduce(
    name: &str,
    big_f: &Poly,
    aux: &Poly,
    strip: VarSet,
    opts: &FormulaOptions,
    context: &'static str,
) -> Result<Reduced, FormulaError> {
    let start = Instant::now();
    let r = resultant_with(big_f, aux, VarId::Y3, opts.resultant).map_err(|e| match e {
        PolyError::DegenerateResultant => FormulaError::DegenerateResultant {
            context,
            detail: "an input does not depend on y3".into(),
        },
        other => FormulaError::Internal(other.to_string()),
    })?;
    if r.is_zero() {
        return Err(FormulaError::DegenerateResultant {
            context,
            detail: "resultant vanishes identically (common component)".into(),
        });
    }
    let expected = resultant_homogeneity_degree(big_f, aux);
    if !r.is_homogeneous_in(sets::y12()) || r.degree_in(sets::y12()) != expected {
        return Err(FormulaError::Internal(format!(
            "{context}: resultant is not homogeneous of degree {expected} in y1, y2"
        )));
    }
    let (content, pp) = content_pp(&r, strip);
    let degree = pp.degree_in(sets::y12());
    Ok(Reduced {
        degree,
        diag: FormulaDiagnostics {
            formula: name.to_string(),
            resultant_degree: r.degree_in(sets::y12()),
            content_degree: content.degree_in(sets::y12()),
            ms: start.elapsed().as_secs_f64() * 1e3,
        },
    })
}

/// Partial degree of the generic offset in `x1` (or `x2`, through the
/// exchange `y1 <-> y2`).
pub fn partial_degree_implicit(
    c: &ImplicitCurve,
    axis: Axis,
    opts: &FormulaOptions,
) -> Result<(u32, FormulaDiagnostics), FormulaError> {
    match axis {
        Axis::X1 => {
            let s = build_auxiliary_s(c)?;
            let red = reduce("delta1", c.big_f(), &s, sets::dk(), opts, "Res_y3(F, S)")?;
            Ok((red.degree as u32, red.diag))
        }
        Axis::X2 => {
            let swapped = c.swapped(&Universe::new())?;
            let (deg, mut diag) = partial_degree_implicit(&swapped, Axis::X1, opts)?;
            diag.formula = "delta2".into();
            Ok((deg, diag))
        }
    }
}

/// Degree of the generic offset in the distance variable; always even.
pub fn distance_degree_implicit(
    c: &ImplicitCurve,
    opts: &FormulaOptions,
) -> Result<(u32, FormulaDiagnostics), FormulaError> {
    let n = build_normal_n(c)?;
    let red = reduce("delta_d", c.big_f(), &n, sets::x12(), opts, "Res_y3(F, N)")?;
    let delta_d = 2 * red.degree as u32;
    debug_assert!(delta_d.is_multiple_of(2));
    Ok((delta_d, red.diag))
}
