//! Degree formulae for the generic offset equation.
//!
//! * [`partial_degree_implicit`]: degree in `x1` (or `x2`) from the
//!   primitive part, w.r.t. `{d, k}`, of `Res_y3(F, S)`.
//! * [`distance_degree_implicit`]: degree in `d` from the primitive part,
//!   w.r.t. `{x1, x2}`, of `Res_y3(F, N)`.
//! * [`partial_degree_parametric_a`] / [`partial_degree_parametric_b`]: the
//!   two parametric variants (primitive part of a univariate auxiliary
//!   polynomial, and its closed form through a gcd).
//!
//! None of these builds the offset itself.

mod curve;
mod implicit;
mod parametric;
mod report;

pub use curve::{ImplicitCurve, IRREDUCIBILITY_CAVEAT};
pub use implicit::{
    build_auxiliary_s, build_normal_n, distance_degree_implicit, partial_degree_implicit,
    resultant_homogeneity_degree,
};
pub use parametric::{
    build_s_hat, partial_degree_parametric_a, partial_degree_parametric_b, theta,
    RationalParametrization,
};
pub use report::{degree_report, CurveInput, DegreeReport, FormulaDiagnostics, Method};

use crate::error::ExitCategory;
use crate::poly::ResultantMethod;

/// Offset coordinate whose partial degree is requested.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axis {
    X1,
    X2,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct FormulaOptions {
    pub resultant: ResultantMethod,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormulaError {
    #[error("curve is a line (degree {0} < 2)")]
    IsLine(i64),
    #[error("curve equation is not squarefree (repeated factor {0})")]
    NotSquarefree(String),
    #[error("curve equation divides f1^2 + f2^2 (every point is isotropic)")]
    IsotropicDivisor,
    #[error("both partial derivatives vanish identically")]
    ZeroGradient,
    #[error("unexpected variable `{0}` in input")]
    UnexpectedVariable(String),
    #[error("parametrization components share the common factor {0}")]
    CommonFactor(String),
    #[error("parametrization denominator is zero")]
    ZeroDenominator,
    #[error("auxiliary polynomial {0} does not depend on y3")]
    DegenerateAuxiliary(&'static str),
    #[error("resultant precondition failed in {context}: {detail}")]
    DegenerateResultant { context: &'static str, detail: String },
    #[error("degenerate parametrization: {0}")]
    DegenerateParametrization(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

impl FormulaError {
    pub fn category(&self) -> ExitCategory {
        use FormulaError::*;
        match self {
            IsLine(_) | NotSquarefree(_) | IsotropicDivisor | ZeroGradient | UnexpectedVariable(_)
            | CommonFactor(_) | ZeroDenominator => ExitCategory::Validation,
            DegenerateAuxiliary(_) | DegenerateResultant { .. } | DegenerateParametrization(_) => {
                ExitCategory::Degeneracy
            }
            Internal(_) => ExitCategory::Internal,
        }
    }
}
