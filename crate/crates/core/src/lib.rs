//! Degrees of generic offset curves.
//!
//! Given a plane algebraic curve, either implicitly as `f(y1, y2) = 0` or as
//! a rational parametrization, this crate computes the partial degrees in
//! `x1` and `x2` and the degree in the distance `d` of the generic offset
//! equation `g(x1, x2, d)` without ever computing `g`. The degrees come out
//! of resultants, primitive parts and gcds of small auxiliary polynomials.
//!
//! An elimination-based [`oracle`] that does build `g` for small curves is
//! included for cross-checking.

pub mod cli;
pub mod corpus;
pub mod error;
pub mod formulas;
pub mod oracle;
pub mod parser;
pub mod poly;

pub use error::{Error, ExitCategory};
pub use formulas::{DegreeReport, ImplicitCurve, Method, RationalParametrization};
pub use poly::{Poly, Universe, VarId, VarSet};
