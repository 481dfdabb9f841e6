use serde::{Deserialize, Serialize};

use super::curve::{ImplicitCurve, IRREDUCIBILITY_CAVEAT};
use super::implicit::{distance_degree_implicit, partial_degree_implicit};
use super::parametric::{partial_degree_parametric_a, partial_degree_parametric_b, RationalParametrization};
use super::{Axis, FormulaError, FormulaOptions};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Implicit,
    Parametric,
}

/// Intermediate data of one formula evaluation.
///
/// For the implicit formulae the degrees are measured in `{y1, y2}`; for the
/// parametric ones in `t` (full auxiliary degree and content degree).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FormulaDiagnostics {
    pub formula: String,
    pub resultant_degree: i64,
    pub content_degree: i64,
    pub ms: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DegreeReport {
    pub delta1: u32,
    pub delta2: u32,
    /// Only available for implicit input.
    pub delta_d: Option<u32>,
    pub method: Method,
    /// Parametric input only: `(delta1, delta2)` from the closed form (B),
    /// while `delta1`, `delta2` come from the auxiliary polynomial (A).
    pub closed_form: Option<(u32, u32)>,
    pub diagnostics: Vec<FormulaDiagnostics>,
    pub notes: Vec<String>,
}

impl DegreeReport {
    /// Half of the distance degree.
    pub fn mu(&self) -> Option<u32> {
        self.delta_d.map(|d| d / 2)
    }

    /// Whether both parametric formulae agree; `None` for implicit input.
    pub fn agreement(&self) -> Option<bool> {
        self.closed_form.map(|b| b == (self.delta1, self.delta2))
    }

    pub fn total_ms(&self) -> f64 {
        self.diagnostics.iter().map(|d| d.ms).sum()
    }
}

pub enum CurveInput<'a> {
    Implicit(&'a ImplicitCurve),
    Parametric(&'a RationalParametrization),
}

pub fn degree_report(input: CurveInput<'_>, opts: &FormulaOptions) -> Result<DegreeReport, FormulaError> {
    match input {
        CurveInput::Implicit(c) => {
            let (delta1, d1) = partial_degree_implicit(c, Axis::X1, opts)?;
            let (delta2, d2) = partial_degree_implicit(c, Axis::X2, opts)?;
            let (delta_d, dd) = distance_degree_implicit(c, opts)?;
            if delta_d % 2 != 0 {
                return Err(FormulaError::Internal(format!("odd distance degree {delta_d}")));
            }
            Ok(DegreeReport {
                delta1,
                delta2,
                delta_d: Some(delta_d),
                method: Method::Implicit,
                closed_form: None,
                diagnostics: vec![d1, d2, dd],
                notes: vec![IRREDUCIBILITY_CAVEAT.to_string()],
            })
        }
        CurveInput::Parametric(p) => {
            let mut diagnostics = Vec::new();
            let mut a_vals = [0u32; 2];
            let mut b_vals = [0u32; 2];
            for (slot, axis) in [Axis::X1, Axis::X2].into_iter().enumerate() {
                let (a, da) = partial_degree_parametric_a(p, axis)?;
                let (b, db) = partial_degree_parametric_b(p, axis)?;
                a_vals[slot] = a;
                b_vals[slot] = b;
                diagnostics.push(da);
                diagnostics.push(db);
            }
            Ok(DegreeReport {
                delta1: a_vals[0],
                delta2: a_vals[1],
                delta_d: None,
                method: Method::Parametric,
                closed_form: Some((b_vals[0], b_vals[1])),
                diagnostics,
                notes: vec![
                    "distance degree is only available for implicit input".to_string(),
                    "properness of the parametrization is assumed, not verified".to_string(),
                ],
            })
        }
    }
}
