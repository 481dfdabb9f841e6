//! Fixture format for tables of known offset degrees, and the runner that
//! recomputes them.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;
use std::time::Instant;

use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, ExitCategory};
use crate::formulas::{degree_report, CurveInput, DegreeReport, FormulaOptions, ImplicitCurve, RationalParametrization};
use crate::parser::{bind_parameters, parse_in_role, parse_rational, ExprRole};
use crate::poly::Universe;

/// The offset degree table shipped with the crate.
pub const DEGREE_TABLE: &str = include_str!("../fixtures/degree_table.json");
/// Location of [`DEGREE_TABLE`] relative to the repository root.
pub const DEGREE_TABLE_PATH: &str = "crates/core/fixtures/degree_table.json";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamSource {
    pub x: String,
    pub y: String,
    pub w: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expected {
    pub delta1: u32,
    pub delta2: u32,
    pub delta_d: u32,
    /// Carried for reference only; never computed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub total_degree: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusEntry {
    pub name: String,
    pub implicit: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub param: Option<ParamSource>,
    /// Parameter name to rational value (`"5"`, `"-3/2"`).
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub substitutions: BTreeMap<String, String>,
    pub expected: Expected,
    /// The source equation had to be corrected; mismatches are warnings.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub source_ambiguity: bool,
}

impl CorpusEntry {
    pub fn substitution_values(&self) -> Result<BTreeMap<String, BigRational>, Error> {
        self.substitutions
            .iter()
            .map(|(k, v)| Ok((k.clone(), parse_rational(v)?)))
            .collect()
    }
}

#[derive(Debug, thiserror::Error)]
pub enum FixtureError {
    #[error("cannot read fixture {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed fixture: {0}")]
    Json(#[from] serde_json::Error),
    #[error("fixture entry `{name}`: {message}")]
    Entry { name: String, message: String },
}

impl FixtureError {
    pub fn category(&self) -> ExitCategory {
        ExitCategory::Validation
    }
}

pub fn parse_fixture(text: &str) -> Result<Vec<CorpusEntry>, FixtureError> {
    let entries: Vec<CorpusEntry> = serde_json::from_str(text)?;
    let mut seen = BTreeSet::new();
    for e in &entries {
        let fail = |message: String| FixtureError::Entry {
            name: e.name.clone(),
            message,
        };
        if e.name.trim().is_empty() {
            return Err(fail("empty name".into()));
        }
        if !seen.insert(e.name.as_str()) {
            return Err(fail("duplicate name".into()));
        }
        if e.implicit.trim().is_empty() {
            return Err(fail("empty implicit equation".into()));
        }
        e.substitution_values().map_err(|err| fail(err.to_string()))?;
    }
    Ok(entries)
}

pub fn load_fixture(path: &Path) -> Result<Vec<CorpusEntry>, FixtureError> {
    let text = std::fs::read_to_string(path).map_err(|source| FixtureError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_fixture(&text)
}

pub fn degree_table() -> Vec<CorpusEntry> {
    parse_fixture(DEGREE_TABLE).expect("bundled fixture is valid")
}

/// Entries whose name contains `filter`, ignoring case.
pub fn select<'a>(entries: &'a [CorpusEntry], filter: Option<&str>) -> Vec<&'a CorpusEntry> {
    match filter {
        None => entries.iter().collect(),
        Some(f) => {
            let f = f.to_lowercase();
            entries.iter().filter(|e| e.name.to_lowercase().contains(&f)).collect()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    /// Mismatch on an entry whose source equation is ambiguous.
    Warn,
    Fail,
    Error,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub field: String,
    pub expected: u32,
    pub computed: u32,
}

impl Check {
    pub fn ok(&self) -> bool {
        self.expected == self.computed
    }
}

#[derive(Clone, Debug)]
pub struct RunRecord {
    pub name: String,
    pub report: Option<DegreeReport>,
    /// Parametric report when the entry supplies a parametrization.
    pub parametric: Option<DegreeReport>,
    pub checks: Vec<Check>,
    pub status: Status,
    pub error: Option<(ExitCategory, String)>,
    pub wall_ms: f64,
}

impl RunRecord {
    /// Pass or warn.
    pub fn accepted(&self) -> bool {
        matches!(self.status, Status::Pass | Status::Warn)
    }
}

#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    /// Keep parameters as ring variables instead of substituting.
    pub symbolic: bool,
    pub formula: FormulaOptions,
    /// Worker threads; `0` or `1` runs serially.
    pub parallel: usize,
}

/// Parses `src` in `role`, substituting parameters unless `values` is `None`.
fn instantiate(
    src: &str,
    role: ExprRole,
    universe: &mut Universe,
    values: Option<&BTreeMap<String, BigRational>>,
) -> Result<crate::poly::Poly, Error> {
    let p = parse_in_role(src, role, universe)?;
    Ok(match values {
        Some(v) => bind_parameters(&p, universe, v),
        None => p,
    })
}

/// The entry's implicit curve, with substitutions applied unless `symbolic`.
pub fn implicit_curve(entry: &CorpusEntry, symbolic: bool) -> Result<(ImplicitCurve, Universe), Error> {
    let values = entry.substitution_values()?;
    let mut universe = Universe::new();
    let f = instantiate(&entry.implicit, ExprRole::ImplicitCurve, &mut universe, (!symbolic).then_some(&values))?;
    let curve = ImplicitCurve::validate(f, &universe)?;
    Ok((curve, universe))
}

fn compute(entry: &CorpusEntry, opts: &RunOptions) -> Result<(DegreeReport, Option<DegreeReport>), Error> {
    let values = entry.substitution_values()?;
    let values = (!opts.symbolic).then_some(&values);
    let (curve, mut universe) = implicit_curve(entry, opts.symbolic)?;
    let report = degree_report(CurveInput::Implicit(&curve), &opts.formula)?;
    let parametric = match &entry.param {
        None => None,
        Some(ps) => {
            let x = instantiate(&ps.x, ExprRole::ParamNumeratorX, &mut universe, values)?;
            let y = instantiate(&ps.y, ExprRole::ParamNumeratorY, &mut universe, values)?;
            let w = instantiate(&ps.w, ExprRole::ParamDenominator, &mut universe, values)?;
            let p = RationalParametrization::new(x, y, w, false, &universe)?;
            Some(degree_report(CurveInput::Parametric(&p), &opts.formula)?)
        }
    };
    Ok((report, parametric))
}

pub fn run_entry(entry: &CorpusEntry, opts: &RunOptions) -> RunRecord {
    let start = Instant::now();
    let outcome = compute(entry, opts);
    let wall_ms = start.elapsed().as_secs_f64() * 1e3;
    let name = entry.name.clone();
    match outcome {
        Err(e) => RunRecord {
            name,
            report: None,
            parametric: None,
            checks: Vec::new(),
            status: Status::Error,
            error: Some((e.category(), e.to_string())),
            wall_ms,
        },
        Ok((report, parametric)) => {
            let ex = &entry.expected;
            let mut checks = vec![
                check("delta1", ex.delta1, report.delta1),
                check("delta2", ex.delta2, report.delta2),
            ];
            if let Some(dd) = report.delta_d {
                checks.push(check("delta_d", ex.delta_d, dd));
            }
            if let Some(p) = &parametric {
                checks.push(check("parametric_a_delta1", ex.delta1, p.delta1));
                checks.push(check("parametric_a_delta2", ex.delta2, p.delta2));
                if let Some((b1, b2)) = p.closed_form {
                    checks.push(check("parametric_b_delta1", ex.delta1, b1));
                    checks.push(check("parametric_b_delta2", ex.delta2, b2));
                }
            }
            let status = if checks.iter().all(Check::ok) {
                Status::Pass
            } else if entry.source_ambiguity {
                Status::Warn
            } else {
                Status::Fail
            };
            RunRecord {
                name,
                report: Some(report),
                parametric,
                checks,
                status,
                error: None,
                wall_ms,
            }
        }
    }
}

fn check(field: &str, expected: u32, computed: u32) -> Check {
    Check {
        field: field.to_string(),
        expected,
        computed,
    }
}

/// Runs every entry; records come back in input order whatever the
/// number of workers.
pub fn run_corpus(entries: &[&CorpusEntry], opts: &RunOptions) -> Vec<RunRecord> {
    if opts.parallel <= 1 {
        return entries.iter().map(|e| run_entry(e, opts)).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.parallel)
        .build()
        .expect("thread pool");
    pool.install(|| entries.par_iter().map(|e| run_entry(e, opts)).collect())
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub entries: usize,
    pub pass: usize,
    pub warn: usize,
    pub fail: usize,
    pub error: usize,
}

impl Summary {
    pub fn of(records: &[RunRecord]) -> Self {
        let mut s = Summary {
            entries: records.len(),
            ..Summary::default()
        };
        for r in records {
            match r.status {
                Status::Pass => s.pass += 1,
                Status::Warn => s.warn += 1,
                Status::Fail => s.fail += 1,
                Status::Error => s.error += 1,
            }
        }
        s
    }

    pub fn all_accepted(&self) -> bool {
        self.fail == 0 && self.error == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_fixture_parses() {
        let entries = degree_table();
        assert_eq!(entries.len(), 15);
        assert_eq!(entries.iter().filter(|e| e.source_ambiguity).count(), 2);
        assert_eq!(select(&entries, Some("lemniscate")).len(), 1);
        assert_eq!(select(&entries, Some("Hyperbola")).len(), 2);
    }

    #[test]
    fn empty_fixture() {
        assert!(parse_fixture("[]").unwrap().is_empty());
    }

    #[test]
    fn malformed_fixtures() {
        assert!(matches!(parse_fixture("{}"), Err(FixtureError::Json(_))));
        let dup = r#"[{"name":"a","implicit":"y1^2+y2^2-1","expected":{"delta1":4,"delta2":4,"delta_d":4}},
                      {"name":"a","implicit":"y1^2+y2^2-1","expected":{"delta1":4,"delta2":4,"delta_d":4}}]"#;
        assert!(matches!(parse_fixture(dup), Err(FixtureError::Entry { .. })));
        let bad_sub = r#"[{"name":"a","implicit":"y1^2+y2^2-r","substitutions":{"r":"x"},
                          "expected":{"delta1":4,"delta2":4,"delta_d":4}}]"#;
        assert!(matches!(parse_fixture(bad_sub), Err(FixtureError::Entry { .. })));
        let extra = r#"[{"name":"a","implicit":"y1","expected":{"delta1":4,"delta2":4,"delta_d":4},"bogus":1}]"#;
        assert!(matches!(parse_fixture(extra), Err(FixtureError::Json(_))));
    }

    #[test]
    fn entry_failure_is_recorded() {
        let entries = parse_fixture(
            r#"[{"name":"line","implicit":"y1+y2","expected":{"delta1":1,"delta2":1,"delta_d":2}}]"#,
        )
        .unwrap();
        let rec = run_entry(&entries[0], &RunOptions::default());
        assert_eq!(rec.status, Status::Error);
        assert_eq!(rec.error.unwrap().0, ExitCategory::Validation);
    }
}
