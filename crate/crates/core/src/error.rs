use crate::formulas::FormulaError;
use crate::oracle::OracleError;
use crate::parser::ParseError;
use crate::poly::PolyError;

/// Outcome categories; the CLI maps them one-to-one onto exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitCategory {
    Success = 0,
    Internal = 1,
    Validation = 2,
    Degeneracy = 3,
    CostGuard = 4,
}

impl ExitCategory {
    pub fn code(self) -> i32 {
        self as i32
    }
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("{0}")]
    Input(String),
}

impl Error {
    pub fn category(&self) -> ExitCategory {
        match self {
            Error::Parse(_) | Error::Input(_) => ExitCategory::Validation,
            Error::Formula(e) => e.category(),
            Error::Oracle(e) => e.category(),
            Error::Poly(PolyError::DegenerateResultant) => ExitCategory::Degeneracy,
            Error::Poly(_) => ExitCategory::Internal,
        }
    }
}
