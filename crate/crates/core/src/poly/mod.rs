//! Exact sparse multivariate polynomials over the integers.

mod division;
mod gcd;
mod heugcd;
mod monomial;
mod polynomial;
mod resultant;
mod upoly;
mod var;

pub use division::{divides, exact_div};
pub use gcd::{content_pp, gcd, gcd_many, monomial_content, squarefree_defect, squarefree_part};
pub use monomial::Monomial;
pub use polynomial::{Binding, ToScalar, Poly, PolyDisplay};
pub use resultant::{bareiss, resultant, resultant_with, ResultantMethod};
pub use var::{is_reserved, Universe, VarId, VarSet, RESERVED_NAMES};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("polynomial is not divisible")]
    NotDivisible,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("resultant input does not depend on the eliminated variable")]
    DegenerateResultant,
}

/// Variable sets used throughout the degree formulae.
pub mod sets {
    use super::{VarId, VarSet};

    pub fn y12() -> VarSet {
        VarSet::of(&[VarId::Y1, VarId::Y2])
    }
    pub fn y123() -> VarSet {
        VarSet::of(&[VarId::Y1, VarId::Y2, VarId::Y3])
    }
    pub fn dk() -> VarSet {
        VarSet::of(&[VarId::D, VarId::K])
    }
    pub fn x12() -> VarSet {
        VarSet::of(&[VarId::X1, VarId::X2])
    }
}
