use crate::poly::{exact_div, sets, squarefree_defect, Poly, Universe, VarId, VarSet};

use super::FormulaError;

pub const IRREDUCIBILITY_CAVEAT: &str =
    "absolute irreducibility of the curve is assumed, not verified";

/// A validated implicit curve `f(y1, y2) = 0` with its derivatives and
/// homogenizations cached.
///
/// `F` is the homogenization of `f` w.r.t. `y3`; `F1`, `F2` are the partial
/// derivatives of `F`, i.e. `f1`, `f2` homogenized to degree `n - 1`.
#[derive(Clone, Debug)]
pub struct ImplicitCurve {
    f: Poly,
    degree: u32,
    f1: Poly,
    f2: Poly,
    big_f: Poly,
    big_f1: Poly,
    big_f2: Poly,
}

impl ImplicitCurve {
    /// Checks every precondition of the degree formulae. Parameters (any
    /// variable past the fixed ones) may appear in the coefficients.
    pub fn validate(f: Poly, universe: &Universe) -> Result<Self, FormulaError> {
        let fixed_allowed = sets::y12();
        for v in f.vars().iter() {
            if v.index() < VarId::FIXED && !fixed_allowed.contains(v) {
                return Err(FormulaError::UnexpectedVariable(universe.name(v)));
            }
        }
        let n = f.degree_in(sets::y12());
        if n < 2 {
            return Err(FormulaError::IsLine(n));
        }
        let f1 = f.derivative(VarId::Y1);
        let f2 = f.derivative(VarId::Y2);
        if f1.is_zero() && f2.is_zero() {
            return Err(FormulaError::ZeroGradient);
        }
        let defect = squarefree_defect(&f);
        if defect.degree_in(sets::y12()) > 0 {
            return Err(FormulaError::NotSquarefree(defect.display(universe).to_string()));
        }
        let iso = &f1.square() + &f2.square();
        if exact_div(&iso, &f).is_ok() {
            return Err(FormulaError::IsotropicDivisor);
        }
        let big_f = f.homogenize(VarId::Y3, sets::y12());
        let big_f1 = big_f.derivative(VarId::Y1);
        let big_f2 = big_f.derivative(VarId::Y2);
        Ok(ImplicitCurve {
            f,
            degree: n as u32,
            f1,
            f2,
            big_f,
            big_f1,
            big_f2,
        })
    }

    pub fn f(&self) -> &Poly {
        &self.f
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn f1(&self) -> &Poly {
        &self.f1
    }

    pub fn f2(&self) -> &Poly {
        &self.f2
    }

    /// Homogeneous form `F(y1, y2, y3)`.
    pub fn big_f(&self) -> &Poly {
        &self.big_f
    }

    pub fn big_f1(&self) -> &Poly {
        &self.big_f1
    }

    pub fn big_f2(&self) -> &Poly {
        &self.big_f2
    }

    /// The curve with `y1` and `y2` exchanged, revalidated.
    pub fn swapped(&self, universe: &Universe) -> Result<Self, FormulaError> {
        Self::validate(self.f.swap_y(), universe)
    }

    /// Variables of `f` beyond `y1`, `y2`.
    pub fn parameters(&self) -> VarSet {
        let mut s = VarSet::EMPTY;
        for v in self.f.vars().iter() {
            if v.index() >= VarId::FIXED {
                s.insert(v);
            }
        }
        s
    }
}
