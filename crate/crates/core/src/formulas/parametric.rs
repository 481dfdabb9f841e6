use std::time::Instant;

use crate::poly::{content_pp, exact_div, gcd, gcd_many, Poly, Universe, VarId, VarSet};

use super::report::FormulaDiagnostics;
use super::{Axis, FormulaError};

/// A rational parametrization `(X/W, Y/W)` in `t` with its normal vector
/// `N1 = -(W Y' - W' Y)`, `N2 = W X' - W' X`.
#[derive(Clone, Debug)]
pub struct RationalParametrization {
    x: Poly,
    y: Poly,
    w: Poly,
    n1: Poly,
    n2: Poly,
}

impl RationalParametrization {
    /// Validates `(X, Y, W)`. A nonconstant `gcd(X, Y, W)` is an error unless
    /// `reduce` is set, in which case it is divided out.
    pub fn new(x: Poly, y: Poly, w: Poly, reduce: bool, universe: &Universe) -> Result<Self, FormulaError> {
        for p in [&x, &y, &w] {
            for v in p.vars().iter() {
                if v.index() < VarId::FIXED && v != VarId::T {
                    return Err(FormulaError::UnexpectedVariable(universe.name(v)));
                }
            }
        }
        if w.is_zero() {
            return Err(FormulaError::ZeroDenominator);
        }
        let g = gcd_many([&x, &y, &w]);
        let (x, y, w) = if g.degree(VarId::T) > 0 {
            if !reduce {
                return Err(FormulaError::CommonFactor(g.display(universe).to_string()));
            }
            let div = |p: &Poly| exact_div(p, &g).expect("common factor divides");
            (div(&x), div(&y), div(&w))
        } else {
            (x, y, w)
        };
        let t = VarId::T;
        let n1 = -(&(&w * &y.derivative(t)) - &(&w.derivative(t) * &y));
        let n2 = &(&w * &x.derivative(t)) - &(&w.derivative(t) * &x);
        if n1.is_zero() && n2.is_zero() {
            return Err(FormulaError::DegenerateParametrization(
                "normal vector vanishes identically (constant curve)".into(),
            ));
        }
        Ok(RationalParametrization { x, y, w, n1, n2 })
    }

    pub fn x(&self) -> &Poly {
        &self.x
    }
    pub fn y(&self) -> &Poly {
        &self.y
    }
    pub fn w(&self) -> &Poly {
        &self.w
    }
    pub fn n1(&self) -> &Poly {
        &self.n1
    }
    pub fn n2(&self) -> &Poly {
        &self.n2
    }

    /// `(Y/W, X/W)`; its normal is `(-N2, -N1)`.
    pub fn swapped(&self) -> Self {
        RationalParametrization {
            x: self.y.clone(),
            y: self.x.clone(),
            w: self.w.clone(),
            n1: -&self.n2,
            n2: -&self.n1,
        }
    }

    fn oriented(&self, axis: Axis) -> std::borrow::Cow<'_, Self> {
        match axis {
            Axis::X1 => std::borrow::Cow::Borrowed(self),
            Axis::X2 => std::borrow::Cow::Owned(self.swapped()),
        }
    }
}

fn deg_t(p: &Poly) -> i64 {
    p.degree(VarId::T)
}

/// `(N1^2 + N2^2)(W k - Y)^2 - d^2 W^2 N2^2`.
pub fn build_s_hat(p: &RationalParametrization) -> Poly {
    let k = Poly::var(VarId::K);
    let d = Poly::var(VarId::D);
    let norm = &p.n1.square() + &p.n2.square();
    let lin = &(&p.w * &k) - &p.y;
    &(&norm * &lin.square()) - &(&d.square() * &(&p.w.square() * &p.n2.square()))
}

/// `deg_t` of the primitive part of the auxiliary polynomial w.r.t. `{k, d}`.
pub fn partial_degree_parametric_a(
    p: &RationalParametrization,
    axis: Axis,
) -> Result<(u32, FormulaDiagnostics), FormulaError> {
    let start = Instant::now();
    let p = p.oriented(axis);
    let s = build_s_hat(&p);
    if s.is_zero() {
        return Err(FormulaError::DegenerateParametrization("auxiliary polynomial is zero".into()));
    }
    let (content, pp) = content_pp(&s, VarSet::of(&[VarId::K, VarId::D]));
    let name = match axis {
        Axis::X1 => "delta1_A",
        Axis::X2 => "delta2_A",
    };
    Ok((
        deg_t(&pp) as u32,
        FormulaDiagnostics {
            formula: name.into(),
            resultant_degree: deg_t(&s),
            content_degree: deg_t(&content),
            ms: start.elapsed().as_secs_f64() * 1e3,
        },
    ))
}

/// `gcd(W^2 gcd(N1, N2)^2, (N1^2 + N2^2) Y gcd(W, Y))`, field-normalized.
pub fn theta(p: &RationalParametrization) -> Poly {
    let g12 = gcd(&p.n1, &p.n2);
    let gwy = gcd(&p.w, &p.y);
    let left = &p.w.square() * &g12.square();
    let right = &(&(&p.n1.square() + &p.n2.square()) * &p.y) * &gwy;
    gcd(&left, &right)
}

/// Closed form `2(max(deg Y, deg W) + max(deg N1, deg N2)) - deg Theta`.
pub fn partial_degree_parametric_b(
    p: &RationalParametrization,
    axis: Axis,
) -> Result<(u32, FormulaDiagnostics), FormulaError> {
    let start = Instant::now();
    let p = p.oriented(axis);
    let th = theta(&p);
    if th.is_zero() {
        return Err(FormulaError::DegenerateParametrization("content gcd is zero".into()));
    }
    let full = 2 * (deg_t(&p.y).max(deg_t(&p.w)) + deg_t(&p.n1).max(deg_t(&p.n2)));
    let delta = full - deg_t(&th);
    if delta < 0 {
        return Err(FormulaError::DegenerateParametrization(format!(
            "closed form produced a negative degree {delta}"
        )));
    }
    let name = match axis {
        Axis::X1 => "delta1_B",
        Axis::X2 => "delta2_B",
    };
    Ok((
        delta as u32,
        FormulaDiagnostics {
            formula: name.into(),
            resultant_degree: full,
            content_degree: deg_t(&th),
            ms: start.elapsed().as_secs_f64() * 1e3,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t() -> Poly {
        Poly::var(VarId::T)
    }
    fn c(v: i64) -> Poly {
        Poly::from_i64(v)
    }
    fn param(x: Poly, y: Poly, w: Poly) -> RationalParametrization {
        RationalParametrization::new(x, y, w, false, &Universe::new()).unwrap()
    }

    #[test]
    fn parabola() {
        let p = param(t(), t().pow(2), c(1));
        assert_eq!(p.n1(), &(c(-2) * t()));
        assert_eq!(p.n2(), &c(1));
        let d = Poly::var(VarId::D);
        let k = Poly::var(VarId::K);
        let expected = (c(4) * t().pow(2) + c(1)) * (k - t().pow(2)).pow(2) - d.pow(2);
        assert_eq!(build_s_hat(&p), expected);
        assert_eq!(partial_degree_parametric_a(&p, Axis::X1).unwrap().0, 6);
        assert_eq!(partial_degree_parametric_b(&p, Axis::X1).unwrap().0, 6);
        assert_eq!(partial_degree_parametric_a(&p, Axis::X2).unwrap().0, 4);
        assert_eq!(partial_degree_parametric_b(&p, Axis::X2).unwrap().0, 4);
    }

    #[test]
    fn circle() {
        let p = param(c(1) - t().pow(2), c(2) * t(), c(1) + t().pow(2));
        let w2 = (c(1) + t().pow(2)).pow(2);
        assert_eq!(theta(&p), w2);
        let (a, diag) = partial_degree_parametric_a(&p, Axis::X1).unwrap();
        assert_eq!((a, diag.resultant_degree, diag.content_degree), (4, 8, 4));
        assert_eq!(partial_degree_parametric_b(&p, Axis::X1).unwrap().0, 4);
        assert_eq!(partial_degree_parametric_b(&p, Axis::X2).unwrap().0, 4);
    }

    #[test]
    fn cusp() {
        let p = param(t().pow(2), t().pow(3), c(1));
        assert_eq!(partial_degree_parametric_a(&p, Axis::X1).unwrap().0, 8);
        assert_eq!(partial_degree_parametric_b(&p, Axis::X1).unwrap().0, 8);
        assert_eq!(partial_degree_parametric_a(&p, Axis::X2).unwrap().0, 6);
        assert_eq!(partial_degree_parametric_b(&p, Axis::X2).unwrap().0, 6);
    }

    #[test]
    fn common_factor() {
        let u = Universe::new();
        let err = RationalParametrization::new(t(), t(), t(), false, &u).unwrap_err();
        assert_eq!(err, FormulaError::CommonFactor("t".into()));
        let reduced = RationalParametrization::new(t() * t(), t(), t(), true, &u).unwrap();
        assert_eq!(reduced.w(), &c(1));
        assert_eq!(
            RationalParametrization::new(t(), t(), Poly::zero(), false, &u).unwrap_err(),
            FormulaError::ZeroDenominator
        );
    }
}
