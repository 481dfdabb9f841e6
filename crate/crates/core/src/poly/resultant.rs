//! Sylvester resultants.
//!
//! The default path is the subresultant remainder sequence; a fraction-free
//! Bareiss determinant of the Sylvester matrix is kept as an independent
//! cross-check. For large multivariate coefficients the resultant can also
//! be rebuilt from integer specializations by dense interpolation. All
//! return the determinant of the Sylvester matrix whose first rows hold the
//! coefficients of `p`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;

use super::division::exact_div;
use super::polynomial::{Binding, Poly};
use super::upoly::UPoly;
use super::var::VarId;
use super::PolyError;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ResultantMethod {
    #[default]
    Subresultant,
    Bareiss,
    /// Evaluation at integer points and Newton interpolation, one
    /// coefficient variable at a time.
    Interpolation,
}

impl std::str::FromStr for ResultantMethod {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "prs" | "subresultant" => Ok(Self::Subresultant),
            "bareiss" => Ok(Self::Bareiss),
            "interp" | "interpolation" => Ok(Self::Interpolation),
            other => Err(format!("unknown resultant method `{other}` (expected prs, bareiss or interp)")),
        }
    }
}

pub fn resultant(p: &Poly, q: &Poly, v: VarId) -> Result<Poly, PolyError> {
    resultant_with(p, q, v, ResultantMethod::Subresultant)
}

pub fn resultant_with(p: &Poly, q: &Poly, v: VarId, method: ResultantMethod) -> Result<Poly, PolyError> {
    if p.degree(v) < 1 || q.degree(v) < 1 {
        return Err(PolyError::DegenerateResultant);
    }
    let a = UPoly::from_poly(p, v);
    let b = UPoly::from_poly(q, v);
    Ok(match method {
        ResultantMethod::Subresultant => subresultant(a, b),
        ResultantMethod::Bareiss => bareiss(&sylvester(&a, &b)),
        ResultantMethod::Interpolation => interpolated(p, q, v),
    })
}

/// Alternating integer nodes `0, 1, -1, 2, -2, ...`.
fn nodes() -> impl Iterator<Item = i64> {
    (0i64..).map(|i| if i % 2 == 1 { (i + 1) / 2 } else { -(i / 2) })
}

fn at(p: &Poly, z: VarId, a: i64) -> Poly {
    p.substitute(&[(z, Binding::Rational(BigRational::from_integer(BigInt::from(a))))])
}

/// Both inputs have positive degree in `v`.
fn interpolated(p: &Poly, q: &Poly, v: VarId) -> Poly {
    let mut others = p.vars().union(q.vars());
    others.remove(v);
    let Some(z) = others.first() else {
        return subresultant(UPoly::from_poly(p, v), UPoly::from_poly(q, v));
    };
    let bound = q.degree(v) * p.degree(z).max(0) + p.degree(v) * q.degree(z).max(0);
    let (lp, lq) = (UPoly::from_poly(p, v).lc().clone(), UPoly::from_poly(q, v).lc().clone());
    // nodes where neither leading coefficient vanishes keep the Sylvester shape
    let chosen: Vec<i64> = nodes()
        .filter(|a| !at(&lp, z, *a).is_zero() && !at(&lq, z, *a).is_zero())
        .take(bound as usize + 1)
        .collect();
    let values: Vec<Poly> = chosen
        .par_iter()
        .map(|a| interpolated(&at(p, z, *a), &at(q, z, *a), v))
        .collect();
    newton_interpolate(&chosen, values, z)
}

/// Polynomial in `z` through `(nodes[i], values[i])`. Divided differences
/// of an integer polynomial at integer nodes are integers, so every
/// division is exact.
fn newton_interpolate(nodes: &[i64], mut values: Vec<Poly>, z: VarId) -> Poly {
    let n = nodes.len();
    for k in 1..n {
        for i in (k..n).rev() {
            let diff = &values[i] - &values[i - 1];
            values[i] = diff.div_scalar_exact(&BigInt::from(nodes[i] - nodes[i - k]));
        }
    }
    let zv = Poly::var(z);
    let mut acc = values[n - 1].clone();
    for k in (0..n - 1).rev() {
        acc = &(&acc * &(&zv - &Poly::from_i64(nodes[k]))) + &values[k];
    }
    acc
}

fn neg_if(p: Poly, negate: bool) -> Poly {
    if negate {
        -p
    } else {
        p
    }
}

/// Collins' subresultant PRS; both degrees are at least one.
fn subresultant(a: UPoly, b: UPoly) -> Poly {
    let (mut a, mut b, mut negate) = if a.degree() < b.degree() {
        // Res(a, b) = (-1)^(deg a * deg b) Res(b, a)
        let odd = a.degree() % 2 == 1 && b.degree() % 2 == 1;
        (b, a, odd)
    } else {
        (a, b, false)
    };
    let mut g = Poly::one();
    let mut h = Poly::one();
    loop {
        let delta = (a.degree() - b.degree()) as u32;
        if a.degree() % 2 == 1 && b.degree() % 2 == 1 {
            negate = !negate;
        }
        let r = a.prem(&b);
        a = b;
        if r.is_zero() {
            return Poly::zero();
        }
        let divisor = &g * &h.pow(delta);
        b = r.div_exact(&divisor).expect("subresultant division is exact");
        g = a.lc().clone();
        h = match delta {
            0 => h,
            1 => g.clone(),
            _ => exact_div(&g.pow(delta), &h.pow(delta - 1)).expect("subresultant h update is exact"),
        };
        if b.degree() == 0 {
            let da = a.degree() as u32;
            let lb = b.lc().clone();
            let res = if da == 1 {
                lb
            } else {
                exact_div(&lb.pow(da), &h.pow(da - 1)).expect("final subresultant division is exact")
            };
            return neg_if(res, negate);
        }
    }
}

fn sylvester(a: &UPoly, b: &UPoly) -> Vec<Vec<Poly>> {
    let m = a.degree() as usize;
    let n = b.degree() as usize;
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![Poly::zero(); size];
        for j in 0..=m {
            row[i + j] = a.coeffs[m - j].clone();
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![Poly::zero(); size];
        for j in 0..=n {
            row[i + j] = b.coeffs[n - j].clone();
        }
        rows.push(row);
    }
    rows
}

/// Fraction-free Gaussian elimination; every division is exact.
pub fn bareiss(matrix: &[Vec<Poly>]) -> Poly {
    let n = matrix.len();
    if n == 0 {
        return Poly::constant(BigInt::one());
    }
    let mut m: Vec<Vec<Poly>> = matrix.to_vec();
    let mut negate = false;
    let mut prev = Poly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return Poly::zero();
            };
            m.swap(k, swap);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = exact_div(&t, &prev).expect("Bareiss division is exact");
            }
            m[i][k] = Poly::zero();
        }
        prev = m[k][k].clone();
    }
    neg_if(m[n - 1][n - 1].clone(), negate)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(id: VarId) -> Poly {
        Poly::var(id)
    }
    fn c(x: i64) -> Poly {
        Poly::from_i64(x)
    }

    fn both(p: &Poly, q: &Poly, var: VarId) -> Poly {
        let a = resultant_with(p, q, var, ResultantMethod::Subresultant).unwrap();
        let b = resultant_with(p, q, var, ResultantMethod::Bareiss).unwrap();
        assert_eq!(a, b, "subresultant and Bareiss disagree");
        let c = resultant_with(p, q, var, ResultantMethod::Interpolation).unwrap();
        assert_eq!(a, c, "subresultant and interpolation disagree");
        a
    }

    #[test]
    fn linear_root_evaluation() {
        let y1 = v(VarId::Y1);
        let y2 = v(VarId::Y2);
        let y3 = v(VarId::Y3);
        let r = both(&(y3.pow(2) - y1.clone()), &(y3 - y2.clone()), VarId::Y3);
        assert_eq!(r, y2.pow(2) - y1);
    }

    #[test]
    fn two_by_two_sign() {
        let y3 = v(VarId::Y3);
        assert_eq!(both(&y3, &(y3.clone() - c(1)), VarId::Y3), c(-1));
        // swapping the arguments of two odd-degree inputs flips the sign
        assert_eq!(both(&(y3.clone() - c(1)), &y3, VarId::Y3), c(1));
    }

    #[test]
    fn circle_normal_resultant() {
        let (y1, y2, y3) = (v(VarId::Y1), v(VarId::Y2), v(VarId::Y3));
        let (x1, x2) = (v(VarId::X1), v(VarId::X2));
        let f = y1.pow(2) + y2.pow(2) - y3.pow(2);
        let w = x2 * y1.clone() - x1 * y2.clone();
        let n = c(2) * y3 * w.clone();
        let expected = c(4) * w.pow(2) * (y1.pow(2) + y2.pow(2));
        assert_eq!(both(&f, &n, VarId::Y3), expected);
    }

    #[test]
    fn degenerate_inputs_rejected() {
        let y3 = v(VarId::Y3);
        let y1 = v(VarId::Y1);
        assert_eq!(resultant(&y1, &y3, VarId::Y3), Err(PolyError::DegenerateResultant));
        assert_eq!(resultant(&Poly::zero(), &y3, VarId::Y3), Err(PolyError::DegenerateResultant));
    }

    #[test]
    fn common_root_gives_zero() {
        let y3 = v(VarId::Y3);
        let y1 = v(VarId::Y1);
        let g = y3.clone() - y1.clone();
        let p = &g * &(y3.clone() + c(2));
        let q = &g * &(y3.pow(2) + y1);
        assert!(both(&p, &q, VarId::Y3).is_zero());
    }
}
