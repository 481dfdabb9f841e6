use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::monomial::Monomial;
use super::polynomial::Poly;
use super::PolyError;

/// Exact quotient `p / q`.
///
/// Runs the multivariate division algorithm and fails as soon as a
/// leading term is not divisible, which is also how divisibility is tested.
pub fn exact_div(p: &Poly, q: &Poly) -> Result<Poly, PolyError> {
    if q.is_zero() {
        return Err(PolyError::DivisionByZero);
    }
    if p.is_zero() {
        return Ok(Poly::zero());
    }
    let qt = q.terms();
    let (qm, qc) = (&qt[0].0, &qt[0].1);
    if qt.len() == 1 {
        let mut out = Vec::with_capacity(p.len());
        for (m, c) in p.terms() {
            let mm = m.div(qm).ok_or(PolyError::NotDivisible)?;
            let (quo, rem) = c.div_rem(qc);
            if !rem.is_zero() {
                return Err(PolyError::NotDivisible);
            }
            out.push((mm, quo));
        }
        return Ok(Poly::from_sorted_unchecked(out));
    }
    if q.total_degree() > p.total_degree() {
        return Err(PolyError::NotDivisible);
    }

    let mut rem: BTreeMap<Monomial, BigInt> = p.terms().iter().cloned().collect();
    let mut quot = Vec::new();
    while let Some((m, c)) = rem.pop_last() {
        let mm = m.div(qm).ok_or(PolyError::NotDivisible)?;
        let (qcoef, r) = c.div_rem(qc);
        if !r.is_zero() {
            return Err(PolyError::NotDivisible);
        }
        for (tm, tc) in &qt[1..] {
            let key = tm.mul(&mm);
            let delta = tc * &qcoef;
            match rem.entry(key) {
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    *e.get_mut() -= delta;
                    if e.get().is_zero() {
                        e.remove();
                    }
                }
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(-delta);
                }
            }
        }
        quot.push((mm, qcoef));
    }
    Ok(Poly::from_sorted_unchecked(quot))
}

/// True when `q` divides `p` exactly (`q != 0`).
pub fn divides(q: &Poly, p: &Poly) -> bool {
    exact_div(p, q).is_ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::VarId;

    fn y1() -> Poly {
        Poly::var(VarId::Y1)
    }
    fn y2() -> Poly {
        Poly::var(VarId::Y2)
    }

    #[test]
    fn difference_of_squares_quotient() {
        let p = y1().pow(2) - y2().pow(2);
        assert_eq!(exact_div(&p, &(y1() - y2())).unwrap(), y1() + y2());
    }

    #[test]
    fn not_divisible() {
        let p = y1() + Poly::one();
        assert_eq!(exact_div(&p, &y2()), Err(PolyError::NotDivisible));
        assert_eq!(
            exact_div(&(y1().pow(2) + Poly::one()), &(y1() + Poly::one())),
            Err(PolyError::NotDivisible)
        );
    }

    #[test]
    fn scalar_monomial_quotient() {
        let p = Poly::from_i64(6) * y1().pow(2);
        let q = Poly::from_i64(2) * y1();
        assert_eq!(exact_div(&p, &q).unwrap(), Poly::from_i64(3) * y1());
        assert_eq!(exact_div(&p, &Poly::from_i64(4)), Err(PolyError::NotDivisible));
    }

    #[test]
    fn zero_divisor() {
        assert_eq!(exact_div(&y1(), &Poly::zero()), Err(PolyError::DivisionByZero));
    }
}
