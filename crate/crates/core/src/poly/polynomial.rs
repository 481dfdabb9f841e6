use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rustc_hash::FxHashMap;

use super::monomial::Monomial;
use super::var::{Universe, VarId, VarSet};

/// Sparse multivariate polynomial with arbitrary-precision integer coefficients.
///
/// Terms are kept strictly decreasing in graded-lex order and never hold a
/// zero coefficient, so structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: Vec<(Monomial, BigInt)>,
}

/// Value a variable is replaced by in [`Poly::substitute`].
#[derive(Clone, Debug)]
pub enum Binding {
    Rational(BigRational),
    Poly(Poly),
}

impl From<i64> for Binding {
    fn from(v: i64) -> Self {
        Binding::Rational(BigRational::from_integer(v.into()))
    }
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn from_i64(c: i64) -> Self {
        Self::constant(c.into())
    }

    pub fn var(v: VarId) -> Self {
        Self::term(BigInt::one(), Monomial::var(v, 1))
    }

    pub fn term(c: BigInt, m: Monomial) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Poly { terms: vec![(m, c)] }
        }
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, BigInt)>>(terms: I) -> Self {
        let mut acc: FxHashMap<Monomial, BigInt> = FxHashMap::default();
        for (m, c) in terms {
            *acc.entry(m).or_default() += c;
        }
        Self::from_map(acc)
    }

    fn from_map(acc: FxHashMap<Monomial, BigInt>) -> Self {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        Poly { terms }
    }

    /// Trusts the caller that `terms` is sorted, strictly decreasing and zero-free.
    pub(crate) fn from_sorted_unchecked(terms: Vec<(Monomial, BigInt)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        Poly { terms }
    }

    pub fn terms(&self) -> &[(Monomial, BigInt)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, BigInt)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() <= 1 && self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn is_one(&self) -> bool {
        self.is_constant() && self.terms.first().is_some_and(|(_, c)| c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.first().map(|(m, c)| (m, c))
    }

    /// Leading coefficient under graded lex; zero for the zero polynomial.
    pub fn leading_coeff(&self) -> BigInt {
        self.terms.first().map(|(_, c)| c.clone()).unwrap_or_default()
    }

    /// Constant term.
    pub fn constant_coeff(&self) -> BigInt {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => c.clone(),
            _ => BigInt::zero(),
        }
    }

    pub fn vars(&self) -> VarSet {
        self.terms
            .iter()
            .fold(VarSet::EMPTY, |s, (m, _)| s.union(m.vars()))
    }

    pub fn contains_var(&self, v: VarId) -> bool {
        self.terms.iter().any(|(m, _)| m.exp(v) > 0)
    }

    /// Degree in a single variable; −1 for the zero polynomial.
    pub fn degree(&self, v: VarId) -> i64 {
        self.terms
            .iter()
            .map(|(m, _)| m.exp(v) as i64)
            .max()
            .unwrap_or(-1)
    }

    /// Maximal combined degree of the terms restricted to `wrt`; −1 for zero.
    pub fn degree_in(&self, wrt: VarSet) -> i64 {
        self.terms
            .iter()
            .map(|(m, _)| m.degree_in(wrt) as i64)
            .max()
            .unwrap_or(-1)
    }

    pub fn total_degree(&self) -> i64 {
        // graded order: the leading term has the largest total degree
        self.terms
            .first()
            .map(|(m, _)| m.total_degree() as i64)
            .unwrap_or(-1)
    }

    /// True when every term has the same degree in `wrt`.
    pub fn is_homogeneous_in(&self, wrt: VarSet) -> bool {
        let mut it = self.terms.iter().map(|(m, _)| m.degree_in(wrt));
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    pub fn neg(&self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_term(&self, c: &BigInt, mono: &Monomial) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        // multiplying by a monomial preserves the order
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.mul(mono), a * c))
                .collect(),
        }
    }

    /// Divides every coefficient by `c`; the caller guarantees exactness.
    pub(crate) fn div_scalar_exact(&self, c: &BigInt) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, a)| {
                    debug_assert!((a % c).is_zero());
                    (m.clone(), a / c)
                })
                .collect(),
        }
    }

    fn merge(&self, other: &Poly, negate: bool) -> Poly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if negate {
                        &a[i].1 - &b[j].1
                    } else {
                        &a[i].1 + &b[j].1
                    };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        for (m, c) in &b[j..] {
            out.push((m.clone(), if negate { -c } else { c.clone() }));
        }
        Poly { terms: out }
    }

    fn mul_impl(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return other.mul_term(c, m);
        }
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            return self.mul_term(c, m);
        }
        let mut acc: FxHashMap<Monomial, BigInt> = FxHashMap::default();
        acc.reserve(self.terms.len() * other.terms.len() / 2);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let e = acc.entry(ma.mul(mb)).or_default();
                *e += ca * cb;
            }
        }
        Poly::from_map(acc)
    }

    pub fn square(&self) -> Poly {
        self.mul_impl(self)
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        acc
    }

    /// Formal partial derivative.
    pub fn derivative(&self, v: VarId) -> Poly {
        let terms = self.terms.iter().filter_map(|(m, c)| {
            let e = m.exp(v);
            if e == 0 {
                return None;
            }
            let mut m2 = m.clone();
            m2.set(v, e - 1);
            Some((m2, c * BigInt::from(e)))
        });
        Poly::from_terms(terms)
    }

    /// Multiplies each term by `hv^(D - deg_wrt(term))`, `D = degree_in(wrt)`.
    pub fn homogenize(&self, hv: VarId, wrt: VarSet) -> Poly {
        assert!(
            !self.contains_var(hv),
            "homogenizing variable already occurs in the polynomial"
        );
        let big_d = self.degree_in(wrt);
        if big_d < 0 {
            return Poly::zero();
        }
        let terms = self.terms.iter().map(|(m, c)| {
            let mut m2 = m.clone();
            m2.set(hv, big_d as u32 - m.degree_in(wrt));
            (m2, c.clone())
        });
        Poly::from_terms(terms)
    }

    /// Simultaneous substitution.
    ///
    /// With rational bindings the result is multiplied through by the
    /// denominators and then made primitive over the integers (sign kept),
    /// so only the zero set, not the scale, is preserved in that case.
    pub fn substitute(&self, bindings: &[(VarId, Binding)]) -> Poly {
        if bindings.is_empty() || self.is_zero() {
            return self.clone();
        }
        let bound = VarSet::of(&bindings.iter().map(|(v, _)| *v).collect::<Vec<_>>());
        // clear denominators with b^deg_v(self) per rational binding
        let mut rationals = Vec::new();
        let mut polys = Vec::new();
        let mut has_denominator = false;
        for (v, b) in bindings {
            match b {
                Binding::Rational(r) => {
                    if !r.denom().is_one() {
                        has_denominator = true;
                    }
                    rationals.push((*v, r.numer().clone(), r.denom().clone(), self.degree(*v).max(0) as u32));
                }
                Binding::Poly(p) => polys.push((*v, p)),
            }
        }
        // keyed by the rest-of-monomial, collecting the bound-part images
        let mut power_cache: BTreeMap<(u16, u32), Poly> = BTreeMap::new();
        let mut acc: FxHashMap<Monomial, BigInt> = FxHashMap::default();
        let mut poly_parts: Vec<Poly> = Vec::new();
        for (m, c) in &self.terms {
            let rest = m.remove(bound);
            let mut coeff = c.clone();
            for (v, num, den, maxdeg) in &rationals {
                let e = m.exp(*v);
                if e > 0 {
                    coeff *= num.pow(e);
                }
                if *maxdeg > e {
                    coeff *= den.pow(*maxdeg - e);
                }
            }
            if coeff.is_zero() {
                continue;
            }
            let mut image: Option<Poly> = None;
            for (v, p) in &polys {
                let e = m.exp(*v);
                if e == 0 {
                    continue;
                }
                let pw = power_cache
                    .entry((v.0, e))
                    .or_insert_with(|| p.pow(e))
                    .clone();
                image = Some(match image {
                    None => pw,
                    Some(acc_p) => &acc_p * &pw,
                });
            }
            match image {
                None => *acc.entry(rest).or_default() += coeff,
                Some(p) => poly_parts.push(p.mul_term(&coeff, &rest)),
            }
        }
        let mut out = Poly::from_map(acc);
        for p in poly_parts {
            out = &out + &p;
        }
        if has_denominator {
            out = out.primitive_signed();
        }
        out
    }

    /// Renames variables (a permutation or injective relabelling).
    pub fn rename(&self, map: &[(VarId, VarId)]) -> Poly {
        let terms = self.terms.iter().map(|(m, c)| {
            let mut m2 = m.clone();
            for (from, _) in map {
                m2.set(*from, 0);
            }
            for (from, to) in map {
                let e = m.exp(*from);
                if e > 0 {
                    m2.set(*to, m2.exp(*to) + e);
                }
            }
            (m2, c.clone())
        });
        Poly::from_terms(terms)
    }

    /// Exchanges `y1` and `y2`.
    pub fn swap_y(&self) -> Poly {
        self.rename(&[(VarId::Y1, VarId::Y2), (VarId::Y2, VarId::Y1)])
    }

    /// Positive gcd of the integer coefficients (zero for the zero polynomial).
    pub fn integer_content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides out the integer content, keeping the sign.
    pub fn primitive_signed(&self) -> Poly {
        let g = self.integer_content();
        if g.is_zero() || g.is_one() {
            self.clone()
        } else {
            self.div_scalar_exact(&g)
        }
    }

    /// Primitive over the integers with positive leading coefficient.
    pub fn normalize(&self) -> Poly {
        let mut g = self.integer_content();
        if g.is_zero() {
            return Poly::zero();
        }
        if self.terms[0].1.is_negative() {
            g = -g;
        }
        if g.is_one() {
            self.clone()
        } else {
            self.div_scalar_exact(&g)
        }
    }

    /// Coefficients with respect to `v`: entry `i` is the coefficient of `v^i`.
    pub fn coeffs_in(&self, v: VarId) -> Vec<Poly> {
        let deg = self.degree(v);
        if deg < 0 {
            return Vec::new();
        }
        let mut buckets: Vec<Vec<(Monomial, BigInt)>> = vec![Vec::new(); deg as usize + 1];
        for (m, c) in &self.terms {
            let e = m.exp(v) as usize;
            let mut m2 = m.clone();
            m2.set(v, 0);
            buckets[e].push((m2, c.clone()));
        }
        buckets
            .into_iter()
            .map(|mut ts| {
                // removing one variable may break grlex order between terms
                ts.sort_unstable_by(|a, b| b.0.cmp(&a.0));
                Poly { terms: ts }
            })
            .collect()
    }

    /// Inverse of [`Poly::coeffs_in`].
    pub fn from_coeffs(v: VarId, coeffs: &[Poly]) -> Poly {
        let terms = coeffs.iter().enumerate().flat_map(|(i, p)| {
            p.terms.iter().map(move |(m, c)| {
                let mut m2 = m.clone();
                m2.set(v, m.exp(v) + i as u32);
                (m2, c.clone())
            })
        });
        Poly::from_terms(terms)
    }

    /// Groups terms by their restriction to `main`.
    pub fn coeffs_in_set(&self, main: VarSet) -> BTreeMap<Monomial, Poly> {
        let mut groups: BTreeMap<Monomial, Vec<(Monomial, BigInt)>> = BTreeMap::new();
        for (m, c) in &self.terms {
            groups
                .entry(m.restrict(main))
                .or_default()
                .push((m.remove(main), c.clone()));
        }
        groups
            .into_iter()
            .map(|(k, mut ts)| {
                ts.sort_unstable_by(|a, b| b.0.cmp(&a.0));
                (k, Poly { terms: ts })
            })
            .collect()
    }

    /// Evaluates with `f64`/complex-like arithmetic supplied by the caller.
    pub fn eval_with<T, F>(&self, mut value_of: F, zero: T) -> T
    where
        T: Clone + std::ops::Add<Output = T> + std::ops::Mul<Output = T>,
        F: FnMut(VarId, u32) -> T,
        BigInt: ToScalar<T>,
    {
        let mut acc = zero;
        for (m, c) in &self.terms {
            let mut t: T = c.to_scalar();
            for (i, e) in m.exponents().iter().enumerate() {
                if *e > 0 {
                    t = t * value_of(VarId(i as u16), *e);
                }
            }
            acc = acc + t;
        }
        acc
    }

    pub fn display<'a>(&'a self, universe: &'a Universe) -> PolyDisplay<'a> {
        PolyDisplay {
            poly: self,
            universe,
        }
    }
}

/// Conversion of an integer coefficient into an evaluation scalar.
pub trait ToScalar<T> {
    fn to_scalar(&self) -> T;
}

impl ToScalar<f64> for BigInt {
    fn to_scalar(&self) -> f64 {
        num_traits::ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

impl ToScalar<num_complex::Complex64> for BigInt {
    fn to_scalar(&self) -> num_complex::Complex64 {
        num_complex::Complex64::new(num_traits::ToPrimitive::to_f64(self).unwrap_or(f64::NAN), 0.0)
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &'a Poly) -> Poly {
        self.merge(rhs, false)
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &'a Poly) -> Poly {
        self.merge(rhs, true)
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &'a Poly) -> Poly {
        self.mul_impl(rhs)
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::neg(&self)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::neg(self)
    }
}

pub struct PolyDisplay<'a> {
    poly: &'a Poly,
    universe: &'a Universe,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.poly.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || m.is_one() {
                factors.push(abs.to_string());
            }
            for (vi, e) in m.exponents().iter().enumerate() {
                if *e == 0 {
                    continue;
                }
                let name = self.universe.name(VarId(vi as u16));
                if *e == 1 {
                    factors.push(name);
                } else {
                    factors.push(format!("{name}^{e}"));
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display(&Universe::new()))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn y1() -> Poly {
        Poly::var(VarId::Y1)
    }
    fn y2() -> Poly {
        Poly::var(VarId::Y2)
    }
    fn c(v: i64) -> Poly {
        Poly::from_i64(v)
    }

    #[test]
    fn additive_inverse() {
        assert!((&y1() - &y1()).is_zero());
        assert!((y1() + y1().neg()).is_zero());
    }

    #[test]
    fn difference_of_squares() {
        let p = (y1() + y2()) * (y1() - y2());
        assert_eq!(p, y1().pow(2) - y2().pow(2));
        assert_eq!(p.to_string(), "y1^2 - y2^2");
    }

    #[test]
    fn zero_absorbs() {
        let p = y1().pow(3) + c(7) * y2();
        assert!((&Poly::zero() * &p).is_zero());
    }

    #[test]
    fn derivatives() {
        let p = y1().pow(2) * y2();
        assert_eq!(p.derivative(VarId::Y1), c(2) * y1() * y2());
        assert_eq!((y2() + y1().pow(2)).derivative(VarId::Y2), c(1));
        assert!(c(9).derivative(VarId::Y1).is_zero());
    }

    #[test]
    fn homogenization() {
        let wrt = VarSet::of(&[VarId::Y1, VarId::Y2]);
        let y3 = Poly::var(VarId::Y3);
        let parabola = y2() - y1().pow(2);
        assert_eq!(parabola.homogenize(VarId::Y3, wrt), y2() * y3.clone() - y1().pow(2));
        let hyperbola = y1() * y2() - c(1);
        assert_eq!(hyperbola.homogenize(VarId::Y3, wrt), y1() * y2() - y3.pow(2));
        let homog = y1().pow(2) - y2().pow(2);
        assert_eq!(homog.homogenize(VarId::Y3, wrt), homog);
    }

    #[test]
    fn degree_in_sets() {
        let p = y1().pow(2) * y2() + Poly::var(VarId::Y3).pow(4);
        assert_eq!(p.degree_in(VarSet::of(&[VarId::Y1, VarId::Y2])), 3);
        let q = Poly::var(VarId::D).pow(2) + Poly::var(VarId::K);
        assert_eq!(q.degree_in(VarSet::of(&[VarId::Y1, VarId::Y2])), 0);
        assert_eq!(Poly::zero().degree_in(VarSet::of(&[VarId::Y1])), -1);
    }

    #[test]
    fn substitution() {
        let p = y1() + y2();
        assert_eq!(p.substitute(&[(VarId::Y2, 3.into())]), y1() + c(3));
        let q = y1().pow(2) * y2();
        let swapped = q.substitute(&[
            (VarId::Y1, Binding::Poly(y2())),
            (VarId::Y2, Binding::Poly(y1())),
        ]);
        assert_eq!(swapped, y2().pow(2) * y1());
        assert_eq!(q.swap_y(), swapped);
        let r = VarId(8);
        let circle = y1().pow(2) + y2().pow(2) - Poly::var(r).pow(2);
        assert_eq!(circle.substitute(&[(r, 5.into())]), y1().pow(2) + y2().pow(2) - c(25));
    }

    #[test]
    fn rational_substitution_clears_denominators() {
        let a = VarId(8);
        // a*y1 + 1 at a = 2/3  ->  2*y1 + 3
        let p = Poly::var(a) * y1() + c(1);
        let half = BigRational::new(2.into(), 3.into());
        assert_eq!(p.substitute(&[(a, Binding::Rational(half))]), c(2) * y1() + c(3));
    }

    #[test]
    fn coefficient_views_round_trip() {
        let p = y1().pow(3) * y2() + c(4) * y1() * y2().pow(2) - c(5);
        let cs = p.coeffs_in(VarId::Y1);
        assert_eq!(cs.len(), 4);
        assert_eq!(Poly::from_coeffs(VarId::Y1, &cs), p);
    }
}
