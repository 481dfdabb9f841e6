//! Greatest common divisors, contents and squarefree checks.
//!
//! All gcds are taken over the rationals and returned in normalized form:
//! primitive over the integers with a positive leading coefficient. A
//! heuristic evaluation gcd is tried first; the fallback is a recursive
//! primitive remainder sequence with the lowest-index occurring variable as
//! main variable.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::division::exact_div;
use super::heugcd::heuristic_gcd;
use super::monomial::Monomial;
use super::polynomial::Poly;
use super::upoly::UPoly;
use super::var::{VarId, VarSet};

pub fn gcd(p: &Poly, q: &Poly) -> Poly {
    if p.is_zero() {
        return q.normalize();
    }
    if q.is_zero() {
        return p.normalize();
    }
    if p.is_constant() || q.is_constant() {
        return Poly::one();
    }
    if p.len() == 1 || q.len() == 1 {
        return monomial_gcd(p, q);
    }
    // cheap divisibility shortcut, frequent in content computations
    let (small, large) = if p.len() <= q.len() { (p, q) } else { (q, p) };
    if small.total_degree() <= large.total_degree() && exact_div(large, small).is_ok() {
        return small.normalize();
    }
    let vars = p.vars().union(q.vars());
    let v = vars.first().expect("non-constant polynomials have variables");
    if !p.contains_var(v) {
        return gcd(p, &content_in_var(q, v));
    }
    if !q.contains_var(v) {
        return gcd(&content_in_var(p, v), q);
    }
    if let Some(g) = heuristic_gcd(&p.primitive_signed(), &q.primitive_signed(), v) {
        return g;
    }
    let (cp, pp_p) = split_content(p, v);
    let (cq, pp_q) = split_content(q, v);
    let c = gcd(&cp, &cq);
    let g = primitive_prs(pp_p, pp_q);
    (&c * &g.to_poly(v)).normalize()
}

/// Gcd of a single term with an arbitrary polynomial.
fn monomial_gcd(p: &Poly, q: &Poly) -> Poly {
    let (single, other) = if p.len() == 1 { (p, q) } else { (q, p) };
    let mut m = single.terms()[0].0.clone();
    for (tm, _) in other.terms() {
        if m.is_one() {
            break;
        }
        m = m.gcd(tm);
    }
    Poly::term(BigInt::one(), m)
}

pub fn gcd_many<'a, I: IntoIterator<Item = &'a Poly>>(polys: I) -> Poly {
    let mut items: Vec<&Poly> = polys.into_iter().filter(|p| !p.is_zero()).collect();
    if items.is_empty() {
        return Poly::zero();
    }
    items.sort_by_key(|p| (p.total_degree(), p.len()));
    let mut g = items[0].normalize();
    for p in &items[1..] {
        if g.is_constant() {
            break;
        }
        if exact_div(p, &g).is_ok() {
            continue;
        }
        g = gcd(&g, p);
    }
    g
}

/// Gcd of the coefficients of `p` viewed as a polynomial in `v`.
fn content_in_var(p: &Poly, v: VarId) -> Poly {
    let coeffs = p.coeffs_in(v);
    gcd_many(coeffs.iter())
}

fn split_content(p: &Poly, v: VarId) -> (Poly, UPoly) {
    let u = UPoly::from_poly(p, v);
    let c = gcd_many(u.coeffs.iter());
    let pp = u.div_exact(&c).expect("content divides every coefficient");
    (c, pp)
}

fn primitive_part_upoly(u: &UPoly) -> UPoly {
    let c = gcd_many(u.coeffs.iter());
    let mut pp = u.div_exact(&c).expect("content divides every coefficient");
    // remaining integer content
    let ic = pp
        .coeffs
        .iter()
        .fold(BigInt::from(0), |g, x| num_integer::Integer::gcd(&g, &x.integer_content()));
    if !ic.is_one() && !ic.is_zero() {
        pp = pp.div_exact(&Poly::constant(ic)).expect("integer content divides");
    }
    pp
}

fn primitive_prs(a: UPoly, b: UPoly) -> UPoly {
    let (mut a, mut b) = if a.degree() >= b.degree() { (a, b) } else { (b, a) };
    loop {
        if b.degree() == 0 {
            return UPoly::one();
        }
        let r = a.prem(&b);
        if r.is_zero() {
            return b;
        }
        if r.degree() == 0 {
            return UPoly::one();
        }
        a = b;
        b = primitive_part_upoly(&r);
    }
}

/// Content and primitive part of `p` viewed as a polynomial in `main` with
/// coefficients in the remaining variables.
///
/// `content * pp == p`; `pp` is primitive over the integers and has a
/// positive leading coefficient, so the integer content and the sign end
/// up in `content`.
pub fn content_pp(p: &Poly, main: VarSet) -> (Poly, Poly) {
    if p.is_zero() {
        return (Poly::zero(), Poly::zero());
    }
    let groups = p.coeffs_in_set(main);
    let c = gcd_many(groups.values());
    let pp0 = exact_div(p, &c).expect("content divides the polynomial");
    let mut ic = pp0.integer_content();
    if pp0.leading_coeff().is_negative() {
        ic = -ic;
    }
    let pp = pp0.div_scalar_exact(&ic);
    let content = c.scale(&ic);
    (content, pp)
}

/// `gcd(p, dp/dv)` combined over every variable occurring in `p`; constant
/// exactly when `p` is squarefree over the rationals.
pub fn squarefree_defect(p: &Poly) -> Poly {
    assert!(!p.is_zero(), "squarefree defect of the zero polynomial");
    let mut g = p.normalize();
    for v in p.vars().iter() {
        if g.is_constant() {
            break;
        }
        g = gcd(&g, &p.derivative(v));
    }
    g
}

/// Product of the distinct irreducible factors of `p` (normalized).
pub fn squarefree_part(p: &Poly) -> Poly {
    let defect = squarefree_defect(p);
    exact_div(&p.normalize(), &defect).expect("defect divides")
}

/// Monomial of lowest exponents dividing every term.
pub fn monomial_content(p: &Poly) -> Monomial {
    let mut it = p.terms().iter();
    let Some((first, _)) = it.next() else {
        return Monomial::one();
    };
    it.fold(first.clone(), |m, (tm, _)| m.gcd(tm))
}
