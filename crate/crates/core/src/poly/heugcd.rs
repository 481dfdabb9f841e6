//! Heuristic gcd: evaluate the main variable at a large integer, take the
//! gcd of the images recursively, rebuild the candidate from its
//! `xi`-adic expansion and accept it when it divides both inputs.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::division::exact_div;
use super::monomial::Monomial;
use super::polynomial::{Binding, Poly};
use super::var::VarId;

const ATTEMPTS: usize = 6;
/// Images larger than this many bits are not worth the division checks.
const MAX_IMAGE_BITS: u64 = 1 << 22;

fn max_norm(p: &Poly) -> BigInt {
    p.terms().iter().map(|(_, c)| c.abs()).max().unwrap_or_default()
}

/// Symmetric residue of `c` modulo `m`.
fn smod(c: &BigInt, m: &BigInt) -> BigInt {
    let r = c.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

/// Interprets the integer coefficients of `gamma` as `xi`-adic expansions in `v`.
fn xi_adic(gamma: &Poly, xi: &BigInt, v: VarId) -> Poly {
    let mut rest: Vec<(Monomial, BigInt)> = gamma.terms().to_vec();
    let mut out = Vec::new();
    let mut e = 0u32;
    while !rest.is_empty() {
        let mut next = Vec::with_capacity(rest.len());
        for (m, c) in rest {
            let digit = smod(&c, xi);
            if !digit.is_zero() {
                let mut mm = m.clone();
                mm.set(v, e);
                out.push((mm, digit.clone()));
            }
            let q = (c - digit) / xi;
            if !q.is_zero() {
                next.push((m, q));
            }
        }
        rest = next;
        e += 1;
    }
    Poly::from_terms(out)
}

/// Gcd including the integer content of both inputs.
fn full_gcd(a: &Poly, b: &Poly) -> Poly {
    let c = a.integer_content().gcd(&b.integer_content());
    super::gcd::gcd(a, b).scale(&c)
}

/// Normalized gcd of `a` and `b` (both nonzero, primitive over the
/// integers), or `None` if every evaluation point was unlucky.
pub(crate) fn heuristic_gcd(a: &Poly, b: &Poly, v: VarId) -> Option<Poly> {
    let bound = max_norm(a).min(max_norm(b));
    let mut xi: BigInt = bound * 2 + 29;
    let deg = a.degree(v).max(b.degree(v)).max(1) as u64;
    for _ in 0..ATTEMPTS {
        if xi.bits() * deg > MAX_IMAGE_BITS {
            return None;
        }
        let at = [(v, Binding::Poly(Poly::constant(xi.clone())))];
        let alpha = a.substitute(&at);
        let beta = b.substitute(&at);
        if !alpha.is_zero() && !beta.is_zero() {
            let gamma = full_gcd(&alpha, &beta);
            let candidate = xi_adic(&gamma, &xi, v);
            if !candidate.is_zero() {
                let candidate = candidate.normalize();
                if exact_div(a, &candidate).is_ok() && exact_div(b, &candidate).is_ok() {
                    return Some(candidate);
                }
            }
        }
        xi = &xi * 73794 / 27011;
        if xi.is_one() {
            xi += 2;
        }
    }
    None
}
