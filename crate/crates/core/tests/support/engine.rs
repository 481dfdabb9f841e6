//! Engine properties shared by the property tests and the acceptance suite.

use num_bigint::BigInt;
use offdeg::formulas::{build_auxiliary_s, build_normal_n, resultant_homogeneity_degree};
use offdeg::poly::{
    content_pp, divides, exact_div, gcd, resultant_with, sets, Binding, Monomial, Poly, ResultantMethod, VarId,
    VarSet,
};
use offdeg::{ImplicitCurve, Universe};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

pub const CASES: u32 = 1000;

const XYZ: &[VarId] = &[VarId::Y1, VarId::Y2, VarId::X1];
const YX: &[VarId] = &[VarId::Y1, VarId::X1];
const Y12: &[VarId] = &[VarId::Y1, VarId::Y2];

fn poly_in(vars: &'static [VarId], max_exp: u32, max_terms: usize, coeff: i64) -> impl Strategy<Value = Poly> {
    let term = (proptest::collection::vec(0..=max_exp, vars.len()), -coeff..=coeff);
    proptest::collection::vec(term, 0..=max_terms).prop_map(move |terms| {
        Poly::from_terms(terms.into_iter().map(|(exps, c)| {
            let mut m = Monomial::one();
            for (v, e) in vars.iter().zip(exps) {
                m.set(*v, e);
            }
            (m, BigInt::from(c))
        }))
    })
}

fn small() -> impl Strategy<Value = Poly> {
    poly_in(XYZ, 3, 6, 20)
}

fn nonzero_in(vars: &'static [VarId], max_exp: u32, max_terms: usize) -> impl Strategy<Value = Poly> {
    poly_in(vars, max_exp, max_terms, 9).prop_filter("nonzero", |p| !p.is_zero())
}

/// Positive degree in `y1`, coefficients in `x1`.
fn in_y1(max_deg: u32) -> impl Strategy<Value = Poly> {
    poly_in(YX, max_deg, 4, 9).prop_filter("depends on y1", |p| p.degree(VarId::Y1) >= 1)
}

fn curve(max_deg: u32) -> impl Strategy<Value = ImplicitCurve> {
    poly_in(Y12, max_deg, 5, 6).prop_filter_map("valid curve", move |f| {
        if f.total_degree() > max_deg as i64 {
            return None;
        }
        ImplicitCurve::validate(f, &Universe::new())
            .ok()
            .filter(|c| c.big_f().degree(VarId::Y3) >= 1)
    })
}

fn runner() -> TestRunner {
    TestRunner::new(Config {
        cases: CASES,
        failure_persistence: None,
        ..Config::default()
    })
}

fn report<T: std::fmt::Debug>(r: Result<(), proptest::test_runner::TestError<T>>) -> Result<(), String> {
    r.map_err(|e| e.to_string())
}

pub fn ring_addition() -> Result<(), String> {
    report(runner().run(&(small(), small(), small()), |(a, b, c)| {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        prop_assert_eq!(&a + &Poly::zero(), a.clone());
        Ok(())
    }))
}

pub fn ring_multiplication() -> Result<(), String> {
    report(runner().run(&(small(), small(), small()), |(a, b, c)| {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &Poly::one(), a.clone());
        Ok(())
    }))
}

pub fn ring_distributivity() -> Result<(), String> {
    report(runner().run(&(small(), small(), small()), |(a, b, c)| {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        Ok(())
    }))
}

pub fn leibniz() -> Result<(), String> {
    report(runner().run(&(small(), small(), 0usize..3), |(a, b, v)| {
        let v = XYZ[v];
        let lhs = (&a * &b).derivative(v);
        let rhs = &(&a.derivative(v) * &b) + &(&a * &b.derivative(v));
        prop_assert_eq!(lhs, rhs);
        Ok(())
    }))
}

pub fn exact_division() -> Result<(), String> {
    report(runner().run(&(small(), nonzero_in(XYZ, 2, 4)), |(a, b)| {
        prop_assert_eq!(exact_div(&(&a * &b), &b).unwrap(), a);
        Ok(())
    }))
}

pub fn gcd_divisibility() -> Result<(), String> {
    let s = || nonzero_in(XYZ, 2, 3);
    report(runner().run(&(s(), s(), s()), |(a, b, c)| {
        let (p, q) = (&a * &c, &b * &c);
        let g = gcd(&p, &q);
        prop_assert!(divides(&g, &p));
        prop_assert!(divides(&g, &q));
        prop_assert!(divides(&c.primitive_signed(), &g));
        prop_assert_eq!(gcd(&q, &p), g.clone());
        prop_assert_eq!(g.clone(), g.normalize());
        Ok(())
    }))
}

pub fn content_primitive_part() -> Result<(), String> {
    report(runner().run(&(small(), 0usize..3), |(p, split)| {
        let main = match split {
            0 => VarSet::of(&[VarId::Y1]),
            1 => VarSet::of(&[VarId::Y1, VarId::Y2]),
            _ => VarSet::of(&[VarId::X1]),
        };
        let (c, pp) = content_pp(&p, main);
        prop_assert_eq!(&c * &pp, p.clone());
        if !p.is_zero() {
            prop_assert!(c.degree_in(main) <= 0);
            prop_assert!(content_pp(&pp, main).0.is_one());
        }
        Ok(())
    }))
}

pub fn resultant_methods_agree() -> Result<(), String> {
    report(runner().run(&(in_y1(3), in_y1(3)), |(p, q)| {
        let sub = resultant_with(&p, &q, VarId::Y1, ResultantMethod::Subresultant).unwrap();
        let bar = resultant_with(&p, &q, VarId::Y1, ResultantMethod::Bareiss).unwrap();
        let int = resultant_with(&p, &q, VarId::Y1, ResultantMethod::Interpolation).unwrap();
        prop_assert_eq!(&sub, &bar);
        prop_assert_eq!(&sub, &int);
        Ok(())
    }))
}

pub fn resultant_specialization() -> Result<(), String> {
    report(runner().run(&(in_y1(3), in_y1(3), -5i64..=5), |(p, q, a)| {
        let at = [(VarId::X1, Binding::from(a))];
        let (ps, qs) = (p.substitute(&at), q.substitute(&at));
        prop_assume!(ps.degree(VarId::Y1) == p.degree(VarId::Y1));
        prop_assume!(qs.degree(VarId::Y1) == q.degree(VarId::Y1));
        let full = resultant_with(&p, &q, VarId::Y1, ResultantMethod::Subresultant).unwrap();
        let spec = resultant_with(&ps, &qs, VarId::Y1, ResultantMethod::Subresultant).unwrap();
        prop_assert_eq!(full.substitute(&at), spec);
        Ok(())
    }))
}

pub fn resultant_multiplicativity() -> Result<(), String> {
    report(runner().run(&(in_y1(2), in_y1(2), in_y1(2)), |(p, r, q)| {
        let res = |a: &Poly, b: &Poly| resultant_with(a, b, VarId::Y1, ResultantMethod::Subresultant).unwrap();
        prop_assert_eq!(res(&(&p * &r), &q), &res(&p, &q) * &res(&r, &q));
        Ok(())
    }))
}

pub fn formula_homogeneity() -> Result<(), String> {
    report(runner().run(&curve(3), |c| {
        let s = build_auxiliary_s(&c).unwrap();
        let n = build_normal_n(&c).unwrap();
        for aux in [s, n] {
            let r = resultant_with(c.big_f(), &aux, VarId::Y3, ResultantMethod::Subresultant).unwrap();
            prop_assume!(!r.is_zero());
            prop_assert!(r.is_homogeneous_in(sets::y12()));
            prop_assert_eq!(r.degree_in(sets::y12()), resultant_homogeneity_degree(c.big_f(), &aux));
        }
        Ok(())
    }))
}

pub type Property = (&'static str, fn() -> Result<(), String>);

pub const ALL: &[Property] = &[
    ("ring addition", ring_addition),
    ("ring multiplication", ring_multiplication),
    ("distributivity", ring_distributivity),
    ("Leibniz rule", leibniz),
    ("exact division", exact_division),
    ("gcd divisibility", gcd_divisibility),
    ("content times primitive part", content_primitive_part),
    ("resultant methods agree", resultant_methods_agree),
    ("resultant specialization", resultant_specialization),
    ("resultant multiplicativity", resultant_multiplicativity),
    ("formula resultant homogeneity", formula_homogeneity),
];
