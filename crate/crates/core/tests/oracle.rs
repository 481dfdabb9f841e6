use num_bigint::BigInt;
use num_rational::BigRational;
use offdeg::formulas::{degree_report, CurveInput, FormulaOptions};
use offdeg::oracle::{
    eliminate, has_odd_power, rational_ratio, specialization_coherent, specialize_distance, specialized_oracle,
    DistanceMode, OracleDegrees, OracleError, OracleOptions,
};
use offdeg::parser::{parse_in_role, parse_polynomial, ExprRole};
use offdeg::poly::{gcd, VarId};
use offdeg::{ImplicitCurve, Poly, Universe};

fn curve(src: &str) -> ImplicitCurve {
    let mut u = Universe::new();
    let f = parse_in_role(src, ExprRole::ImplicitCurve, &mut u).unwrap();
    ImplicitCurve::validate(f, &u).unwrap()
}

fn offset_poly(src: &str) -> Poly {
    parse_polynomial(src, &["x1", "x2", "d"], &mut Universe::new()).unwrap()
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn degrees(d1: u32, d2: u32, dd: Option<u32>) -> OracleDegrees {
    OracleDegrees {
        delta1: d1,
        delta2: d2,
        delta_d: dd,
    }
}

fn formula_degrees(c: &ImplicitCurve) -> (u32, u32, Option<u32>) {
    let r = degree_report(CurveInput::Implicit(c), &FormulaOptions::default()).unwrap();
    (r.delta1, r.delta2, r.delta_d)
}

#[test]
fn unit_circle_is_two_concentric_circles() {
    let res = eliminate(&curve("y1^2+y2^2-1"), DistanceMode::Symbolic, &OracleOptions::default()).unwrap();
    let expected = offset_poly("(x1^2+x2^2-(1+d)^2)*(x1^2+x2^2-(1-d)^2)");
    assert!(rational_ratio(&res.g_candidate, &expected).is_some(), "{}", res.g_candidate);
    assert_eq!(res.degrees(), degrees(4, 4, Some(4)));
}

#[test]
fn parabola_offset_matches_printed_sextic() {
    let printed = offset_poly(
        "-48*d^2*x1^4-32*d^2*x1^2*x2^2+48*d^4*x1^2+16*x1^6+16*x2^2*x1^4+16*d^4*x2^2\
         -16*d^6-40*x2*x1^4-32*x1^2*x2^3+8*d^2*x2*x1^2-32*d^2*x2^3+32*d^4*x2+x1^4\
         +32*x1^2*x2^2+16*x2^4-20*d^2*x1^2-8*d^2*x2^2-8*d^4-2*x2*x1^2-8*x2^3\
         +8*x2*d^2+x2^2-d^2",
    );
    let c = curve("y2-y1^2");
    let res = eliminate(&c, DistanceMode::Symbolic, &OracleOptions::default()).unwrap();
    let scale = rational_ratio(&res.g_candidate, &printed).expect("equal up to a rational scale");
    assert!(scale == rat(1, 1) || scale == rat(-1, 1));
    assert_eq!(res.degrees(), degrees(6, 4, Some(6)));
    assert!(!has_odd_power(&res.g_candidate, VarId::D));
    let (d1, d2, dd) = formula_degrees(&c);
    assert_eq!(res.degrees(), degrees(d1, d2, dd));
}

#[test]
fn symbolic_offset_specializes_to_the_specialized_offset() {
    let opts = OracleOptions::default();
    for src in ["y2-y1^2", "y1^2+y2^2-1", "4*y1^2+9*y2^2-36"] {
        let c = curve(src);
        let sym = eliminate(&c, DistanceMode::Symbolic, &opts).unwrap();
        for d0 in [rat(3, 2), rat(5, 7)] {
            assert!(specialization_coherent(&sym, &d0), "{src} at {d0}");
            let spec = eliminate(&c, DistanceMode::Specialized(d0.clone()), &opts).unwrap();
            let from_sym = specialize_distance(&sym.g_candidate, &d0);
            let g = gcd(&from_sym, &spec.g_candidate);
            assert_eq!(g, spec.g_candidate.normalize(), "{src} at {d0}");
            assert_eq!(spec.degrees().delta1, sym.degrees().delta1);
            assert_eq!(spec.degrees().delta2, sym.degrees().delta2);
        }
    }
}

#[test]
fn conics_agree_with_formulas_symbolically() {
    for src in ["4*y1^2+9*y2^2-36", "9*y1^2-4*y2^2-36", "y1*y2-1", "y2+1+2*y1+y1^2"] {
        let c = curve(src);
        let res = eliminate(&c, DistanceMode::Symbolic, &OracleOptions::default()).unwrap();
        let (d1, d2, dd) = formula_degrees(&c);
        assert_eq!(res.degrees(), degrees(d1, d2, dd), "{src}");
    }
}

#[test]
fn hyperbola_at_distance_two() {
    let out = specialized_oracle(&curve("y1*y2-1"), Some(rat(2, 1)), &OracleOptions::default()).unwrap();
    assert_eq!(out.result.degrees(), degrees(6, 6, None));
    assert_eq!(out.attempts[0].d0, rat(2, 1));
}

#[test]
fn cusp_at_distance_three() {
    let c = curve("y1^3-y2^2");
    let out = specialized_oracle(&c, Some(rat(3, 1)), &OracleOptions::default()).unwrap();
    assert_eq!(out.result.degrees(), degrees(8, 6, None));
    let (d1, d2, _) = formula_degrees(&c);
    assert_eq!((d1, d2), (8, 6));
}

#[test]
fn same_seed_same_result() {
    let c = curve("y1*y2-1");
    let opts = OracleOptions {
        seed: 99,
        ..OracleOptions::default()
    };
    let a = specialized_oracle(&c, None, &opts).unwrap();
    let b = specialized_oracle(&c, None, &opts).unwrap();
    assert_eq!(a.result.g_candidate, b.result.g_candidate);
    assert_eq!(
        a.attempts.iter().map(|t| t.d0.clone()).collect::<Vec<_>>(),
        b.attempts.iter().map(|t| t.d0.clone()).collect::<Vec<_>>()
    );
}

#[test]
fn cost_guards_and_input_checks() {
    let opts = OracleOptions::default();
    let folium = curve("y1^3+y2^3-3*y1*y2");
    assert!(matches!(
        eliminate(&folium, DistanceMode::Symbolic, &opts),
        Err(OracleError::CostGuard(_))
    ));
    let quintic = curve("y1^5+y2^2-1");
    assert!(matches!(
        specialized_oracle(&quintic, Some(rat(1, 1)), &opts),
        Err(OracleError::CostGuard(_))
    ));
    let circle = curve("y1^2+y2^2-1");
    assert!(eliminate(&circle, DistanceMode::Specialized(rat(-1, 2)), &opts).is_err());
    let mut u = Universe::new();
    let f = parse_in_role("y1^2+y2^2-r^2", ExprRole::ImplicitCurve, &mut u).unwrap();
    let with_param = ImplicitCurve::validate(f, &u).unwrap();
    assert!(eliminate(&with_param, DistanceMode::Symbolic, &opts).is_err());
}
