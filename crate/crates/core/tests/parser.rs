use offdeg::parser::{parse_in_role, parse_rational, ExprRole};
use offdeg::Universe;
use proptest::prelude::*;

const ROLES: [ExprRole; 4] = [
    ExprRole::ImplicitCurve,
    ExprRole::ParamNumeratorX,
    ExprRole::ParamNumeratorY,
    ExprRole::ParamDenominator,
];

fn token_soup() -> impl Strategy<Value = String> {
    let token = prop_oneof![
        Just("y1"), Just("y2"), Just("t"), Just("x1"), Just("d"), Just("r"), Just("ab_c"),
        Just("+"), Just("-"), Just("*"), Just("^"), Just("/"), Just("("), Just(")"),
        Just("0"), Just("1"), Just("7"), Just("12345678901234567890"), Just(" "), Just("2/3"),
    ];
    proptest::collection::vec(token, 0..24).prop_map(|v| v.concat())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 2000, ..ProptestConfig::default() })]

    #[test]
    fn arbitrary_text_never_panics(src in "\\PC{0,40}") {
        for role in ROLES {
            let _ = parse_in_role(&src, role, &mut Universe::new());
        }
        let _ = parse_rational(&src);
    }

    #[test]
    fn token_soup_never_panics(src in token_soup()) {
        for role in ROLES {
            let _ = parse_in_role(&src, role, &mut Universe::new());
        }
    }

    #[test]
    fn display_reparses_to_the_same_polynomial(src in token_soup()) {
        let mut u = Universe::new();
        if let Ok(p) = parse_in_role(&src, ExprRole::ImplicitCurve, &mut u) {
            let text = p.display(&u).to_string();
            let mut u2 = Universe::new();
            let q = parse_in_role(&text, ExprRole::ImplicitCurve, &mut u2).unwrap();
            prop_assert_eq!(q.display(&u2).to_string(), text);
        }
    }
}
