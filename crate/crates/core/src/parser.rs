//! Polynomial expression parser.
//!
//! Grammar (whitespace is ignored between tokens):
//!
//! ```text
//! expr    := [sign] term (sign term)*
//! sign    := '+' | '-'
//! term    := factor ('*' factor)*
//! factor  := primary ['^' INT]
//! primary := INT ['/' INT] | NAME | '(' expr ')'
//! NAME    := [a-zA-Z][a-zA-Z0-9]*
//! INT     := [0-9]+
//! ```
//!
//! Multiplication is always explicit (`y1*y2`, never `y1y2`), exponents are
//! nonnegative integer literals, and a sign is only accepted at the start of
//! an expression or parenthesized group. Rational literals are cleared by a
//! single global rescale, so `y1/2` is rejected but `1/2*y1 + 1/3` parses to
//! `3*y1 + 2`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::formulas::{FormulaError, RationalParametrization};
use crate::poly::{is_reserved, Binding, Poly, Universe, VarId};

pub const MAX_EXPONENT: u32 = 256;
pub const MAX_DEGREE: i64 = 512;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("parse error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown variable `{name}` at position {position}")]
    UnknownVariable { name: String, position: usize },
    #[error("in {role}: {source}")]
    InRole {
        role: &'static str,
        #[source]
        source: Box<ParseError>,
    },
    #[error("`{0}` is not a rational number (expected INT or INT/INT)")]
    BadRational(String),
    #[error(transparent)]
    Parametrization(#[from] FormulaError),
}

impl ParseError {
    fn syntax(position: usize, message: impl Into<String>) -> Self {
        ParseError::Syntax {
            position,
            message: message.into(),
        }
    }
}

/// What an expression stands for; selects the admissible variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExprRole {
    ImplicitCurve,
    ParamNumeratorX,
    ParamNumeratorY,
    ParamDenominator,
}

impl ExprRole {
    pub fn label(self) -> &'static str {
        match self {
            ExprRole::ImplicitCurve => "implicit curve",
            ExprRole::ParamNumeratorX => "x numerator",
            ExprRole::ParamNumeratorY => "y numerator",
            ExprRole::ParamDenominator => "denominator",
        }
    }

    pub fn coordinate_names(self) -> &'static [&'static str] {
        match self {
            ExprRole::ImplicitCurve => &["y1", "y2"],
            _ => &["t"],
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Int(BigInt),
    Name(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

fn tokenize(src: &str) -> Result<Vec<(usize, Token)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        let start = i;
        let tok = match b {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => Token::Plus,
            b'-' => Token::Minus,
            b'*' => Token::Star,
            b'^' => Token::Caret,
            b'/' => Token::Slash,
            b'(' => Token::LParen,
            b')' => Token::RParen,
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i < bytes.len() && bytes[i].is_ascii_alphabetic() {
                    return Err(ParseError::syntax(i, "missing `*` between number and name"));
                }
                out.push((start, Token::Int(src[start..i].parse().expect("ascii digits"))));
                continue;
            }
            b if b.is_ascii_alphabetic() => {
                while i < bytes.len() && bytes[i].is_ascii_alphanumeric() {
                    i += 1;
                }
                out.push((start, Token::Name(src[start..i].to_string())));
                continue;
            }
            _ => {
                let ch = src[i..].chars().next().unwrap_or('?');
                return Err(ParseError::syntax(i, format!("unexpected character `{ch}`")));
            }
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

/// Names in `src` that are neither reserved nor already known, in order of
/// first appearance. These are the candidate curve parameters.
pub fn scan_parameters(src: &str) -> Vec<String> {
    let mut names: Vec<String> = Vec::new();
    if let Ok(tokens) = tokenize(src) {
        for (_, t) in tokens {
            if let Token::Name(n) = t {
                if !is_reserved(&n) && !names.contains(&n) {
                    names.push(n);
                }
            }
        }
    }
    names
}

/// Value of a (sub)expression: `poly / den` with `gcd(content(poly), den) = 1`.
#[derive(Clone)]
struct Scaled {
    poly: Poly,
    den: BigInt,
}

impl Scaled {
    fn new(poly: Poly, den: BigInt) -> Self {
        let g = poly.integer_content().gcd(&den);
        if g.is_zero() || g.is_one() {
            Scaled { poly, den }
        } else {
            Scaled {
                poly: poly.div_exact_int(&g),
                den: den / g,
            }
        }
    }

    fn add(&self, other: &Scaled, negate: bool) -> Scaled {
        let l = self.den.lcm(&other.den);
        let a = self.poly.scale(&(&l / &self.den));
        let b = other.poly.scale(&(&l / &other.den));
        Scaled::new(if negate { &a - &b } else { &a + &b }, l)
    }

    fn mul(&self, other: &Scaled) -> Scaled {
        Scaled::new(&self.poly * &other.poly, &self.den * &other.den)
    }
}

trait DivExactInt {
    fn div_exact_int(&self, g: &BigInt) -> Poly;
}

impl DivExactInt for Poly {
    fn div_exact_int(&self, g: &BigInt) -> Poly {
        Poly::from_terms(self.terms().iter().map(|(m, c)| (m.clone(), c / g)))
    }
}

struct Parser<'a> {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
    allowed: &'a [&'a str],
    universe: &'a mut Universe,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<Scaled, ParseError> {
        let negate_first = match self.peek() {
            Some(Token::Minus) => {
                self.bump();
                true
            }
            Some(Token::Plus) => {
                self.bump();
                false
            }
            _ => false,
        };
        let mut acc = self.term()?;
        if negate_first {
            acc = Scaled::new(-acc.poly, acc.den);
        }
        loop {
            let negate = match self.peek() {
                Some(Token::Plus) => false,
                Some(Token::Minus) => true,
                _ => break,
            };
            self.bump();
            let rhs = self.term()?;
            acc = acc.add(&rhs, negate);
            self.check_degree(&acc)?;
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Scaled, ParseError> {
        let mut acc = self.factor()?;
        while let Some(Token::Star) = self.peek() {
            self.bump();
            let rhs = self.factor()?;
            acc = acc.mul(&rhs);
            self.check_degree(&acc)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Scaled, ParseError> {
        let base = self.primary()?;
        if let Some(Token::Caret) = self.peek() {
            self.bump();
            let at = self.offset();
            let e = match self.bump() {
                Some(Token::Int(e)) => e,
                _ => return Err(ParseError::syntax(at, "exponent must be a nonnegative integer literal")),
            };
            let e: u32 = match u32::try_from(&e) {
                Ok(e) if e <= MAX_EXPONENT => e,
                _ => return Err(ParseError::syntax(at, format!("exponent exceeds {MAX_EXPONENT}"))),
            };
            if base.poly.total_degree() * e as i64 > MAX_DEGREE {
                return Err(ParseError::syntax(at, format!("degree exceeds {MAX_DEGREE}")));
            }
            if let Some(Token::Caret) = self.peek() {
                return Err(ParseError::syntax(self.offset(), "chained exponents need parentheses"));
            }
            return Ok(Scaled::new(base.poly.pow(e), base.den.pow(e)));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Scaled, ParseError> {
        let at = self.offset();
        match self.bump() {
            Some(Token::Int(n)) => {
                if let Some(Token::Slash) = self.peek() {
                    self.bump();
                    let dat = self.offset();
                    match self.bump() {
                        Some(Token::Int(d)) if !d.is_zero() => Ok(Scaled::new(Poly::constant(n), d)),
                        Some(Token::Int(_)) => Err(ParseError::syntax(dat, "zero denominator")),
                        _ => Err(ParseError::syntax(dat, "`/` only forms rational literals INT/INT")),
                    }
                } else {
                    Ok(Scaled::new(Poly::constant(n), BigInt::one()))
                }
            }
            Some(Token::Name(name)) => {
                if !self.allowed.contains(&name.as_str()) {
                    return Err(ParseError::UnknownVariable { name, position: at });
                }
                let v = match self.universe.lookup(&name) {
                    Some(v) => v,
                    None => self.universe.intern_param(&name),
                };
                Ok(Scaled::new(Poly::var(v), BigInt::one()))
            }
            Some(Token::LParen) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some(Token::RParen) => Ok(inner),
                    _ => Err(ParseError::syntax(self.tokens.get(self.pos - 1).map(|(p, _)| *p).unwrap_or(self.end), "expected `)`")),
                }
            }
            Some(tok) => Err(ParseError::syntax(at, format!("unexpected {}", describe(&tok)))),
            None => Err(ParseError::syntax(at, "unexpected end of input")),
        }
    }

    fn check_degree(&self, s: &Scaled) -> Result<(), ParseError> {
        if s.poly.total_degree() > MAX_DEGREE {
            Err(ParseError::syntax(self.offset(), format!("degree exceeds {MAX_DEGREE}")))
        } else {
            Ok(())
        }
    }
}

fn describe(t: &Token) -> String {
    match t {
        Token::Int(n) => format!("number `{n}`"),
        Token::Name(n) => format!("name `{n}`"),
        Token::Plus => "`+`".into(),
        Token::Minus => "`-`".into(),
        Token::Star => "`*`".into(),
        Token::Caret => "`^`".into(),
        Token::Slash => "`/`".into(),
        Token::LParen => "`(`".into(),
        Token::RParen => "`)`".into(),
    }
}

/// Parses `src` accepting exactly the variable names in `allowed`.
///
/// Names that are not fixed variables are interned into `universe` as
/// parameters. Rational literals are cleared to integer coefficients.
pub fn parse_polynomial(src: &str, allowed: &[&str], universe: &mut Universe) -> Result<Poly, ParseError> {
    for name in allowed {
        if universe.lookup(name).is_none() && is_reserved(name) {
            return Err(ParseError::UnknownVariable {
                name: name.to_string(),
                position: 0,
            });
        }
    }
    let tokens = tokenize(src)?;
    if tokens.is_empty() {
        return Err(ParseError::syntax(0, "empty expression"));
    }
    let mut p = Parser {
        tokens,
        pos: 0,
        end: src.len(),
        allowed,
        universe,
    };
    let value = p.expr()?;
    if p.pos < p.tokens.len() {
        let (at, tok) = &p.tokens[p.pos];
        return Err(ParseError::syntax(*at, format!("unexpected {}", describe(tok))));
    }
    Ok(value.poly)
}

/// Parses an expression in a given role: the role's coordinates plus any
/// non-reserved names, which become parameters.
pub fn parse_in_role(src: &str, role: ExprRole, universe: &mut Universe) -> Result<Poly, ParseError> {
    let params = scan_parameters(src);
    let mut allowed: Vec<&str> = role.coordinate_names().to_vec();
    allowed.extend(params.iter().map(String::as_str));
    parse_polynomial(src, &allowed, universe).map_err(|e| ParseError::InRole {
        role: role.label(),
        source: Box::new(e),
    })
}

/// Parses and validates a rational parametrization `(X/W, Y/W)` in `t`.
pub fn parse_parametrization(
    x_num: &str,
    y_num: &str,
    denom: &str,
    reduce: bool,
    universe: &mut Universe,
) -> Result<RationalParametrization, ParseError> {
    let x = parse_in_role(x_num, ExprRole::ParamNumeratorX, universe)?;
    let y = parse_in_role(y_num, ExprRole::ParamNumeratorY, universe)?;
    let w = parse_in_role(denom, ExprRole::ParamDenominator, universe)?;
    Ok(RationalParametrization::new(x, y, w, reduce, universe)?)
}

/// Parses `INT` or `INT/INT` with an optional leading sign.
pub fn parse_rational(text: &str) -> Result<BigRational, ParseError> {
    let bad = || ParseError::BadRational(text.to_string());
    let t = text.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    let unsigned = num.strip_prefix(['-', '+']).unwrap_or(num);
    if !digits(unsigned) || !digits(den) {
        return Err(bad());
    }
    let n: BigInt = num.parse().map_err(|_| bad())?;
    let d: BigInt = den.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

/// Replaces parameters by rational values. Names that do not occur in
/// `universe` are ignored; denominators are cleared, so only the zero set
/// of `p` is preserved.
pub fn bind_parameters(p: &Poly, universe: &Universe, values: &BTreeMap<String, BigRational>) -> Poly {
    let bindings: Vec<(VarId, Binding)> = values
        .iter()
        .filter_map(|(name, v)| {
            let id = universe.lookup(name)?;
            (id.index() >= VarId::FIXED).then(|| (id, Binding::Rational(v.clone())))
        })
        .collect();
    p.substitute(&bindings)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(src: &str, allowed: &[&str]) -> Result<Poly, ParseError> {
        parse_polynomial(src, allowed, &mut Universe::new())
    }

    #[test]
    fn circle_with_parameter() {
        let mut u = Universe::new();
        let p = parse_polynomial("y1^2 + y2^2 - r^2", &["y1", "y2", "r"], &mut u).unwrap();
        let r = u.lookup("r").unwrap();
        assert_eq!(r, VarId(8));
        let expected = Poly::var(VarId::Y1).pow(2) + Poly::var(VarId::Y2).pow(2) - Poly::var(r).pow(2);
        assert_eq!(p, expected);
    }

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("-3/6").unwrap(), BigRational::new((-1).into(), 2.into()));
        assert_eq!(parse_rational(" 5 ").unwrap(), BigRational::from_integer(5.into()));
        for bad in ["", "1/0", "a", "1/-2", "1.5", "--1"] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn binding_parameters() {
        let mut u = Universe::new();
        let p = parse_in_role("y1^2+y2^2-r^2", ExprRole::ImplicitCurve, &mut u).unwrap();
        let values = BTreeMap::from([("r".to_string(), parse_rational("1/2").unwrap())]);
        let bound = bind_parameters(&p, &u, &values);
        let expected = parse_in_role("4*y1^2+4*y2^2-1", ExprRole::ImplicitCurve, &mut Universe::new()).unwrap();
        assert_eq!(bound, expected);
    }

    #[test]
    fn cardioid() {
        let p = parse("(y1^2+4*y2+y2^2)^2 - 16*y1^2 - 16*y2^2", &["y1", "y2"]).unwrap();
        assert_eq!(p.total_degree(), 4);
        assert_eq!(p.len(), 6);
    }

    #[test]
    fn malformed_inputs() {
        assert!(matches!(parse("y1 + + y2", &["y1", "y2"]), Err(ParseError::Syntax { position: 5, .. })));
        assert!(matches!(parse("y1y2", &["y1", "y2"]), Err(ParseError::UnknownVariable { .. })));
        assert!(matches!(parse("2y1", &["y1"]), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse("y1^-1", &["y1"]), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse("y1^2^3", &["y1"]), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse("(y1", &["y1"]), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse("", &["y1"]), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse("y1/2", &["y1"]), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse("1/0", &["y1"]), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse("y1 $ 2", &["y1"]), Err(ParseError::Syntax { position: 3, .. })));
        assert!(matches!(parse("y3", &["y1", "y2"]), Err(ParseError::UnknownVariable { .. })));
    }

    #[test]
    fn rationals_are_cleared_globally() {
        let p = parse("1/2*y1 + 1/3", &["y1"]).unwrap();
        assert_eq!(p, Poly::from_i64(3) * Poly::var(VarId::Y1) + Poly::from_i64(2));
        let q = parse("1/2 + 1/2*y1", &["y1"]).unwrap();
        assert_eq!(q, Poly::var(VarId::Y1) + Poly::one());
        // integer input is left untouched
        let r = parse("6*y1 + 4", &["y1"]).unwrap();
        assert_eq!(r, Poly::from_i64(6) * Poly::var(VarId::Y1) + Poly::from_i64(4));
    }

    #[test]
    fn signs() {
        let p = parse("-y1 + (-y2)", &["y1", "y2"]).unwrap();
        assert_eq!(p, -(Poly::var(VarId::Y1) + Poly::var(VarId::Y2)));
    }

    #[test]
    fn parameters_in_order_of_appearance() {
        let mut u = Universe::new();
        parse_in_role("y2 + a + b*y1 + c*y1^2", ExprRole::ImplicitCurve, &mut u).unwrap();
        let names: Vec<_> = u.params().map(|(_, n)| n.to_string()).collect();
        assert_eq!(names, ["a", "b", "c"]);
        assert!(parse_in_role("t + y1", ExprRole::ImplicitCurve, &mut u).is_err());
    }

    #[test]
    fn parametrizations() {
        let mut u = Universe::new();
        let p = parse_parametrization("t", "t^2", "1", false, &mut u).unwrap();
        assert_eq!(p.n2(), &Poly::one());
        parse_parametrization("1-t^2", "2*t", "1+t^2", false, &mut u).unwrap();
        let err = parse_parametrization("t", "t", "t", false, &mut u).unwrap_err();
        assert!(matches!(err, ParseError::Parametrization(FormulaError::CommonFactor(ref g)) if g == "t"));
        let err = parse_parametrization("t", "t", "0", false, &mut u).unwrap_err();
        assert!(matches!(err, ParseError::Parametrization(FormulaError::ZeroDenominator)));
    }

    #[test]
    fn display_round_trip() {
        let mut u = Universe::new();
        let p = parse_in_role("(y1^2+y2^2)*(y1^2+y2^2+a*y1)^2-(y1^2-y2^2)^2", ExprRole::ImplicitCurve, &mut u).unwrap();
        let printed = p.display(&u).to_string();
        let q = parse_in_role(&printed, ExprRole::ImplicitCurve, &mut u).unwrap();
        assert_eq!(p, q);
    }
}
