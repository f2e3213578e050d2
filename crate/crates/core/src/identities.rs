//! Commutator identities in U(W(2,2)), written in a small prefix syntax and
//! checked exactly by normal ordering.
//!
//! Expression syntax:
//!
//! ```text
//! expr  := (L idx) | (I idx) | C | C1 | number
//!        | (br expr expr) | (mul expr+) | (add expr+) | (sub expr expr)
//!        | (neg expr) | (scale coeff expr)
//! idx   := integer or affine in one parameter: k, -k, k+1, 2-k, ...
//! coeff := p/q rational or an affine index expression
//! ```
//!
//! A case may be parameterized over an integer range; every instance in the
//! range is checked. Cases marked `expect_pass = false` carry the residual
//! they are expected to leave, so "fails in the recorded direction" is
//! checked exactly.

use std::fmt;

use serde::Deserialize;

use crate::algebra::Generator;
use crate::error::{ParseError, Result};
use crate::pbw::{Orderer, UEElement};
use crate::scalar::{parse_rational, rat, Rational};

const BUILTIN_CORPUS: &str = include_str!("../data/identities.toml");

/// `coef * param + offset`
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Affine {
    pub coef: i64,
    pub offset: i64,
}

impl Affine {
    fn eval(self, param: Option<i64>) -> Option<i64> {
        if self.coef == 0 {
            return Some(self.offset);
        }
        self.coef.checked_mul(param?)?.checked_add(self.offset)
    }

    fn parse(s: &str) -> Option<(Affine, Option<&str>)> {
        let mut coef = 0i64;
        let mut offset = 0i64;
        let mut name: Option<&str> = None;
        let mut rest = s;
        let mut first = true;
        while !rest.is_empty() {
            let (sign, body) = match rest.as_bytes()[0] {
                b'-' => (-1, &rest[1..]),
                b'+' if !first => (1, &rest[1..]),
                _ if first => (1, rest),
                _ => return None,
            };
            first = false;
            let end = body.find(['+', '-']).unwrap_or(body.len());
            let (term, tail) = body.split_at(end);
            rest = tail;
            let digits_end = term
                .find(|c: char| !c.is_ascii_digit())
                .unwrap_or(term.len());
            let (digits, ident) = term.split_at(digits_end);
            if digits.is_empty() && ident.is_empty() {
                return None;
            }
            let k: i64 = if digits.is_empty() {
                1
            } else {
                digits.parse().ok()?
            };
            if ident.is_empty() {
                offset += sign * k;
            } else {
                if !ident.chars().all(|c| c.is_ascii_alphabetic()) {
                    return None;
                }
                if name.is_some_and(|n| n != ident) {
                    return None;
                }
                name = Some(ident);
                coef += sign * k;
            }
        }
        Some((Affine { coef, offset }, name))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Coeff {
    Rational(Rational),
    Affine(Affine),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    L(Affine),
    I(Affine),
    C,
    C1,
    Num(Coeff),
    Br(Box<Expr>, Box<Expr>),
    Mul(Vec<Expr>),
    Add(Vec<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Scale(Coeff, Box<Expr>),
}

impl Expr {
    /// Parses one expression. Returns the expression and the parameter name
    /// it mentions, if any.
    pub fn parse(src: &str) -> Result<(Expr, Option<String>), ParseError> {
        let tokens = tokenize(src);
        let mut p = ExprParser {
            tokens,
            pos: 0,
            param: None,
        };
        let e = p.expr()?;
        if p.pos != p.tokens.len() {
            return Err(p.err("trailing input"));
        }
        Ok((e, p.param))
    }

    /// Evaluates into normal form with `param` bound to the parameter value.
    pub fn eval(&self, param: Option<i64>, orderer: &Orderer) -> Result<UEElement<Rational>> {
        let idx = |a: &Affine| {
            a.eval(param)
                .ok_or_else(|| ParseError::Corpus("unbound or overflowing parameter".into()))
        };
        let coeff = |c: &Coeff| -> Result<Rational> {
            Ok(match c {
                Coeff::Rational(q) => q.clone(),
                Coeff::Affine(a) => rat(idx(a)?),
            })
        };
        Ok(match self {
            Expr::L(a) => {
                UEElement::generator(Generator::L(idx(a)?).validate(orderer.index_limit)?)
            }
            Expr::I(a) => {
                UEElement::generator(Generator::I(idx(a)?).validate(orderer.index_limit)?)
            }
            Expr::C => UEElement::generator(Generator::C),
            Expr::C1 => UEElement::generator(Generator::C1),
            Expr::Num(c) => UEElement::scalar(coeff(c)?),
            Expr::Br(a, b) => {
                orderer.commutator(&a.eval(param, orderer)?, &b.eval(param, orderer)?)?
            }
            Expr::Mul(xs) => {
                let mut acc = UEElement::one();
                for x in xs {
                    acc = orderer.multiply(&acc, &x.eval(param, orderer)?)?;
                }
                acc
            }
            Expr::Add(xs) => {
                let mut acc = UEElement::zero();
                for x in xs {
                    acc = acc.plus(&x.eval(param, orderer)?);
                }
                acc
            }
            Expr::Sub(a, b) => a.eval(param, orderer)?.minus(&b.eval(param, orderer)?),
            Expr::Neg(a) => a.eval(param, orderer)?.negate(),
            Expr::Scale(c, a) => a.eval(param, orderer)?.scale(&coeff(c)?),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Open,
    Close,
    Atom(String),
}

fn tokenize(src: &str) -> Vec<Token> {
    let mut out = Vec::new();
    let mut atom = String::new();
    let flush = |atom: &mut String, out: &mut Vec<Token>| {
        if !atom.is_empty() {
            out.push(Token::Atom(std::mem::take(atom)));
        }
    };
    for ch in src.chars() {
        match ch {
            '(' | ')' => {
                flush(&mut atom, &mut out);
                out.push(if ch == '(' { Token::Open } else { Token::Close });
            }
            c if c.is_whitespace() => flush(&mut atom, &mut out),
            c => atom.push(c),
        }
    }
    flush(&mut atom, &mut out);
    out
}

struct ExprParser {
    tokens: Vec<Token>,
    pos: usize,
    param: Option<String>,
}

impl ExprParser {
    fn err(&self, msg: &str) -> ParseError {
        ParseError::Expression {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn atom(&mut self) -> Result<String, ParseError> {
        match self.next() {
            Some(Token::Atom(a)) => Ok(a),
            _ => Err(self.err("expected atom")),
        }
    }

    fn close(&mut self) -> Result<(), ParseError> {
        match self.next() {
            Some(Token::Close) => Ok(()),
            _ => Err(self.err("expected `)`")),
        }
    }

    fn affine(&mut self, s: &str) -> Result<Affine, ParseError> {
        let (a, name) = Affine::parse(s).ok_or_else(|| self.err("bad index"))?;
        if let Some(name) = name {
            match &self.param {
                Some(p) if p != name => return Err(self.err("more than one parameter")),
                _ => self.param = Some(name.to_string()),
            }
        }
        Ok(a)
    }

    fn coeff(&mut self, s: &str) -> Result<Coeff, ParseError> {
        if s.contains('/') {
            parse_rational(s).map(Coeff::Rational)
        } else {
            self.affine(s).map(Coeff::Affine)
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        match self.next() {
            Some(Token::Atom(a)) => match a.as_str() {
                "C" => Ok(Expr::C),
                "C1" => Ok(Expr::C1),
                _ => self.coeff(&a).map(Expr::Num),
            },
            Some(Token::Open) => {
                let head = self.atom()?;
                let e = match head.as_str() {
                    "L" => {
                        let a = self.atom()?;
                        Expr::L(self.affine(&a)?)
                    }
                    "I" => {
                        let a = self.atom()?;
                        Expr::I(self.affine(&a)?)
                    }
                    "br" => {
                        let a = self.expr()?;
                        Expr::Br(Box::new(a), Box::new(self.expr()?))
                    }
                    "sub" => {
                        let a = self.expr()?;
                        Expr::Sub(Box::new(a), Box::new(self.expr()?))
                    }
                    "neg" => Expr::Neg(Box::new(self.expr()?)),
                    "scale" => {
                        let c = self.atom()?;
                        let c = self.coeff(&c)?;
                        Expr::Scale(c, Box::new(self.expr()?))
                    }
                    "mul" | "add" => {
                        let mut args = vec![self.expr()?];
                        while self.tokens.get(self.pos) != Some(&Token::Close) {
                            if self.pos >= self.tokens.len() {
                                return Err(self.err("unterminated list"));
                            }
                            args.push(self.expr()?);
                        }
                        if head == "mul" {
                            Expr::Mul(args)
                        } else {
                            Expr::Add(args)
                        }
                    }
                    _ => return Err(self.err("unknown operator")),
                };
                self.close()?;
                Ok(e)
            }
            _ => Err(self.err("expected expression")),
        }
    }
}

#[derive(Debug, Deserialize)]
struct RawCorpus {
    case: Vec<RawCase>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCase {
    name: String,
    anchor: String,
    expr: String,
    expected: String,
    expect_pass: bool,
    param: Option<String>,
    range: Option<[i64; 2]>,
    residual: Option<String>,
    note: Option<String>,
}

/// One identity (or one parameterized family of identities).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCase {
    pub name: String,
    pub anchor: String,
    pub expression: Expr,
    pub expected: Expr,
    pub expect_pass: bool,
    /// Parameter name and inclusive range.
    pub param: Option<(String, i64, i64)>,
    /// Residual the case is expected to leave when `expect_pass` is false.
    pub expected_residual: Option<Expr>,
    pub note: Option<String>,
}

impl IdentityCase {
    pub fn param_values(&self) -> Vec<Option<i64>> {
        match &self.param {
            Some((_, lo, hi)) => (*lo..=*hi).map(Some).collect(),
            None => vec![None],
        }
    }
}

fn build_case(raw: RawCase) -> Result<IdentityCase, ParseError> {
    let ctx = |e: ParseError| ParseError::Corpus(format!("case {:?}: {e}", raw.name));
    let mut names = Vec::new();
    let (expression, p) = Expr::parse(&raw.expr).map_err(ctx)?;
    names.extend(p);
    let (expected, p) = Expr::parse(&raw.expected).map_err(ctx)?;
    names.extend(p);
    let expected_residual = match &raw.residual {
        Some(s) => {
            let (e, p) = Expr::parse(s).map_err(ctx)?;
            names.extend(p);
            Some(e)
        }
        None => None,
    };
    let bad = |msg: &str| ParseError::Corpus(format!("case {:?}: {msg}", raw.name));
    if raw.expect_pass == expected_residual.is_some() {
        return Err(bad(
            "`residual` is required exactly when expect_pass = false",
        ));
    }
    let param = match (&raw.param, raw.range) {
        (Some(p), Some([lo, hi])) if lo <= hi => {
            if names.iter().any(|n| n != p) {
                return Err(bad("expression uses an undeclared parameter"));
            }
            Some((p.clone(), lo, hi))
        }
        (None, None) => {
            if !names.is_empty() {
                return Err(bad("expression uses an undeclared parameter"));
            }
            None
        }
        _ => return Err(bad("`param` and a nonempty `range` go together")),
    };
    Ok(IdentityCase {
        name: raw.name,
        anchor: raw.anchor,
        expression,
        expected,
        expect_pass: raw.expect_pass,
        param,
        expected_residual,
        note: raw.note,
    })
}

/// Parses a corpus file (TOML, one `[[case]]` table per identity).
pub fn parse_corpus(src: &str) -> Result<Vec<IdentityCase>, ParseError> {
    let raw: RawCorpus = toml::from_str(src).map_err(|e| ParseError::Corpus(e.to_string()))?;
    raw.case.into_iter().map(build_case).collect()
}

/// The identity corpus shipped with the crate.
pub fn builtin_corpus() -> Vec<IdentityCase> {
    parse_corpus(BUILTIN_CORPUS).expect("built-in corpus parses")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceOutcome {
    pub param: Option<i64>,
    /// `expression - expected` in normal form.
    pub residual: UEElement<Rational>,
    pub passed: bool,
    pub as_expected: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseOutcome {
    pub name: String,
    pub anchor: String,
    pub expect_pass: bool,
    pub instances: Vec<InstanceOutcome>,
}

impl CaseOutcome {
    pub fn passed(&self) -> bool {
        self.instances.iter().all(|i| i.passed)
    }

    /// True when every instance behaves as the corpus records: zero residual
    /// for expected-pass cases, exactly the recorded residual otherwise.
    pub fn as_expected(&self) -> bool {
        self.instances.iter().all(|i| i.as_expected)
    }

    /// One of `pass`, `expected-fail`, `UNEXPECTED-PASS`, `FAIL`.
    pub fn status(&self) -> &'static str {
        match (self.passed(), self.as_expected()) {
            (true, true) => "pass",
            (false, true) => "expected-fail",
            (true, false) => "UNEXPECTED-PASS",
            (false, false) => "FAIL",
        }
    }
}

impl fmt::Display for CaseOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} [{}]", self.status(), self.name, self.anchor)
    }
}

pub fn verify_identity(case: &IdentityCase) -> Result<CaseOutcome> {
    verify_identity_with(case, &Orderer::default())
}

pub fn verify_identity_with(case: &IdentityCase, orderer: &Orderer) -> Result<CaseOutcome> {
    let mut instances = Vec::new();
    for param in case.param_values() {
        let lhs = case.expression.eval(param, orderer)?;
        let rhs = case.expected.eval(param, orderer)?;
        let residual = lhs.minus(&rhs);
        let passed = residual.is_zero();
        let as_expected = match &case.expected_residual {
            None => passed,
            Some(r) => !passed && residual == r.eval(param, orderer)?,
        };
        instances.push(InstanceOutcome {
            param,
            residual,
            passed,
            as_expected,
        });
    }
    Ok(CaseOutcome {
        name: case.name.clone(),
        anchor: case.anchor.clone(),
        expect_pass: case.expect_pass,
        instances,
    })
}

/// Verifies every case, in corpus order.
pub fn verify_corpus(cases: &[IdentityCase]) -> Result<Vec<CaseOutcome>> {
    cases.iter().map(verify_identity).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pbw::PbwMonomial;
    use crate::scalar::ratio;

    fn single(src: &str) -> IdentityCase {
        parse_corpus(src).unwrap().remove(0)
    }

    #[test]
    fn affine_forms() {
        let p = |s| Affine::parse(s).unwrap();
        assert_eq!(p("5").0, Affine { coef: 0, offset: 5 });
        assert_eq!(
            p("-3").0,
            Affine {
                coef: 0,
                offset: -3
            }
        );
        assert_eq!(p("k"), (Affine { coef: 1, offset: 0 }, Some("k")));
        assert_eq!(p("k+1").0, Affine { coef: 1, offset: 1 });
        assert_eq!(
            p("2-k").0,
            Affine {
                coef: -1,
                offset: 2
            }
        );
        assert_eq!(
            p("-l-1").0,
            Affine {
                coef: -1,
                offset: -1
            }
        );
        assert_eq!(p("3m").0, Affine { coef: 3, offset: 0 });
        assert!(Affine::parse("k+m").is_none());
        assert!(Affine::parse("k+").is_none());
        assert!(Affine::parse("1.5").is_none());
    }

    #[test]
    fn parse_errors() {
        assert!(Expr::parse("(br (L 1))").is_err());
        assert!(Expr::parse("(L 1) (L 2)").is_err());
        assert!(Expr::parse("(frob (L 1))").is_err());
        assert!(Expr::parse("(mul (L 1)").is_err());
        assert!(Expr::parse("(add (L k) (I m))").is_err());
        assert!(Expr::parse("(scale 1.5 (L 1))").is_err());
    }

    #[test]
    fn anchor_case_passes() {
        let case = single(
            r#"
            [[case]]
            name = "t"
            anchor = "a"
            expr = "(br (L -2) (I 4))"
            expected = "(scale 6 (I 2))"
            expect_pass = true
            "#,
        );
        let out = verify_identity(&case).unwrap();
        assert!(out.passed() && out.as_expected());
    }

    #[test]
    fn erratum_reports_residual() {
        let case = single(
            r#"
            [[case]]
            name = "t"
            anchor = "a"
            expr = "(br (I -1) (I 6))"
            expected = "(scale 7 (I 5))"
            expect_pass = false
            residual = "(scale -7 (I 5))"
            "#,
        );
        let out = verify_identity(&case).unwrap();
        assert!(!out.passed());
        assert!(out.as_expected());
        let mut expected = UEElement::zero();
        expected.add_term(
            PbwMonomial::from_sorted(vec![Generator::I(5)]).unwrap(),
            &rat(-7),
        );
        assert_eq!(out.instances[0].residual, expected);
    }

    #[test]
    fn wrong_direction_is_not_as_expected() {
        let case = single(
            r#"
            [[case]]
            name = "t"
            anchor = "a"
            expr = "(br (L 1) (L -1))"
            expected = "(scale -1/2 (L 0))"
            expect_pass = false
            residual = "(scale 3/2 (L 0))"
            "#,
        );
        let out = verify_identity(&case).unwrap();
        assert!(!out.passed());
        assert!(!out.as_expected());
        assert_eq!(
            out.instances[0].residual,
            UEElement::generator(Generator::L(0)).scale(&ratio(-3, 2))
        );
    }

    #[test]
    fn parameterized_family() {
        let case = single(
            r#"
            [[case]]
            name = "t"
            anchor = "a"
            expr = "(br (L 1) (I k))"
            expected = "(scale k-1 (I k+1))"
            expect_pass = true
            param = "k"
            range = [-5, 5]
            "#,
        );
        let out = verify_identity(&case).unwrap();
        assert_eq!(out.instances.len(), 11);
        assert!(out.passed());
    }

    #[test]
    fn corpus_validation() {
        let missing_residual = r#"
            [[case]]
            name = "t"
            anchor = "a"
            expr = "(L 1)"
            expected = "(L 1)"
            expect_pass = false
        "#;
        assert!(parse_corpus(missing_residual).is_err());
        let undeclared = r#"
            [[case]]
            name = "t"
            anchor = "a"
            expr = "(L k)"
            expected = "(L k)"
            expect_pass = true
        "#;
        assert!(parse_corpus(undeclared).is_err());
        let unknown_field = r#"
            [[case]]
            name = "t"
            anchor = "a"
            expr = "(L 1)"
            expected = "(L 1)"
            expect_pass = true
            colour = "red"
        "#;
        assert!(parse_corpus(unknown_field).is_err());
    }

    #[test]
    fn builtin_corpus_behaves_as_recorded() {
        let cases = builtin_corpus();
        assert!(cases.len() >= 8);
        let outcomes = verify_corpus(&cases).unwrap();
        for o in &outcomes {
            assert!(
                o.as_expected(),
                "{o}: {:?}",
                o.instances.iter().find(|i| !i.as_expected)
            );
        }
        let errata: Vec<_> = outcomes.iter().filter(|o| !o.expect_pass).collect();
        assert_eq!(errata.len(), 2);
        assert!(errata.iter().all(|o| !o.passed()));
    }
}
