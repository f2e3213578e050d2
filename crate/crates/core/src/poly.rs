//! Sparse polynomials over the rationals in the four highest-weight
//! parameters `lambda, c, c0, c1`.
//!
//! Terms are kept in a `BTreeMap` under graded lexicographic order
//! (`lambda > c > c0 > c1`) with no zero coefficients, so equality of
//! polynomials is structural equality.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Signed;

use crate::error::ParseError;
use crate::scalar::{parse_rational, Rational, Scalar};

/// One of the four highest-weight parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    Lambda,
    C,
    C0,
    C1,
}

impl Var {
    pub const ALL: [Var; 4] = [Var::Lambda, Var::C, Var::C0, Var::C1];

    pub fn name(self) -> &'static str {
        match self {
            Var::Lambda => "lambda",
            Var::C => "c",
            Var::C0 => "c0",
            Var::C1 => "c1",
        }
    }

    fn slot(self) -> usize {
        self as usize
    }

    fn from_name(s: &str) -> Option<Var> {
        Var::ALL.into_iter().find(|v| v.name() == s)
    }
}

/// Exponent vector packed 16 bits per variable, `lambda` in the high bits.
/// Deriving `Ord` on `(degree, packed)` gives graded lex order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    degree: u32,
    packed: u64,
}

impl Monomial {
    pub const ONE: Monomial = Monomial {
        degree: 0,
        packed: 0,
    };

    pub fn var(v: Var) -> Monomial {
        Monomial::ONE.with(v, 1)
    }

    pub fn from_exponents(e: [u16; 4]) -> Monomial {
        let packed = e.iter().fold(0u64, |acc, &x| (acc << 16) | u64::from(x));
        Monomial {
            degree: e.iter().map(|&x| u32::from(x)).sum(),
            packed,
        }
    }

    pub fn exponents(self) -> [u16; 4] {
        let mut out = [0u16; 4];
        for (i, slot) in out.iter_mut().enumerate() {
            *slot = ((self.packed >> (16 * (3 - i))) & 0xffff) as u16;
        }
        out
    }

    fn with(self, v: Var, power: u16) -> Monomial {
        let mut e = self.exponents();
        e[v.slot()] += power;
        Monomial::from_exponents(e)
    }

    pub fn degree(self) -> u32 {
        self.degree
    }

    fn mul(self, rhs: Monomial) -> Monomial {
        let (a, b) = (self.exponents(), rhs.exponents());
        let mut e = [0u16; 4];
        for i in 0..4 {
            e[i] = a[i]
                .checked_add(b[i])
                .expect("polynomial exponent overflow");
        }
        Monomial::from_exponents(e)
    }

    fn div(self, rhs: Monomial) -> Option<Monomial> {
        let (a, b) = (self.exponents(), rhs.exponents());
        let mut e = [0u16; 4];
        for i in 0..4 {
            e[i] = a[i].checked_sub(b[i])?;
        }
        Some(Monomial::from_exponents(e))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (v, e) in Var::ALL.into_iter().zip(self.exponents()) {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            f.write_str(v.name())?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// Polynomial in `lambda, c, c0, c1` with rational coefficients.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn var(v: Var) -> Poly {
        Poly::term(Rational::one(), Monomial::var(v))
    }

    pub fn constant(q: Rational) -> Poly {
        Poly::term(q, Monomial::ONE)
    }

    pub fn term(coeff: Rational, m: Monomial) -> Poly {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(m, coeff);
        }
        Poly { terms }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    /// The constant value, if the polynomial has no variable terms.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::ONE).cloned(),
            _ => None,
        }
    }

    /// Substitutes exact values for `[lambda, c, c0, c1]`.
    pub fn evaluate(&self, point: &[Rational; 4]) -> Rational {
        let mut acc = Rational::zero();
        for (m, q) in &self.terms {
            let mut t = q.clone();
            for (x, e) in point.iter().zip(m.exponents()) {
                for _ in 0..e {
                    t *= x;
                }
            }
            acc += t;
        }
        acc
    }

    fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    fn add_term(&mut self, m: Monomial, q: &Rational) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                if !q.is_zero() {
                    e.insert(q.clone());
                }
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += q;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self -= q * m * rhs`
    fn sub_scaled(&mut self, q: &Rational, m: Monomial, rhs: &Poly) {
        for (rm, rq) in &rhs.terms {
            self.add_term(rm.mul(m), &-(q * rq));
        }
    }

    /// Parses the canonical text form produced by `Display`, e.g.
    /// `"-4*lambda + 1/2*c"` or `"-4*c0^2"`.
    pub fn parse(s: &str) -> Result<Poly, ParseError> {
        PolyParser::new(s).parse()
    }
}

impl Scalar for Poly {
    fn zero() -> Self {
        Poly::default()
    }

    fn one() -> Self {
        Poly::constant(Rational::one())
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn from_rational(q: &Rational) -> Self {
        Poly::constant(q.clone())
    }

    fn complexity(&self) -> usize {
        self.terms.len()
    }

    fn plus(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(rhs);
        out
    }

    fn add_assign(&mut self, rhs: &Self) {
        for (m, q) in &rhs.terms {
            self.add_term(*m, q);
        }
    }

    fn negate(&self) -> Self {
        Poly {
            terms: self.terms.iter().map(|(m, q)| (*m, -q)).collect(),
        }
    }

    fn times(&self, rhs: &Self) -> Self {
        let mut out = Poly::default();
        for (am, aq) in &self.terms {
            for (bm, bq) in &rhs.terms {
                out.add_term(am.mul(*bm), &(aq * bq));
            }
        }
        out
    }

    fn exact_div(&self, rhs: &Self) -> Option<Self> {
        let (dm, dq) = rhs.leading()?;
        let (dm, dq) = (*dm, dq.clone());
        let mut rem = self.clone();
        let mut quot = Poly::default();
        while let Some((rm, rq)) = rem.leading() {
            let m = rm.div(dm)?;
            let q = rq / &dq;
            rem.sub_scaled(&q, m, rhs);
            quot.add_term(m, &q);
        }
        Some(quot)
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, q)) in self.terms.iter().rev().enumerate() {
            let mag = if i == 0 {
                if q.is_negative() {
                    f.write_str("-")?;
                }
                q.abs()
            } else {
                f.write_str(if q.is_negative() { " - " } else { " + " })?;
                q.abs()
            };
            if *m == Monomial::ONE {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

struct PolyParser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> PolyParser<'a> {
    fn new(src: &'a str) -> Self {
        PolyParser { src, pos: 0 }
    }

    fn err(&self) -> ParseError {
        ParseError::Polynomial(self.src.to_string())
    }

    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(' ') {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn take_while(&mut self, pred: impl Fn(char) -> bool) -> &'a str {
        let start = self.pos;
        while let Some(ch) = self.src[self.pos..].chars().next() {
            if !pred(ch) {
                break;
            }
            self.pos += ch.len_utf8();
        }
        &self.src[start..self.pos]
    }

    fn parse(mut self) -> Result<Poly, ParseError> {
        let mut out = Poly::default();
        let mut negative = false;
        if self.peek() == Some('-') {
            self.pos += 1;
            negative = true;
        }
        loop {
            let t = self.term()?;
            out.add_assign(&if negative { t.negate() } else { t });
            match self.peek() {
                None => return Ok(out),
                Some('+') => negative = false,
                Some('-') => negative = true,
                Some(_) => return Err(self.err()),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<Poly, ParseError> {
        let mut acc = Poly::one();
        loop {
            acc = acc.times(&self.factor()?);
            if self.peek() == Some('*') {
                self.pos += 1;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<Poly, ParseError> {
        match self.peek() {
            Some(ch) if ch.is_ascii_digit() => {
                let lit = self.take_while(|c| c.is_ascii_digit() || c == '/');
                let q = parse_rational(lit).map_err(|_| self.err())?;
                Ok(Poly::constant(q))
            }
            Some(ch) if ch.is_ascii_alphabetic() => {
                let name = self.take_while(|c| c.is_ascii_alphanumeric());
                let v = Var::from_name(name).ok_or_else(|| self.err())?;
                let mut power = 1u16;
                if self.src[self.pos..].starts_with('^') {
                    self.pos += 1;
                    let digits = self.take_while(|c| c.is_ascii_digit());
                    power = digits.parse().map_err(|_| self.err())?;
                }
                Ok(Poly::term(Rational::one(), Monomial::ONE.with(v, power)))
            }
            _ => Err(self.err()),
        }
    }
}
