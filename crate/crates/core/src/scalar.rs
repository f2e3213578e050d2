//! Exact coefficient rings.
//!
//! Every computation in this crate is generic over [`Scalar`], a small
//! commutative-ring contract. Two instantiations exist: [`Rational`]
//! (arbitrary precision rationals) and [`Poly`](crate::poly::Poly)
//! (polynomials in `lambda, c, c0, c1` with rational coefficients).

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::ParseError;

/// Arbitrary precision rational number.
pub type Rational = BigRational;

/// Exact commutative ring used for coefficients.
///
/// Method names avoid `add`/`mul`/`neg` so that generic code never collides
/// with `std::ops` or `num_traits` methods on concrete types.
pub trait Scalar:
    Clone + PartialEq + Eq + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_rational(q: &Rational) -> Self;
    fn plus(&self, rhs: &Self) -> Self;
    fn negate(&self) -> Self;
    fn times(&self, rhs: &Self) -> Self;

    /// Exact quotient, `None` when `rhs` does not divide `self`.
    fn exact_div(&self, rhs: &Self) -> Option<Self>;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    /// Rough size used to prefer cheap pivots during elimination.
    fn complexity(&self) -> usize {
        1
    }

    fn from_int(n: i64) -> Self {
        Self::from_rational(&Rational::from_integer(BigInt::from(n)))
    }

    fn minus(&self, rhs: &Self) -> Self {
        self.plus(&rhs.negate())
    }

    fn add_assign(&mut self, rhs: &Self) {
        *self = self.plus(rhs);
    }
}

impl Scalar for Rational {
    fn zero() -> Self {
        <Rational as Zero>::zero()
    }

    fn one() -> Self {
        <Rational as One>::one()
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn is_one(&self) -> bool {
        One::is_one(self)
    }

    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }

    fn complexity(&self) -> usize {
        (self.numer().bits() + self.denom().bits()) as usize
    }

    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn negate(&self) -> Self {
        -self
    }

    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn exact_div(&self, rhs: &Self) -> Option<Self> {
        if Zero::is_zero(rhs) {
            None
        } else {
            Some(self / rhs)
        }
    }

    fn add_assign(&mut self, rhs: &Self) {
        *self += rhs;
    }
}

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `num / den`. Panics if `den == 0`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"p/q"` or `"p"` with an optional leading minus.
///
/// Anything that is not an exact integer or quotient of integers (floats,
/// exponents, whitespace inside the literal) is rejected.
pub fn parse_rational(s: &str) -> Result<Rational, ParseError> {
    let bad = || ParseError::Rational(s.to_string());
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let num = parse_integer(num).ok_or_else(bad)?;
    let den = match den {
        Some(d) => {
            if d.starts_with(['-', '+']) {
                return Err(bad());
            }
            parse_integer(d).ok_or_else(bad)?
        }
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

fn parse_integer(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix('-').unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// Integer square root of a nonnegative rational, if it is a perfect square
/// of an integer.
pub(crate) fn integer_sqrt(q: &Rational) -> Option<BigInt> {
    if !q.is_integer() || q.is_negative() {
        return None;
    }
    let n = q.to_integer();
    let r = n.sqrt();
    (&r * &r == n).then_some(r)
}
