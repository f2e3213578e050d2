//! Closed-form reducibility predicate for Verma modules, and its
//! cross-validation against contravariant-form determinants.
//!
//! The predicate asks whether `(m^2 - 1)/12 * c1 + 2 c0 = 0` for some nonzero
//! integer `m`. With the bracket implemented in [`algebra`](crate::algebra),
//! the pairing `<I(-n)v, L(-n)v>` equals `-n (2 c0 - (n^2 - 1)/12 * c1)`, so
//! degeneracy actually occurs on `(m^2 - 1)/12 * c1 - 2 c0 = 0`.
//! [`is_reducible_bracket_convention`] implements that sign; the two agree
//! whenever `c0 = 0` or `c1 = 0`.

use num_bigint::BigInt;
use num_traits::Signed;
use serde::Serialize;

use crate::error::Result;
use crate::scalar::{integer_sqrt, rat, Rational, Scalar};
use crate::verma::{HWParams, VermaModule};

/// Outcome of the predicate. `witness` is the positive root `m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Reducibility {
    pub reducible: bool,
    #[serde(rename = "witness_m", serialize_with = "serialize_witness")]
    pub witness: Option<BigInt>,
}

fn serialize_witness<S: serde::Serializer>(w: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
    match w {
        Some(m) => match i64::try_from(m) {
            Ok(small) => s.serialize_i64(small),
            Err(_) => s.serialize_str(&m.to_string()),
        },
        None => s.serialize_none(),
    }
}

impl Reducibility {
    fn irreducible() -> Self {
        Reducibility {
            reducible: false,
            witness: None,
        }
    }

    fn witnessed(m: BigInt) -> Self {
        Reducibility {
            reducible: true,
            witness: Some(m),
        }
    }
}

/// `true` iff `(m^2 - 1)/12 * c1 + 2 c0 = 0` for some nonzero integer `m`.
///
/// For `c1 = 0` this means `c0 = 0` (witness 1); otherwise `m^2 = 1 - 24 c0 / c1`.
pub fn is_reducible(c0: &Rational, c1: &Rational) -> Reducibility {
    solve(c0, c1, -1)
}

/// Same question for `(m^2 - 1)/12 * c1 - 2 c0 = 0`, the zero locus of the
/// determinants under the implemented bracket.
pub fn is_reducible_bracket_convention(c0: &Rational, c1: &Rational) -> Reducibility {
    solve(c0, c1, 1)
}

/// Solves `m^2 = 1 + sign * 24 c0 / c1`.
fn solve(c0: &Rational, c1: &Rational, sign: i64) -> Reducibility {
    if Scalar::is_zero(c1) {
        return if Scalar::is_zero(c0) {
            Reducibility::witnessed(BigInt::from(1))
        } else {
            Reducibility::irreducible()
        };
    }
    let square = rat(1) + rat(24 * sign) * c0 / c1;
    match integer_sqrt(&square) {
        Some(m) if m.is_positive() => Reducibility::witnessed(m),
        _ => Reducibility::irreducible(),
    }
}

/// Determinant and singular-vector probe of one parameter point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossValidation {
    pub lambda: String,
    pub c: String,
    pub c0: String,
    pub c1: String,
    pub max_level: usize,
    pub predicate: Reducibility,
    pub bracket_convention: Reducibility,
    /// Levels `1..=max_level` whose determinant vanishes.
    pub degenerate_levels: Vec<usize>,
    pub first_degenerate_level: Option<usize>,
    /// Dimension of the singular space at the first degenerate level.
    pub singular_vectors_at_first: usize,
    /// Levels `1..=max_level` with a nonzero singular space.
    pub singular_levels: Vec<usize>,
}

impl CrossValidation {
    /// The determinants vanish somewhere up to `max_level`.
    pub fn degenerate(&self) -> bool {
        self.first_degenerate_level.is_some()
    }

    /// Whether a predicate outcome matches the probe: a witness `m` within
    /// the probed range must be exactly the first degenerate level, with a
    /// nonzero singular space there; otherwise no probed level may degenerate.
    pub fn agrees_with(&self, r: &Reducibility) -> bool {
        let expected = r
            .witness
            .as_ref()
            .and_then(|m| usize::try_from(m).ok())
            .filter(|&m| m <= self.max_level);
        self.first_degenerate_level == expected
            && (expected.is_none() || self.singular_vectors_at_first > 0)
    }
}

/// Computes determinants and singular spaces on levels `1..=max_level`.
pub fn cross_validate(params: &HWParams<Rational>, max_level: usize) -> Result<CrossValidation> {
    let module = VermaModule::new(params.clone()).with_max_level(max_level);
    let mut degenerate_levels = Vec::new();
    let mut singular_levels = Vec::new();
    let mut singular_vectors_at_first = 0;
    for n in 1..=max_level {
        let found = module.singular_vectors(n)?.len();
        if found > 0 {
            singular_levels.push(n);
        }
        if module.shapovalov_det(n)?.is_zero() {
            if degenerate_levels.is_empty() {
                singular_vectors_at_first = found;
            }
            degenerate_levels.push(n);
        }
    }
    Ok(CrossValidation {
        lambda: params.lambda.to_string(),
        c: params.c.to_string(),
        c0: params.c0.to_string(),
        c1: params.c1.to_string(),
        max_level,
        predicate: is_reducible(&params.c0, &params.c1),
        bracket_convention: is_reducible_bracket_convention(&params.c0, &params.c1),
        first_degenerate_level: degenerate_levels.first().copied(),
        degenerate_levels,
        singular_vectors_at_first,
        singular_levels,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    fn q(n: i64) -> Rational {
        rat(n)
    }

    #[test]
    fn predicate_examples() {
        assert_eq!(
            is_reducible(&q(0), &q(5)),
            Reducibility::witnessed(BigInt::from(1))
        );
        assert_eq!(
            is_reducible(&q(-1), &q(8)),
            Reducibility::witnessed(BigInt::from(2))
        );
        assert_eq!(is_reducible(&q(1), &q(1)), Reducibility::irreducible());
        assert_eq!(
            is_reducible(&q(0), &q(0)),
            Reducibility::witnessed(BigInt::from(1))
        );
        assert_eq!(is_reducible(&q(-1), &q(0)), Reducibility::irreducible());
        assert_eq!(
            is_reducible(&q(1), &q(-8)),
            Reducibility::witnessed(BigInt::from(2))
        );
        assert_eq!(
            is_reducible_bracket_convention(&q(1), &q(-8)),
            Reducibility::irreducible()
        );
        assert_eq!(
            is_reducible_bracket_convention(&q(1), &q(8)),
            Reducibility::witnessed(BigInt::from(2))
        );
    }

    /// Oracle: substitute m = 1..=50 directly.
    fn substitution(c0: &Rational, c1: &Rational, sign: i64) -> Option<i64> {
        (1..=50).find(|&m| {
            let lhs = ratio(m * m - 1, 12) * c1 + rat(2 * sign) * c0;
            Scalar::is_zero(&lhs)
        })
    }

    #[test]
    fn predicate_matches_substitution() {
        for c0 in -30..=30 {
            for c1 in -30..=30 {
                let (c0, c1) = (q(c0), q(c1));
                let want = substitution(&c0, &c1, 1).map(BigInt::from);
                assert_eq!(is_reducible(&c0, &c1).witness, want, "c0={c0} c1={c1}");
                let want = substitution(&c0, &c1, -1).map(BigInt::from);
                assert_eq!(is_reducible_bracket_convention(&c0, &c1).witness, want);
            }
        }
    }

    #[test]
    fn conventions_agree_on_axes() {
        for k in -5..=5 {
            assert_eq!(
                is_reducible(&q(0), &q(k)),
                is_reducible_bracket_convention(&q(0), &q(k))
            );
            assert_eq!(
                is_reducible(&q(k), &q(0)),
                is_reducible_bracket_convention(&q(k), &q(0))
            );
        }
    }

    #[test]
    fn determinant_locus_follows_bracket_convention() {
        let at = |c0, c1| HWParams::new(q(2), q(1), q(c0), q(c1));
        let plus = cross_validate(&at(1, 8), 2).unwrap();
        assert_eq!(plus.degenerate_levels, vec![2]);
        assert_eq!(plus.singular_vectors_at_first, 1);
        assert_eq!(plus.bracket_convention.witness, Some(BigInt::from(2)));

        assert!(plus.agrees_with(&plus.bracket_convention));
        assert!(!plus.agrees_with(&plus.predicate));

        let minus = cross_validate(&at(1, -8), 2).unwrap();
        assert!(!minus.degenerate());
        assert!(minus.singular_levels.is_empty());
        assert!(minus.agrees_with(&minus.bracket_convention));
        assert!(!minus.agrees_with(&minus.predicate));
    }

    #[test]
    fn first_degenerate_level_is_the_witness() {
        // bracket-convention witnesses m = 1, 2, 3 at c1 = 24 c0 / (m^2 - 1)
        for (c0, c1, m) in [(0, 7, 1), (1, 8, 2), (1, 3, 3), (-2, -6, 3)] {
            let cv = cross_validate(&HWParams::new(q(-1), q(0), q(c0), q(c1)), 3).unwrap();
            assert_eq!(cv.first_degenerate_level, Some(m), "c0={c0} c1={c1}");
            assert!(cv.agrees_with(&cv.bracket_convention));
        }
        // witness 5 lies beyond the probed levels
        let cv = cross_validate(&HWParams::new(q(0), q(1), q(1), q(1)), 3).unwrap();
        assert_eq!(cv.bracket_convention.witness, Some(BigInt::from(5)));
        assert!(!cv.degenerate());
        assert!(cv.agrees_with(&cv.bracket_convention));
    }
}
