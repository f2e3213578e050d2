//! The Lie algebra W(2,2): basis, bracket, grading and involution.
//!
//! Basis elements are `L(n)`, `I(n)` for integer `n` together with two
//! central elements `C`, `C1`. The bracket is
//!
//! ```text
//! [L(n), L(m)] = (m - n) L(n + m) + delta(n, -m) (n^3 - n)/12 C
//! [L(n), I(m)] = (m - n) I(n + m) + delta(n, -m) (n^3 - n)/12 C1
//! [I(n), I(m)] = 0
//! C, C1 central
//! ```
//!
//! so `[L(0), g] = weight(g) g` and positive modes raise the `L(0)`
//! eigenvalue.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::fmt_util::write_combination;
use crate::scalar::{rat, Rational, Scalar};

/// Largest `|index|` a generator may carry unless configured otherwise.
pub const DEFAULT_INDEX_LIMIT: i64 = 1_000_000;

/// A basis element of W(2,2).
///
/// The derived `Ord` is the canonical PBW order: `C < C1 < I(n) < L(m)`, with
/// `I` and `L` each ascending by index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Generator {
    C,
    C1,
    I(i64),
    L(i64),
}

impl Generator {
    pub fn index(self) -> Option<i64> {
        match self {
            Generator::L(n) | Generator::I(n) => Some(n),
            Generator::C | Generator::C1 => None,
        }
    }

    /// Eigenvalue of `ad L(0)`.
    pub fn weight(self) -> i64 {
        self.index().unwrap_or(0)
    }

    pub fn is_central(self) -> bool {
        matches!(self, Generator::C | Generator::C1)
    }

    /// Checks the index against `limit`.
    pub fn validate(self, limit: i64) -> Result<Self> {
        match self.index() {
            Some(n) if n.unsigned_abs() > limit.unsigned_abs() => Err(Error::IndexOutOfRange {
                index: i128::from(n),
                limit,
            }),
            _ => Ok(self),
        }
    }

    fn with_index(self, n: i64) -> Generator {
        match self {
            Generator::L(_) => Generator::L(n),
            Generator::I(_) => Generator::I(n),
            other => other,
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::L(n) => write!(f, "L({n})"),
            Generator::I(n) => write!(f, "I({n})"),
            Generator::C => f.write_str("C"),
            Generator::C1 => f.write_str("C1"),
        }
    }
}

/// `[a, b]` for two basis elements: at most one mode term with an integer
/// coefficient plus at most one central term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorBracket {
    pub mode: Option<(Generator, i64)>,
    pub central: Option<(Generator, Rational)>,
}

impl GeneratorBracket {
    const ZERO: GeneratorBracket = GeneratorBracket {
        mode: None,
        central: None,
    };

    pub fn is_zero(&self) -> bool {
        self.mode.is_none() && self.central.is_none()
    }

    fn negated(self) -> GeneratorBracket {
        GeneratorBracket {
            mode: self.mode.map(|(g, k)| (g, -k)),
            central: self.central.map(|(g, q)| (g, -q)),
        }
    }

    pub fn to_element<R: Scalar>(&self) -> LieElement<R> {
        let mut out = LieElement::zero();
        if let Some((g, k)) = self.mode {
            out.add_term(g, &R::from_int(k));
        }
        if let Some((g, q)) = &self.central {
            out.add_term(*g, &R::from_rational(q));
        }
        out
    }
}

/// `(n^3 - n) / 12`
fn cocycle(n: i64) -> Rational {
    let n = BigInt::from(n);
    Rational::new(n.pow(3) - n, BigInt::from(12))
}

/// Bracket of two basis elements with the default index bound.
pub fn bracket_generators(a: Generator, b: Generator) -> Result<GeneratorBracket> {
    bracket_generators_within(a, b, DEFAULT_INDEX_LIMIT)
}

pub fn bracket_generators_within(
    a: Generator,
    b: Generator,
    limit: i64,
) -> Result<GeneratorBracket> {
    use Generator::*;
    let mixed =
        |n: i64, m: i64, target: Generator, central: Generator| -> Result<GeneratorBracket> {
            let sum = i128::from(n) + i128::from(m);
            if sum.unsigned_abs() > limit.unsigned_abs() as u128 {
                return Err(Error::IndexOutOfRange { index: sum, limit });
            }
            let coeff = m.checked_sub(n).ok_or(Error::IndexOutOfRange {
                index: i128::from(m) - i128::from(n),
                limit,
            })?;
            let mode = (coeff != 0).then(|| (target.with_index(sum as i64), coeff));
            let central = if sum == 0 {
                let q = cocycle(n);
                (!q.is_zero()).then_some((central, q))
            } else {
                None
            };
            Ok(GeneratorBracket { mode, central })
        };
    a.validate(limit)?;
    b.validate(limit)?;
    match (a, b) {
        (L(n), L(m)) => mixed(n, m, L(0), C),
        (L(n), I(m)) => mixed(n, m, I(0), C1),
        (I(n), L(m)) => Ok(mixed(m, n, I(0), C1)?.negated()),
        (I(_), I(_)) | (C | C1, _) | (_, C | C1) => Ok(GeneratorBracket::ZERO),
    }
}

/// Finite linear combination of basis elements.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LieElement<R> {
    terms: BTreeMap<Generator, R>,
}

impl<R: Scalar> LieElement<R> {
    pub fn zero() -> Self {
        LieElement {
            terms: BTreeMap::new(),
        }
    }

    pub fn generator(g: Generator) -> Self {
        Self::term(g, R::one())
    }

    pub fn term(g: Generator, coeff: R) -> Self {
        let mut out = Self::zero();
        out.add_term(g, &coeff);
        out
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Generator, R)>) -> Self {
        let mut out = Self::zero();
        for (g, q) in terms {
            out.add_term(g, &q);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, g: Generator) -> R {
        self.terms.get(&g).cloned().unwrap_or_else(R::zero)
    }

    /// Terms in canonical generator order.
    pub fn terms(&self) -> impl Iterator<Item = (Generator, &R)> {
        self.terms.iter().map(|(g, q)| (*g, q))
    }

    pub fn add_term(&mut self, g: Generator, coeff: &R) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&g) {
            Some(q) => {
                q.add_assign(coeff);
                if q.is_zero() {
                    self.terms.remove(&g);
                }
            }
            None => {
                self.terms.insert(g, coeff.clone());
            }
        }
    }

    pub fn plus(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (g, q) in &rhs.terms {
            out.add_term(*g, q);
        }
        out
    }

    pub fn scale(&self, k: &R) -> Self {
        Self::from_terms(self.terms.iter().map(|(g, q)| (*g, q.times(k))))
    }

    pub fn negate(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(g, q)| (*g, q.negate())))
    }

    pub fn minus(&self, rhs: &Self) -> Self {
        self.plus(&rhs.negate())
    }

    /// Drops the `C` and `C1` components.
    pub fn without_center(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|(g, _)| !g.is_central())
                .map(|(g, q)| (*g, q.clone())),
        )
    }
}

impl<R: Scalar> fmt::Display for LieElement<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_combination(f, self.terms.iter().map(|(g, q)| (q, g.to_string())))
    }
}

impl<R: Scalar> fmt::Debug for LieElement<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LieElement({self})")
    }
}

/// Bilinear extension of [`bracket_generators`].
pub fn bracket<R: Scalar>(a: &LieElement<R>, b: &LieElement<R>) -> Result<LieElement<R>> {
    let mut out = LieElement::zero();
    for (ga, qa) in a.terms() {
        for (gb, qb) in b.terms() {
            let br = bracket_generators(ga, gb)?;
            if br.is_zero() {
                continue;
            }
            let k = qa.times(qb);
            if let Some((g, n)) = br.mode {
                out.add_term(g, &k.times(&R::from_int(n)));
            }
            if let Some((g, q)) = &br.central {
                out.add_term(*g, &k.times(&R::from_rational(q)));
            }
        }
    }
    Ok(out)
}

/// The canonical involution: `L(n) -> -L(-n)`, `I(n) -> -I(-n)`,
/// `C -> -C`, `C1 -> -C1`.
pub fn sigma_generator(g: Generator) -> (Generator, i64) {
    match g {
        Generator::L(n) => (Generator::L(-n), -1),
        Generator::I(n) => (Generator::I(-n), -1),
        c => (c, -1),
    }
}

pub fn sigma<R: Scalar>(a: &LieElement<R>) -> LieElement<R> {
    LieElement::from_terms(a.terms().map(|(g, q)| {
        let (h, s) = sigma_generator(g);
        (h, q.times(&R::from_int(s)))
    }))
}

pub fn weight(g: Generator) -> i64 {
    g.weight()
}

/// Every basis element with `|index| <= k`, in canonical order.
pub fn window_generators(k: i64) -> Vec<Generator> {
    let mut out = vec![Generator::C, Generator::C1];
    out.extend((-k..=k).map(Generator::I));
    out.extend((-k..=k).map(Generator::L));
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiViolation {
    pub triple: [Generator; 3],
    pub residual: LieElement<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiReport {
    pub max_index: i64,
    pub triples_checked: usize,
    pub violations: Vec<JacobiViolation>,
}

impl JacobiReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Cyclic sum `[a,[b,c]] + [b,[c,a]] + [c,[a,b]]`.
pub fn jacobi_sum(a: Generator, b: Generator, c: Generator) -> Result<LieElement<Rational>> {
    let (a, b, c) = (
        LieElement::<Rational>::generator(a),
        LieElement::generator(b),
        LieElement::generator(c),
    );
    Ok(bracket(&a, &bracket(&b, &c)?)?
        .plus(&bracket(&b, &bracket(&c, &a)?)?)
        .plus(&bracket(&c, &bracket(&a, &b)?)?))
}

/// Checks the Jacobi identity on every ordered triple of basis elements with
/// `|index| <= max_index`.
pub fn jacobi_report(max_index: i64) -> Result<JacobiReport> {
    let gens = window_generators(max_index.max(1));
    let mut triples_checked = 0;
    let mut violations = Vec::new();
    for &a in &gens {
        for &b in &gens {
            for &c in &gens {
                triples_checked += 1;
                let residual = jacobi_sum(a, b, c)?;
                if !residual.is_zero() {
                    violations.push(JacobiViolation {
                        triple: [a, b, c],
                        residual,
                    });
                }
            }
        }
    }
    Ok(JacobiReport {
        max_index,
        triples_checked,
        violations,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AntisymmetryReport {
    pub pairs_checked: usize,
    pub violations: Vec<(Generator, Generator)>,
}

pub fn antisymmetry_report(max_index: i64) -> Result<AntisymmetryReport> {
    let gens = window_generators(max_index);
    let mut pairs_checked = 0;
    let mut violations = Vec::new();
    for &a in &gens {
        for &b in &gens {
            pairs_checked += 1;
            let ab = bracket_generators(a, b)?.to_element::<Rational>();
            let ba = bracket_generators(b, a)?.to_element::<Rational>();
            if !ab.plus(&ba).is_zero() {
                violations.push((a, b));
            }
        }
    }
    Ok(AntisymmetryReport {
        pairs_checked,
        violations,
    })
}

/// Iterated bracket of basis elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BracketTree {
    Leaf(Generator),
    Node(Box<BracketTree>, Box<BracketTree>),
}

impl BracketTree {
    pub fn evaluate(&self) -> Result<LieElement<Rational>> {
        match self {
            BracketTree::Leaf(g) => Ok(LieElement::generator(*g)),
            BracketTree::Node(a, b) => bracket(&a.evaluate()?, &b.evaluate()?),
        }
    }
}

impl fmt::Display for BracketTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BracketTree::Leaf(g) => write!(f, "{g}"),
            BracketTree::Node(a, b) => write!(f, "[{a},{b}]"),
        }
    }
}

/// `target = factor * tree`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    pub target: Generator,
    pub tree: BracketTree,
    pub factor: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenerationReport {
    pub derivations: Vec<Derivation>,
    pub missing: Vec<Generator>,
}

/// Closes `{L(1), L(2), I(1), I(2)}` under brackets that land on a single
/// positive mode of weight `<= max_weight`, recording one derivation per
/// reached mode. `missing` lists the modes of weight `<= max_weight` that were
/// never reached.
pub fn positive_generation(max_weight: i64) -> Result<GenerationReport> {
    use Generator::*;
    let mut known: BTreeMap<Generator, (BracketTree, Rational)> = BTreeMap::new();
    for g in [L(1), L(2), I(1), I(2)] {
        known.insert(g, (BracketTree::Leaf(g), rat(1)));
    }
    loop {
        let snapshot: Vec<_> = known.iter().map(|(g, v)| (*g, v.clone())).collect();
        let mut grew = false;
        for (ga, (ta, fa)) in &snapshot {
            for (gb, (tb, fb)) in &snapshot {
                let br = bracket_generators(*ga, *gb)?;
                let Some((g, k)) = br.mode else { continue };
                if br.central.is_some() || g.weight() > max_weight || known.contains_key(&g) {
                    continue;
                }
                // [ta, tb] = [ga, gb] / (fa fb) = k g / (fa fb)
                let tree = BracketTree::Node(Box::new(ta.clone()), Box::new(tb.clone()));
                known.insert(g, (tree, fa * fb / rat(k)));
                grew = true;
            }
        }
        if !grew {
            break;
        }
    }
    let mut derivations = Vec::new();
    let mut missing = Vec::new();
    for w in 1..=max_weight {
        for g in [L(w), I(w)] {
            match known.get(&g) {
                Some((tree, factor)) => derivations.push(Derivation {
                    target: g,
                    tree: tree.clone(),
                    factor: factor.clone(),
                }),
                None => missing.push(g),
            }
        }
    }
    Ok(GenerationReport {
        derivations,
        missing,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;
    use Generator::*;

    fn el(terms: &[(Generator, Rational)]) -> LieElement<Rational> {
        LieElement::from_terms(terms.iter().cloned())
    }

    fn br(a: Generator, b: Generator) -> LieElement<Rational> {
        bracket_generators(a, b).unwrap().to_element()
    }

    #[test]
    fn bracket_examples() {
        assert_eq!(br(L(2), L(-2)), el(&[(L(0), rat(-4)), (C, ratio(1, 2))]));
        assert!(br(I(5), I(-5)).is_zero());
        assert!(br(L(1), I(1)).is_zero());
        assert_eq!(br(L(3), I(-3)), el(&[(I(0), rat(-6)), (C1, rat(2))]));
    }

    #[test]
    fn mixed_bracket_is_antisymmetric_with_center() {
        // -[L3, I-3] and -[L-3, I3] = -(6 I0 - 2 C1)
        assert_eq!(br(I(-3), L(3)), el(&[(I(0), rat(6)), (C1, rat(-2))]));
        assert_eq!(br(I(3), L(-3)), el(&[(I(0), rat(-6)), (C1, rat(2))]));
    }

    #[test]
    fn sigma_examples() {
        let s = |g| sigma(&LieElement::<Rational>::generator(g));
        assert_eq!(s(L(2)), el(&[(L(-2), rat(-1))]));
        assert_eq!(s(C), el(&[(C, rat(-1))]));
        assert_eq!(s(C1), el(&[(C1, rat(-1))]));
    }

    #[test]
    fn sigma_is_an_automorphism_on_a_window() {
        for a in window_generators(5) {
            for b in window_generators(5) {
                let lhs = sigma(&br(a, b));
                let (sa, ka) = sigma_generator(a);
                let (sb, kb) = sigma_generator(b);
                let rhs = br(sa, sb).scale(&rat(ka * kb));
                assert_eq!(lhs, rhs, "sigma[{a},{b}]");
            }
        }
    }

    #[test]
    fn sigma_central_sign_is_forced() {
        // sigma[L2, L-2] must equal [sigma L2, sigma L-2] = [L-2, L2]
        let lhs = sigma(&br(L(2), L(-2)));
        let rhs = br(L(-2), L(2));
        assert_eq!(lhs, rhs);
        assert_eq!(rhs.coefficient(C), ratio(-1, 2));
    }

    #[test]
    fn weights() {
        assert_eq!(weight(L(-3)), -3);
        assert_eq!(weight(C), 0);
        assert_eq!(weight(C1), 0);
        assert_eq!(weight(I(7)), 7);
        for g in window_generators(6) {
            assert_eq!(br(L(0), g), el(&[(g, rat(g.weight()))]));
        }
    }

    #[test]
    fn centrality() {
        for g in window_generators(6) {
            assert!(br(g, C).is_zero());
            assert!(br(g, C1).is_zero());
        }
    }

    #[test]
    fn jacobi_small_window() {
        let r = jacobi_report(3).unwrap();
        assert!(r.triples_checked > 0);
        assert!(r.passed(), "{:?}", r.violations.first());
        assert!(jacobi_sum(L(1), L(-1), L(0)).unwrap().is_zero());
    }

    #[test]
    fn jacobi_hand_expansion_with_c1() {
        // [L2,[L-2,I0]] = [L2, 2 I(-2)] = 2(-4 I0 + 1/2 C1) = -8 I0 + C1
        // [L-2,[I0,L2]] = [L-2, 2 I2]   = 2(4 I0 - 1/2 C1) = 8 I0 - C1
        // [I0,[L2,L-2]] = [I0, -4 L0 + C/2] = 0
        assert_eq!(br(L(-2), I(0)), el(&[(I(-2), rat(2))]));
        assert_eq!(br(L(2), I(-2)), el(&[(I(0), rat(-4)), (C1, ratio(1, 2))]));
        assert_eq!(br(L(-2), I(2)), el(&[(I(0), rat(4)), (C1, ratio(-1, 2))]));
        assert!(jacobi_sum(L(2), L(-2), I(0)).unwrap().is_zero());
    }

    #[test]
    fn antisymmetry_window() {
        let r = antisymmetry_report(6).unwrap();
        assert!(r.violations.is_empty());
        assert_eq!(r.pairs_checked, 28 * 28);
    }

    #[test]
    fn index_bound_is_enforced() {
        let limit = DEFAULT_INDEX_LIMIT;
        assert!(matches!(
            bracket_generators(L(limit), L(1)),
            Err(Error::IndexOutOfRange { .. })
        ));
        assert!(bracket_generators(L(limit), L(-1)).is_ok());
        assert!(matches!(
            bracket_generators(L(limit + 1), C),
            Err(Error::IndexOutOfRange { .. })
        ));
        assert!(bracket_generators_within(I(3), L(4), 6).is_err());
        assert!(bracket_generators_within(i64_max_l(), L(i64::MIN + 1), i64::MAX).is_err());
    }

    fn i64_max_l() -> Generator {
        L(i64::MAX)
    }

    #[test]
    fn positive_part_is_generated_by_four_modes() {
        let r = positive_generation(6).unwrap();
        assert!(r.missing.is_empty(), "missing {:?}", r.missing);
        assert_eq!(r.derivations.len(), 12);
        for d in &r.derivations {
            let value = d.tree.evaluate().unwrap().scale(&d.factor);
            assert_eq!(
                value,
                LieElement::generator(d.target),
                "{} via {}",
                d.target,
                d.tree
            );
        }
    }

    #[test]
    fn large_index_cocycle_is_exact() {
        let n = DEFAULT_INDEX_LIMIT;
        let b = bracket_generators(L(n), L(-n)).unwrap();
        let expected = Rational::new(
            BigInt::from(i128::from(n).pow(3) - i128::from(n)),
            BigInt::from(12),
        );
        assert_eq!(b.central, Some((C, expected)));
    }
}
