//! The universal enveloping algebra U(W(2,2)) in PBW normal form.
//!
//! A normal-form monomial is a word sorted under the canonical generator
//! order, so it always has the shape `C^a C1^b (I word) (L word)`. Normal
//! ordering rewrites an adjacent inversion `g h` (with `g > h`) into
//! `h g + [g, h]`; each step either lowers the inversion count or shortens
//! the word, so rewriting terminates.

use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::{bracket_generators_within, Generator, LieElement, DEFAULT_INDEX_LIMIT};
use crate::error::{Error, Result};
use crate::fmt_util::write_combination;
use crate::scalar::Scalar;

pub const DEFAULT_WORD_LIMIT: usize = 64;

/// A PBW basis element: a word of generators in nondecreasing canonical
/// order. The empty word is the identity.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct PbwMonomial(Vec<Generator>);

impl PbwMonomial {
    pub fn identity() -> Self {
        PbwMonomial(Vec::new())
    }

    /// `None` unless `word` is already sorted.
    pub fn from_sorted(word: Vec<Generator>) -> Option<Self> {
        word.windows(2)
            .all(|w| w[0] <= w[1])
            .then_some(PbwMonomial(word))
    }

    pub fn generators(&self) -> &[Generator] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for PbwMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for g in &self.0 {
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

/// Element of U(W(2,2)): a combination of normal-form monomials.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UEElement<R> {
    terms: BTreeMap<PbwMonomial, R>,
}

impl<R: Scalar> UEElement<R> {
    pub fn zero() -> Self {
        UEElement {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::scalar(R::one())
    }

    pub fn scalar(q: R) -> Self {
        let mut out = Self::zero();
        out.add_term(PbwMonomial::identity(), &q);
        out
    }

    pub fn generator(g: Generator) -> Self {
        let mut out = Self::zero();
        out.add_term(PbwMonomial(vec![g]), &R::one());
        out
    }

    pub fn from_lie(x: &LieElement<R>) -> Self {
        let mut out = Self::zero();
        for (g, q) in x.terms() {
            out.add_term(PbwMonomial(vec![g]), q);
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

    pub fn terms(&self) -> impl Iterator<Item = (&PbwMonomial, &R)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &PbwMonomial) -> R {
        self.terms.get(m).cloned().unwrap_or_else(R::zero)
    }

    /// Length of the longest monomial (the filtration degree).
    pub fn degree(&self) -> usize {
        self.terms.keys().map(PbwMonomial::len).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, m: PbwMonomial, q: &R) {
        add_into(&mut self.terms, m, q);
    }

    pub fn plus(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (m, q) in &rhs.terms {
            out.add_term(m.clone(), q);
        }
        out
    }

    pub fn negate(&self) -> Self {
        self.scale(&R::one().negate())
    }

    pub fn minus(&self, rhs: &Self) -> Self {
        self.plus(&rhs.negate())
    }

    pub fn scale(&self, k: &R) -> Self {
        let mut out = Self::zero();
        for (m, q) in &self.terms {
            out.add_term(m.clone(), &q.times(k));
        }
        out
    }
}

impl<R: Scalar> fmt::Display for UEElement<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_combination(f, self.terms.iter().map(|(m, q)| (q, m.to_string())))
    }
}

impl<R: Scalar> fmt::Debug for UEElement<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UEElement({self})")
    }
}

fn add_into<K: Ord, R: Scalar>(map: &mut BTreeMap<K, R>, k: K, q: &R) {
    if q.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match map.entry(k) {
        Entry::Vacant(e) => {
            e.insert(q.clone());
        }
        Entry::Occupied(mut e) => {
            e.get_mut().add_assign(q);
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

/// Which adjacent inversion gets rewritten first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum RewriteStrategy {
    #[default]
    Leftmost,
    Rightmost,
}

/// Normal-ordering configuration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Orderer {
    pub strategy: RewriteStrategy,
    pub word_limit: usize,
    pub index_limit: i64,
}

impl Default for Orderer {
    fn default() -> Self {
        Orderer {
            strategy: RewriteStrategy::Leftmost,
            word_limit: DEFAULT_WORD_LIMIT,
            index_limit: DEFAULT_INDEX_LIMIT,
        }
    }
}

impl Orderer {
    pub fn with_strategy(strategy: RewriteStrategy) -> Self {
        Orderer {
            strategy,
            ..Orderer::default()
        }
    }

    fn find_inversion(&self, word: &[Generator]) -> Option<usize> {
        let mut pairs = word.windows(2).enumerate();
        match self.strategy {
            RewriteStrategy::Leftmost => pairs.find(|(_, w)| w[0] > w[1]).map(|(i, _)| i),
            RewriteStrategy::Rightmost => pairs.rfind(|(_, w)| w[0] > w[1]).map(|(i, _)| i),
        }
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len > self.word_limit {
            Err(Error::WordTooLong {
                len,
                limit: self.word_limit,
            })
        } else {
            Ok(())
        }
    }

    /// Rewrites `word` into PBW normal form.
    pub fn normal_order<R: Scalar>(&self, word: &[Generator]) -> Result<UEElement<R>> {
        self.check_len(word.len())?;
        for g in word {
            g.validate(self.index_limit)?;
        }
        let mut pending: BTreeMap<Vec<Generator>, R> = BTreeMap::new();
        pending.insert(word.to_vec(), R::one());
        let mut out = UEElement::zero();
        while let Some((w, q)) = pending.pop_first() {
            let Some(i) = self.find_inversion(&w) else {
                out.add_term(PbwMonomial(w), &q);
                continue;
            };
            let (g, h) = (w[i], w[i + 1]);
            let mut swapped = w.clone();
            swapped.swap(i, i + 1);
            add_into(&mut pending, swapped, &q);

            let br = bracket_generators_within(g, h, self.index_limit)?;
            let mut contract = |x: Generator, k: R| {
                let mut shorter = Vec::with_capacity(w.len() - 1);
                shorter.extend_from_slice(&w[..i]);
                shorter.push(x);
                shorter.extend_from_slice(&w[i + 2..]);
                add_into(&mut pending, shorter, &q.times(&k));
            };
            if let Some((x, k)) = br.mode {
                contract(x, R::from_int(k));
            }
            if let Some((x, k)) = &br.central {
                contract(*x, R::from_rational(k));
            }
        }
        Ok(out)
    }

    pub fn multiply<R: Scalar>(&self, u: &UEElement<R>, v: &UEElement<R>) -> Result<UEElement<R>> {
        let mut out = UEElement::zero();
        for (a, qa) in &u.terms {
            for (b, qb) in &v.terms {
                let mut word = a.0.clone();
                word.extend_from_slice(&b.0);
                let prod = self.normal_order::<R>(&word)?;
                out = out.plus(&prod.scale(&qa.times(qb)));
            }
        }
        Ok(out)
    }

    pub fn commutator<R: Scalar>(
        &self,
        u: &UEElement<R>,
        v: &UEElement<R>,
    ) -> Result<UEElement<R>> {
        Ok(self.multiply(u, v)?.minus(&self.multiply(v, u)?))
    }

    pub fn omega<R: Scalar>(&self, u: &UEElement<R>) -> Result<UEElement<R>> {
        let mut out = UEElement::zero();
        for (m, q) in &u.terms {
            let word: Vec<Generator> = m.0.iter().rev().map(|&g| omega_generator(g)).collect();
            out = out.plus(&self.normal_order::<R>(&word)?.scale(q));
        }
        Ok(out)
    }
}

/// Normal form of `word` with the default configuration.
pub fn normal_order<R: Scalar>(word: &[Generator]) -> Result<UEElement<R>> {
    Orderer::default().normal_order(word)
}

pub fn multiply<R: Scalar>(u: &UEElement<R>, v: &UEElement<R>) -> Result<UEElement<R>> {
    Orderer::default().multiply(u, v)
}

/// `uv - vu`
pub fn commutator<R: Scalar>(u: &UEElement<R>, v: &UEElement<R>) -> Result<UEElement<R>> {
    Orderer::default().commutator(u, v)
}

/// Transpose anti-involution on U: `L(n) -> L(-n)`, `I(n) -> I(-n)`,
/// centers fixed, `omega(ab) = omega(b) omega(a)`.
pub fn omega<R: Scalar>(u: &UEElement<R>) -> Result<UEElement<R>> {
    Orderer::default().omega(u)
}

pub fn omega_generator(g: Generator) -> Generator {
    match g {
        Generator::L(n) => Generator::L(-n),
        Generator::I(n) => Generator::I(-n),
        c => c,
    }
}
