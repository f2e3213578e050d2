//! Verma modules `M(lambda, c, c0, c1)`.
//!
//! The highest weight vector `v` is killed by every `L(k)`, `I(k)` with
//! `k > 0`; `L(0)`, `I(0)`, `C`, `C1` act on it by `lambda`, `c0`, `c`, `c1`.
//! Level `n` is the `L(0)`-eigenspace of weight `lambda - n`, with basis
//! `I(-i_1)...I(-i_p) L(-l_1)...L(-l_q) v` indexed by a pair of partitions.
//!
//! Generators act by commuting past the basis word one factor at a time;
//! results per `(generator, basis monomial)` are memoized.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::algebra::{bracket_generators, Generator, LieElement};
use crate::error::{Error, Result};
use crate::fmt_util::write_combination;
use crate::linalg::Matrix;
use crate::pbw::omega_generator;
use crate::poly::{Poly, Var};
use crate::scalar::{Rational, Scalar};

pub const DEFAULT_MAX_LEVEL: usize = 8;
pub const DEFAULT_MAX_SYMBOLIC_LEVEL: usize = 4;

/// Highest-weight data: `L(0) v = lambda v`, `C = c`, `I(0) v = c0 v`, `C1 = c1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HWParams<R> {
    pub lambda: R,
    pub c: R,
    pub c0: R,
    pub c1: R,
}

impl HWParams<Rational> {
    pub fn new(lambda: Rational, c: Rational, c0: Rational, c1: Rational) -> Self {
        HWParams { lambda, c, c0, c1 }
    }
}

impl HWParams<Poly> {
    /// All four parameters as indeterminates.
    pub fn symbolic() -> Self {
        HWParams {
            lambda: Poly::var(Var::Lambda),
            c: Poly::var(Var::C),
            c0: Poly::var(Var::C0),
            c1: Poly::var(Var::C1),
        }
    }
}

/// Pair of partitions `(i_part | l_part)` naming the basis vector
/// `I(-i_1)... L(-l_1)... v`. Parts are positive and nonincreasing.
///
/// `Ord` is descending lexicographic on `(i_part, l_part)`, which is the
/// canonical order of level bases: at level 2 it reads
/// `(2|), (11|), (1|1), (|2), (|11)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct BasisMonomial {
    i_part: Vec<u32>,
    l_part: Vec<u32>,
}

impl Ord for BasisMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        (&other.i_part, &other.l_part).cmp(&(&self.i_part, &self.l_part))
    }
}

impl PartialOrd for BasisMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn is_partition(p: &[u32]) -> bool {
    p.iter().all(|&x| x > 0) && p.windows(2).all(|w| w[0] >= w[1])
}

impl BasisMonomial {
    pub fn vacuum() -> Self {
        BasisMonomial::default()
    }

    pub fn new(i_part: Vec<u32>, l_part: Vec<u32>) -> Option<Self> {
        (is_partition(&i_part) && is_partition(&l_part)).then_some(BasisMonomial { i_part, l_part })
    }

    pub fn i_part(&self) -> &[u32] {
        &self.i_part
    }

    pub fn l_part(&self) -> &[u32] {
        &self.l_part
    }

    pub fn is_vacuum(&self) -> bool {
        self.i_part.is_empty() && self.l_part.is_empty()
    }

    pub fn level(&self) -> usize {
        self.i_part
            .iter()
            .chain(&self.l_part)
            .map(|&k| k as usize)
            .sum()
    }

    /// Number of `L` factors.
    pub fn l_count(&self) -> usize {
        self.l_part.len()
    }

    /// The PBW word, sorted in canonical generator order.
    pub fn word(&self) -> Vec<Generator> {
        let is = self.i_part.iter().map(|&k| Generator::I(-i64::from(k)));
        let ls = self.l_part.iter().map(|&k| Generator::L(-i64::from(k)));
        is.chain(ls).collect()
    }

    /// Inverse of [`word`](Self::word); `None` unless the word is a sorted
    /// product of negative modes.
    pub fn from_word(word: &[Generator]) -> Option<Self> {
        let mut i_part = Vec::new();
        let mut l_part = Vec::new();
        if !word.windows(2).all(|w| w[0] <= w[1]) {
            return None;
        }
        for g in word {
            match *g {
                Generator::I(n) if n < 0 => i_part.push(u32::try_from(-n).ok()?),
                Generator::L(n) if n < 0 => l_part.push(u32::try_from(-n).ok()?),
                _ => return None,
            }
        }
        Some(BasisMonomial { i_part, l_part })
    }

    fn without_first(&self) -> (Generator, BasisMonomial) {
        let mut rest = self.clone();
        if rest.i_part.is_empty() {
            let k = rest.l_part.remove(0);
            (Generator::L(-i64::from(k)), rest)
        } else {
            let k = rest.i_part.remove(0);
            (Generator::I(-i64::from(k)), rest)
        }
    }
}

impl fmt::Display for BasisMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_vacuum() {
            return f.write_str("1");
        }
        for g in self.word() {
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

/// Partitions of `n` in descending lexicographic order.
pub fn partitions(n: usize) -> Vec<Vec<u32>> {
    fn go(n: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for first in (1..=n.min(max)).rev() {
            prefix.push(first);
            go(n - first, first, prefix, out);
            prefix.pop();
        }
    }
    let n = u32::try_from(n).expect("partition size fits in u32");
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Canonical basis of level `n`, with the default level bound.
pub fn level_basis(n: usize) -> Result<Vec<BasisMonomial>> {
    level_basis_within(n, DEFAULT_MAX_LEVEL)
}

pub fn level_basis_within(n: usize, max_level: usize) -> Result<Vec<BasisMonomial>> {
    check_level(n, max_level)?;
    let mut out = Vec::new();
    for i_size in 0..=n {
        for i_part in partitions(i_size) {
            for l_part in partitions(n - i_size) {
                out.push(BasisMonomial {
                    i_part: i_part.clone(),
                    l_part,
                });
            }
        }
    }
    out.sort();
    Ok(out)
}

fn check_level(n: usize, max_level: usize) -> Result<()> {
    if n > max_level {
        Err(Error::LevelTooHigh {
            level: n,
            limit: max_level,
        })
    } else {
        Ok(())
    }
}

/// Homogeneous element of a Verma module. Nonzero vectors have
/// `level >= 0`; a positive mode applied below level 0 yields the zero
/// vector at a negative level.
#[derive(Clone)]
pub struct VermaVector<R> {
    level: i64,
    coords: BTreeMap<BasisMonomial, R>,
}

impl<R: Scalar> VermaVector<R> {
    pub fn zero(level: i64) -> Self {
        VermaVector {
            level,
            coords: BTreeMap::new(),
        }
    }

    pub fn basis(m: BasisMonomial) -> Self {
        let level = m.level() as i64;
        let mut coords = BTreeMap::new();
        coords.insert(m, R::one());
        VermaVector { level, coords }
    }

    pub fn highest_weight_vector() -> Self {
        Self::basis(BasisMonomial::vacuum())
    }

    /// Builds a vector from coordinates; panics if a key has the wrong level.
    pub fn from_coords(level: i64, coords: impl IntoIterator<Item = (BasisMonomial, R)>) -> Self {
        let mut v = Self::zero(level);
        for (m, q) in coords {
            assert_eq!(m.level() as i64, level, "inhomogeneous Verma vector");
            v.add_term(m, &q);
        }
        v
    }

    pub fn level(&self) -> i64 {
        self.level
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    /// Coordinates in canonical basis order.
    pub fn coords(&self) -> impl Iterator<Item = (&BasisMonomial, &R)> {
        self.coords.iter()
    }

    pub fn coefficient(&self, m: &BasisMonomial) -> R {
        self.coords.get(m).cloned().unwrap_or_else(R::zero)
    }

    fn add_term(&mut self, m: BasisMonomial, q: &R) {
        if q.is_zero() {
            return;
        }
        match self.coords.get_mut(&m) {
            Some(x) => {
                x.add_assign(q);
                if x.is_zero() {
                    self.coords.remove(&m);
                }
            }
            None => {
                self.coords.insert(m, q.clone());
            }
        }
    }

    pub fn plus(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        if out.is_zero() {
            out.level = rhs.level;
        }
        for (m, q) in &rhs.coords {
            out.add_term(m.clone(), q);
        }
        out
    }

    pub fn scale(&self, k: &R) -> Self {
        let mut out = Self::zero(self.level);
        for (m, q) in &self.coords {
            out.add_term(m.clone(), &q.times(k));
        }
        out
    }

    pub fn minus(&self, rhs: &Self) -> Self {
        self.plus(&rhs.scale(&R::one().negate()))
    }

    /// Coordinates against an explicit basis.
    pub fn to_dense(&self, basis: &[BasisMonomial]) -> Vec<R> {
        basis.iter().map(|m| self.coefficient(m)).collect()
    }
}

/// Zero vectors compare equal regardless of their nominal level.
impl<R: Scalar> PartialEq for VermaVector<R> {
    fn eq(&self, other: &Self) -> bool {
        self.coords == other.coords && (self.is_zero() || self.level == other.level)
    }
}

impl<R: Scalar> Eq for VermaVector<R> {}

impl<R: Scalar> fmt::Display for VermaVector<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.coords.iter().map(|(m, q)| {
            let basis = if m.is_vacuum() {
                "v".to_string()
            } else {
                format!("{m}v")
            };
            (q, basis)
        });
        write_combination(f, terms)
    }
}

impl<R: Scalar> fmt::Debug for VermaVector<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VermaVector[level {}]({self})", self.level)
    }
}

type Action<R> = Arc<Vec<(BasisMonomial, R)>>;

/// A Verma module with fixed highest-weight data.
pub struct VermaModule<R: Scalar> {
    params: HWParams<R>,
    max_level: usize,
    cache: Mutex<HashMap<(Generator, BasisMonomial), Action<R>>>,
}

impl<R: Scalar> VermaModule<R> {
    pub fn new(params: HWParams<R>) -> Self {
        VermaModule {
            params,
            max_level: DEFAULT_MAX_LEVEL,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn with_max_level(mut self, max_level: usize) -> Self {
        self.max_level = max_level;
        self
    }

    pub fn params(&self) -> &HWParams<R> {
        &self.params
    }

    pub fn max_level(&self) -> usize {
        self.max_level
    }

    pub fn level_basis(&self, n: usize) -> Result<Vec<BasisMonomial>> {
        level_basis_within(n, self.max_level)
    }

    fn central_value(&self, g: Generator) -> &R {
        match g {
            Generator::C => &self.params.c,
            Generator::C1 => &self.params.c1,
            _ => unreachable!("not central"),
        }
    }

    /// `g` applied to one basis vector.
    fn act_basis(&self, g: Generator, m: &BasisMonomial) -> Action<R> {
        let key = (g, m.clone());
        if let Some(hit) = self.cache.lock().expect("cache lock").get(&key) {
            return Arc::clone(hit);
        }
        let result = Arc::new(self.compute_action(g, m));
        self.cache
            .lock()
            .expect("cache lock")
            .insert(key, Arc::clone(&result));
        result
    }

    fn compute_action(&self, g: Generator, m: &BasisMonomial) -> Vec<(BasisMonomial, R)> {
        let scaled = |q: R| {
            if q.is_zero() {
                vec![]
            } else {
                vec![(m.clone(), q)]
            }
        };
        let index = match g {
            Generator::C | Generator::C1 => return scaled(self.central_value(g).clone()),
            Generator::L(0) => {
                let level = R::from_int(m.level() as i64);
                return scaled(self.params.lambda.minus(&level));
            }
            Generator::L(n) | Generator::I(n) => n,
        };
        if m.is_vacuum() {
            return match g {
                _ if index > 0 => vec![],
                Generator::I(0) => scaled(self.params.c0.clone()),
                _ => vec![(
                    BasisMonomial::from_word(&[g]).expect("negative mode"),
                    R::one(),
                )],
            };
        }
        let (first, rest) = m.without_first();
        if index < 0 && g <= first {
            let mut word = vec![g];
            word.extend(m.word());
            return vec![(
                BasisMonomial::from_word(&word).expect("sorted word"),
                R::one(),
            )];
        }
        // g f rest = f (g rest) + [g, f] rest
        let mut acc: VermaVector<R> = VermaVector::zero(0);
        for (m2, r) in self.act_basis(g, &rest).iter() {
            for (m3, s) in self.act_basis(first, m2).iter() {
                acc.add_term(m3.clone(), &r.times(s));
            }
        }
        let br = bracket_generators(g, first).expect("indices within bound");
        if let Some((k, a)) = br.mode {
            let a = R::from_int(a);
            for (m2, r) in self.act_basis(k, &rest).iter() {
                acc.add_term(m2.clone(), &a.times(r));
            }
        }
        if let Some((z, q)) = &br.central {
            let k = R::from_rational(q).times(self.central_value(*z));
            acc.add_term(rest.clone(), &k);
        }
        acc.coords.into_iter().collect()
    }

    /// `g . w`, landing in level `level(w) - weight(g)`.
    pub fn act(&self, g: Generator, w: &VermaVector<R>) -> VermaVector<R> {
        let mut out = VermaVector::zero(w.level - g.weight());
        for (m, q) in &w.coords {
            for (m2, r) in self.act_basis(g, m).iter() {
                out.add_term(m2.clone(), &q.times(r));
            }
        }
        out
    }

    /// Linear extension of [`act`](Self::act) to Lie elements.
    pub fn act_lie(&self, x: &LieElement<R>, w: &VermaVector<R>) -> VermaVector<R> {
        let mut out = VermaVector::zero(w.level);
        for (g, q) in x.terms() {
            out = out.plus(&self.act(g, w).scale(q));
        }
        out
    }

    /// Applies `word` to `w`, rightmost factor first.
    pub fn act_word(&self, word: &[Generator], w: &VermaVector<R>) -> VermaVector<R> {
        word.iter()
            .rev()
            .fold(w.clone(), |acc, &g| self.act(g, &acc))
    }

    /// Matrix of `g` from level `n` to level `n - weight(g)`; columns follow
    /// the level-`n` basis, rows the target basis. Empty when the target level
    /// is negative.
    pub fn action_matrix(&self, g: Generator, n: usize) -> Result<Matrix<R>> {
        let source = self.level_basis(n)?;
        let target_level = n as i64 - g.weight();
        if target_level < 0 {
            return Ok(Matrix::zeros(0, source.len()));
        }
        let target = level_basis_within(target_level as usize, usize::MAX)?;
        let row_of: HashMap<&BasisMonomial, usize> =
            target.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut out = Matrix::zeros(target.len(), source.len());
        for (j, m) in source.iter().enumerate() {
            for (m2, q) in self.act_basis(g, m).iter() {
                out.set(row_of[m2], j, q.clone());
            }
        }
        Ok(out)
    }

    /// Contravariant form on level `n`: entry `(X, Y)` is the coefficient of
    /// `v` in `omega(X) Y v`, where `omega` maps `L(k) -> L(-k)`,
    /// `I(k) -> I(-k)` and reverses products.
    pub fn gram_matrix(&self, n: usize) -> Result<GramMatrix<R>> {
        let basis = self.level_basis(n)?;
        let words: Vec<Vec<Generator>> = basis.iter().map(BasisMonomial::word).collect();
        let vacuum = BasisMonomial::vacuum();
        let mut matrix = Matrix::zeros(basis.len(), basis.len());
        for (j, y) in basis.iter().enumerate() {
            // stack[k] = omega(x_k) ... omega(x_1) Y v for the current word's prefix
            let mut stack: Vec<VermaVector<R>> = vec![VermaVector::basis(y.clone())];
            let mut prev: &[Generator] = &[];
            for (i, word) in words.iter().enumerate() {
                let shared = prev.iter().zip(word).take_while(|(a, b)| a == b).count();
                stack.truncate(shared + 1);
                for &g in &word[shared..] {
                    let next = self.act(omega_generator(g), stack.last().expect("nonempty"));
                    stack.push(next);
                }
                prev = word;
                matrix.set(i, j, stack.last().expect("nonempty").coefficient(&vacuum));
            }
        }
        Ok(GramMatrix {
            level: n,
            basis,
            matrix,
        })
    }

    /// Determinant of the level-`n` contravariant form in canonical basis order.
    pub fn shapovalov_det(&self, n: usize) -> Result<R> {
        Ok(self.gram_matrix(n)?.matrix.determinant())
    }

    /// Matrix of `I(0)` on level `n`.
    pub fn i0_matrix(&self, n: usize) -> Result<Matrix<R>> {
        self.action_matrix(Generator::I(0), n)
    }

    pub fn i0_report(&self, n: usize) -> Result<I0Report<R>> {
        let matrix = self.i0_matrix(n)?;
        let dim = matrix.rows();
        let nilpotent = matrix.minus(&Matrix::identity(dim).scale(&self.params.c0));
        let mut power = Matrix::identity(dim);
        let mut nilpotency_index = 0;
        while !power.is_zero() {
            power = power.mul(&nilpotent);
            nilpotency_index += 1;
        }
        let bound_holds = nilpotent.pow(n as u32 + 1).is_zero();
        Ok(I0Report {
            level: n,
            diagonalizable: nilpotent.is_zero(),
            nilpotent_part: nilpotent,
            matrix,
            nilpotency_index,
            bound_holds,
        })
    }
}

impl VermaModule<Rational> {
    /// Basis of the level-`n` vectors killed by `L(1), L(2), I(1), I(2)`.
    pub fn singular_vectors(&self, n: usize) -> Result<Vec<SingularVector>> {
        use Generator::{I, L};
        let basis = self.level_basis(n)?;
        let mut rows = Vec::new();
        for g in [L(1), L(2), I(1), I(2)] {
            rows.extend(self.action_matrix(g, n)?.to_rows());
        }
        let stacked = if rows.is_empty() {
            Matrix::zeros(0, basis.len())
        } else {
            Matrix::from_rows(rows)
        };
        let mut out = Vec::new();
        for coords in stacked.kernel() {
            let vector = VermaVector::from_coords(n as i64, basis.iter().cloned().zip(coords));
            let i0_eigenvector = self
                .act(I(0), &vector)
                .minus(&vector.scale(&self.params.c0))
                .is_zero();
            let killed_by_positive_modes = self.killed_by_positive_modes(&vector);
            out.push(SingularVector {
                vector,
                i0_eigenvector,
                killed_by_positive_modes,
            });
        }
        Ok(out)
    }

    /// Checks `L(k) w = I(k) w = 0` for every `1 <= k <= level(w)`.
    pub fn killed_by_positive_modes(&self, w: &VermaVector<Rational>) -> bool {
        (1..=w.level.max(0)).all(|k| {
            self.act(Generator::L(k), w).is_zero() && self.act(Generator::I(k), w).is_zero()
        })
    }
}

/// Contravariant form on one level, with its basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramMatrix<R: Scalar> {
    pub level: usize,
    pub basis: Vec<BasisMonomial>,
    pub matrix: Matrix<R>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularVector {
    pub vector: VermaVector<Rational>,
    /// Whether `I(0) w = c0 w`.
    pub i0_eigenvector: bool,
    /// Whether every positive mode up to the level kills `w`.
    pub killed_by_positive_modes: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct I0Report<R: Scalar> {
    pub level: usize,
    pub matrix: Matrix<R>,
    /// `I(0) - c0`
    pub nilpotent_part: Matrix<R>,
    /// Smallest `k` with `(I(0) - c0)^k = 0`.
    pub nilpotency_index: u32,
    /// `(I(0) - c0)^(level + 1) = 0`
    pub bound_holds: bool,
    pub diagonalizable: bool,
}

/// Jordan block sizes of a nilpotent rational matrix, largest first, from the
/// rank sequence of its powers.
pub fn jordan_block_sizes(nilpotent: &Matrix<Rational>) -> Vec<usize> {
    let n = nilpotent.rows();
    let mut ranks = vec![n];
    let mut power = Matrix::identity(n);
    while *ranks.last().expect("nonempty") > 0 {
        power = power.mul(nilpotent);
        let r = power.rank();
        assert!(
            r < *ranks.last().expect("nonempty"),
            "matrix is not nilpotent"
        );
        ranks.push(r);
    }
    // blocks of size >= k: ranks[k-1] - ranks[k]
    let at_least: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).collect();
    let mut sizes = Vec::new();
    for k in (1..=at_least.len()).rev() {
        let exactly = at_least[k - 1] - at_least.get(k).copied().unwrap_or(0);
        sizes.extend(std::iter::repeat(k).take(exactly));
    }
    sizes
}
