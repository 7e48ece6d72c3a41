//! Negative part of the Kostant Z-form reduced mod p.
//!
//! Elements are linear combinations of PBW monomials
//! `prod f_alpha^(a_alpha)` with the roots in canonical order (by height,
//! then lower index). Products are brought to this normal form by
//! [`Algebra::apply_letter`], which moves one divided power into place using
//!
//! * `f_a^(x) f_b^(y) = f_b^(y) f_a^(x)` when the roots commute,
//! * `f_a^(x) f_b^(y) = sum_k s^k f_b^(y-k) f_a^(x-k) f_c^(k)` when
//!   `[f_a, f_b] = s f_c`,
//! * `f_a^(x) f_a^(y) = C(x+y, x) f_a^(x+y)`.

mod memo;
mod straighten;

use std::fmt;

use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::roots::{GroupConfig, PositiveRoot, Weight, MAX_RANK};

pub(crate) use memo::generator;
pub use memo::{memo_apply, naive_apply, MemoCache, MemoStats, SuffixTree};
pub use straighten::build_x;

pub const MAX_ROOTS: usize = MAX_RANK * (MAX_RANK + 1) / 2;

/// Exponent vector over the positive roots, indexed in canonical order.
/// Padded to three machine words for hashing and comparison.
#[derive(Clone, Copy, Eq, PartialOrd, Ord)]
#[repr(C, align(8))]
pub struct PbwMonomial {
    exps: [u8; 24],
}

impl PbwMonomial {
    pub const ONE: PbwMonomial = PbwMonomial { exps: [0; 24] };

    #[inline]
    fn words(&self) -> [u64; 3] {
        let w = |i: usize| u64::from_ne_bytes(self.exps[8 * i..8 * i + 8].try_into().unwrap());
        [w(0), w(1), w(2)]
    }

    pub fn from_exps(exps: &[u8]) -> Self {
        assert!(exps.len() <= MAX_ROOTS);
        let mut m = Self::ONE;
        m.exps[..exps.len()].copy_from_slice(exps);
        m
    }

    pub fn exp(&self, root: usize) -> u8 {
        self.exps[root]
    }

    pub fn exps(&self) -> &[u8; MAX_ROOTS] {
        self.exps[..MAX_ROOTS].try_into().unwrap()
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    pub fn max_exp(&self) -> u8 {
        self.exps.iter().copied().max().unwrap_or(0)
    }

    pub(crate) fn set(&mut self, root: usize, e: u8) {
        self.exps[root] = e;
    }

    /// Disjoint-support product; used when every letter of `self` precedes
    /// every letter of `other`.
    pub(crate) fn join(&self, other: &PbwMonomial) -> PbwMonomial {
        let mut out = *self;
        for (a, b) in out.exps.iter_mut().zip(other.exps.iter()) {
            *a += *b;
        }
        out
    }

    /// The monomial as a word, letters in canonical order.
    pub fn to_word(&self) -> Word {
        Word(
            self.exps
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| Letter::new(i, e as u32))
                .collect(),
        )
    }
}

impl PartialEq for PbwMonomial {
    #[inline]
    fn eq(&self, other: &Self) -> bool {
        self.words() == other.words()
    }
}

impl std::hash::Hash for PbwMonomial {
    #[inline]
    fn hash<H: std::hash::Hasher>(&self, h: &mut H) {
        for w in self.words() {
            h.write_u64(w);
        }
    }
}

impl fmt::Debug for PbwMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.exps.iter().rposition(|&e| e > 0).map_or(0, |i| i + 1);
        write!(f, "PbwMonomial{:?}", &self.exps[..last])
    }
}

impl Serialize for PbwMonomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let last = self.exps.iter().rposition(|&e| e > 0).map_or(0, |i| i + 1);
        self.exps[..last].serialize(s)
    }
}

impl<'de> Deserialize<'de> for PbwMonomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Vec::<u8>::deserialize(d)?;
        if v.len() > MAX_ROOTS {
            return Err(serde::de::Error::custom("too many exponents"));
        }
        Ok(PbwMonomial::from_exps(&v))
    }
}

/// One divided power `f_root^(exp)`; `root` is a canonical root index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    pub root: u8,
    pub exp: u16,
}

impl Letter {
    pub fn new(root: usize, exp: u32) -> Self {
        Letter {
            root: root as u8,
            exp: exp as u16,
        }
    }
}

/// A product of divided powers, read left to right.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word(self.0.iter().chain(&other.0).copied().collect())
    }
}

/// Simple-root coordinates of an element's weight (as a negative weight).
pub type RootVector = [u16; MAX_RANK];

/// Sparse GF(p) combination of PBW monomials of one weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraVector {
    pub(crate) terms: FxHashMap<PbwMonomial, u8>,
    pub(crate) weight: RootVector,
}

impl AlgebraVector {
    pub fn one() -> Self {
        let mut terms = FxHashMap::default();
        terms.insert(PbwMonomial::ONE, 1);
        AlgebraVector {
            terms,
            weight: [0; MAX_RANK],
        }
    }

    pub fn zero(weight: RootVector) -> Self {
        AlgebraVector {
            terms: FxHashMap::default(),
            weight,
        }
    }

    pub fn weight(&self) -> RootVector {
        self.weight
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &PbwMonomial) -> u8 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&PbwMonomial, u8)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    /// Terms in monomial order, for reproducible output.
    pub fn sorted_terms(&self) -> Vec<(PbwMonomial, u8)> {
        let mut v: Vec<_> = self.terms.iter().map(|(m, &c)| (*m, c)).collect();
        v.sort_unstable();
        v
    }

    pub fn from_terms(
        terms: impl IntoIterator<Item = (PbwMonomial, u8)>,
        weight: RootVector,
        p: u32,
    ) -> Self {
        let mut map: FxHashMap<PbwMonomial, u8> = FxHashMap::default();
        for (m, c) in terms {
            let e = map.entry(m).or_insert(0);
            *e = ((*e as u32 + c as u32) % p) as u8;
        }
        map.retain(|_, c| *c != 0);
        AlgebraVector { terms: map, weight }
    }

    pub fn add(&self, other: &AlgebraVector, p: u32) -> AlgebraVector {
        AlgebraVector::from_terms(self.iter().chain(other.iter()).map(|(m, c)| (*m, c)), self.weight, p)
    }
}

#[derive(Serialize, Deserialize)]
struct AlgebraVectorRepr {
    weight: RootVector,
    terms: Vec<(PbwMonomial, u8)>,
}

impl Serialize for AlgebraVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        AlgebraVectorRepr {
            weight: self.weight,
            terms: self.sorted_terms(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for AlgebraVector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = AlgebraVectorRepr::deserialize(d)?;
        if r.terms.iter().any(|&(_, c)| c == 0) {
            return Err(serde::de::Error::custom("zero coefficient"));
        }
        Ok(AlgebraVector {
            terms: r.terms.into_iter().collect(),
            weight: r.weight,
        })
    }
}

/// `C(a+b, a) mod p` by base-p digits; zero exactly when adding `a` and `b`
/// in base `p` carries.
pub fn lucas_binomial(a: u32, b: u32, p: u32) -> u32 {
    let (mut a, mut b) = (a, b);
    let mut out = 1u32;
    while a > 0 || b > 0 {
        let (da, db) = (a % p, b % p);
        if da + db >= p {
            return 0;
        }
        out = out * small_binomial(da + db, da, p) % p;
        a /= p;
        b /= p;
    }
    out
}

/// `C(n, k) mod p` for `n < p`.
fn small_binomial(n: u32, k: u32, p: u32) -> u32 {
    let (mut num, mut den) = (1u64, 1u64);
    let p64 = p as u64;
    for i in 0..k as u64 {
        num = num * ((n as u64 - i) % p64) % p64;
        den = den * ((i + 1) % p64) % p64;
    }
    (num * pow_mod(den, p64 - 2, p64) % p64) as u32
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

/// `f_alpha f_beta = f_beta f_alpha + sign * f_gamma` for adjacent intervals;
/// `None` when the two root vectors commute.
pub fn commutator(alpha: PositiveRoot, beta: PositiveRoot) -> Option<(PositiveRoot, i8)> {
    if alpha.hi + 1 == beta.lo {
        Some((PositiveRoot::new(alpha.lo, beta.hi), 1))
    } else if beta.hi + 1 == alpha.lo {
        Some((PositiveRoot::new(beta.lo, alpha.hi), -1))
    } else {
        None
    }
}

/// Structure data for one group configuration.
pub struct Algebra {
    cfg: GroupConfig,
    roots: Vec<PositiveRoot>,
    /// `comm[a * N + b] = Some((c, s))` when `f_a f_b = f_b f_a + s f_c`.
    comm: Vec<Option<(u8, u8)>>,
    root_vectors: Vec<RootVector>,
    applications: std::sync::atomic::AtomicU64,
    /// Tags this algebra's entries in the per-thread product cache.
    id: u64,
}

static NEXT_ALGEBRA_ID: std::sync::atomic::AtomicU64 = std::sync::atomic::AtomicU64::new(0);

impl Algebra {
    pub fn new(cfg: GroupConfig) -> Self {
        let roots = cfg.positive_roots();
        let n = roots.len();
        let p = cfg.prime;
        let mut comm = vec![None; n * n];
        for (a, &ra) in roots.iter().enumerate() {
            for (b, &rb) in roots.iter().enumerate() {
                if let Some((c, s)) = commutator(ra, rb) {
                    let s = if s > 0 { 1 } else { (p - 1) as u8 };
                    comm[a * n + b] = Some((cfg.root_index(c) as u8, s));
                }
            }
        }
        let root_vectors = roots
            .iter()
            .map(|r| {
                let mut v = [0u16; MAX_RANK];
                for i in r.lo..=r.hi {
                    v[i as usize - 1] = 1;
                }
                v
            })
            .collect();
        Algebra {
            cfg,
            roots,
            comm,
            root_vectors,
            applications: Default::default(),
            id: NEXT_ALGEBRA_ID.fetch_add(1, std::sync::atomic::Ordering::Relaxed),
        }
    }

    pub fn config(&self) -> &GroupConfig {
        &self.cfg
    }

    pub fn prime(&self) -> u32 {
        self.cfg.prime
    }

    pub fn roots(&self) -> &[PositiveRoot] {
        &self.roots
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn root_vector(&self, root: usize) -> RootVector {
        self.root_vectors[root]
    }

    /// Number of [`Algebra::apply_letter`] calls so far.
    pub fn applications(&self) -> u64 {
        self.applications.load(std::sync::atomic::Ordering::Relaxed)
    }

    pub fn reset_applications(&self) {
        self.applications.store(0, std::sync::atomic::Ordering::Relaxed);
    }

    pub fn letter(&self, root: PositiveRoot, exp: u32) -> Letter {
        Letter::new(self.cfg.root_index(root), exp)
    }

    /// Weight of a word as simple-root coordinates.
    pub fn word_weight(&self, w: &Word) -> RootVector {
        let mut v = [0u16; MAX_RANK];
        for l in w.letters() {
            add_scaled(&mut v, &self.root_vectors[l.root as usize], l.exp);
        }
        v
    }

    pub fn monomial_weight(&self, m: &PbwMonomial) -> RootVector {
        let mut v = [0u16; MAX_RANK];
        for (i, &e) in m.exps[..self.num_roots()].iter().enumerate() {
            add_scaled(&mut v, &self.root_vectors[i], e as u16);
        }
        v
    }

    pub fn format_monomial(&self, m: &PbwMonomial) -> String {
        self.format_word(&m.to_word())
    }

    pub fn format_word(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".into();
        }
        w.letters()
            .iter()
            .map(|l| {
                let r = self.roots[l.root as usize];
                if l.exp == 1 {
                    format!("f_{}", r.label())
                } else {
                    format!("f_{}^({})", r.label(), l.exp)
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Parses words such as `f_2 f_1^(2) f_12`.
    pub fn parse_word(&self, s: &str) -> Option<Word> {
        let mut letters = Vec::new();
        for tok in s.split_whitespace() {
            let tok = tok.strip_prefix("f_")?;
            let (label, exp) = match tok.split_once("^(") {
                Some((l, e)) => (l, e.strip_suffix(')')?.parse().ok()?),
                None => (tok, 1u32),
            };
            let digits: Vec<u8> = label.chars().map(|c| c.to_digit(10).map(|d| d as u8)).collect::<Option<_>>()?;
            let (lo, hi) = (*digits.first()?, *digits.last()?);
            if lo == 0 || hi as usize > self.cfg.rank || digits.iter().zip(lo..).any(|(&d, e)| d != e) {
                return None;
            }
            letters.push(self.letter(PositiveRoot::new(lo, hi), exp));
        }
        Some(Word(letters))
    }
}

fn add_scaled(v: &mut RootVector, r: &RootVector, k: u16) {
    for (a, b) in v.iter_mut().zip(r) {
        *a += b * k;
    }
}

/// Simple-root coordinates of `lambda - nu`, when it is a nonnegative
/// integer combination of simple roots.
pub fn root_vector_between(lambda: &Weight, nu: &Weight) -> Option<RootVector> {
    let c = crate::roots::root_coords(&lambda.sub(nu))?;
    let mut v = [0u16; MAX_RANK];
    for (slot, x) in v.iter_mut().zip(c) {
        *slot = u16::try_from(x).ok()?;
    }
    Some(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lucas_examples() {
        assert_eq!(lucas_binomial(2, 2, 3), 0);
        assert_eq!(lucas_binomial(4, 4, 3), 1);
        assert_eq!(lucas_binomial(7, 0, 3), 1);
        assert_eq!(lucas_binomial(1, 1, 3), 2);
        assert_eq!(lucas_binomial(1, 1, 2), 0);
    }

    #[test]
    fn lucas_matches_pascal() {
        let mut pascal = vec![vec![1u64]];
        for n in 1..40usize {
            let prev = &pascal[n - 1];
            let mut row = vec![1u64; n + 1];
            for k in 1..n {
                row[k] = (prev[k - 1] + prev[k]) % 1_000_000_007;
            }
            pascal.push(row);
        }
        // exact values fit in u64 below n = 40 when reduced only mod small primes
        for p in [2u32, 3, 5, 7] {
            let mut exact = vec![vec![1u64]];
            for n in 1..40usize {
                let prev = &exact[n - 1];
                let mut row = vec![1u64; n + 1];
                for k in 1..n {
                    row[k] = (prev[k - 1] + prev[k]) % p as u64;
                }
                exact.push(row);
            }
            for a in 0..20u32 {
                for b in 0..20u32 {
                    let n = (a + b) as usize;
                    assert_eq!(lucas_binomial(a, b, p) as u64, exact[n][a as usize] % p as u64);
                }
            }
        }
    }

    #[test]
    fn commutator_examples() {
        let r = PositiveRoot::new;
        assert_eq!(commutator(r(1, 1), r(2, 2)), Some((r(1, 2), 1)));
        assert_eq!(commutator(r(1, 2), r(3, 4)), Some((r(1, 4), 1)));
        assert_eq!(commutator(r(1, 1), r(3, 3)), None);
        assert_eq!(commutator(r(4, 4), r(1, 3)), Some((r(1, 4), -1)));
        assert_eq!(commutator(r(1, 2), r(2, 3)), None);
    }

    #[test]
    fn word_parsing_round_trips() {
        let alg = Algebra::new(GroupConfig::a5_p3());
        let w = alg.parse_word("f_2 f_1^(2) f_12 f_2345").unwrap();
        assert_eq!(alg.format_word(&w), "f_2 f_1^(2) f_12 f_2345");
        assert!(alg.parse_word("f_13").is_none());
        assert!(alg.parse_word("f_6").is_none());
    }
}
