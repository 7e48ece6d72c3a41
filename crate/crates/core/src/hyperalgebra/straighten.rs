use std::cell::RefCell;
use std::rc::Rc;

use rustc_hash::FxHashMap;

use super::{add_scaled, lucas_binomial, Algebra, AlgebraVector, Letter, PbwMonomial, Word};
use crate::roots::Weight;

type Terms = FxHashMap<PbwMonomial, u8>;

/// Entries kept in the product cache before it is flushed.
const PRODUCT_CACHE_LIMIT: usize = 1 << 20;

type ProductKey = (u8, u16, PbwMonomial);

/// Products `f_alpha^(a) * core` for the algebra whose id is in the tag.
#[derive(Default)]
struct ProductCache {
    owner: u64,
    map: FxHashMap<ProductKey, Rc<[(PbwMonomial, u8)]>>,
}

thread_local! {
    static PRODUCTS: RefCell<ProductCache> = RefCell::default();
}

impl Algebra {
    /// Left multiplication of `v` by one divided power, in normal form.
    pub fn apply_letter(&self, letter: Letter, v: &AlgebraVector) -> AlgebraVector {
        self.applications
            .fetch_add(1, std::sync::atomic::Ordering::Relaxed);
        let mut weight = v.weight;
        add_scaled(&mut weight, &self.root_vectors[letter.root as usize], letter.exp);
        if letter.exp == 0 {
            return AlgebraVector {
                terms: v.terms.clone(),
                weight,
            };
        }
        let mut out = Terms::default();
        for (m, &c) in &v.terms {
            self.product(letter.root as usize, letter.exp as u32, m, c as u32, &mut out);
        }
        out.retain(|_, c| *c != 0);
        AlgebraVector { terms: out, weight }
    }

    /// Normal form of a word, letters applied right to left.
    pub fn straighten(&self, word: &Word) -> AlgebraVector {
        self.apply_word(word, AlgebraVector::one())
    }

    pub fn apply_word(&self, word: &Word, mut v: AlgebraVector) -> AlgebraVector {
        for &l in word.letters().iter().rev() {
            v = self.apply_letter(l, &v);
        }
        v
    }

    /// Adds `coeff * f_alpha^(a) * m` to `out`.
    ///
    /// Leading letters of `m` that commute with `f_alpha` are split off; the
    /// product with the remainder is looked up in (or added to) the product
    /// cache.
    fn product<S: Sink>(&self, alpha: usize, a: u32, m: &PbwMonomial, coeff: u32, out: &mut S) {
        let p = self.cfg.prime;
        let n = self.roots.len();
        let mut prefix = PbwMonomial::ONE;
        let mut core = *m;
        let mut blocker = None;
        for g in 0..alpha {
            if core.exps[g] == 0 {
                continue;
            }
            if self.comm[alpha * n + g].is_some() {
                blocker = Some(g);
                break;
            }
            prefix.set(g, core.exps[g]);
            core.set(g, 0);
        }
        if blocker.is_none() {
            let have = core.exps[alpha] as u32;
            let c = lucas_binomial(a, have, p);
            if c != 0 {
                let total = a + have;
                assert!(total <= u8::MAX as u32, "exponent overflow in straightening");
                core.set(alpha, total as u8);
                out.put(core.join(&prefix), coeff * c % p, p);
            }
            return;
        }
        let key = (alpha as u8, a as u16, core);
        let cached = PRODUCTS.with(|c| {
            let c = c.borrow();
            if c.owner == self.id {
                c.map.get(&key).cloned()
            } else {
                None
            }
        });
        let terms = match cached {
            Some(t) => t,
            None => {
                let t = self.exchange(alpha, a, &core, blocker.unwrap());
                PRODUCTS.with(|c| {
                    let mut c = c.borrow_mut();
                    if c.owner != self.id || c.map.len() >= PRODUCT_CACHE_LIMIT {
                        c.map.clear();
                        c.owner = self.id;
                    }
                    c.map.insert(key, t.clone());
                });
                t
            }
        };
        for &(t, c) in terms.iter() {
            out.put(t.join(&prefix), coeff * c as u32 % p, p);
        }
    }

    /// `f_alpha^(a) * m` where the first letter `f_g^(c)` of `m` does not
    /// commute with `f_alpha`:
    /// `f_alpha^(a) f_g^(c) = sum_k s^k f_g^(c-k) f_alpha^(a-k) f_delta^(k)`.
    fn exchange(&self, alpha: usize, a: u32, m: &PbwMonomial, g: usize) -> Rc<[(PbwMonomial, u8)]> {
        let p = self.cfg.prime;
        let n = self.roots.len();
        let (delta, sign) = self.comm[alpha * n + g].expect("blocking letter");
        let c1 = m.exps[g] as u32;
        let mut rest = *m;
        rest.set(g, 0);
        let mut acc: Vec<(PbwMonomial, u32)> = Vec::new();
        let mut inner = Vec::new();
        let mut deltas = Vec::new();
        let mut sk = 1u32;
        for k in 0..=a.min(c1) {
            let mut pre = PbwMonomial::ONE;
            pre.set(g, (c1 - k) as u8);
            if k == 0 {
                inner.clear();
                self.product(alpha, a, &rest, 1, &mut inner);
                acc.extend(inner.iter().map(|&(t, c)| (t.join(&pre), sk * c % p)));
            } else {
                deltas.clear();
                self.product(delta as usize, k, &rest, 1, &mut deltas);
                for &(t, ct) in &deltas {
                    let c = sk * ct % p;
                    if a == k {
                        acc.push((t.join(&pre), c));
                    } else {
                        inner.clear();
                        self.product(alpha, a - k, &t, 1, &mut inner);
                        acc.extend(inner.iter().map(|&(u, cu)| (u.join(&pre), c * cu % p)));
                    }
                }
            }
            sk = sk * sign as u32 % p;
        }
        acc.sort_unstable_by_key(|e| e.0.words());
        let mut out: Vec<(PbwMonomial, u8)> = Vec::with_capacity(acc.len());
        let mut i = 0;
        while i < acc.len() {
            let m = acc[i].0;
            let mut c = 0;
            while i < acc.len() && acc[i].0 == m {
                c = (c + acc[i].1) % p;
                i += 1;
            }
            if c != 0 {
                out.push((m, c as u8));
            }
        }
        out.into()
    }
}

trait Sink {
    fn put(&mut self, m: PbwMonomial, c: u32, p: u32);
}

impl Sink for Terms {
    fn put(&mut self, m: PbwMonomial, c: u32, p: u32) {
        let e = self.entry(m).or_insert(0);
        *e = ((*e as u32 + c) % p) as u8;
    }
}

impl Sink for Vec<(PbwMonomial, u32)> {
    fn put(&mut self, m: PbwMonomial, c: u32, _p: u32) {
        self.push((m, c));
    }
}

/// The staircase word `x_lambda`: for `s = 1..n` and `t = 1..=n-s+1` the
/// letter `f_t^(lambda_s + ... + lambda_{s+t-1})`, zero exponents omitted.
pub fn build_x(alg: &Algebra, lambda: &Weight) -> Word {
    let c = lambda.coords();
    let n = c.len();
    let mut letters = Vec::new();
    for s in 0..n {
        let mut acc = 0i32;
        for t in 0..n - s {
            acc += c[s + t];
            assert!(acc >= 0, "x_lambda needs nonnegative coordinates");
            if acc > 0 {
                letters.push(alg.letter(crate::roots::PositiveRoot::simple(t as u8 + 1), acc as u32));
            }
        }
    }
    Word(letters)
}
