use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use dashmap::DashMap;
use rustc_hash::FxBuildHasher;

use super::{build_x, Algebra, AlgebraVector, Letter, Word};
use crate::roots::{GroupConfig, Weight};

type SuffixMap = DashMap<Vec<Letter>, Arc<AlgebraVector>, FxBuildHasher>;

/// Straightened products `suffix * x`, keyed by configuration, target
/// weight and suffix word. The empty suffix holds `x` itself.
#[derive(Default)]
pub struct MemoCache {
    tables: DashMap<(GroupConfig, Weight), Arc<SuffixMap>, FxBuildHasher>,
    hits: AtomicU64,
    stores: AtomicU64,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, serde::Serialize)]
pub struct MemoStats {
    pub hits: u64,
    pub stores: u64,
    pub entries: u64,
}

impl MemoCache {
    pub fn new() -> Self {
        Self::default()
    }

    fn table(&self, cfg: &GroupConfig, lambda: &Weight) -> Arc<SuffixMap> {
        if let Some(t) = self.tables.get(&(*cfg, lambda.clone())) {
            return t.clone();
        }
        self.tables
            .entry((*cfg, lambda.clone()))
            .or_default()
            .clone()
    }

    pub fn get(&self, cfg: &GroupConfig, lambda: &Weight, suffix: &[Letter]) -> Option<Arc<AlgebraVector>> {
        let t = self.tables.get(&(*cfg, lambda.clone()))?;
        let v = t.get(suffix).map(|e| e.clone());
        v
    }

    pub fn insert(&self, cfg: &GroupConfig, lambda: &Weight, suffix: Vec<Letter>, v: Arc<AlgebraVector>) {
        self.table(cfg, lambda).insert(suffix, v);
    }

    /// All entries for one target weight, sorted by suffix.
    pub fn entries(&self, cfg: &GroupConfig, lambda: &Weight) -> Vec<(Word, Arc<AlgebraVector>)> {
        let Some(t) = self.tables.get(&(*cfg, lambda.clone())) else {
            return Vec::new();
        };
        let mut v: Vec<_> = t
            .iter()
            .map(|e| (Word(e.key().clone()), e.value().clone()))
            .collect();
        v.sort_by(|a, b| a.0 .0.cmp(&b.0 .0));
        v
    }

    pub fn evict(&self, cfg: &GroupConfig, lambda: &Weight) {
        self.tables.remove(&(*cfg, lambda.clone()));
    }

    pub fn clear(&self) {
        self.tables.clear();
    }

    pub fn len(&self) -> usize {
        self.tables.iter().map(|t| t.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn stats(&self) -> MemoStats {
        MemoStats {
            hits: self.hits.load(Ordering::Relaxed),
            stores: self.stores.load(Ordering::Relaxed),
            entries: self.len() as u64,
        }
    }

    pub fn reset_stats(&self) {
        self.hits.store(0, Ordering::Relaxed);
        self.stores.store(0, Ordering::Relaxed);
    }
}

/// The straightened generator `x_{(q-1)rho - lambda}` for restricted `lambda`.
pub(crate) fn generator(alg: &Algebra, lambda: &Weight) -> AlgebraVector {
    let cfg = alg.config();
    let shifted = cfg.rho().scale(cfg.q() as i32 - 1).sub(lambda);
    alg.straighten(&build_x(alg, &shifted))
}

/// `straighten(word . x_{(q-1)rho - lambda})`. Looks up the longest cached
/// suffix of `word`, then applies the remaining letters right to left,
/// storing every new suffix.
pub fn memo_apply(alg: &Algebra, lambda: &Weight, word: &Word, cache: &MemoCache) -> Arc<AlgebraVector> {
    let cfg = *alg.config();
    let table = cache.table(&cfg, lambda);
    let letters = word.letters();
    let mut found = None;
    for start in 0..letters.len() {
        if let Some(hit) = table.get(&letters[start..]) {
            cache.hits.fetch_add(1, Ordering::Relaxed);
            found = Some((start, hit.clone()));
            break;
        }
    }
    let (start, mut v) = match found {
        Some(f) => f,
        None => {
            let cached = table.get(&[][..]).map(|e| e.clone());
            let x = match cached {
                Some(x) => x,
                None => {
                    let x = Arc::new(generator(alg, lambda));
                    table.insert(Vec::new(), x.clone());
                    x
                }
            };
            (letters.len(), x)
        }
    };
    for pos in (0..start).rev() {
        v = Arc::new(alg.apply_letter(letters[pos], &v));
        table.insert(letters[pos..].to_vec(), v.clone());
        cache.stores.fetch_add(1, Ordering::Relaxed);
    }
    v
}

/// Same value as [`memo_apply`] with only `x` shared between calls.
pub fn naive_apply(alg: &Algebra, word: &Word, x: &AlgebraVector) -> AlgebraVector {
    alg.apply_word(word, x.clone())
}

/// A batch of words merged on common suffixes, for evaluation against one
/// `x`. Each distinct suffix is straightened once, as with [`memo_apply`],
/// but only the vectors on the current path are kept alive.
#[derive(Debug, Clone, Default)]
pub struct SuffixTree {
    nodes: Vec<SuffixNode>,
    words: usize,
}

#[derive(Debug, Clone)]
struct SuffixNode {
    letter: Letter,
    children: Vec<u32>,
    tags: Vec<u32>,
}

impl SuffixTree {
    pub fn new() -> Self {
        SuffixTree {
            nodes: vec![SuffixNode {
                letter: Letter { root: 0, exp: 0 },
                children: Vec::new(),
                tags: Vec::new(),
            }],
            words: 0,
        }
    }

    /// Adds `word`; `tag` is passed back when its value is ready.
    pub fn insert(&mut self, word: &Word, tag: u32) {
        let mut at = 0usize;
        for &l in word.letters().iter().rev() {
            let found = self.nodes[at]
                .children
                .iter()
                .copied()
                .find(|&c| self.nodes[c as usize].letter == l);
            at = match found {
                Some(c) => c as usize,
                None => {
                    self.nodes.push(SuffixNode {
                        letter: l,
                        children: Vec::new(),
                        tags: Vec::new(),
                    });
                    let id = (self.nodes.len() - 1) as u32;
                    self.nodes[at].children.push(id);
                    id as usize
                }
            };
        }
        self.nodes[at].tags.push(tag);
        self.words += 1;
    }

    pub fn words(&self) -> usize {
        self.words
    }

    /// Distinct nonempty suffixes, i.e. letter applications needed.
    pub fn suffixes(&self) -> usize {
        self.nodes.len() - 1
    }

    fn subtree_words(&self, node: usize) -> usize {
        let n = &self.nodes[node];
        n.tags.len() + n.children.iter().map(|&c| self.subtree_words(c as usize)).sum::<usize>()
    }

    /// Counters matching a run of [`memo_apply`] over the words in
    /// depth-first order: a word hits when an earlier word shares at least
    /// its last letter.
    pub fn stats(&self) -> MemoStats {
        let hits = self.nodes[0]
            .children
            .iter()
            .map(|&c| self.subtree_words(c as usize).saturating_sub(1) as u64)
            .sum();
        MemoStats {
            hits,
            stores: self.suffixes() as u64,
            entries: 0,
        }
    }

    /// Calls `visit(tag, word * x)` for every inserted word. Subtrees below
    /// distinct last letters run in parallel.
    pub fn evaluate<F>(&self, alg: &Algebra, x: &AlgebraVector, visit: &F)
    where
        F: Fn(u32, &AlgebraVector) + Sync,
    {
        use rayon::prelude::*;
        for &t in &self.nodes[0].tags {
            visit(t, x);
        }
        self.nodes[0]
            .children
            .par_iter()
            .for_each(|&c| self.descend(alg, c as usize, x, visit));
    }

    fn descend<F>(&self, alg: &Algebra, node: usize, parent: &AlgebraVector, visit: &F)
    where
        F: Fn(u32, &AlgebraVector) + Sync,
    {
        let n = &self.nodes[node];
        let v = alg.apply_letter(n.letter, parent);
        for &t in &n.tags {
            visit(t, &v);
        }
        for &c in &n.children {
            self.descend(alg, c as usize, &v, visit);
        }
    }
}
