//! Straightening checked against the action on `V^(x m)`.
//!
//! `f_[i,j]` acts on the natural module as `(-1)^(j-i) E_{j+1,i}`, which
//! squares to zero, so `f^(k)` on a tensor power is a sum over `k`-sets of
//! tensor positions. The action commutes with permuting positions, so it is
//! enough to compare a word with its normal form on sorted basis tensors.

use std::collections::HashMap;
use std::fmt;

use crate::hyperalgebra::{Algebra, AlgebraVector, Word};
use crate::roots::PositiveRoot;

/// A basis tensor `e_{t_1} (x) ... (x) e_{t_m}`, indices 0-based.
type Tensor = Vec<u8>;
type TensorVector = HashMap<Tensor, u32>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorMismatch {
    pub word: String,
    pub input: Tensor,
    pub from_word: Vec<(Tensor, u32)>,
    pub from_normal_form: Vec<(Tensor, u32)>,
}

impl fmt::Display for TensorMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} on {:?}: word gives {:?}, normal form gives {:?}",
            self.word, self.input, self.from_word, self.from_normal_form
        )
    }
}

fn act_root(root: PositiveRoot, k: u32, v: &TensorVector, p: u32) -> TensorVector {
    let (from, to) = (root.lo - 1, root.hi);
    let sign = if (root.hi - root.lo) % 2 == 1 && k % 2 == 1 { p - 1 } else { 1 };
    let mut out = TensorVector::new();
    for (t, &c) in v {
        let slots: Vec<usize> = (0..t.len()).filter(|&i| t[i] == from).collect();
        for_each_subset(&slots, k as usize, &mut |set| {
            let mut nt = t.clone();
            for &i in set {
                nt[i] = to;
            }
            let e = out.entry(nt).or_insert(0);
            *e = (*e + c * sign) % p;
        });
    }
    out.retain(|_, c| *c != 0);
    out
}

fn for_each_subset(items: &[usize], k: usize, f: &mut dyn FnMut(&[usize])) {
    fn go(items: &[usize], k: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for (i, &x) in items.iter().enumerate() {
            if items.len() - i < k - cur.len() {
                break;
            }
            cur.push(x);
            go(&items[i + 1..], k, cur, f);
            cur.pop();
        }
    }
    go(items, k, &mut Vec::new(), f);
}

fn act_word(alg: &Algebra, word: &Word, t: &Tensor) -> TensorVector {
    let p = alg.prime();
    let mut v = TensorVector::from([(t.clone(), 1)]);
    for l in word.letters().iter().rev() {
        v = act_root(alg.roots()[l.root as usize], l.exp as u32, &v, p);
        if v.is_empty() {
            break;
        }
    }
    v
}

/// Nondecreasing index sequences of length `m` over `0..=n`.
fn sorted_tensors(n: usize, m: usize) -> Vec<Tensor> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(m);
    fn go(lo: u8, hi: u8, m: usize, cur: &mut Tensor, out: &mut Vec<Tensor>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for x in lo..=hi {
            cur.push(x);
            go(x, hi, m, cur, out);
            cur.pop();
        }
    }
    go(0, n as u8, m, &mut cur, &mut out);
    out
}

fn sorted(v: TensorVector) -> Vec<(Tensor, u32)> {
    let mut v: Vec<_> = v.into_iter().collect();
    v.sort();
    v
}

/// Compares `word` with `normal_form` as operators on `V^(x m)`.
pub fn check_on_tensor_power(
    alg: &Algebra,
    word: &Word,
    normal_form: &AlgebraVector,
    m: usize,
) -> Result<(), TensorMismatch> {
    let p = alg.prime();
    let monomials: Vec<(Word, u8)> = normal_form.iter().map(|(mono, c)| (mono.to_word(), c)).collect();
    for t in sorted_tensors(alg.config().rank, m) {
        let lhs = act_word(alg, word, &t);
        let mut rhs = TensorVector::new();
        for (w, c) in &monomials {
            for (u, d) in act_word(alg, w, &t) {
                let e = rhs.entry(u).or_insert(0);
                *e = (*e + d * *c as u32) % p;
            }
        }
        rhs.retain(|_, c| *c != 0);
        if lhs != rhs {
            return Err(TensorMismatch {
                word: alg.format_word(word),
                input: t,
                from_word: sorted(lhs),
                from_normal_form: sorted(rhs),
            });
        }
    }
    Ok(())
}
