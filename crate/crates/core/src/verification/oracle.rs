//! `dim L(lambda)` from the contravariant form, for rank at most 2.
//!
//! The Weyl module is the Z-span of `f_i^(k)` words applied to the highest
//! vector `v` of `T = (x)_i (Lambda^i V)^(x lambda_i)`; the standard inner
//! product on `T` restricts to its contravariant form. Each weight space is
//! tracked as a GF(p) basis of its image in `T`, and `dim L(lambda)_mu` is
//! the rank of the Gram matrix there. Nothing from the main pipeline is used.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::roots::{GroupConfig, Weight};

const MAX_TENSOR_DIM: u64 = 2_000_000;

/// One tensor factor per entry, each a wedge of basis vectors as a bitmask.
type Basis = Vec<u8>;
type Vector = HashMap<Basis, u32>;

pub fn oracle_dim_l_small(cfg: &GroupConfig, lambda: &Weight) -> Result<u64> {
    let n = cfg.rank;
    let p = cfg.prime;
    if n > 2 {
        return Err(Error::InvalidConfig(format!("oracle needs rank at most 2, got {n}")));
    }
    if lambda.rank() != n || !lambda.is_dominant() {
        return Err(Error::NotDominant(lambda.clone()));
    }
    let mut factors = Vec::new();
    let mut tensor_dim = 1u64;
    for (i, &c) in lambda.coords().iter().enumerate() {
        let k = i + 1;
        for _ in 0..c {
            factors.push(((1u16 << k) - 1) as u8);
            tensor_dim = tensor_dim.saturating_mul(binomial(n as u64 + 1, k as u64));
        }
    }
    if tensor_dim > MAX_TENSOR_DIM {
        return Err(Error::TooLarge(format!("tensor space of dimension {tensor_dim}")));
    }

    let mut highest = Vector::new();
    highest.insert(factors, 1);
    // weight spaces keyed by (depth, simple-root coordinates of lambda - mu)
    let mut pending: BTreeMap<(u32, Vec<u32>), Vec<Vector>> = BTreeMap::new();
    pending.insert((0, vec![0; n]), vec![highest]);
    let mut total = 0u64;
    while let Some(((depth, beta), spanning)) = pending.pop_first() {
        let basis = reduce_to_basis(spanning, p);
        if basis.is_empty() {
            continue;
        }
        total += gram_rank(&basis, p) as u64;
        for i in 0..n {
            for k in 1.. {
                let images: Vec<Vector> = basis
                    .iter()
                    .map(|v| divided_power(v, i, k, p))
                    .filter(|v| !v.is_empty())
                    .collect();
                if images.is_empty() {
                    break;
                }
                let mut b = beta.clone();
                b[i] += k as u32;
                pending
                    .entry((depth + k as u32, b))
                    .or_default()
                    .extend(images);
            }
        }
    }
    Ok(total)
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// `f_i^(k)` with `f_i = E_{i+1,i}`. On each wedge factor `f_i` squares to
/// zero, so the divided power sums over `k`-sets of factors.
fn divided_power(v: &Vector, i: usize, k: usize, p: u32) -> Vector {
    let (from, to) = (1u8 << i, 1u8 << (i + 1));
    let mut out = Vector::new();
    for (b, &c) in v {
        let movable: Vec<usize> = (0..b.len())
            .filter(|&j| b[j] & from != 0 && b[j] & to == 0)
            .collect();
        for set in subsets(&movable, k) {
            let mut nb = b.clone();
            for j in set {
                nb[j] = (nb[j] & !from) | to;
            }
            let e = out.entry(nb).or_insert(0);
            *e = (*e + c) % p;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

fn subsets(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if items.len() < k {
        return vec![];
    }
    let mut with: Vec<Vec<usize>> = subsets(&items[1..], k - 1)
        .into_iter()
        .map(|mut s| {
            s.push(items[0]);
            s
        })
        .collect();
    with.extend(subsets(&items[1..], k));
    with
}

fn inv(a: u32, p: u32) -> u32 {
    (1..p).find(|x| a * x % p == 1).expect("unit")
}

/// Linearly independent subset spanning the same GF(p) space.
fn reduce_to_basis(vectors: Vec<Vector>, p: u32) -> Vec<Vector> {
    let mut keys: Vec<Basis> = vectors.iter().flat_map(|v| v.keys().cloned()).collect();
    keys.sort();
    keys.dedup();
    let col: HashMap<&Basis, usize> = keys.iter().enumerate().map(|(i, k)| (k, i)).collect();
    let dense: Vec<Vec<u32>> = vectors
        .iter()
        .map(|v| {
            let mut row = vec![0; keys.len()];
            for (b, &c) in v {
                row[col[b]] = c;
            }
            row
        })
        .collect();
    let keep = independent_rows(&dense, p);
    keep.into_iter().map(|i| vectors[i].clone()).collect()
}

/// Indices of a maximal independent set of rows, greedily in order.
fn independent_rows(rows: &[Vec<u32>], p: u32) -> Vec<usize> {
    let mut echelon: Vec<(usize, Vec<u32>)> = Vec::new();
    let mut keep = Vec::new();
    for (idx, r) in rows.iter().enumerate() {
        let mut r = r.clone();
        for (pc, pr) in &echelon {
            let f = r[*pc];
            if f != 0 {
                for (x, y) in r.iter_mut().zip(pr) {
                    *x = (*x + (p - f) * y) % p;
                }
            }
        }
        if let Some(pc) = r.iter().position(|&x| x != 0) {
            let s = inv(r[pc], p);
            for x in r.iter_mut() {
                *x = *x * s % p;
            }
            echelon.push((pc, r));
            keep.push(idx);
        }
    }
    keep
}

fn gram_rank(basis: &[Vector], p: u32) -> usize {
    let gram: Vec<Vec<u32>> = basis
        .iter()
        .map(|a| {
            basis
                .iter()
                .map(|b| {
                    a.iter()
                        .filter_map(|(k, &x)| b.get(k).map(|&y| x * y % p))
                        .fold(0, |s, t| (s + t) % p)
                })
                .collect()
        })
        .collect();
    independent_rows(&gram, p).len()
}
