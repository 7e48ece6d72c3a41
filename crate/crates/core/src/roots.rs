//! Root system and weight lattice of type A_n.
//!
//! Weights are stored in fundamental-weight coordinates. The epsilon
//! realization (n+1 coordinates modulo the all-ones vector) is used for Weyl
//! group orbits, since the Weyl group acts there by permuting entries.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest rank supported by the packed PBW monomial representation.
pub const MAX_RANK: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupConfig {
    pub rank: usize,
    pub prime: u32,
    /// Frobenius level `n` of the restricted region `X_n(T)`.
    pub frobenius_level: u32,
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

impl GroupConfig {
    pub fn new(rank: usize, prime: u32, frobenius_level: u32) -> Result<Self> {
        if rank == 0 || rank > MAX_RANK {
            return Err(Error::InvalidConfig(format!(
                "rank must be in 1..={MAX_RANK}, got {rank}"
            )));
        }
        if !is_prime(prime) || prime > 251 {
            return Err(Error::InvalidConfig(format!(
                "characteristic must be a prime below 256, got {prime}"
            )));
        }
        if frobenius_level == 0 {
            return Err(Error::InvalidConfig("frobenius level must be >= 1".into()));
        }
        let q = (prime as u64).checked_pow(frobenius_level);
        if q.is_none_or(|q| q > 64) {
            return Err(Error::InvalidConfig(format!(
                "p^n = {prime}^{frobenius_level} is too large"
            )));
        }
        Ok(Self {
            rank,
            prime,
            frobenius_level,
        })
    }

    /// Type A5 in characteristic 3, first Frobenius kernel.
    pub fn a5_p3() -> Self {
        Self::new(5, 3, 1).unwrap()
    }

    /// `p^n`: restricted weights have all coordinates below this bound.
    pub fn q(&self) -> u32 {
        self.prime.pow(self.frobenius_level)
    }

    pub fn num_positive_roots(&self) -> usize {
        self.rank * (self.rank + 1) / 2
    }

    /// Positive roots in canonical order: by height, then by lower index.
    /// For A5 this is 1,2,3,4,5,12,23,34,45,13,24,35,14,25,15.
    pub fn positive_roots(&self) -> Vec<PositiveRoot> {
        let n = self.rank as u8;
        (1..=n)
            .flat_map(|h| (1..=n + 1 - h).map(move |lo| PositiveRoot::new(lo, lo + h - 1)))
            .collect()
    }

    pub fn root_index(&self, root: PositiveRoot) -> usize {
        let n = self.rank;
        let h = root.height();
        // roots of height t < h: n - t + 1 each
        let offset: usize = (1..h).map(|t| n + 1 - t).sum();
        offset + root.lo as usize - 1
    }

    pub fn weight(&self, coords: Vec<i32>) -> Result<Weight> {
        if coords.len() != self.rank {
            return Err(Error::WrongLength {
                weight: format!("{coords:?}"),
                got: coords.len(),
                expected: self.rank,
            });
        }
        Ok(Weight(coords))
    }

    /// Parses `2,1,2,1,2`.
    pub fn parse_weight(&self, s: &str) -> Result<Weight> {
        let coords = s
            .split(',')
            .map(|c| c.trim().parse::<i32>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::ParseWeight(s.to_string()))?;
        self.weight(coords)
    }

    pub fn zero(&self) -> Weight {
        Weight(vec![0; self.rank])
    }

    pub fn rho(&self) -> Weight {
        Weight(vec![1; self.rank])
    }

    pub fn fundamental(&self, i: usize) -> Weight {
        let mut c = vec![0; self.rank];
        c[i - 1] = 1;
        Weight(c)
    }

    /// `(p^n - 1) rho`, the Steinberg weight.
    pub fn steinberg(&self) -> Weight {
        Weight(vec![self.q() as i32 - 1; self.rank])
    }

    pub fn is_restricted(&self, w: &Weight) -> bool {
        w.is_dominant() && w.0.iter().all(|&c| c < self.q() as i32)
    }

    /// Short stable identifier, used in cache keys and file names.
    pub fn key(&self) -> String {
        format!("A{}-p{}-n{}", self.rank, self.prime, self.frobenius_level)
    }
}

impl fmt::Display for GroupConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "A{} p={}", self.rank, self.prime)?;
        if self.frobenius_level > 1 {
            write!(f, " n={}", self.frobenius_level)?;
        }
        Ok(())
    }
}

/// A weight in fundamental-weight coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(Vec<i32>);

impl Weight {
    pub fn new(coords: Vec<i32>) -> Self {
        Weight(coords)
    }

    pub fn coords(&self) -> &[i32] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: i32) -> Weight {
        Weight(self.0.iter().map(|a| a * k).collect())
    }

    /// Adds `k` times a positive root.
    pub fn add_root(&self, root: PositiveRoot, k: i32) -> Weight {
        let mut c = self.0.clone();
        root.add_to(&mut c, k);
        Weight(c)
    }

    /// Digit string such as `00200`, when every coordinate is a single digit.
    pub fn compact_label(&self) -> Option<String> {
        self.0
            .iter()
            .map(|&c| {
                if (0..=9).contains(&c) {
                    char::from_digit(c as u32, 10)
                } else {
                    None
                }
            })
            .collect()
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Epsilon coordinates, normalized so the smallest entry is zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EpsilonWeight(Vec<i32>);

impl EpsilonWeight {
    pub fn from_weight(w: &Weight) -> Self {
        let n = w.rank();
        let mut c = vec![0; n + 1];
        for i in (0..n).rev() {
            c[i] = c[i + 1] + w.0[i];
        }
        Self::normalized(c)
    }

    pub fn normalized(mut c: Vec<i32>) -> Self {
        let m = c.iter().copied().min().unwrap_or(0);
        c.iter_mut().for_each(|x| *x -= m);
        EpsilonWeight(c)
    }

    pub fn coords(&self) -> &[i32] {
        &self.0
    }

    pub fn to_weight(&self) -> Weight {
        Weight(self.0.windows(2).map(|p| p[0] - p[1]).collect())
    }
}

/// The positive root `alpha_lo + ... + alpha_hi` (1-based indices).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PositiveRoot {
    pub lo: u8,
    pub hi: u8,
}

impl PositiveRoot {
    pub fn new(lo: u8, hi: u8) -> Self {
        assert!(1 <= lo && lo <= hi, "bad root interval [{lo},{hi}]");
        Self { lo, hi }
    }

    pub fn simple(i: u8) -> Self {
        Self::new(i, i)
    }

    pub fn height(&self) -> usize {
        (self.hi - self.lo + 1) as usize
    }

    fn add_to(&self, c: &mut [i32], k: i32) {
        let (lo, hi) = (self.lo as usize - 1, self.hi as usize - 1);
        c[lo] += k;
        c[hi] += k;
        if lo > 0 {
            c[lo - 1] -= k;
        }
        if hi + 1 < c.len() {
            c[hi + 1] -= k;
        }
    }

    /// The root expressed in fundamental-weight coordinates.
    pub fn fund_coords(&self, rank: usize) -> Weight {
        let mut c = vec![0; rank];
        self.add_to(&mut c, 1);
        Weight(c)
    }

    /// Index label as in `f_{123}`; digits are concatenated.
    pub fn label(&self) -> String {
        (self.lo..=self.hi).map(|i| i.to_string()).collect()
    }
}

impl fmt::Display for PositiveRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

/// `<lambda, alpha^vee>`.
pub fn pairing(lambda: &Weight, alpha: PositiveRoot) -> i32 {
    lambda.0[alpha.lo as usize - 1..alpha.hi as usize].iter().sum()
}

/// `(n+1) (lambda, mu)` for the form with `(alpha, alpha) = 2`; always an integer.
pub fn scaled_inner_product(lambda: &Weight, mu: &Weight) -> i64 {
    let a = EpsilonWeight::from_weight(lambda);
    let b = EpsilonWeight::from_weight(mu);
    let n1 = a.0.len() as i64;
    let dot: i64 = a.0.iter().zip(&b.0).map(|(&x, &y)| x as i64 * y as i64).sum();
    let sa: i64 = a.0.iter().map(|&x| x as i64).sum();
    let sb: i64 = b.0.iter().map(|&x| x as i64).sum();
    n1 * dot - sa * sb
}

pub fn inner_product(lambda: &Weight, mu: &Weight) -> Rational64 {
    Rational64::new(
        scaled_inner_product(lambda, mu),
        lambda.rank() as i64 + 1,
    )
}

/// `(n+1)` times the simple-root coordinates of a weight.
pub fn scaled_root_coords(w: &Weight) -> Vec<i64> {
    let n = w.rank() as i64;
    (1..=n)
        .map(|i| {
            (1..=n)
                .map(|j| i.min(j) * (n + 1 - i.max(j)) * w.0[j as usize - 1] as i64)
                .sum()
        })
        .collect()
}

/// Simple-root coordinates of `w` if it lies in the root lattice.
pub fn root_coords(w: &Weight) -> Option<Vec<i64>> {
    let n1 = w.rank() as i64 + 1;
    scaled_root_coords(w)
        .into_iter()
        .map(|c| (c % n1 == 0).then_some(c / n1))
        .collect()
}

/// Sum of simple-root coordinates of a root-lattice element.
pub fn height(w: &Weight) -> Option<i64> {
    root_coords(w).map(|c| c.iter().sum())
}

/// `mu <= lambda`: the difference is a nonnegative integer combination of
/// simple roots. Decided by prefix sums of the centered epsilon difference.
pub fn dominance_leq(mu: &Weight, lambda: &Weight) -> bool {
    match root_coords(&lambda.sub(mu)) {
        Some(c) => c.iter().all(|&x| x >= 0),
        None => false,
    }
}

/// Dominant representative of the Weyl group orbit of `w`.
pub fn dominant_conjugate(w: &Weight) -> Weight {
    let mut e = EpsilonWeight::from_weight(w).0;
    e.sort_unstable_by(|a, b| b.cmp(a));
    EpsilonWeight(e).to_weight()
}

fn next_permutation(v: &mut [i32]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// The full Weyl group orbit of a dominant weight, sorted.
pub fn orbit(nu: &Weight) -> Result<Vec<Weight>> {
    if !nu.is_dominant() {
        return Err(Error::NotDominant(nu.clone()));
    }
    let mut e = EpsilonWeight::from_weight(nu).0;
    e.sort_unstable();
    let mut out = Vec::new();
    loop {
        out.push(EpsilonWeight(e.clone()).to_weight());
        if !next_permutation(&mut e) {
            break;
        }
    }
    out.sort();
    Ok(out)
}

fn factorial(k: usize) -> u64 {
    (1..=k as u64).product()
}

/// `|W nu|` from the stabilizer: `(n+1)! / prod(multiplicity!)`.
pub fn orbit_size(nu: &Weight) -> u64 {
    let mut e = EpsilonWeight::from_weight(&dominant_conjugate(nu)).0;
    e.sort_unstable();
    let stab: u64 = e
        .chunk_by(|a, b| a == b)
        .map(|run| factorial(run.len()))
        .product();
    factorial(e.len()) / stab
}

/// All dominant `mu <= lambda`, smallest first and `lambda` last.
///
/// Order: height of `lambda - mu` descending, then coordinates ascending.
pub fn dominant_weights_below(lambda: &Weight) -> Result<Vec<Weight>> {
    if !lambda.is_dominant() {
        return Err(Error::NotDominant(lambda.clone()));
    }
    let n = lambda.rank();
    let n1 = n as i64 + 1;
    let bounds: Vec<i64> = scaled_root_coords(lambda).iter().map(|c| c / n1).collect();
    // d[0] and d[n+1] stay zero
    let mut d = vec![0i64; n + 2];
    let mut found: Vec<(i64, Weight)> = Vec::new();

    fn coord(lambda: &Weight, d: &[i64], i: usize) -> i64 {
        lambda.0[i - 1] as i64 - 2 * d[i] + d[i - 1] + d[i + 1]
    }

    fn rec(
        lambda: &Weight,
        bounds: &[i64],
        d: &mut Vec<i64>,
        i: usize,
        found: &mut Vec<(i64, Weight)>,
    ) {
        let n = lambda.rank();
        if i > n {
            if coord(lambda, d, n) >= 0 {
                let w = Weight((1..=n).map(|k| coord(lambda, d, k) as i32).collect());
                found.push((d.iter().sum(), w));
            }
            return;
        }
        for v in 0..=bounds[i - 1] {
            d[i] = v;
            // coordinate i-1 is now fully determined
            if i >= 2 && coord(lambda, d, i - 1) < 0 {
                continue;
            }
            rec(lambda, bounds, d, i + 1, found);
        }
        d[i] = 0;
    }

    rec(lambda, &bounds, &mut d, 1, &mut found);
    found.sort_by(|a, b| b.0.cmp(&a.0).then_with(|| a.1.cmp(&b.1)));
    Ok(found.into_iter().map(|(_, w)| w).collect())
}

/// Affine reflection `s_{alpha, m p}` in the dot action:
/// `mu - (<mu + rho, alpha^vee> - m p) alpha`.
pub fn dot_reflect(cfg: &GroupConfig, mu: &Weight, alpha: PositiveRoot, m: i32) -> Weight {
    let k = pairing(&mu.add(&cfg.rho()), alpha) - m * cfg.prime as i32;
    mu.add_root(alpha, -k)
}

/// `mu ↑ lambda`: a chain of dot-action affine reflections descends in
/// dominance order from `lambda` to `mu`.
///
/// The search visits every weight `x` with `mu <= x <= lambda`, so
/// intermediate weights need not be dominant.
pub fn strongly_linked(cfg: &GroupConfig, mu: &Weight, lambda: &Weight) -> bool {
    if mu == lambda {
        return true;
    }
    if !dominance_leq(mu, lambda) {
        return false;
    }
    let p = cfg.prime as i32;
    let rho = cfg.rho();
    let roots = cfg.positive_roots();
    let mut seen: HashSet<Weight> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(lambda.clone());
    queue.push_back(lambda.clone());
    while let Some(x) = queue.pop_front() {
        let shifted = x.add(&rho);
        for &alpha in &roots {
            let r = pairing(&shifted, alpha).rem_euclid(p);
            let mut k = if r == 0 { p } else { r };
            loop {
                let y = x.add_root(alpha, -k);
                if !dominance_leq(mu, &y) {
                    break;
                }
                if &y == mu {
                    return true;
                }
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
                k += p;
            }
        }
    }
    false
}

/// `mu` and `lambda` lie in one orbit of the affine Weyl group under the dot
/// action, i.e. in the same linkage class.
pub fn same_linkage_class(cfg: &GroupConfig, mu: &Weight, lambda: &Weight) -> bool {
    let rho = cfg.rho();
    let shifted_mu = mu.add(&rho);
    let shifted_lambda = dominant_conjugate(&lambda.add(&rho));
    let modulus = (cfg.rank as i64 + 1) * cfg.prime as i64;
    orbit(&shifted_lambda)
        .map(|o| {
            o.iter().any(|y| {
                scaled_root_coords(&shifted_mu.sub(y))
                    .iter()
                    .all(|c| c % modulus == 0)
            })
        })
        .unwrap_or(false)
}

/// Dominant weights below `lambda` in its linkage class, in the order of
/// [`dominant_weights_below`].
pub fn linkage_block(cfg: &GroupConfig, lambda: &Weight) -> Result<Vec<Weight>> {
    Ok(dominant_weights_below(lambda)?
        .into_iter()
        .filter(|mu| same_linkage_class(cfg, mu, lambda))
        .collect())
}

/// `-w_0 lambda`, which for type A reverses the coordinates.
pub fn dual_weight(lambda: &Weight) -> Weight {
    Weight(lambda.0.iter().rev().copied().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(c: &[i32]) -> Weight {
        Weight::new(c.to_vec())
    }

    #[test]
    fn linkage_block_of_remark_weight() {
        let cfg = GroupConfig::a5_p3();
        assert_eq!(
            linkage_block(&cfg, &w(&[0, 0, 2, 0, 0])).unwrap(),
            vec![w(&[0, 0, 0, 0, 0]), w(&[1, 0, 0, 0, 1]), w(&[0, 0, 2, 0, 0])]
        );
    }

    #[test]
    fn canonical_root_order_matches_a5_listing() {
        let cfg = GroupConfig::a5_p3();
        let labels: Vec<String> = cfg.positive_roots().iter().map(|r| r.label()).collect();
        assert_eq!(
            labels,
            [
                "1", "2", "3", "4", "5", "12", "23", "34", "45", "123", "234", "345", "1234",
                "2345", "12345"
            ]
        );
        for (i, r) in cfg.positive_roots().into_iter().enumerate() {
            assert_eq!(cfg.root_index(r), i);
        }
    }

    #[test]
    fn pairing_examples() {
        assert_eq!(pairing(&w(&[1, 0, 0, 0, 0]), PositiveRoot::simple(1)), 1);
        assert_eq!(pairing(&w(&[0; 5]), PositiveRoot::new(2, 4)), 0);
        assert_eq!(pairing(&w(&[1, 0, 0, 0, 1]), PositiveRoot::new(1, 5)), 2);
    }

    #[test]
    fn inner_product_examples() {
        let a1 = PositiveRoot::simple(1).fund_coords(5);
        let a2 = PositiveRoot::simple(2).fund_coords(5);
        assert_eq!(inner_product(&a1, &a1), Rational64::from_integer(2));
        assert_eq!(inner_product(&a1, &a2), Rational64::from_integer(-1));
        let w1 = w(&[1, 0, 0, 0, 0]);
        assert_eq!(inner_product(&w1, &w1), Rational64::new(5, 6));
    }

    #[test]
    fn orbit_sizes() {
        assert_eq!(orbit(&w(&[0; 5])).unwrap().len(), 1);
        assert_eq!(orbit(&w(&[1, 0, 0, 0, 0])).unwrap().len(), 6);
        assert_eq!(orbit(&w(&[1, 0, 0, 0, 1])).unwrap().len(), 30);
        assert_eq!(orbit_size(&w(&[1, 0, 0, 0, 1])), 30);
        assert!(orbit(&w(&[1, -1, 0, 0, 0])).is_err());
    }

    #[test]
    fn dominance_examples() {
        assert!(dominance_leq(&w(&[1, 0, 0, 0, 1]), &w(&[0, 0, 2, 0, 0])));
        assert!(dominance_leq(&w(&[2, 1, 2, 1, 2]), &w(&[2, 1, 2, 1, 2])));
        assert!(!dominance_leq(&w(&[0; 5]), &w(&[1, 0, 0, 0, 0])));
    }

    #[test]
    fn weights_below_examples() {
        assert_eq!(dominant_weights_below(&w(&[0; 5])).unwrap(), vec![w(&[0; 5])]);
        assert_eq!(
            dominant_weights_below(&w(&[0, 0, 2, 0, 0])).unwrap(),
            vec![w(&[0; 5]), w(&[1, 0, 0, 0, 1]), w(&[0, 1, 0, 1, 0]), w(&[0, 0, 2, 0, 0])]
        );
        assert_eq!(
            dominant_weights_below(&w(&[1, 1])).unwrap(),
            vec![w(&[0, 0]), w(&[1, 1])]
        );
    }

    #[test]
    fn weights_below_matches_brute_force() {
        // every dominant weight with coordinates <= 6 compared against the filter
        for lambda in [w(&[2, 1, 0]), w(&[1, 2, 1]), w(&[3, 0, 3]), w(&[0, 4, 0])] {
            let got = dominant_weights_below(&lambda).unwrap();
            let mut brute = Vec::new();
            for a in 0..=8 {
                for b in 0..=8 {
                    for c in 0..=8 {
                        let mu = w(&[a, b, c]);
                        if dominance_leq(&mu, &lambda) {
                            brute.push(mu);
                        }
                    }
                }
            }
            let mut sorted = got.clone();
            sorted.sort();
            brute.sort();
            assert_eq!(sorted, brute, "{lambda}");
            assert_eq!(got.last(), Some(&lambda));
        }
    }

    #[test]
    fn dot_reflection_examples() {
        let cfg = GroupConfig::a5_p3();
        let lambda = w(&[1, 0, 0, 0, 1]);
        assert_eq!(dot_reflect(&cfg, &lambda, PositiveRoot::new(1, 5), 2), w(&[0; 5]));
        // on the wall: <mu + rho, alpha^vee> = 3
        let mu = w(&[2, 0, 0, 0, 0]);
        assert_eq!(dot_reflect(&cfg, &mu, PositiveRoot::simple(1), 1), mu);
        let once = dot_reflect(&cfg, &lambda, PositiveRoot::new(2, 4), 1);
        assert_eq!(dot_reflect(&cfg, &once, PositiveRoot::new(2, 4), 1), lambda);
    }

    #[test]
    fn linkage_examples() {
        let cfg = GroupConfig::a5_p3();
        assert!(strongly_linked(&cfg, &w(&[0; 5]), &w(&[0; 5])));
        assert!(strongly_linked(&cfg, &w(&[0; 5]), &w(&[1, 0, 0, 0, 1])));
        assert!(!strongly_linked(&cfg, &w(&[1, 0, 0, 0, 0]), &w(&[0; 5])));
        assert!(same_linkage_class(&cfg, &w(&[0; 5]), &w(&[1, 0, 0, 0, 1])));
        assert!(!same_linkage_class(&cfg, &w(&[1, 0, 0, 0, 0]), &w(&[0; 5])));
    }

    #[test]
    fn dual_examples() {
        assert_eq!(dual_weight(&w(&[2, 2, 2, 1, 0])), w(&[0, 1, 2, 2, 2]));
        assert_eq!(dual_weight(&w(&[1, 1, 1, 1, 1])), w(&[1, 1, 1, 1, 1]));
        assert_eq!(dual_weight(&w(&[2, 1, 2, 1, 2])), w(&[2, 1, 2, 1, 2]));
    }

    #[test]
    fn config_validation() {
        assert!(GroupConfig::new(0, 3, 1).is_err());
        assert!(GroupConfig::new(5, 4, 1).is_err());
        assert!(GroupConfig::new(5, 3, 0).is_err());
        assert!(GroupConfig::new(7, 3, 1).is_err());
        assert_eq!(GroupConfig::new(2, 3, 2).unwrap().q(), 9);
    }
}
