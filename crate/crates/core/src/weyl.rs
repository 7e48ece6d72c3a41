//! Characters of induced modules in the orbit-sum basis: Freudenthal
//! multiplicities, the Weyl dimension formula and orbit-sum arithmetic.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::roots::{
    dominance_leq, dominant_conjugate, dominant_weights_below, orbit, orbit_size, pairing,
    scaled_inner_product, GroupConfig, Weight,
};

/// A W-invariant character written as `sum c(nu) e(nu)` over dominant `nu`.
/// Serialized as a list of `[nu, c]` pairs.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "Vec<(Weight, i64)>", from = "Vec<(Weight, i64)>")]
pub struct CharVector {
    entries: BTreeMap<Weight, i64>,
}

impl From<CharVector> for Vec<(Weight, i64)> {
    fn from(c: CharVector) -> Self {
        c.entries.into_iter().collect()
    }
}

impl From<Vec<(Weight, i64)>> for CharVector {
    fn from(v: Vec<(Weight, i64)>) -> Self {
        v.into_iter().collect()
    }
}

impl CharVector {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(nu: Weight) -> Self {
        let mut c = Self::new();
        c.add(nu, 1);
        c
    }

    pub fn get(&self, nu: &Weight) -> i64 {
        self.entries.get(nu).copied().unwrap_or(0)
    }

    /// Adds `k` to the coefficient of `e(nu)`; zero coefficients are removed.
    pub fn add(&mut self, nu: Weight, k: i64) {
        if k == 0 {
            return;
        }
        match self.entries.entry(nu) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += k;
                if *o.get() == 0 {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(k);
            }
        }
    }

    pub fn add_scaled(&mut self, other: &CharVector, k: i64) {
        for (nu, &c) in &other.entries {
            self.add(nu.clone(), k * c);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Weight, i64)> {
        self.entries.iter().map(|(w, &c)| (w, c))
    }

    pub fn support(&self) -> impl Iterator<Item = &Weight> {
        self.entries.keys()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Frobenius twist: every weight multiplied by `q`.
    pub fn twist(&self, q: i32) -> CharVector {
        CharVector {
            entries: self.entries.iter().map(|(w, &c)| (w.scale(q), c)).collect(),
        }
    }
}

impl FromIterator<(Weight, i64)> for CharVector {
    fn from_iter<I: IntoIterator<Item = (Weight, i64)>>(iter: I) -> Self {
        let mut c = CharVector::new();
        for (w, k) in iter {
            c.add(w, k);
        }
        c
    }
}

/// Lower unitriangular integer matrix indexed by dominant weights.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompMatrix {
    pub index: Vec<Weight>,
    pub rows: Vec<Vec<i64>>,
}

impl DecompMatrix {
    /// Lays out characters as rows over `index`. Fails if a row has support
    /// outside the index or above its own weight.
    pub fn from_rows(index: Vec<Weight>, rows: &[CharVector]) -> Result<Self> {
        let pos: BTreeMap<&Weight, usize> = index.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let mut out = Vec::with_capacity(rows.len());
        for (i, row) in rows.iter().enumerate() {
            let mut dense = vec![0; index.len()];
            for (nu, c) in row.iter() {
                let j = *pos.get(nu).ok_or_else(|| {
                    Error::Invariant(format!("row {} has weight {nu} outside the index", index[i]))
                })?;
                if j > i {
                    return Err(Error::Invariant(format!(
                        "row {} has entry above the diagonal at {nu}",
                        index[i]
                    )));
                }
                dense[j] = c;
            }
            out.push(dense);
        }
        let m = DecompMatrix { index, rows: out };
        m.check_unitriangular()?;
        Ok(m)
    }

    pub fn identity(index: Vec<Weight>) -> Self {
        let n = index.len();
        let rows = (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect();
        DecompMatrix { index, rows }
    }

    pub fn dim(&self) -> usize {
        self.index.len()
    }

    pub fn position(&self, w: &Weight) -> Option<usize> {
        self.index.iter().position(|x| x == w)
    }

    pub fn get(&self, lambda: &Weight, nu: &Weight) -> Option<i64> {
        Some(self.rows[self.position(lambda)?][self.position(nu)?])
    }

    pub fn row(&self, lambda: &Weight) -> Option<CharVector> {
        let i = self.position(lambda)?;
        Some(
            self.index
                .iter()
                .zip(&self.rows[i])
                .map(|(w, &c)| (w.clone(), c))
                .collect(),
        )
    }

    pub fn check_unitriangular(&self) -> Result<()> {
        for (i, row) in self.rows.iter().enumerate() {
            if row[i] != 1 {
                return Err(Error::Invariant(format!(
                    "diagonal entry at {} is {}",
                    self.index[i], row[i]
                )));
            }
            for (j, &c) in row.iter().enumerate() {
                if c != 0 && j != i && !dominance_leq(&self.index[j], &self.index[i]) {
                    return Err(Error::Invariant(format!(
                        "entry ({}, {}) = {c} but {} is not below {}",
                        self.index[i], self.index[j], self.index[j], self.index[i]
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Weight multiplicities of the induced module `H^0(lambda)` at every
/// dominant weight, via Freudenthal's recursion.
///
/// Non-dominant weights met in the recursion are folded to their dominant
/// conjugate. Norms are kept as integers scaled by `n+1`.
pub fn freudenthal_row(cfg: &GroupConfig, lambda: &Weight) -> Result<CharVector> {
    let below = dominant_weights_below(lambda)?;
    let rho = cfg.rho();
    let roots = cfg.positive_roots();
    let n1 = cfg.rank as i64 + 1;
    let top_norm = {
        let s = lambda.add(&rho);
        scaled_inner_product(&s, &s)
    };
    let mut mult: BTreeMap<Weight, i64> = BTreeMap::new();
    mult.insert(lambda.clone(), 1);

    let lookup = |mult: &BTreeMap<Weight, i64>, w: &Weight| -> i64 {
        let d = dominant_conjugate(w);
        mult.get(&d).copied().unwrap_or(0)
    };

    for mu in below.iter().rev().skip(1) {
        let s = mu.add(&rho);
        let denom = top_norm - scaled_inner_product(&s, &s);
        if denom <= 0 {
            return Err(Error::Invariant(format!(
                "Freudenthal norm difference {denom} at {mu} below {lambda}"
            )));
        }
        let mut sum = 0i64;
        for &alpha in &roots {
            let base = pairing(mu, alpha) as i64;
            let mut k = 1i64;
            loop {
                let w = mu.add_root(alpha, k as i32);
                if !dominance_leq(&w, lambda) {
                    break;
                }
                let m = lookup(&mult, &w);
                // (mu + k alpha, alpha) = <mu, alpha^vee> + 2k
                sum += (base + 2 * k) * m;
                k += 1;
            }
        }
        let num = 2 * n1 * sum;
        if num % denom != 0 {
            return Err(Error::Invariant(format!(
                "Freudenthal multiplicity at {mu} is not an integer: {num}/{denom}"
            )));
        }
        mult.insert(mu.clone(), num / denom);
    }
    Ok(mult.into_iter().collect())
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Exact quotient of two factor lists, cancelling before multiplying.
fn cancel_product(mut num: Vec<u128>, den: Vec<u128>) -> Result<u128> {
    for mut d in den {
        for x in num.iter_mut() {
            if d == 1 {
                break;
            }
            let g = gcd(*x, d);
            *x /= g;
            d /= g;
        }
        if d != 1 {
            return Err(Error::Invariant("dimension formula is not integral".into()));
        }
    }
    num.into_iter()
        .try_fold(1u128, |acc, x| acc.checked_mul(x))
        .ok_or_else(|| Error::TooLarge("dimension overflows u128".into()))
}

/// Weyl dimension formula `prod <lambda + rho, alpha^vee> / <rho, alpha^vee>`.
pub fn weyl_dim(cfg: &GroupConfig, lambda: &Weight) -> Result<u128> {
    if !lambda.is_dominant() {
        return Err(Error::NotDominant(lambda.clone()));
    }
    let shifted = lambda.add(&cfg.rho());
    let roots = cfg.positive_roots();
    let num = roots.iter().map(|&a| pairing(&shifted, a) as u128).collect();
    let den = roots.iter().map(|a| a.height() as u128).collect();
    cancel_product(num, den)
}

/// The closed A5 product over `2^8 3^3 5`.
pub fn weyl_dim_a5(lambda: &Weight) -> Result<u128> {
    let &[a, b, c, d, e] = lambda.coords() else {
        return Err(Error::WrongLength {
            weight: lambda.to_string(),
            got: lambda.rank(),
            expected: 5,
        });
    };
    if !lambda.is_dominant() {
        return Err(Error::NotDominant(lambda.clone()));
    }
    let f = |x: i32| x as u128;
    let num = vec![
        f(a + 1),
        f(b + 1),
        f(c + 1),
        f(d + 1),
        f(e + 1),
        f(a + b + 2),
        f(b + c + 2),
        f(c + d + 2),
        f(d + e + 2),
        f(a + b + c + 3),
        f(b + c + d + 3),
        f(c + d + e + 3),
        f(a + b + c + d + 4),
        f(b + c + d + e + 4),
        f(a + b + c + d + e + 5),
    ];
    cancel_product(num, vec![1 << 8, 27, 5])
}

/// Change of basis from orbit sums to induced-module characters, on
/// `dominant_weights_below(lambda)`.
pub fn matrix_a(cfg: &GroupConfig, lambda: &Weight) -> Result<DecompMatrix> {
    let index = dominant_weights_below(lambda)?;
    let rows = index
        .par_iter()
        .map(|mu| freudenthal_row(cfg, mu))
        .collect::<Result<Vec<_>>>()?;
    DecompMatrix::from_rows(index, &rows)
}

/// `e(mu) e(nu)` expanded in orbit sums.
pub fn orbit_sum_product(mu: &Weight, nu: &Weight) -> Result<CharVector> {
    let om = orbit(mu)?;
    let on = orbit(nu)?;
    let (small, large) = if om.len() <= on.len() { (om, on) } else { (on, om) };
    let mut out = CharVector::new();
    for x in &small {
        for y in &large {
            let s = x.add(y);
            if s.is_dominant() {
                out.add(s, 1);
            }
        }
    }
    Ok(out)
}

/// Product of two characters in the orbit-sum basis.
pub fn char_product(a: &CharVector, b: &CharVector) -> Result<CharVector> {
    let mut out = CharVector::new();
    for (mu, cm) in a.iter() {
        for (nu, cn) in b.iter() {
            out.add_scaled(&orbit_sum_product(mu, nu)?, cm * cn);
        }
    }
    Ok(out)
}

/// Total dimension `sum c(nu) |W nu|`.
pub fn char_dim(c: &CharVector) -> i128 {
    c.iter()
        .map(|(nu, k)| k as i128 * orbit_size(nu) as i128)
        .sum()
}


#[cfg(test)]
mod properties {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(20))]

        #[test]
        fn freudenthal_sums_to_weyl_dimension(c in proptest::collection::vec(0i32..=3, 5)) {
            let cfg = GroupConfig::a5_p3();
            let lambda = Weight::new(c);
            let row = freudenthal_row(&cfg, &lambda).unwrap();
            prop_assert_eq!(char_dim(&row) as u128, weyl_dim(&cfg, &lambda).unwrap());
            prop_assert!(row.iter().all(|(_, k)| k > 0));
        }

        #[test]
        fn general_and_closed_dimension_formulas_agree(c in proptest::collection::vec(0i32..=12, 5)) {
            let cfg = GroupConfig::a5_p3();
            let lambda = Weight::new(c);
            prop_assert_eq!(weyl_dim(&cfg, &lambda).unwrap(), weyl_dim_a5(&lambda).unwrap());
        }

        #[test]
        fn weight_spaces_in_cone_are_nonzero(c in proptest::collection::vec(0i32..=3, 3)) {
            let cfg = GroupConfig::new(3, 3, 1).unwrap();
            let lambda = Weight::new(c);
            let row = freudenthal_row(&cfg, &lambda).unwrap();
            for mu in dominant_weights_below(&lambda).unwrap() {
                prop_assert!(row.get(&mu) >= 1);
            }
        }

        #[test]
        fn orbit_product_counts(a in proptest::collection::vec(0i32..=2, 4), b in proptest::collection::vec(0i32..=2, 4)) {
            let (mu, nu) = (Weight::new(a), Weight::new(b));
            let p = orbit_sum_product(&mu, &nu).unwrap();
            prop_assert!(p.iter().all(|(_, k)| k > 0));
            prop_assert_eq!(char_dim(&p), (orbit_size(&mu) * orbit_size(&nu)) as i128);
        }
    }
}
