//! Simple characters `ch_p(lambda)` and decomposition numbers.
//!
//! For restricted `lambda`, `dim L(lambda)_nu` is the rank over GF(p) of
//! `{ m x : m a restricted PBW monomial of weight lambda - nu }` where
//! `x = x_{(q-1)rho - lambda}`. Other dominant weights go through Steinberg's
//! tensor product theorem, and decomposition numbers follow by peeling
//! simple characters off the induced-module character.

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex};
use std::time::{Duration, Instant};

use dashmap::DashMap;
use log::debug;
use rayon::prelude::*;
use rustc_hash::{FxBuildHasher, FxHashMap};

use crate::error::{Error, Result};
use crate::gf::{Echelon, SparseRow};
use crate::hyperalgebra::{
    naive_apply, root_vector_between, Algebra, AlgebraVector, MemoStats, PbwMonomial, RootVector,
    SuffixTree, MAX_ROOTS,
};
use crate::roots::{dominance_leq, dominant_weights_below, height, GroupConfig, Weight};
use crate::weyl::{char_dim, char_product, freudenthal_row, CharVector, DecompMatrix};

/// All restricted PBW monomials (exponents at most `bound`) of weight `beta`,
/// sorted.
pub fn spanning_monomials(alg: &Algebra, beta: &RootVector, bound: u8) -> Vec<PbwMonomial> {
    let n = alg.config().rank;
    let roots = alg.roots();
    let mut out = Vec::new();
    let mut exps = [0u8; MAX_ROOTS];
    let mut rem = *beta;

    // Non-simple roots are chosen freely; simple roots are then forced.
    fn rec(
        idx: usize,
        n: usize,
        roots: &[crate::roots::PositiveRoot],
        bound: u8,
        rem: &mut RootVector,
        exps: &mut [u8; MAX_ROOTS],
        out: &mut Vec<PbwMonomial>,
    ) {
        if idx == roots.len() {
            if rem[..n].iter().all(|&r| r <= bound as u16) {
                let mut m = *exps;
                for i in 0..n {
                    m[i] = rem[i] as u8;
                }
                out.push(PbwMonomial::from_exps(&m));
            }
            return;
        }
        let r = roots[idx];
        let (lo, hi) = (r.lo as usize - 1, r.hi as usize);
        let max = rem[lo..hi].iter().copied().min().unwrap_or(0).min(bound as u16);
        for e in 0..=max {
            for c in &mut rem[lo..hi] {
                *c -= e;
            }
            exps[idx] = e as u8;
            rec(idx + 1, n, roots, bound, rem, exps, out);
            for c in &mut rem[lo..hi] {
                *c += e;
            }
        }
        exps[idx] = 0;
    }

    rec(n, n, roots, bound, &mut rem, &mut exps, &mut out);
    out.sort_unstable();
    out
}

/// One finished weight-space computation, reported to progress observers.
#[derive(Debug, Clone)]
pub struct RankEvent {
    pub lambda: Weight,
    pub nu: Weight,
    pub spanning: usize,
    pub dim: usize,
    pub elapsed: Duration,
}

pub type ProgressFn = dyn Fn(&RankEvent) + Send + Sync;

/// Called once for each newly computed restricted row.
pub type RowFn = dyn Fn(&Weight, &CharVector) + Send + Sync;

/// Counters for one pipeline.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, serde::Serialize)]
pub struct PipelineStats {
    pub applications: u64,
    pub memo: MemoStats,
    pub restricted_rows: u64,
}

/// Incremental rank of the vectors `m x` for one weight space.
struct RankAccumulator {
    cap: usize,
    columns: FxHashMap<PbwMonomial, u32>,
    echelon: Echelon,
}

impl RankAccumulator {
    fn new(p: u32, cap: Option<usize>) -> Self {
        RankAccumulator {
            cap: cap.unwrap_or(usize::MAX),
            columns: FxHashMap::default(),
            echelon: Echelon::new(p),
        }
    }

    fn push(&mut self, v: &AlgebraVector) {
        if self.echelon.rank() >= self.cap {
            return;
        }
        let columns = &mut self.columns;
        let mut row: SparseRow = v
            .iter()
            .map(|(t, c)| {
                let next = columns.len() as u32;
                (*columns.entry(*t).or_insert(next), c)
            })
            .collect();
        row.sort_unstable_by_key(|e| e.0);
        self.echelon.push(row);
    }
}

/// Computes and caches simple characters for one group configuration.
pub struct Pipeline {
    alg: Algebra,
    memoize: bool,
    suffix_hits: AtomicU64,
    suffix_stores: AtomicU64,
    early_exit: bool,
    generators: DashMap<Weight, Arc<AlgebraVector>, FxBuildHasher>,
    weyl_rows: DashMap<Weight, CharVector, FxBuildHasher>,
    restricted: DashMap<Weight, CharVector, FxBuildHasher>,
    progress: Option<Arc<ProgressFn>>,
    on_row: Option<Arc<RowFn>>,
}

impl Pipeline {
    pub fn new(cfg: GroupConfig) -> Self {
        Pipeline {
            alg: Algebra::new(cfg),
            memoize: true,
            suffix_hits: AtomicU64::new(0),
            suffix_stores: AtomicU64::new(0),
            early_exit: true,
            generators: Default::default(),
            weyl_rows: Default::default(),
            restricted: Default::default(),
            progress: None,
            on_row: None,
        }
    }

    /// Without suffix memoization; only the generator `x` is reused.
    pub fn without_memo(mut self) -> Self {
        self.memoize = false;
        self
    }

    /// Whether a rank computation may stop once it reaches the
    /// induced-module multiplicity, which bounds it from above.
    pub fn with_early_exit(mut self, on: bool) -> Self {
        self.early_exit = on;
        self
    }

    pub fn with_progress(mut self, f: Arc<ProgressFn>) -> Self {
        self.progress = Some(f);
        self
    }

    pub fn with_row_hook(mut self, f: Arc<RowFn>) -> Self {
        self.on_row = Some(f);
        self
    }

    pub fn config(&self) -> &GroupConfig {
        self.alg.config()
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn uses_memo(&self) -> bool {
        self.memoize
    }

    pub fn stats(&self) -> PipelineStats {
        PipelineStats {
            applications: self.alg.applications(),
            memo: MemoStats {
                hits: self.suffix_hits.load(Ordering::Relaxed),
                stores: self.suffix_stores.load(Ordering::Relaxed),
                entries: 0,
            },
            restricted_rows: self.restricted.len() as u64,
        }
    }

    pub fn reset_stats(&self) {
        self.alg.reset_applications();
        self.suffix_hits.store(0, Ordering::Relaxed);
        self.suffix_stores.store(0, Ordering::Relaxed);
    }

    fn check_weight(&self, w: &Weight) -> Result<()> {
        if w.rank() != self.config().rank {
            return Err(Error::WrongLength {
                weight: w.to_string(),
                got: w.rank(),
                expected: self.config().rank,
            });
        }
        if !w.is_dominant() {
            return Err(Error::NotDominant(w.clone()));
        }
        Ok(())
    }

    /// Induced-module character, cached.
    pub fn weyl_character(&self, lambda: &Weight) -> Result<CharVector> {
        if let Some(r) = self.weyl_rows.get(lambda) {
            return Ok(r.clone());
        }
        self.check_weight(lambda)?;
        let row = freudenthal_row(self.config(), lambda)?;
        self.weyl_rows.insert(lambda.clone(), row.clone());
        Ok(row)
    }

    /// The straightened generator `x_{(q-1)rho - lambda}`.
    pub fn generator(&self, lambda: &Weight) -> Arc<AlgebraVector> {
        if let Some(x) = self.generators.get(lambda) {
            return x.clone();
        }
        let x = Arc::new(crate::hyperalgebra::generator(&self.alg, lambda));
        self.generators.insert(lambda.clone(), x.clone());
        x
    }

    /// `dim L(lambda)_nu` for restricted `lambda`.
    pub fn weight_space_dim(&self, lambda: &Weight, nu: &Weight) -> Result<usize> {
        self.check_weight(lambda)?;
        self.check_weight(nu)?;
        if !self.config().is_restricted(lambda) {
            return Err(Error::NotRestricted(lambda.clone()));
        }
        if !dominance_leq(nu, lambda) {
            return Err(Error::NotBelow {
                lower: nu.clone(),
                upper: lambda.clone(),
            });
        }
        let cap = if self.early_exit {
            Some(self.weyl_character(lambda)?.get(nu) as usize)
        } else {
            None
        };
        let dims = self.weight_space_dims(lambda, &[(nu.clone(), cap)]);
        self.generators.remove(lambda);
        Ok(dims[0])
    }

    /// Ranks for several weight spaces of one `L(lambda)`. In memo mode all
    /// words share one suffix tree.
    fn weight_space_dims(&self, lambda: &Weight, tasks: &[(Weight, Option<usize>)]) -> Vec<usize> {
        let start = Instant::now();
        let bound = (self.config().q() - 1) as u8;
        let p = self.config().prime;
        let mut dims: Vec<Option<usize>> = vec![None; tasks.len()];
        let mut spanning: Vec<Vec<PbwMonomial>> = vec![Vec::new(); tasks.len()];
        for (i, (nu, cap)) in tasks.iter().enumerate() {
            if nu == lambda {
                dims[i] = Some(1);
            } else if *cap == Some(0) {
                dims[i] = Some(0);
            } else {
                let beta = root_vector_between(lambda, nu).expect("nu below lambda");
                spanning[i] = spanning_monomials(&self.alg, &beta, bound);
            }
        }
        let accs: Vec<Mutex<RankAccumulator>> = tasks
            .iter()
            .map(|(_, cap)| Mutex::new(RankAccumulator::new(p, *cap)))
            .collect();
        let x = self.generator(lambda);
        if self.memoize {
            let mut tree = SuffixTree::new();
            for (i, ms) in spanning.iter().enumerate() {
                for m in ms {
                    tree.insert(&m.to_word(), i as u32);
                }
            }
            tree.evaluate(&self.alg, &x, &|i, v| accs[i as usize].lock().unwrap().push(v));
            let st = tree.stats();
            self.suffix_hits.fetch_add(st.hits, Ordering::Relaxed);
            self.suffix_stores.fetch_add(st.stores, Ordering::Relaxed);
        } else {
            spanning.par_iter().enumerate().for_each(|(i, ms)| {
                for m in ms {
                    let v = naive_apply(&self.alg, &m.to_word(), &x);
                    accs[i].lock().unwrap().push(&v);
                }
            });
        }
        let elapsed = start.elapsed();
        tasks
            .iter()
            .enumerate()
            .map(|(i, (nu, _))| {
                let dim = dims[i].unwrap_or_else(|| accs[i].lock().unwrap().echelon.rank());
                if dims[i].is_none() {
                    let event = RankEvent {
                        lambda: lambda.clone(),
                        nu: nu.clone(),
                        spanning: spanning[i].len(),
                        dim,
                        elapsed,
                    };
                    debug!(
                        "dim L{}_{} = {} ({} monomials)",
                        event.lambda, event.nu, event.dim, event.spanning
                    );
                    if let Some(f) = &self.progress {
                        f(&event);
                    }
                }
                dim
            })
            .collect()
    }

    /// `ch_p(lambda)` in the orbit-sum basis for restricted `lambda`.
    pub fn restricted_row(&self, lambda: &Weight) -> Result<CharVector> {
        if let Some(r) = self.restricted.get(lambda) {
            return Ok(r.clone());
        }
        self.check_weight(lambda)?;
        if !self.config().is_restricted(lambda) {
            return Err(Error::NotRestricted(lambda.clone()));
        }
        let weyl = self.weyl_character(lambda)?;
        let tasks: Vec<(Weight, Option<usize>)> = weyl
            .iter()
            .map(|(w, c)| (w.clone(), self.early_exit.then_some(c as usize)))
            .collect();
        let dims = self.weight_space_dims(lambda, &tasks);
        let row: CharVector = tasks
            .into_iter()
            .zip(dims)
            .map(|((nu, _), d)| (nu, d as i64))
            .collect();
        self.generators.remove(lambda);
        self.restricted.insert(lambda.clone(), row.clone());
        if let Some(f) = &self.on_row {
            f(lambda, &row);
        }
        Ok(row)
    }

    /// Seeds a restricted row, e.g. from a disk cache.
    pub fn insert_restricted_row(&self, lambda: Weight, row: CharVector) {
        self.restricted.insert(lambda, row);
    }

    /// Snapshot of the computed restricted rows.
    pub fn restricted_rows(&self) -> Vec<(Weight, CharVector)> {
        let mut v: Vec<_> = self
            .restricted
            .iter()
            .map(|e| (e.key().clone(), e.value().clone()))
            .collect();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        v
    }

    /// `ch_p(lambda)` for any dominant `lambda`.
    pub fn simple_character(&self, lambda: &Weight) -> Result<CharVector> {
        self.check_weight(lambda)?;
        let restricted = |w: &Weight| self.restricted_row(w);
        steinberg_character(self.config(), lambda, &restricted)
    }

    /// Multiplicities `[H^0(lambda) : L(nu)]`, by repeatedly removing the
    /// simple character of a highest remaining weight.
    pub fn decomposition_row(&self, lambda: &Weight) -> Result<CharVector> {
        let mut rem = self.weyl_character(lambda)?;
        let mut out = CharVector::new();
        while !rem.is_empty() {
            let (nu, d) = rem
                .iter()
                .min_by_key(|(nu, _)| (height(&lambda.sub(nu)), (*nu).clone()))
                .map(|(nu, d)| (nu.clone(), d))
                .expect("nonempty");
            if d < 0 {
                return Err(Error::NegativeMultiplicity {
                    lambda: lambda.clone(),
                    nu,
                    value: d,
                });
            }
            rem.add_scaled(&self.simple_character(&nu)?, -d);
            out.add(nu, d);
        }
        Ok(out)
    }

    pub fn matrix_a(&self, lambda: &Weight) -> Result<DecompMatrix> {
        let index = dominant_weights_below(lambda)?;
        let rows = index
            .par_iter()
            .map(|mu| self.weyl_character(mu))
            .collect::<Result<Vec<_>>>()?;
        DecompMatrix::from_rows(index, &rows)
    }

    pub fn matrix_b(&self, lambda: &Weight) -> Result<DecompMatrix> {
        let index = dominant_weights_below(lambda)?;
        let rows = index
            .par_iter()
            .map(|mu| self.simple_character(mu))
            .collect::<Result<Vec<_>>>()?;
        DecompMatrix::from_rows(index, &rows)
    }

    /// `D` with `A = D B` on `dominant_weights_below(lambda)`.
    pub fn matrix_d(&self, lambda: &Weight) -> Result<DecompMatrix> {
        let a = self.matrix_a(lambda)?;
        let b = self.matrix_b(lambda)?;
        solve_decomposition(&a, &b)
    }

    pub fn dim_l(&self, lambda: &Weight) -> Result<i128> {
        Ok(char_dim(&self.simple_character(lambda)?))
    }
}

/// The restricted weights `lambda0, lambda1, ...` with
/// `lambda = lambda0 + q lambda1 + q^2 lambda2 + ...`, up to the last
/// nonzero one (just `0` for `lambda = 0`).
pub fn steinberg_pieces(cfg: &GroupConfig, lambda: &Weight) -> Vec<Weight> {
    let q = cfg.q() as i32;
    let mut rest = lambda.clone();
    let mut out = Vec::new();
    loop {
        let low = Weight::new(rest.coords().iter().map(|c| c % q).collect());
        rest = Weight::new(rest.coords().iter().map(|c| c / q).collect());
        out.push(low);
        if rest.is_zero() {
            return out;
        }
    }
}

/// `ch_p(lambda) = ch_p(lambda0) * ch_p(lambda1)^[q]` with `lambda0`
/// restricted, recursively.
pub fn steinberg_character(
    cfg: &GroupConfig,
    lambda: &Weight,
    restricted: &dyn Fn(&Weight) -> Result<CharVector>,
) -> Result<CharVector> {
    let q = cfg.q() as i32;
    let low = Weight::new(lambda.coords().iter().map(|c| c % q).collect());
    let high = Weight::new(lambda.coords().iter().map(|c| c / q).collect());
    let base = restricted(&low).map_err(|e| match e {
        Error::NotRestricted(w) | Error::MissingRow(w) => Error::MissingRow(w),
        other => other,
    })?;
    if high.is_zero() {
        return Ok(base);
    }
    let twisted = steinberg_character(cfg, &high, restricted)?.twist(q);
    char_product(&base, &twisted)
}

/// Solves `A = D B` for lower unitriangular `A`, `B` on the same index.
pub fn solve_decomposition(a: &DecompMatrix, b: &DecompMatrix) -> Result<DecompMatrix> {
    if a.index != b.index {
        return Err(Error::Invariant("A and B have different indices".into()));
    }
    let n = a.dim();
    let mut d = vec![vec![0i64; n]; n];
    for i in 0..n {
        d[i][i] = 1;
        for j in (0..i).rev() {
            let s: i64 = (j + 1..=i).map(|k| d[i][k] * b.rows[k][j]).sum();
            let v = a.rows[i][j] - s;
            if v < 0 {
                return Err(Error::NegativeMultiplicity {
                    lambda: a.index[i].clone(),
                    nu: a.index[j].clone(),
                    value: v,
                });
            }
            d[i][j] = v;
        }
    }
    let m = DecompMatrix {
        index: a.index.clone(),
        rows: d,
    };
    m.check_unitriangular()?;
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> GroupConfig {
        GroupConfig::a5_p3()
    }

    fn w(c: &[i32]) -> Weight {
        Weight::new(c.to_vec())
    }

    #[test]
    fn spanning_examples() {
        let alg = Algebra::new(cfg());
        let fmt = |beta: [u16; 6]| -> Vec<String> {
            spanning_monomials(&alg, &beta, 2)
                .iter()
                .map(|m| alg.format_monomial(m))
                .collect()
        };
        assert_eq!(fmt([0, 1, 1, 0, 0, 0]), vec!["f_23", "f_2 f_3"]);
        assert_eq!(fmt([1, 0, 0, 0, 0, 0]), vec!["f_1"]);
        assert_eq!(fmt([1, 1, 0, 0, 0, 0]), vec!["f_12", "f_1 f_2"]);
        assert_eq!(fmt([3, 0, 0, 0, 0, 0]), Vec::<String>::new());
    }

    #[test]
    fn spanning_matches_brute_force() {
        let alg = Algebra::new(GroupConfig::new(3, 3, 1).unwrap());
        let n_roots = alg.num_roots();
        for beta in [[2u16, 2, 1, 0, 0, 0], [1, 3, 2, 0, 0, 0], [2, 2, 2, 0, 0, 0]] {
            let mut brute = Vec::new();
            for code in 0..3usize.pow(n_roots as u32) {
                let mut e = [0u8; 6];
                let mut c = code;
                for slot in e.iter_mut() {
                    *slot = (c % 3) as u8;
                    c /= 3;
                }
                let m = PbwMonomial::from_exps(&e);
                if alg.monomial_weight(&m) == beta {
                    brute.push(m);
                }
            }
            brute.sort_unstable();
            assert_eq!(spanning_monomials(&alg, &beta, 2), brute);
        }
    }

    #[test]
    fn trivial_and_steinberg_rows() {
        let pl = Pipeline::new(cfg());
        assert_eq!(pl.dim_l(&w(&[0; 5])).unwrap(), 1);
        assert_eq!(pl.dim_l(&w(&[1, 0, 0, 0, 0])).unwrap(), 6);
        let c = pl.simple_character(&w(&[0, 2, 0, 0, 0])).unwrap();
        let want: CharVector = [
            (w(&[0, 2, 0, 0, 0]), 1),
            (w(&[1, 0, 1, 0, 0]), 1),
            (w(&[0, 0, 0, 1, 0]), 1),
        ]
        .into_iter()
        .collect();
        assert_eq!(c, want);
        assert_eq!(pl.dim_l(&w(&[0, 2, 0, 0, 0])).unwrap(), 90);
    }

    #[test]
    fn steinberg_piece_lists() {
        let c = cfg();
        assert_eq!(steinberg_pieces(&c, &w(&[0; 5])), vec![w(&[0; 5])]);
        assert_eq!(
            steinberg_pieces(&c, &w(&[0, 2, 0, 0, 3])),
            vec![w(&[0, 2, 0, 0, 0]), w(&[0, 0, 0, 0, 1])]
        );
        assert_eq!(
            steinberg_pieces(&c, &w(&[9, 0, 0, 0, 0])),
            vec![w(&[0; 5]), w(&[0; 5]), w(&[1, 0, 0, 0, 0])]
        );
    }

    #[test]
    fn remark_rows() {
        let pl = Pipeline::new(cfg());
        let d = pl.decomposition_row(&w(&[0, 0, 2, 0, 0])).unwrap();
        let want: CharVector = [(w(&[0, 0, 2, 0, 0]), 1), (w(&[1, 0, 0, 0, 1]), 1)]
            .into_iter()
            .collect();
        assert_eq!(d, want);
        let m = pl.matrix_d(&w(&[0, 0, 2, 0, 0])).unwrap();
        assert_eq!(m.row(&w(&[0, 0, 2, 0, 0])).unwrap(), want);
    }

    #[test]
    fn peeling_agrees_with_forward_substitution() {
        let pl = Pipeline::new(cfg());
        let lambda = w(&[1, 0, 1, 0, 1]);
        let m = pl.matrix_d(&lambda).unwrap();
        for mu in &m.index {
            assert_eq!(m.row(mu).unwrap(), pl.decomposition_row(mu).unwrap(), "{mu}");
        }
    }

    #[test]
    fn memo_and_naive_agree() {
        let lambda = w(&[1, 2, 0, 1, 1]);
        let a = Pipeline::new(cfg());
        let b = Pipeline::new(cfg()).without_memo();
        assert_eq!(a.restricted_row(&lambda).unwrap(), b.restricted_row(&lambda).unwrap());
        assert!(a.stats().applications < b.stats().applications);
    }

    #[test]
    fn sandwich_without_early_exit() {
        let pl = Pipeline::new(cfg()).with_early_exit(false);
        for lambda in [w(&[1, 1, 0, 1, 0]), w(&[0, 2, 0, 1, 0])] {
            let a = pl.weyl_character(&lambda).unwrap();
            let b = pl.restricted_row(&lambda).unwrap();
            for (nu, c) in b.iter() {
                assert!(c >= 0 && c <= a.get(nu), "{lambda} {nu}");
            }
        }
    }

    #[test]
    fn preconditions() {
        let pl = Pipeline::new(cfg());
        assert!(matches!(
            pl.weight_space_dim(&w(&[3, 0, 0, 0, 0]), &w(&[3, 0, 0, 0, 0])),
            Err(Error::NotRestricted(_))
        ));
        assert!(matches!(
            pl.weight_space_dim(&w(&[0, 0, 0, 0, 0]), &w(&[1, 0, 0, 0, 1])),
            Err(Error::NotBelow { .. })
        ));
        assert!(pl.restricted_row(&w(&[1, 0])).is_err());
    }

    #[test]
    fn worked_example_ranks() {
        let pl = Pipeline::new(cfg()).with_early_exit(false);
        let lambda = w(&[2, 1, 2, 1, 2]);
        assert_eq!(pl.weight_space_dim(&lambda, &w(&[3, 0, 1, 2, 2])).unwrap(), 2);
        assert_eq!(pl.weight_space_dim(&lambda, &w(&[2, 0, 1, 1, 3])).unwrap(), 13);
    }
}
