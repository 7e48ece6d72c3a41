//! End-to-end acceptance run for A5 in characteristic 3.
//!
//! Prints one `PASS`/`FAIL` line per criterion and exits nonzero if any
//! fails. Set `ACCEPTANCE_ONLY=1,7` to run a subset.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use charp_core::hyperalgebra::{Letter, Word};
use charp_core::roots::orbit_size;
use charp_core::verification::{
    check_on_tensor_power, compare_row, oracle_dim_l_small, run_checks, GoldenComparison, GoldenSet,
};
use charp_core::weyl::{char_dim, freudenthal_row, weyl_dim};
use charp_core::{CharVector, GroupConfig, Pipeline, Weight};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;

fn w(c: &[i32]) -> Weight {
    Weight::new(c.to_vec())
}

fn chv(terms: &[(&[i32], i64)]) -> CharVector {
    terms.iter().map(|(c, k)| (w(c), *k)).collect()
}

fn a5() -> GroupConfig {
    GroupConfig::a5_p3()
}

fn expect<T: PartialEq + std::fmt::Debug>(what: &str, got: T, want: T) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got:?}, want {want:?}"))
    }
}

fn fmt_secs(d: Duration) -> String {
    format!("{:.1}s", d.as_secs_f64())
}

fn worked_example_ranks() -> Outcome {
    let pl = Pipeline::new(a5()).with_early_exit(false);
    let lambda = w(&[2, 1, 2, 1, 2]);
    let mut notes = Vec::new();
    for (nu, want) in [(w(&[3, 0, 1, 2, 2]), 2), (w(&[2, 0, 1, 1, 3]), 13)] {
        let start = Instant::now();
        let got = pl.weight_space_dim(&lambda, &nu).map_err(|e| e.to_string())?;
        let took = start.elapsed();
        expect(&format!("dim at {nu}"), got, want)?;
        if took > Duration::from_secs(600) {
            return Err(format!("dim at {nu} took {}", fmt_secs(took)));
        }
        notes.push(format!("{nu} -> {got} in {}", fmt_secs(took)));
    }
    Ok(notes.join(", "))
}

fn remark_rows(pl: &Pipeline) -> Outcome {
    let d = pl.matrix_d(&w(&[0, 0, 2, 0, 0])).map_err(|e| e.to_string())?;
    let lambda = w(&[0, 0, 2, 0, 0]);
    let block = [w(&[0, 0, 0, 0, 0]), w(&[1, 0, 0, 0, 1]), lambda.clone()];
    let entries: Vec<Option<i64>> = block.iter().map(|nu| d.get(&lambda, nu)).collect();
    expect("row 00200 over the block", entries, vec![Some(0), Some(1), Some(1)])?;
    expect("whole row 00200", d.row(&lambda), Some(chv(&[(&[0, 0, 2, 0, 0], 1), (&[1, 0, 0, 0, 1], 1)])))?;

    for (lambda, other) in [([0, 0, 2, 0, 1], [1, 0, 0, 0, 2]), ([1, 0, 2, 0, 0], [2, 0, 0, 0, 1])] {
        let d = pl.matrix_d(&w(&lambda)).map_err(|e| e.to_string())?;
        expect(
            &format!("row {}", w(&lambda)),
            d.row(&w(&lambda)),
            Some(chv(&[(&lambda, 1), (&other, 1)])),
        )?;
    }
    Ok("00200 = (0,1,1); 00201 = L(00201) + L(10002); 10200 = L(10200) + L(20001)".into())
}

fn golden_tables(pl: &Pipeline) -> Outcome {
    let golden = GoldenSet::load().map_err(|e| e.to_string())?;
    let mut checked = Vec::new();
    let mut failures = Vec::new();
    for table in ["4", "6", "1"] {
        let mut rows = 0;
        let blocks = golden.table(table);
        if blocks.is_empty() {
            return Err(format!("table {table} is not bundled"));
        }
        for b in blocks {
            let limit = if table == "1" { 10 } else { b.row_count() };
            for (i, lambda) in b.weights.iter().enumerate().take(limit) {
                let row = pl.decomposition_row(lambda).map_err(|e| e.to_string())?;
                if let GoldenComparison::Mismatch { table_id, diffs } = compare_row(&b.expected(i), &row) {
                    failures.push(format!("{table_id} {lambda}: {diffs:?}"));
                }
                rows += 1;
            }
        }
        checked.push(format!("table {table}: {rows} rows"));
    }
    if failures.is_empty() {
        Ok(checked.join(", "))
    } else {
        Err(failures.join("; "))
    }
}

fn lambda_irreducible(pl: &Pipeline) -> Outcome {
    let mut notes = Vec::new();
    for lambda in [w(&[2, 2, 2, 2, 2]), w(&[0, 1, 2, 2, 2])] {
        let start = Instant::now();
        let a = pl.weyl_character(&lambda).map_err(|e| e.to_string())?;
        let b = pl.simple_character(&lambda).map_err(|e| e.to_string())?;
        if a != b {
            let diff: Vec<String> = a
                .support()
                .chain(b.support())
                .collect::<BTreeSet<_>>()
                .into_iter()
                .filter(|nu| a.get(nu) != b.get(nu))
                .map(|nu| format!("{nu}: A {} B {}", a.get(nu), b.get(nu)))
                .collect();
            return Err(format!("{lambda}: rows differ at {}", diff.join(", ")));
        }
        notes.push(format!("{lambda}: {} weights, dim {} ({})", a.len(), char_dim(&b), fmt_secs(start.elapsed())));
    }
    Ok(notes.join("; "))
}

fn generator_exponents(pl: &Pipeline, rng: &mut StdRng) -> Outcome {
    let mut worst = 0;
    let mut terms = 0;
    for _ in 0..20 {
        let lambda = Weight::new((0..5).map(|_| rng.gen_range(0..3)).collect());
        let x = pl.generator(&lambda);
        for (m, _) in x.iter() {
            worst = worst.max(m.max_exp());
            if m.max_exp() > 2 {
                return Err(format!("x for {lambda} has exponent {}", m.max_exp()));
            }
        }
        terms += x.len();
    }
    Ok(format!("20 weights, {terms} terms, largest exponent {worst}"))
}

fn structural_checks(pl: &Pipeline) -> Outcome {
    let mut failures = Vec::new();
    let mut count = 0;
    let a2 = Pipeline::new(GroupConfig::new(2, 3, 1).unwrap());
    let mut run = |pl: &Pipeline, lambda: Weight| -> Result<(), String> {
        for r in run_checks(pl, &lambda).map_err(|e| e.to_string())? {
            count += 1;
            if !r.passed() {
                failures.push(r.to_string());
            }
        }
        Ok(())
    };
    for a in 0..3 {
        for b in 0..3 {
            run(&a2, w(&[a, b]))?;
        }
    }
    let sampled = [[0, 0, 2, 0, 0], [0, 0, 2, 0, 1], [1, 0, 1, 0, 1], [0, 1, 0, 1, 0], [2, 1, 2, 1, 2]];
    for c in sampled {
        run(pl, w(&c))?;
    }
    let cone = pl.matrix_d(&w(&[2, 1, 2, 1, 2])).map_err(|e| e.to_string())?.dim();
    if failures.is_empty() {
        Ok(format!("{count} checks on 9 A2 and 5 A5 weights, 21212 cone has {cone} weights"))
    } else {
        Err(failures.join("; "))
    }
}

fn gram_oracle() -> Outcome {
    let mut n = 0;
    for rank in [1usize, 2] {
        let cfg = GroupConfig::new(rank, 3, 1).unwrap();
        let pl = Pipeline::new(cfg);
        let weights: Vec<Weight> = if rank == 1 {
            (0..3).map(|a| w(&[a])).collect()
        } else {
            (0..9).map(|i| w(&[i / 3, i % 3])).collect()
        };
        for lambda in weights {
            let want = oracle_dim_l_small(&cfg, &lambda).map_err(|e| e.to_string())? as i128;
            let got = pl.dim_l(&lambda).map_err(|e| e.to_string())?;
            expect(&format!("dim L{lambda} for A{rank}"), got, want)?;
            n += 1;
        }
    }
    let a2 = GroupConfig::new(2, 3, 1).unwrap();
    expect("dim L(1,1)", oracle_dim_l_small(&a2, &w(&[1, 1])).map_err(|e| e.to_string())?, 7)?;
    Ok(format!("{n} weights agree, dim L(1,1) = 7"))
}

fn tensor_oracle(rng: &mut StdRng) -> Outcome {
    let cfg = a5();
    let pl = Pipeline::new(cfg);
    let alg = pl.algebra();
    let roots = cfg.num_positive_roots();
    let mut nonzero = 0;
    for i in 0..1000 {
        let len = rng.gen_range(1..=8);
        let word = Word((0..len).map(|_| Letter::new(rng.gen_range(0..roots), rng.gen_range(1..=3))).collect());
        let m = 1 + i % 6;
        let nf = alg.straighten(&word);
        if !nf.is_empty() {
            nonzero += 1;
        }
        check_on_tensor_power(alg, &word, &nf, m).map_err(|e| e.to_string())?;
    }
    Ok(format!("1000 words on V^(x m), m = 1..6, {nonzero} with nonzero normal form"))
}

fn steinberg_example(pl: &Pipeline) -> Outcome {
    let printed = chv(&[
        (&[0, 2, 0, 0, 3], 1),
        (&[2, 0, 0, 0, 1], 1),
        (&[1, 0, 1, 0, 3], 1),
        (&[1, 1, 0, 0, 2], 1),
        (&[0, 1, 0, 0, 1], 1),
        (&[0, 0, 0, 1, 3], 1),
        (&[0, 0, 1, 0, 2], 1),
    ]);
    let lambda = w(&[0, 2, 0, 0, 3]);
    let ch = pl.simple_character(&lambda).map_err(|e| e.to_string())?;
    let dim = char_dim(&ch);
    let factors = pl.dim_l(&w(&[0, 2, 0, 0, 0])).map_err(|e| e.to_string())?
        * pl.dim_l(&w(&[0, 0, 0, 0, 1])).map_err(|e| e.to_string())?;
    expect("dim L(02003)", dim, 540)?;
    expect("dim L(02000) dim L(00001)", factors, 540)?;
    let missing: Vec<String> = printed.support().filter(|nu| ch.get(nu) != printed.get(nu)).map(|nu| nu.to_string()).collect();
    let extra: Vec<String> = ch.support().filter(|nu| printed.get(nu) == 0).map(|nu| nu.to_string()).collect();
    if missing.is_empty() && extra.is_empty() {
        Ok("recomputed expansion equals the printed 7 terms, dim 540 = 90 * 6".into())
    } else {
        Ok(format!(
            "dim 540 = 90 * 6; differs from the printed list: printed-only {missing:?}, computed-only {extra:?}"
        ))
    }
}

fn memo_versus_naive(memo: &Pipeline) -> Outcome {
    let lambda = w(&[2, 1, 2, 1, 2]);
    memo.reset_stats();
    let start = Instant::now();
    let b_memo = memo.matrix_b(&lambda).map_err(|e| e.to_string())?;
    let t_memo = start.elapsed();
    let s_memo = memo.stats();

    let naive = Pipeline::new(a5()).without_memo();
    let start = Instant::now();
    let b_naive = naive.matrix_b(&lambda).map_err(|e| e.to_string())?;
    let t_naive = start.elapsed();
    let s_naive = naive.stats();

    let bytes_memo = serde_json::to_string(&b_memo).map_err(|e| e.to_string())?;
    let bytes_naive = serde_json::to_string(&b_naive).map_err(|e| e.to_string())?;
    if bytes_memo != bytes_naive {
        return Err("memoized and naive matrix_B differ".into());
    }
    if s_memo.applications >= s_naive.applications {
        return Err(format!(
            "memoized run used {} applications, naive {}",
            s_memo.applications, s_naive.applications
        ));
    }
    Ok(format!(
        "{} rows identical; applications memo {} vs naive {} (ratio {:.3}), suffix hits {}, time {} vs {}",
        b_memo.dim(),
        s_memo.applications,
        s_naive.applications,
        s_naive.applications as f64 / s_memo.applications as f64,
        s_memo.memo.hits,
        fmt_secs(t_memo),
        fmt_secs(t_naive)
    ))
}

fn orbit_sums(rng: &mut StdRng) -> Outcome {
    let cfg = a5();
    for _ in 0..20 {
        let lambda = Weight::new((0..5).map(|_| rng.gen_range(0..=3)).collect());
        let row = freudenthal_row(&cfg, &lambda).map_err(|e| e.to_string())?;
        let total: u128 = row.iter().map(|(nu, a)| a as u128 * orbit_size(nu) as u128).sum();
        expect(&format!("dimension of H^0{lambda}"), total, weyl_dim(&cfg, &lambda).map_err(|e| e.to_string())?)?;
    }
    Ok("20 weights with coordinates up to 3".into())
}

const NAMES: [&str; 11] = [
    "worked-example ranks",
    "remark rows",
    "golden tables 4, 6 and first rows of 1",
    "irreducible rows for 22222 and 01222",
    "generator exponents",
    "structural checks",
    "contravariant form oracle",
    "tensor power oracle",
    "twisted tensor product example",
    "memoized versus naive matrix_B",
    "orbit sums of induced characters",
];

fn main() -> ExitCode {
    let only: Option<BTreeSet<usize>> = std::env::var("ACCEPTANCE_ONLY")
        .ok()
        .map(|s| s.split(',').filter_map(|x| x.trim().parse().ok()).collect());
    let wanted = |n: usize| only.as_ref().is_none_or(|s| s.contains(&n));
    let mut rng = StdRng::seed_from_u64(0x5eed);
    // shared by the criteria that need rows below 21212; the memoized
    // comparison runs first so that its counts start from nothing
    let memo = Pipeline::new(a5());
    let order = [1, 2, 5, 7, 8, 9, 11, 10, 6, 3, 4];
    let mut results: Vec<(usize, Outcome, Duration)> = Vec::new();
    for n in order {
        if !wanted(n) {
            continue;
        }
        let start = Instant::now();
        let outcome = match n {
            1 => worked_example_ranks(),
            2 => remark_rows(&Pipeline::new(a5())),
            3 => golden_tables(&memo),
            4 => lambda_irreducible(&memo),
            5 => generator_exponents(&Pipeline::new(a5()), &mut rng),
            6 => structural_checks(&memo),
            7 => gram_oracle(),
            8 => tensor_oracle(&mut rng),
            9 => steinberg_example(&Pipeline::new(a5())),
            10 => memo_versus_naive(&memo),
            11 => orbit_sums(&mut rng),
            _ => unreachable!(),
        };
        let took = start.elapsed();
        let (tag, text) = match &outcome {
            Ok(s) => ("PASS", s),
            Err(s) => ("FAIL", s),
        };
        println!("{tag} {n:>2} {} [{}]: {text}", NAMES[n - 1], fmt_secs(took));
        results.push((n, outcome, took));
    }
    results.sort_by_key(|r| r.0);
    println!("\nsummary");
    for (n, outcome, took) in &results {
        let tag = if outcome.is_ok() { "PASS" } else { "FAIL" };
        println!("{tag} {n:>2} {} [{}]", NAMES[n - 1], fmt_secs(*took));
    }
    if results.iter().all(|r| r.1.is_ok()) {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
