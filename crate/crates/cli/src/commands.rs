use std::fmt;
use std::sync::Arc;
use std::time::{Duration, Instant};

use anyhow::{bail, Context as _, Result};
use charp_core::irreducibles::{PipelineStats, RankEvent};
use charp_core::roots::linkage_block;
use charp_core::verification::{compare_row, oracle_dim_l_small, run_checks, GoldenComparison, GoldenSet};
use charp_core::weyl::char_dim;
use charp_core::{DecompMatrix, Error, GroupConfig, Pipeline, Weight};
use log::{info, warn};
use serde::Serialize;

use crate::args::{CacheAction, Cli, Command};
use crate::output::{label, render_character, render_dim, render_table, Format};
use crate::store::Store;

/// Marks an error as a usage problem (exit status 2).
#[derive(Debug)]
pub struct Usage(pub String);

impl fmt::Display for Usage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_FAILURE: u8 = 3;

/// Exit status for an error returned by [`run`].
pub fn exit_code(e: &anyhow::Error) -> u8 {
    for cause in e.chain() {
        if cause.is::<Usage>() {
            return EXIT_USAGE;
        }
        if let Some(ce) = cause.downcast_ref::<Error>() {
            return match ce {
                Error::InvalidConfig(_)
                | Error::WrongLength { .. }
                | Error::ParseWeight(_)
                | Error::NotDominant(_)
                | Error::NotRestricted(_)
                | Error::NotBelow { .. } => EXIT_USAGE,
                _ => EXIT_FAILURE,
            };
        }
    }
    EXIT_FAILURE
}

struct Context {
    cfg: GroupConfig,
    format: Format,
    memo: bool,
    store: Option<Arc<Store>>,
}

impl Context {
    fn weight(&self, s: &str) -> Result<Weight> {
        let w = self.cfg.parse_weight(s)?;
        if !w.is_dominant() {
            return Err(Error::NotDominant(w).into());
        }
        Ok(w)
    }

    /// A pipeline for `cfg` that logs progress and, with a cache directory,
    /// starts from the saved rows and saves every new one.
    fn pipeline(&self, cfg: GroupConfig) -> Pipeline {
        let mut pl = Pipeline::new(cfg).with_progress(Arc::new(log_progress));
        if !self.memo {
            pl = pl.without_memo();
        }
        if let Some(store) = &self.store {
            let rows = store.load_rows(&cfg);
            if !rows.is_empty() {
                info!("loaded {} cached rows for {}", rows.len(), cfg.key());
            }
            for (lambda, row) in rows {
                pl.insert_restricted_row(lambda, row);
            }
            let store = store.clone();
            pl = pl.with_row_hook(Arc::new(move |lambda, row| {
                if let Err(e) = store.save_row(&cfg, lambda, row) {
                    warn!("could not save row {lambda}: {e:#}");
                }
            }));
        }
        pl
    }
}

fn log_progress(e: &RankEvent) {
    info!(
        "L{} at {}: dim {} from {} monomials ({:.2?})",
        e.lambda, e.nu, e.dim, e.spanning, e.elapsed
    );
}

/// Runs one command, writing its result to stdout. Returns the exit status
/// for completed runs; errors carry theirs via [`exit_code`].
pub fn run(cli: Cli) -> Result<u8> {
    let g = &cli.global;
    if let Some(n) = g.workers {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n as usize)
            .build_global()
            .context("starting worker threads")?;
    }
    let store = match &g.cache_dir {
        Some(dir) => Some(Arc::new(Store::open(dir)?)),
        None => None,
    };
    let ctx = Context {
        cfg: GroupConfig::new(g.rank, g.p, 1)?,
        format: g.format,
        memo: !g.no_memo,
        store,
    };
    match &cli.command {
        Command::Dim { lambda, nu } => cmd_dim(&ctx, lambda, nu.as_deref()),
        Command::Char { lambda } => cmd_char(&ctx, lambda),
        Command::Table { lambda } => cmd_table(&ctx, lambda),
        Command::Verify { quick, full, table } => cmd_verify(&ctx, *quick, *full, table.as_deref()),
        Command::Bench { lambda } => cmd_bench(&ctx, lambda),
        Command::Cache { action } => cmd_cache(&ctx, *action),
    }
}

fn cmd_dim(ctx: &Context, lambda: &str, nu: Option<&str>) -> Result<u8> {
    let lambda = ctx.weight(lambda)?;
    let pl = ctx.pipeline(ctx.cfg);
    let (nu, dim) = match nu {
        Some(nu) => {
            let nu = ctx.cfg.parse_weight(nu)?;
            let d = pl.weight_space_dim(&lambda, &nu)? as i128;
            (Some(nu), d)
        }
        None => (None, pl.dim_l(&lambda)?),
    };
    print!("{}", render_dim(&ctx.cfg, &lambda, nu.as_ref(), dim, ctx.format)?);
    Ok(EXIT_OK)
}

fn cmd_char(ctx: &Context, lambda: &str) -> Result<u8> {
    let lambda = ctx.weight(lambda)?;
    let ch = ctx.pipeline(ctx.cfg).simple_character(&lambda)?;
    print!("{}", render_character(&ctx.cfg, &lambda, &ch, char_dim(&ch), ctx.format)?);
    Ok(EXIT_OK)
}

/// Decomposition rows of every weight linked to `lambda` and below it.
fn block_table(ctx: &Context, pl: &Pipeline, lambda: &Weight) -> Result<DecompMatrix> {
    let cfg = pl.config();
    let block = linkage_block(cfg, lambda)?;
    if let Some(store) = &ctx.store {
        if let Some(m) = store.load_matrix(cfg, lambda) {
            if m.index == block {
                info!("table for {lambda} loaded from cache");
                return Ok(m);
            }
            warn!("cached table for {lambda} has a different index, recomputing");
        }
    }
    let mut rows = Vec::with_capacity(block.len());
    for mu in &block {
        let start = Instant::now();
        rows.push(pl.decomposition_row(mu)?);
        info!("row {mu} done ({:.2?})", start.elapsed());
    }
    let m = DecompMatrix::from_rows(block, &rows)?;
    if let Some(store) = &ctx.store {
        store.save_matrix(cfg, lambda, &m)?;
    }
    Ok(m)
}

fn cmd_table(ctx: &Context, lambda: &str) -> Result<u8> {
    let lambda = ctx.weight(lambda)?;
    let pl = ctx.pipeline(ctx.cfg);
    let m = block_table(ctx, &pl, &lambda)?;
    print!("{}", render_table(&ctx.cfg, &m.index, &m.rows, ctx.format)?);
    Ok(EXIT_OK)
}

/// Restricted A5 weights used by `verify --quick`.
const QUICK_A5: [[i32; 5]; 5] = [
    [0, 0, 2, 0, 0],
    [0, 0, 2, 0, 1],
    [1, 0, 1, 0, 1],
    [0, 1, 0, 1, 0],
    [1, 1, 0, 0, 0],
];

#[derive(Serialize)]
struct Outcome {
    check: String,
    config: String,
    lambda: Weight,
    passed: bool,
    details: Vec<String>,
}

struct Verifier<'a> {
    ctx: &'a Context,
    golden: GoldenSet,
    outcomes: Vec<Outcome>,
}

impl Verifier<'_> {
    fn record(&mut self, cfg: &GroupConfig, check: &str, lambda: &Weight, details: Vec<String>) -> Result<()> {
        let o = Outcome {
            check: check.to_string(),
            config: cfg.key(),
            lambda: lambda.clone(),
            passed: details.is_empty(),
            details,
        };
        match self.ctx.format {
            Format::Text => {
                let status = if o.passed { "PASS" } else { "FAIL" };
                println!("{status} {} {} {}", o.check, o.config, label(cfg, lambda));
                for d in &o.details {
                    println!("  {d}");
                }
            }
            Format::Csv => {
                if self.outcomes.is_empty() {
                    println!("check,config,lambda,passed,details");
                }
                println!(
                    "{},{},\"{}\",{},\"{}\"",
                    o.check,
                    o.config,
                    label(cfg, lambda),
                    o.passed,
                    o.details.join("; ").replace('"', "'")
                );
            }
            Format::Records => println!("{}", serde_json::to_string(&o)?),
        }
        self.outcomes.push(o);
        Ok(())
    }

    fn structural(&mut self, pl: &Pipeline, lambda: &Weight) -> Result<()> {
        for r in run_checks(pl, lambda)? {
            let details = r
                .violations
                .iter()
                .map(|v| match &v.nu {
                    Some(nu) => format!("at {nu}: {}", v.detail),
                    None => v.detail.clone(),
                })
                .collect();
            self.record(pl.config(), &r.check.to_string(), lambda, details)?;
        }
        Ok(())
    }

    /// Compares the computed row of `lambda` with the tables, if they cover it.
    fn golden(&mut self, pl: &Pipeline, lambda: &Weight) -> Result<()> {
        let Some(exp) = self.golden.expected(lambda).cloned() else {
            return Ok(());
        };
        let row = pl.decomposition_row(lambda)?;
        let details = match compare_row(&exp, &row) {
            GoldenComparison::Mismatch { table_id, diffs } => diffs
                .iter()
                .map(|d| format!("table {table_id} at {}: expected {}, computed {}", d.nu, d.expected, d.computed))
                .collect(),
            _ => Vec::new(),
        };
        self.record(pl.config(), "golden", lambda, details)
    }

    fn oracle(&mut self, pl: &Pipeline, lambda: &Weight) -> Result<()> {
        let want = oracle_dim_l_small(pl.config(), lambda)? as i128;
        let got = pl.dim_l(lambda)?;
        let details = if want == got {
            Vec::new()
        } else {
            vec![format!("pipeline gives {got}, contravariant form gives {want}")]
        };
        self.record(pl.config(), "oracle", lambda, details)
    }
}

fn restricted_weights(cfg: &GroupConfig) -> Vec<Weight> {
    let q = cfg.q() as i32;
    let mut out = vec![Vec::new()];
    for _ in 0..cfg.rank {
        out = out
            .into_iter()
            .flat_map(|c: Vec<i32>| {
                (0..q).map(move |x| {
                    let mut c = c.clone();
                    c.push(x);
                    c
                })
            })
            .collect();
    }
    out.into_iter().map(Weight::new).collect()
}

fn cmd_verify(ctx: &Context, quick: bool, full: bool, table: Option<&str>) -> Result<u8> {
    let mut v = Verifier {
        ctx,
        golden: GoldenSet::load()?,
        outcomes: Vec::new(),
    };
    let a5 = GroupConfig::a5_p3();
    if let Some(id) = table {
        let blocks: Vec<_> = match v.golden.block(id) {
            Some(b) => vec![b.clone()],
            None => v.golden.table(id).into_iter().cloned().collect(),
        };
        if blocks.is_empty() {
            bail!(Usage(format!("no bundled table {id:?}")));
        }
        let pl = ctx.pipeline(a5);
        for b in &blocks {
            for (i, lambda) in b.weights.iter().enumerate() {
                let row = pl.decomposition_row(lambda)?;
                let details = match compare_row(&b.expected(i), &row) {
                    GoldenComparison::Mismatch { diffs, .. } => diffs
                        .iter()
                        .map(|d| format!("at {}: expected {}, computed {}", d.nu, d.expected, d.computed))
                        .collect(),
                    _ => Vec::new(),
                };
                v.record(&a5, &format!("table-{}", b.table_id), lambda, details)?;
            }
        }
    } else if full {
        let pl = ctx.pipeline(ctx.cfg);
        for lambda in restricted_weights(&ctx.cfg) {
            v.structural(&pl, &lambda)?;
            if ctx.cfg == a5 {
                v.golden(&pl, &lambda)?;
            }
        }
    } else {
        if !quick {
            info!("no selection given, running the quick set");
        }
        let a2 = GroupConfig::new(2, 3, 1)?;
        let pl = ctx.pipeline(a2);
        for lambda in restricted_weights(&a2) {
            v.structural(&pl, &lambda)?;
            v.oracle(&pl, &lambda)?;
        }
        let pl = ctx.pipeline(a5);
        for c in QUICK_A5 {
            let lambda = Weight::new(c.to_vec());
            v.structural(&pl, &lambda)?;
            v.golden(&pl, &lambda)?;
        }
    }
    let failed = v.outcomes.iter().filter(|o| !o.passed).count();
    if ctx.format == Format::Text {
        println!("{} checks, {failed} failed", v.outcomes.len());
    }
    Ok(if failed == 0 { EXIT_OK } else { EXIT_FAILURE })
}

#[derive(Serialize)]
struct BenchRun {
    seconds: f64,
    applications: u64,
    hits: u64,
    stores: u64,
}

impl BenchRun {
    fn new(elapsed: Duration, s: PipelineStats) -> Self {
        BenchRun {
            seconds: elapsed.as_secs_f64(),
            applications: s.applications,
            hits: s.memo.hits,
            stores: s.memo.stores,
        }
    }
}

#[derive(Serialize)]
struct BenchRecord {
    lambda: Weight,
    memo: BenchRun,
    naive: BenchRun,
    ratio: f64,
    identical: bool,
}

fn cmd_bench(ctx: &Context, lambda: &str) -> Result<u8> {
    let lambda = ctx.weight(lambda)?;
    if !ctx.cfg.is_restricted(&lambda) {
        return Err(Error::NotRestricted(lambda).into());
    }
    let mut runs = Vec::new();
    let mut outputs = Vec::new();
    for memo in [true, false] {
        let mut pl = Pipeline::new(ctx.cfg).with_progress(Arc::new(log_progress));
        if !memo {
            pl = pl.without_memo();
        }
        let start = Instant::now();
        let b = pl.matrix_b(&lambda)?;
        runs.push(BenchRun::new(start.elapsed(), pl.stats()));
        outputs.push(serde_json::to_string(&b)?);
    }
    let naive = runs.pop().expect("two runs");
    let memo = runs.pop().expect("two runs");
    let r = BenchRecord {
        lambda: lambda.clone(),
        ratio: naive.applications as f64 / memo.applications.max(1) as f64,
        identical: outputs[0] == outputs[1],
        memo,
        naive,
    };
    match ctx.format {
        Format::Text => {
            for (mode, run) in [("memo", &r.memo), ("naive", &r.naive)] {
                println!(
                    "{mode:<5} {:.3}s applications {} hits {} stores {}",
                    run.seconds, run.applications, run.hits, run.stores
                );
            }
            println!("ratio {:.3}", r.ratio);
            println!("identical {}", if r.identical { "yes" } else { "no" });
        }
        Format::Csv => {
            println!("mode,seconds,applications,hits,stores");
            for (mode, run) in [("memo", &r.memo), ("naive", &r.naive)] {
                println!("{mode},{:.3},{},{},{}", run.seconds, run.applications, run.hits, run.stores);
            }
        }
        Format::Records => println!("{}", serde_json::to_string(&r)?),
    }
    if !r.identical {
        eprintln!("error: memoized and naive runs disagree on matrix_B({lambda})");
        return Ok(EXIT_FAILURE);
    }
    Ok(EXIT_OK)
}

fn cmd_cache(ctx: &Context, action: CacheAction) -> Result<u8> {
    let Some(store) = &ctx.store else {
        bail!(Usage("no cache directory; pass --cache-dir or set CHARP_CACHE_DIR".into()));
    };
    match action {
        CacheAction::Stats => {
            for (config, kind, n) in store.summary()? {
                match ctx.format {
                    Format::Csv => println!("{config},{kind},{n}"),
                    _ => println!("{config} {kind} {n}"),
                }
            }
        }
        CacheAction::Clear => {
            store.clear()?;
            info!("cleared {}", store.root().display());
        }
    }
    Ok(EXIT_OK)
}
