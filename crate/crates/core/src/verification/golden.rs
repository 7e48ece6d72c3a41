//! Bundled decomposition tables for A5, p = 3.
//!
//! Each file holds one or more blocks. A block lists weights of one linkage
//! class; row `i` gives `[H^0(w_i) : L(w_j)]` for `j <= i`, diagonal
//! included. Rows for dual weights are synthesized by reversing every
//! weight.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::roots::{dual_weight, Weight};
use crate::weyl::CharVector;

const TABLES: [(&str, &str); 9] = [
    ("1", include_str!("../../data/golden/table1.json")),
    ("2", include_str!("../../data/golden/table2.json")),
    ("3", include_str!("../../data/golden/table3.json")),
    ("4", include_str!("../../data/golden/table4.json")),
    ("5", include_str!("../../data/golden/table5.json")),
    ("6", include_str!("../../data/golden/table6.json")),
    ("7", include_str!("../../data/golden/table7.json")),
    ("8", include_str!("../../data/golden/table8.json")),
    ("9", include_str!("../../data/golden/table9.json")),
];

const IRREDUCIBLE_LIST: &str = include_str!("../../data/golden/lambda.json");

pub const IRREDUCIBLE_TABLE_ID: &str = "irreducible";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenRow {
    pub lambda: Weight,
    pub entries: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenBlock {
    pub table_id: String,
    pub weights: Vec<Weight>,
    pub rows: Vec<GoldenRow>,
}

impl GoldenBlock {
    /// Parses and validates one data file (a JSON array of blocks).
    pub fn parse_file(table: &str, text: &str) -> Result<Vec<GoldenBlock>> {
        let blocks: Vec<GoldenBlock> =
            serde_json::from_str(text).map_err(|e| Error::GoldenParse(table.to_string(), e))?;
        for b in &blocks {
            b.validate()?;
        }
        Ok(blocks)
    }

    pub fn validate(&self) -> Result<()> {
        let err = |row: usize, col: usize, msg: String| Error::GoldenFormat {
            table: self.table_id.clone(),
            row: row + 1,
            col: col + 1,
            msg,
        };
        if self.rows.len() != self.weights.len() {
            return Err(err(
                self.rows.len(),
                0,
                format!("{} rows for {} weights", self.rows.len(), self.weights.len()),
            ));
        }
        let rank = self.weights.first().map_or(0, |w| w.rank());
        for (i, (row, w)) in self.rows.iter().zip(&self.weights).enumerate() {
            if w.rank() != rank || !w.is_dominant() {
                return Err(err(i, 0, format!("bad weight {w}")));
            }
            if &row.lambda != w {
                return Err(err(i, 0, format!("row weight {} but listed weight {w}", row.lambda)));
            }
            if row.entries.len() != i + 1 {
                return Err(err(
                    i,
                    row.entries.len().min(i),
                    format!("{} entries, expected {}", row.entries.len(), i + 1),
                ));
            }
            if let Some(j) = row.entries.iter().position(|&e| e < 0) {
                return Err(err(i, j, "negative entry".into()));
            }
            if row.entries[i] != 1 {
                return Err(err(i, i, format!("diagonal entry {}", row.entries[i])));
            }
        }
        Ok(())
    }

    /// The block with every weight reversed.
    pub fn mirrored(&self) -> GoldenBlock {
        GoldenBlock {
            table_id: format!("{}*", self.table_id),
            weights: self.weights.iter().map(dual_weight).collect(),
            rows: self
                .rows
                .iter()
                .map(|r| GoldenRow {
                    lambda: dual_weight(&r.lambda),
                    entries: r.entries.clone(),
                })
                .collect(),
        }
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    /// Expected decomposition of row `i`.
    pub fn expected(&self, i: usize) -> ExpectedRow {
        let row = &self.rows[i];
        ExpectedRow {
            table_id: self.table_id.clone(),
            lambda: row.lambda.clone(),
            block: self.weights[..=i].to_vec(),
            factors: self.weights[..=i]
                .iter()
                .cloned()
                .zip(row.entries.iter().copied())
                .collect(),
        }
    }
}

/// What a table says about one weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpectedRow {
    pub table_id: String,
    pub lambda: Weight,
    /// Weights the row speaks about (the block prefix up to `lambda`).
    pub block: Vec<Weight>,
    pub factors: CharVector,
}

/// Two sources disagree about one weight's row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MirrorConflict {
    pub lambda: Weight,
    pub kept: String,
    pub other: String,
}

/// All tables plus mirrored rows, indexed by weight.
#[derive(Debug, Clone)]
pub struct GoldenSet {
    pub blocks: Vec<GoldenBlock>,
    /// Irreducible list as printed.
    pub irreducible_printed: Vec<Weight>,
    /// Deduplicated and closed under duality.
    pub irreducible: Vec<Weight>,
    rows: BTreeMap<Weight, ExpectedRow>,
    pub conflicts: Vec<MirrorConflict>,
}

#[derive(Deserialize)]
struct IrreducibleFile {
    weights: Vec<Weight>,
}

impl GoldenSet {
    pub fn load() -> Result<Self> {
        let mut blocks = Vec::new();
        for (id, text) in TABLES {
            blocks.extend(GoldenBlock::parse_file(id, text)?);
        }
        let printed: IrreducibleFile = serde_json::from_str(IRREDUCIBLE_LIST)
            .map_err(|e| Error::GoldenParse(IRREDUCIBLE_TABLE_ID.into(), e))?;
        Ok(Self::build(blocks, printed.weights))
    }

    fn build(blocks: Vec<GoldenBlock>, irreducible_printed: Vec<Weight>) -> Self {
        let mut rows: BTreeMap<Weight, ExpectedRow> = BTreeMap::new();
        let mut conflicts = Vec::new();
        let mut add = |e: ExpectedRow, conflicts: &mut Vec<MirrorConflict>| match rows.get(&e.lambda) {
            None => {
                rows.insert(e.lambda.clone(), e);
            }
            Some(old) => {
                if !same_on_union(old, &e) {
                    conflicts.push(MirrorConflict {
                        lambda: e.lambda.clone(),
                        kept: old.table_id.clone(),
                        other: e.table_id.clone(),
                    });
                }
            }
        };
        for b in &blocks {
            for i in 0..b.row_count() {
                add(b.expected(i), &mut conflicts);
            }
        }
        for b in &blocks {
            let m = b.mirrored();
            for i in 0..m.row_count() {
                add(m.expected(i), &mut conflicts);
            }
        }
        let mut irreducible: Vec<Weight> = irreducible_printed
            .iter()
            .flat_map(|w| [w.clone(), dual_weight(w)])
            .collect();
        irreducible.sort();
        irreducible.dedup();
        for w in &irreducible {
            add(
                ExpectedRow {
                    table_id: IRREDUCIBLE_TABLE_ID.into(),
                    lambda: w.clone(),
                    block: vec![w.clone()],
                    factors: CharVector::single(w.clone()),
                },
                &mut conflicts,
            );
        }
        GoldenSet {
            blocks,
            irreducible_printed,
            irreducible,
            rows,
            conflicts,
        }
    }

    pub fn block(&self, table_id: &str) -> Option<&GoldenBlock> {
        self.blocks.iter().find(|b| b.table_id == table_id)
    }

    /// Blocks of one printed table (`"4"` gives `4.1` to `4.4`).
    pub fn table(&self, table: &str) -> Vec<&GoldenBlock> {
        self.blocks
            .iter()
            .filter(|b| b.table_id == table || b.table_id.split('.').next() == Some(table))
            .collect()
    }

    pub fn expected(&self, lambda: &Weight) -> Option<&ExpectedRow> {
        self.rows.get(lambda)
    }

    pub fn covered(&self) -> impl Iterator<Item = &Weight> {
        self.rows.keys()
    }
}

fn same_on_union(a: &ExpectedRow, b: &ExpectedRow) -> bool {
    a.block
        .iter()
        .chain(&b.block)
        .all(|w| a.factors.get(w) == b.factors.get(w))
}

/// Outcome of comparing a computed row with the tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GoldenComparison {
    Match { table_id: String },
    Mismatch { table_id: String, diffs: Vec<EntryDiff> },
    NotCovered,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EntryDiff {
    pub nu: Weight,
    pub expected: i64,
    pub computed: i64,
}

impl GoldenComparison {
    pub fn is_match(&self) -> bool {
        matches!(self, GoldenComparison::Match { .. })
    }
}

/// Entrywise comparison over the table's weights; a computed factor outside
/// them is a discrepancy.
pub fn compare_with_golden(golden: &GoldenSet, lambda: &Weight, computed: &CharVector) -> GoldenComparison {
    match golden.expected(lambda) {
        Some(exp) => compare_row(exp, computed),
        None => GoldenComparison::NotCovered,
    }
}

/// Compares a computed decomposition with one expected row.
pub fn compare_row(exp: &ExpectedRow, computed: &CharVector) -> GoldenComparison {
    let mut diffs = Vec::new();
    for nu in &exp.block {
        let (e, c) = (exp.factors.get(nu), computed.get(nu));
        if e != c {
            diffs.push(EntryDiff {
                nu: nu.clone(),
                expected: e,
                computed: c,
            });
        }
    }
    for (nu, c) in computed.iter() {
        if c != 0 && !exp.block.contains(nu) {
            diffs.push(EntryDiff {
                nu: nu.clone(),
                expected: 0,
                computed: c,
            });
        }
    }
    if diffs.is_empty() {
        GoldenComparison::Match {
            table_id: exp.table_id.clone(),
        }
    } else {
        GoldenComparison::Mismatch {
            table_id: exp.table_id.clone(),
            diffs,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(c: &[i32]) -> Weight {
        Weight::new(c.to_vec())
    }

    #[test]
    fn tables_load() {
        let g = GoldenSet::load().unwrap();
        let sizes: Vec<usize> = (1..=9).map(|t| g.table(&t.to_string()).iter().map(|b| b.row_count()).sum()).collect();
        assert_eq!(sizes, vec![44, 43, 27, 11, 36, 23, 41, 36, 29]);
        let e = g.expected(&w(&[0, 0, 2, 0, 0])).unwrap();
        assert_eq!(e.table_id, "1");
        assert_eq!(e.block, vec![w(&[0; 5]), w(&[1, 0, 0, 0, 1]), w(&[0, 0, 2, 0, 0])]);
        assert_eq!(e.factors.get(&w(&[0; 5])), 0);
        assert_eq!(e.factors.get(&w(&[1, 0, 0, 0, 1])), 1);
    }

    #[test]
    fn mirrored_row_from_dual() {
        let g = GoldenSet::load().unwrap();
        let e = g.expected(&w(&[1, 0, 2, 0, 0])).unwrap();
        assert!(e.table_id.ends_with('*'));
        assert_eq!(e.factors.get(&w(&[2, 0, 0, 0, 1])), 1);
        assert_eq!(e.factors.get(&w(&[1, 0, 2, 0, 0])), 1);
    }

    #[test]
    fn irreducible_list_is_closed() {
        let g = GoldenSet::load().unwrap();
        assert_eq!(g.irreducible_printed.len(), 13);
        assert!(g.irreducible.contains(&w(&[2, 2, 2, 2, 1])));
        for x in &g.irreducible {
            assert!(g.irreducible.contains(&dual_weight(x)));
        }
    }

    #[test]
    fn malformed_rows_are_located() {
        let bad = r#"[{"table_id":"x","weights":[[0,0],[1,1]],"rows":[{"lambda":[0,0],"entries":[1]},{"lambda":[1,1],"entries":[1]}]}]"#;
        match GoldenBlock::parse_file("x", bad) {
            Err(Error::GoldenFormat { row, .. }) => assert_eq!(row, 2),
            other => panic!("{other:?}"),
        }
        let diag = r#"[{"table_id":"x","weights":[[0,0]],"rows":[{"lambda":[0,0],"entries":[2]}]}]"#;
        assert!(matches!(GoldenBlock::parse_file("x", diag), Err(Error::GoldenFormat { col: 1, .. })));
    }

    #[test]
    fn comparison_statuses() {
        let g = GoldenSet::load().unwrap();
        let lambda = w(&[0, 0, 2, 0, 0]);
        let good: CharVector = [(lambda.clone(), 1), (w(&[1, 0, 0, 0, 1]), 1)].into_iter().collect();
        assert!(compare_with_golden(&g, &lambda, &good).is_match());
        let bad: CharVector = [(lambda.clone(), 1), (w(&[0; 5]), 1)].into_iter().collect();
        match compare_with_golden(&g, &lambda, &bad) {
            GoldenComparison::Mismatch { diffs, .. } => assert_eq!(diffs.len(), 2),
            other => panic!("{other:?}"),
        }
        assert_eq!(
            compare_with_golden(&g, &w(&[9, 9, 9, 9, 9]), &good),
            GoldenComparison::NotCovered
        );
    }
}
