//! Text, CSV and newline-delimited JSON renderings.

use std::fmt::Write;

use anyhow::Result;
use charp_core::roots::height;
use charp_core::{CharVector, GroupConfig, Weight};
use clap::ValueEnum;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Records,
}

/// Digit strings like `00200` for small primes and coordinates, otherwise
/// `(0,0,2,0,0)`.
pub fn label(cfg: &GroupConfig, w: &Weight) -> String {
    if cfg.prime <= 10 {
        if let Some(l) = w.compact_label() {
            return l;
        }
    }
    w.to_string()
}

fn csv_field(s: &str) -> String {
    if s.contains(',') {
        format!("\"{s}\"")
    } else {
        s.to_string()
    }
}

/// One row of a decomposition table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRecord {
    pub lambda: Weight,
    pub index: Vec<Weight>,
    pub entries: Vec<i64>,
}

/// Rows `[H^0(index[i]) : L(index[j])]`, lower triangular.
pub fn render_table(cfg: &GroupConfig, index: &[Weight], rows: &[Vec<i64>], format: Format) -> Result<String> {
    let mut out = String::new();
    match format {
        Format::Text => {
            for (i, row) in rows.iter().enumerate() {
                write!(out, "{}", label(cfg, &index[i]))?;
                for c in &row[..=i] {
                    write!(out, " {c}")?;
                }
                out.push('\n');
            }
        }
        Format::Csv => {
            let head: Vec<String> = index.iter().map(|w| csv_field(&label(cfg, w))).collect();
            writeln!(out, "lambda,{}", head.join(","))?;
            for (i, row) in rows.iter().enumerate() {
                let cells: Vec<String> = row.iter().map(|c| c.to_string()).collect();
                writeln!(out, "{},{}", csv_field(&label(cfg, &index[i])), cells.join(","))?;
            }
        }
        Format::Records => {
            for (i, row) in rows.iter().enumerate() {
                let r = TableRecord {
                    lambda: index[i].clone(),
                    index: index.to_vec(),
                    entries: row.clone(),
                };
                writeln!(out, "{}", serde_json::to_string(&r)?)?;
            }
        }
    }
    Ok(out)
}

pub fn parse_records(text: &str) -> Result<Vec<TableRecord>> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| Ok(serde_json::from_str(l)?))
        .collect()
}

#[derive(Serialize)]
struct CharacterRecord<'a> {
    lambda: &'a Weight,
    dim: i128,
    character: Vec<(&'a Weight, i64)>,
}

/// `ch_p(lambda)` in the orbit-sum basis, highest weights first.
pub fn render_character(cfg: &GroupConfig, lambda: &Weight, ch: &CharVector, dim: i128, format: Format) -> Result<String> {
    let mut terms: Vec<(&Weight, i64)> = ch.iter().collect();
    terms.sort_by_key(|(nu, _)| (height(&lambda.sub(nu)), std::cmp::Reverse(*nu)));
    let mut out = String::new();
    match format {
        Format::Text => {
            writeln!(out, "L({}) dim {dim}", label(cfg, lambda))?;
            for (nu, c) in &terms {
                writeln!(out, "{} {c}", label(cfg, nu))?;
            }
        }
        Format::Csv => {
            writeln!(out, "nu,multiplicity")?;
            for (nu, c) in &terms {
                writeln!(out, "{},{c}", csv_field(&label(cfg, nu)))?;
            }
        }
        Format::Records => {
            let r = CharacterRecord {
                lambda,
                dim,
                character: terms,
            };
            writeln!(out, "{}", serde_json::to_string(&r)?)?;
        }
    }
    Ok(out)
}

#[derive(Serialize)]
struct DimRecord<'a> {
    lambda: &'a Weight,
    #[serde(skip_serializing_if = "Option::is_none")]
    nu: Option<&'a Weight>,
    dim: i128,
}

/// `dim L(lambda)`, or the weight space dimension at `nu`.
pub fn render_dim(cfg: &GroupConfig, lambda: &Weight, nu: Option<&Weight>, dim: i128, format: Format) -> Result<String> {
    Ok(match format {
        Format::Text => format!("{dim}\n"),
        Format::Csv => match nu {
            Some(nu) => format!(
                "lambda,nu,dim\n{},{},{dim}\n",
                csv_field(&label(cfg, lambda)),
                csv_field(&label(cfg, nu))
            ),
            None => format!("lambda,dim\n{},{dim}\n", csv_field(&label(cfg, lambda))),
        },
        Format::Records => format!("{}\n", serde_json::to_string(&DimRecord { lambda, nu, dim })?),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(c: &[i32]) -> Weight {
        Weight::new(c.to_vec())
    }

    fn block() -> (Vec<Weight>, Vec<Vec<i64>>) {
        (
            vec![w(&[0, 0, 0, 0, 0]), w(&[1, 0, 0, 0, 1]), w(&[0, 0, 2, 0, 0])],
            vec![vec![1, 0, 0], vec![1, 1, 0], vec![0, 1, 1]],
        )
    }

    #[test]
    fn text_layout() {
        let (index, rows) = block();
        let s = render_table(&GroupConfig::a5_p3(), &index, &rows, Format::Text).unwrap();
        assert_eq!(s, "00000 1\n10001 1 1\n00200 0 1 1\n");
    }

    #[test]
    fn labels_fall_back_to_tuples() {
        let a2 = GroupConfig::new(2, 3, 1).unwrap();
        assert_eq!(label(&a2, &w(&[1, 2])), "12");
        assert_eq!(label(&a2, &w(&[10, 2])), "(10,2)");
        let a2p11 = GroupConfig::new(2, 11, 1).unwrap();
        assert_eq!(label(&a2p11, &w(&[1, 2])), "(1,2)");
        let s = render_table(&a2, &[w(&[10, 2])], &[vec![1]], Format::Csv).unwrap();
        assert_eq!(s, "lambda,\"(10,2)\"\n\"(10,2)\",1\n");
    }

    #[test]
    fn records_round_trip() {
        let (index, rows) = block();
        let cfg = GroupConfig::a5_p3();
        let s = render_table(&cfg, &index, &rows, Format::Records).unwrap();
        let parsed = parse_records(&s).unwrap();
        assert_eq!(parsed.len(), 3);
        assert_eq!(parsed[2].entries, vec![0, 1, 1]);
        let again: Vec<Vec<i64>> = parsed.iter().map(|r| r.entries.clone()).collect();
        assert_eq!(render_table(&cfg, &parsed[0].index, &again, Format::Records).unwrap(), s);
        assert_eq!(
            s.lines().next().unwrap(),
            r#"{"lambda":[0,0,0,0,0],"index":[[0,0,0,0,0],[1,0,0,0,1],[0,0,2,0,0]],"entries":[1,0,0]}"#
        );
    }
}
