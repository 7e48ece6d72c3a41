//! Structural checks on computed characters and decomposition rows.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::error::Result;
use crate::irreducibles::Pipeline;
use crate::roots::{dual_weight, strongly_linked, Weight};
use crate::weyl::{CharVector, DecompMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckId {
    DimensionSymmetry,
    FactorSymmetry,
    Positivity,
    Linkage,
    Golden,
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CheckId::DimensionSymmetry => "dimension-symmetry",
            CheckId::FactorSymmetry => "factor-symmetry",
            CheckId::Positivity => "positivity",
            CheckId::Linkage => "linkage",
            CheckId::Golden => "golden",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub nu: Option<Weight>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub check: CheckId,
    pub lambda: Weight,
    pub violations: Vec<Violation>,
}

impl CheckReport {
    fn new(check: CheckId, lambda: &Weight) -> Self {
        CheckReport {
            check,
            lambda: lambda.clone(),
            violations: Vec::new(),
        }
    }

    fn fail(&mut self, nu: Option<&Weight>, detail: String) {
        self.violations.push(Violation {
            nu: nu.cloned(),
            detail,
        });
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            return write!(f, "{} {}: ok", self.check, self.lambda);
        }
        write!(f, "{} {}: {} violation(s)", self.check, self.lambda, self.violations.len())?;
        for v in &self.violations {
            match &v.nu {
                Some(nu) => write!(f, "\n  at {nu}: {}", v.detail)?,
                None => write!(f, "\n  {}", v.detail)?,
            }
        }
        Ok(())
    }
}

fn dual_char(c: &CharVector) -> CharVector {
    c.iter().map(|(w, k)| (dual_weight(w), k)).collect()
}

/// `dim L(lambda)_mu = dim L(lambda*)_{mu*}` for every weight `mu`.
pub fn check_symmetry_dims(pl: &Pipeline, lambda: &Weight) -> Result<CheckReport> {
    let mut r = CheckReport::new(CheckId::DimensionSymmetry, lambda);
    let here = pl.simple_character(lambda)?;
    let there = dual_char(&pl.simple_character(&dual_weight(lambda))?);
    let support: BTreeSet<&Weight> = here.support().chain(there.support()).collect();
    for mu in support {
        let (a, b) = (here.get(mu), there.get(mu));
        if a != b {
            r.fail(Some(mu), format!("dim {a} but dual weight space has dim {b}"));
        }
    }
    Ok(r)
}

/// `[H^0(lambda) : L(nu)] = [H^0(lambda*) : L(nu*)]`.
pub fn check_factor_symmetry(pl: &Pipeline, lambda: &Weight) -> Result<CheckReport> {
    let mut r = CheckReport::new(CheckId::FactorSymmetry, lambda);
    let here = pl.decomposition_row(lambda)?;
    let there = dual_char(&pl.decomposition_row(&dual_weight(lambda))?);
    let support: BTreeSet<&Weight> = here.support().chain(there.support()).collect();
    for nu in support {
        let (a, b) = (here.get(nu), there.get(nu));
        if a != b {
            r.fail(Some(nu), format!("multiplicity {a} but dual row has {b}"));
        }
    }
    Ok(r)
}

/// Unit diagonal and nonnegative entries in every row of `d`.
pub fn check_positivity(lambda: &Weight, d: &DecompMatrix) -> CheckReport {
    let mut r = CheckReport::new(CheckId::Positivity, lambda);
    for (i, row) in d.rows.iter().enumerate() {
        if row[i] != 1 {
            r.fail(Some(&d.index[i]), format!("diagonal entry {}", row[i]));
        }
        for (j, &c) in row.iter().enumerate() {
            if c < 0 {
                r.fail(
                    Some(&d.index[j]),
                    format!("entry {c} in row {}", d.index[i]),
                );
            }
        }
    }
    r
}

/// Every composition factor `L(nu)` of `H^0(mu)` has `nu ↑ mu`.
pub fn check_linkage(pl: &Pipeline, lambda: &Weight, d: &DecompMatrix) -> CheckReport {
    let mut r = CheckReport::new(CheckId::Linkage, lambda);
    for (i, row) in d.rows.iter().enumerate() {
        for (j, &c) in row.iter().enumerate() {
            if c != 0 && i != j && !strongly_linked(pl.config(), &d.index[j], &d.index[i]) {
                r.fail(
                    Some(&d.index[j]),
                    format!("factor of H^0{} with multiplicity {c} is not strongly linked", d.index[i]),
                );
            }
        }
    }
    r
}

/// The four structural checks for `lambda`, using `D` on every dominant
/// weight below it.
pub fn run_checks(pl: &Pipeline, lambda: &Weight) -> Result<Vec<CheckReport>> {
    let d = pl.matrix_d(lambda)?;
    Ok(vec![
        check_symmetry_dims(pl, lambda)?,
        check_factor_symmetry(pl, lambda)?,
        check_positivity(lambda, &d),
        check_linkage(pl, lambda, &d),
    ])
}
