//! Rank of sparse matrices over GF(p).

use rustc_hash::FxHashMap;

/// A sparse row: strictly increasing column ids with nonzero entries.
pub type SparseRow = Vec<(u32, u8)>;

pub fn inverse(a: u32, p: u32) -> u32 {
    let (mut r, mut b, mut e) = (1u64, a as u64 % p as u64, p as u64 - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p as u64;
        }
        b = b * b % p as u64;
        e >>= 1;
    }
    r as u32
}

/// Incremental row echelon form keyed by leading column.
pub struct Echelon {
    p: u32,
    pivots: FxHashMap<u32, SparseRow>,
}

impl Echelon {
    pub fn new(p: u32) -> Self {
        Echelon {
            p,
            pivots: FxHashMap::default(),
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `row` against the stored pivots; returns true if it was
    /// independent and has been added.
    pub fn push(&mut self, mut row: SparseRow) -> bool {
        let p = self.p;
        loop {
            let Some(&(lead, c)) = row.first() else {
                return false;
            };
            match self.pivots.get(&lead) {
                Some(piv) => {
                    // pivots are monic
                    row = axpy(&row, piv, p - c as u32, p);
                }
                None => {
                    let inv = inverse(c as u32, p);
                    if inv != 1 {
                        for e in row.iter_mut() {
                            e.1 = (e.1 as u32 * inv % p) as u8;
                        }
                    }
                    self.pivots.insert(lead, row);
                    return true;
                }
            }
        }
    }
}

/// `a + k b` for sorted sparse rows.
fn axpy(a: &SparseRow, b: &SparseRow, k: u32, p: u32) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ca = a.get(i).map_or(u32::MAX, |e| e.0);
        let cb = b.get(j).map_or(u32::MAX, |e| e.0);
        if ca < cb {
            out.push(a[i]);
            i += 1;
        } else if cb < ca {
            out.push((cb, (b[j].1 as u32 * k % p) as u8));
            j += 1;
        } else {
            let v = (a[i].1 as u32 + b[j].1 as u32 * k) % p;
            if v != 0 {
                out.push((ca, v as u8));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Rank of the rows over GF(p). Rows are processed sparsest first; the
/// search stops early once `cap` independent rows are found.
pub fn rank_mod_p(mut rows: Vec<SparseRow>, p: u32, cap: Option<usize>) -> usize {
    rows.retain(|r| !r.is_empty());
    rows.sort_by_key(|r| r.len());
    let cap = cap.unwrap_or(usize::MAX);
    let mut ech = Echelon::new(p);
    for r in rows {
        if ech.rank() >= cap {
            break;
        }
        ech.push(r);
    }
    ech.rank()
}
