//! Sparse column store and streaming sparse rank over F_p.
//!
//! Columns live in a large index space (tens of millions); pivots are kept as
//! sorted sparse vectors. Reduction follows the standard
//! lowest-one/persistence scheme: a column is repeatedly reduced at its
//! largest surviving index until that index is fresh. A total-nnz budget
//! guards against fill-in blowup.

use crate::error::{Error, Result};
use crate::fp;
use std::collections::HashMap;

/// Sorted list of (index, coeff) with coeff in 1..p.
pub type SparseVec = Vec<(u64, u8)>;

/// y += c * x for sorted sparse vectors.
pub fn sparse_add_scaled(y: &SparseVec, x: &SparseVec, c: u8, p: u8) -> SparseVec {
    let mut out = Vec::with_capacity(y.len() + x.len());
    let (mut i, mut j) = (0, 0);
    while i < y.len() || j < x.len() {
        if j >= x.len() || (i < y.len() && y[i].0 < x[j].0) {
            out.push(y[i]);
            i += 1;
        } else if i >= y.len() || x[j].0 < y[i].0 {
            let v = fp::mul(c, x[j].1, p);
            if v != 0 {
                out.push((x[j].0, v));
            }
            j += 1;
        } else {
            let v = fp::add(y[i].1, fp::mul(c, x[j].1, p), p);
            if v != 0 {
                out.push((y[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub struct SparseRank {
    p: u8,
    /// pivot index (largest coordinate) -> pivot vector normalized to lead 1
    pivots: HashMap<u64, SparseVec>,
    total_nnz: usize,
    nnz_budget: usize,
}

impl SparseRank {
    pub fn new(p: u8, nnz_budget: usize) -> Self {
        SparseRank {
            p,
            pivots: HashMap::new(),
            total_nnz: 0,
            nnz_budget,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces and, if independent, installs the column. Returns whether the
    /// column increased the rank.
    pub fn insert(&mut self, mut col: SparseVec) -> Result<bool> {
        loop {
            let Some(&(low, c)) = col.last() else {
                return Ok(false);
            };
            match self.pivots.get(&low) {
                None => {
                    if c != 1 {
                        let ci = fp::inv(c, self.p);
                        for e in col.iter_mut() {
                            e.1 = fp::mul(e.1, ci, self.p);
                        }
                    }
                    self.total_nnz += col.len();
                    if self.total_nnz > self.nnz_budget {
                        return Err(Error::BarBudget(format!(
                            "sparse elimination exceeded nnz budget {}",
                            self.nnz_budget
                        )));
                    }
                    self.pivots.insert(low, col);
                    return Ok(true);
                }
                Some(piv) => {
                    col = sparse_add_scaled(&col, piv, self.p - c, self.p);
                }
            }
        }
    }

    /// Reduce a copy of the column without installing it.
    pub fn residue(&self, mut col: SparseVec) -> SparseVec {
        loop {
            let Some(&(low, c)) = col.last() else {
                return col;
            };
            match self.pivots.get(&low) {
                None => return col,
                Some(piv) => {
                    col = sparse_add_scaled(&col, piv, self.p - c, self.p);
                }
            }
        }
    }

    pub fn total_nnz(&self) -> usize {
        self.total_nnz
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sv(entries: &[(u64, u8)]) -> SparseVec {
        entries.to_vec()
    }

    #[test]
    fn small_rank() {
        let mut r = SparseRank::new(3, 1 << 20);
        assert!(r.insert(sv(&[(0, 1), (5, 2)])).unwrap());
        assert!(r.insert(sv(&[(1, 1), (5, 1)])).unwrap());
        // col0 + col1 = [(0,1),(1,1)] is dependent
        let dep = sparse_add_scaled(&sv(&[(0, 1), (5, 2)]), &sv(&[(1, 1), (5, 1)]), 1, 3);
        assert_eq!(dep, sv(&[(0, 1), (1, 1)]));
        assert!(!r.insert(dep).unwrap());
        assert!(r.insert(sv(&[(2, 1)])).unwrap());
        assert_eq!(r.rank(), 3);
        assert!(r.residue(sv(&[(0, 2), (1, 2)])).is_empty());
    }
}
