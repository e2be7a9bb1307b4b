//! Independent Betti-number oracle via the normalized inhomogeneous bar
//! complex: b_n = dim C_n - rank d_n - rank d_{n+1} where C_n is spanned by
//! n-tuples of nonidentity elements.
//!
//! Ranks are computed by streaming sparse elimination with
//! largest-index pivoting. Rows are indexed with the first tuple coordinate
//! most significant and with the first generator's cyclic subgroup placed at
//! the smallest indices, which keeps the boundary columns close to
//! triangular with respect to their leading face.

use crate::error::{Error, Result};
use crate::fp;
use crate::group::FiniteGroup;

/// Budget for a bar computation.
#[derive(Clone, Copy, Debug)]
pub struct BarBudget {
    /// maximum number of columns processed in a single rank computation
    pub max_columns: u64,
    /// maximum stored nonzeros among pivot vectors
    pub max_nnz: usize,
}

impl Default for BarBudget {
    fn default() -> Self {
        BarBudget {
            max_columns: 16_000_000,
            max_nnz: 220_000_000,
        }
    }
}

const ROW_MASK: u32 = 0x00FF_FFFF;

/// Sparse elimination with packed (coeff<<24 | row) entries and
/// largest-row pivoting.
struct PackedRank {
    p: u8,
    /// row -> pivot index + 1 (0 = free)
    pivot_at: Vec<u32>,
    pivots: Vec<Vec<u32>>,
    total_nnz: usize,
    max_nnz: usize,
}

impl PackedRank {
    fn new(p: u8, n_rows: usize, max_nnz: usize) -> Self {
        PackedRank {
            p,
            pivot_at: vec![0; n_rows],
            pivots: Vec::new(),
            total_nnz: 0,
            max_nnz,
        }
    }

    fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// col: sorted by row, coefficients nonzero.
    fn insert(&mut self, mut col: Vec<u32>, scratch: &mut Vec<u32>) -> Result<bool> {
        let p = self.p;
        loop {
            let Some(&last) = col.last() else {
                return Ok(false);
            };
            let row = (last & ROW_MASK) as usize;
            let c = (last >> 24) as u8;
            let pi = self.pivot_at[row];
            if pi == 0 {
                // normalize lead to 1
                if c != 1 {
                    let ci = fp::inv(c, p);
                    for e in col.iter_mut() {
                        let v = fp::mul((*e >> 24) as u8, ci, p);
                        *e = (*e & ROW_MASK) | ((v as u32) << 24);
                    }
                }
                self.total_nnz += col.len();
                if self.total_nnz > self.max_nnz {
                    return Err(Error::BarBudget(format!(
                        "pivot storage exceeded {} nonzeros",
                        self.max_nnz
                    )));
                }
                self.pivots.push(col);
                self.pivot_at[row] = self.pivots.len() as u32;
                return Ok(true);
            }
            let piv = &self.pivots[(pi - 1) as usize];
            // col -= c * piv (merge, both sorted by row)
            let k = p - c;
            scratch.clear();
            let (mut i, mut j) = (0usize, 0usize);
            while i < col.len() || j < piv.len() {
                if j >= piv.len()
                    || (i < col.len() && (col[i] & ROW_MASK) < (piv[j] & ROW_MASK))
                {
                    scratch.push(col[i]);
                    i += 1;
                } else if i >= col.len() || (piv[j] & ROW_MASK) < (col[i] & ROW_MASK) {
                    let v = fp::mul((piv[j] >> 24) as u8, k, p);
                    if v != 0 {
                        scratch.push((piv[j] & ROW_MASK) | ((v as u32) << 24));
                    }
                    j += 1;
                } else {
                    let v = fp::add(
                        (col[i] >> 24) as u8,
                        fp::mul((piv[j] >> 24) as u8, k, p),
                        p,
                    );
                    if v != 0 {
                        scratch.push((col[i] & ROW_MASK) | ((v as u32) << 24));
                    }
                    i += 1;
                    j += 1;
                }
            }
            std::mem::swap(&mut col, scratch);
        }
    }
}

/// Indexing data for tuples over the nonidentity elements.
struct TupleSpace {
    /// position -> element id
    ord: Vec<u32>,
    /// element id -> position (identity -> u32::MAX)
    pos: Vec<u32>,
    m: u64,
}

impl TupleSpace {
    fn new(g: &FiniteGroup) -> TupleSpace {
        let e = g.identity_id();
        let n = g.order() as u32;
        // place the first generator's cyclic subgroup first
        let mut ord: Vec<u32> = Vec::with_capacity(n as usize - 1);
        let mut placed = vec![false; n as usize];
        placed[e as usize] = true;
        if let Some(&g0) = g.gen_ids().first() {
            let mut x = g0;
            while x != e && !placed[x as usize] {
                placed[x as usize] = true;
                ord.push(x);
                x = g.mul_ids(x, g0);
            }
        }
        for x in 0..n {
            if !placed[x as usize] {
                ord.push(x);
            }
        }
        let mut pos = vec![u32::MAX; n as usize];
        for (i, &x) in ord.iter().enumerate() {
            pos[x as usize] = i as u32;
        }
        TupleSpace {
            m: ord.len() as u64,
            ord,
            pos,
        }
    }

    /// index of a tuple of element ids (none of them the identity), first
    /// coordinate most significant
    fn index(&self, tuple: &[u32]) -> u64 {
        let mut idx = 0u64;
        for &x in tuple {
            idx = idx * self.m + self.pos[x as usize] as u64;
        }
        idx
    }
}

/// rank of d_k: C_k -> C_{k-1} for k >= 1.
fn rank_boundary(g: &FiniteGroup, k: usize, budget: &BarBudget) -> Result<usize> {
    if k == 1 {
        return Ok(0); // normalized: d_1 = 0
    }
    let ts = TupleSpace::new(g);
    let m = ts.m;
    let n_cols = m.checked_pow(k as u32).ok_or_else(|| {
        Error::BarBudget("tuple space overflow".into())
    })?;
    if n_cols > budget.max_columns {
        return Err(Error::BarBudget(format!(
            "{} columns exceeds budget {}",
            n_cols, budget.max_columns
        )));
    }
    let n_rows = m.pow(k as u32 - 1);
    if n_rows > ROW_MASK as u64 {
        return Err(Error::BarBudget("row space exceeds packed index range".into()));
    }
    let e = g.identity_id();
    let p = g.p;
    let mut elim = PackedRank::new(p, n_rows as usize, budget.max_nnz);
    let mut scratch: Vec<u32> = Vec::new();
    let mut tuple = vec![0u32; k]; // positions into ord
    let mut ids = vec![0u32; k];
    let mut faces: Vec<(u64, u8)> = Vec::with_capacity(k + 1);
    let mut face_ids = vec![0u32; k - 1];
    // iterate g1 outer following ord (first generator's subgroup first)
    loop {
        for (i, &t) in tuple.iter().enumerate() {
            ids[i] = ts.ord[t as usize];
        }
        faces.clear();
        // face 0: drop first
        faces.push((ts.index(&ids[1..]), 1));
        // merges
        for i in 0..k - 1 {
            let prod = g.mul_ids(ids[i], ids[i + 1]);
            if prod != e {
                let mut w = 0usize;
                for (j, &x) in ids.iter().enumerate() {
                    if j == i {
                        face_ids[w] = prod;
                        w += 1;
                    } else if j != i + 1 {
                        face_ids[w] = x;
                        w += 1;
                    }
                }
                let sign = if (i + 1) % 2 == 1 { p - 1 } else { 1 };
                faces.push((ts.index(&face_ids), sign));
            }
        }
        // face k: drop last
        let sign = if k % 2 == 1 { p - 1 } else { 1 };
        faces.push((ts.index(&ids[..k - 1]), sign));
        faces.sort_unstable_by_key(|&(r, _)| r);
        // combine duplicates
        let mut col: Vec<u32> = Vec::with_capacity(faces.len());
        for &(r, c) in &faces {
            match col.last() {
                Some(&lastv) if (lastv & ROW_MASK) as u64 == r => {
                    let nv = fp::add((lastv >> 24) as u8, c, p);
                    col.pop();
                    if nv != 0 {
                        col.push(r as u32 | ((nv as u32) << 24));
                    }
                }
                _ => col.push(r as u32 | ((c as u32) << 24)),
            }
        }
        elim.insert(col, &mut scratch)?;

        // advance odometer: last coordinate fastest
        let mut pos = k;
        loop {
            if pos == 0 {
                return Ok(elim.rank());
            }
            pos -= 1;
            tuple[pos] += 1;
            if (tuple[pos] as u64) < m {
                break;
            }
            tuple[pos] = 0;
        }
    }
}

/// Betti numbers b_0..b_nmax of G via normalized bar-complex ranks.
pub fn bar_betti(g: &FiniteGroup, n_max: usize, budget: &BarBudget) -> Result<Vec<usize>> {
    if !g.has_table() {
        return Err(Error::BarBudget("group too large for bar oracle".into()));
    }
    let m = g.order() as u64 - 1;
    let mut ranks = vec![0usize; n_max + 2]; // rank d_k for k = 0..n_max+1
    for k in 1..=n_max + 1 {
        ranks[k] = rank_boundary(g, k, budget)?;
    }
    let mut betti = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let dim = m.pow(n as u32) as usize;
        betti.push(dim - ranks[n] - ranks[n + 1]);
    }
    Ok(betti)
}

/// dim H^n(G; F_p) for a single degree.
pub fn bar_oracle(g: &FiniteGroup, n: usize, budget: &BarBudget) -> Result<usize> {
    Ok(bar_betti(g, n, budget)?[n])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::Catalog;
    use crate::group::FiniteGroup;
    use crate::monomial::{gamma1, gamma2, standard_generators};

    #[test]
    fn cyclic_p3() {
        let sg = standard_generators(3).unwrap();
        let z3 = FiniteGroup::generate_mod_center(3, &[gamma1(3, sg.beta)], &[], 100).unwrap();
        let b = bar_betti(&z3, 4, &BarBudget::default()).unwrap();
        assert_eq!(b, vec![1, 1, 1, 1, 1]);
    }

    #[test]
    fn z9_betti() {
        let sg = standard_generators(3).unwrap();
        let z9 = FiniteGroup::generate(3, &[gamma1(3, sg.sigma[0])], 100).unwrap();
        assert_eq!(z9.order(), 9);
        let b = bar_betti(&z9, 3, &BarBudget::default()).unwrap();
        assert_eq!(b, vec![1, 1, 1, 1]);
    }

    #[test]
    fn rank2_elementary_abelian() {
        let sg = standard_generators(3).unwrap();
        let a2 = FiniteGroup::generate_mod_center(
            3,
            &[gamma1(3, sg.beta), gamma2(3, sg.beta)],
            &[],
            100,
        )
        .unwrap();
        assert_eq!(a2.order(), 9);
        let b = bar_betti(&a2, 4, &BarBudget::default()).unwrap();
        // Lambda(a,b) tensor F_3[A,B]: dims 1,2,3,4,5
        assert_eq!(b, vec![1, 2, 3, 4, 5]);
    }

    #[test]
    fn a2_quotient_model() {
        let c = Catalog::new(3).unwrap();
        let b = bar_betti(&c.a2, 4, &BarBudget::default()).unwrap();
        assert_eq!(b, vec![1, 2, 3, 4, 5]);
    }

    #[test]
    fn budget_errors() {
        let c = Catalog::new(3).unwrap();
        let tiny = BarBudget {
            max_columns: 10,
            max_nnz: 1000,
        };
        assert!(matches!(
            bar_betti(&c.a2, 3, &tiny),
            Err(Error::BarBudget(_))
        ));
    }
}

/// Exposed for performance experiments.
pub fn debug_rank(g: &FiniteGroup, k: usize, budget: &BarBudget) -> Result<usize> {
    rank_boundary(g, k, budget)
}
