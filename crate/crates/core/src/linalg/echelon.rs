//! Streaming column echelon over F_p with optional history tracking.
//!
//! Columns are inserted one at a time in a caller-fixed order; the result is
//! deterministic. With history enabled, every pivot stores its expression in
//! the original inserted columns, so the structure doubles as a solver for
//! `M x = y` and as a kernel extractor (a column that reduces to zero yields
//! a kernel vector of the inserted family).
//!
//! Invariant maintained by `reduce`: v_current = v_input + sum_i expr[i] * col_i.

use crate::linalg::vecops;

pub struct Echelon {
    p: u8,
    dim: usize,
    track_history: bool,
    n_inserted: usize,
    /// pivot coordinate -> index into `pivots`
    pivot_at: Vec<u32>,
    pivots: Vec<PivotVec>,
}

struct PivotVec {
    coord: usize,
    /// normalized so that v[coord] == 1 and v[0..coord] == 0
    v: Vec<u8>,
    /// expression of `v` over the original inserted columns
    hist: Vec<u8>,
}

pub enum Inserted {
    /// column added a new pivot (at the returned coordinate)
    Pivot(usize),
    /// column was dependent; if history is tracked, the returned vector is a
    /// kernel combination over all columns inserted so far (coefficient 1 at
    /// the column's own index)
    Dependent(Option<Vec<u8>>),
}

impl Echelon {
    pub fn new(p: u8, dim: usize, track_history: bool) -> Self {
        Echelon {
            p,
            dim,
            track_history,
            n_inserted: 0,
            pivot_at: vec![u32::MAX; dim],
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn n_inserted(&self) -> usize {
        self.n_inserted
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn reduce(&self, v: &mut [u8], mut expr: Option<&mut Vec<u8>>) {
        for coord in 0..self.dim {
            let c = v[coord];
            if c == 0 {
                continue;
            }
            let pi = self.pivot_at[coord];
            if pi == u32::MAX {
                continue;
            }
            let piv = &self.pivots[pi as usize];
            let k = self.p - c; // v -= c * piv
            vecops::add_scaled(&mut v[coord..], &piv.v[coord..], k, self.p);
            debug_assert_eq!(v[coord], 0);
            if let Some(e) = expr.as_deref_mut() {
                if e.len() < piv.hist.len() {
                    e.resize(piv.hist.len(), 0);
                }
                vecops::add_scaled(&mut e[..piv.hist.len()], &piv.hist, k, self.p);
            }
        }
    }

    /// Inserts a column (consumed). Deterministic pivot choice: first nonzero
    /// coordinate after reduction.
    pub fn insert(&mut self, mut v: Vec<u8>) -> Inserted {
        assert_eq!(v.len(), self.dim);
        let my_index = self.n_inserted;
        self.n_inserted += 1;
        let mut expr = if self.track_history {
            Some(vec![0u8; 0])
        } else {
            None
        };
        self.reduce(&mut v, expr.as_mut());
        match vecops::first_nonzero(&v) {
            None => {
                // 0 = col + sum expr[i] col_i, so the kernel vector is
                // e_my_index + expr
                let kern = expr.map(|mut e| {
                    e.resize(my_index + 1, 0);
                    e[my_index] = 1;
                    e
                });
                Inserted::Dependent(kern)
            }
            Some(coord) => {
                let c = v[coord];
                let ci = crate::fp::inv(c, self.p);
                if c != 1 {
                    vecops::scale(&mut v, ci, self.p);
                }
                let hist = if self.track_history {
                    // piv = inv(c) * (col + sum expr[i] col_i)
                    let mut h = expr.unwrap();
                    h.resize(my_index + 1, 0);
                    vecops::scale(&mut h, ci, self.p);
                    h[my_index] = ci;
                    h
                } else {
                    Vec::new()
                };
                self.pivot_at[coord] = self.pivots.len() as u32;
                self.pivots.push(PivotVec { coord, v, hist });
                Inserted::Pivot(coord)
            }
        }
    }

    /// Solves `sum_i x_i col_i = y` over the inserted columns. Requires
    /// history tracking. Returns the coefficient vector (length = number of
    /// inserted columns) or None if y is not in the span.
    pub fn solve(&self, y: &[u8]) -> Option<Vec<u8>> {
        assert!(self.track_history);
        let mut v = y.to_vec();
        let mut expr = vec![0u8; 0];
        self.reduce(&mut v, Some(&mut expr));
        if vecops::is_zero(&v) {
            // 0 = y + sum expr[i] col_i  =>  y = sum (-expr[i]) col_i
            expr.resize(self.n_inserted, 0);
            for x in expr.iter_mut() {
                if *x != 0 {
                    *x = self.p - *x;
                }
            }
            Some(expr)
        } else {
            None
        }
    }

    /// Membership test without history.
    pub fn contains(&self, y: &[u8]) -> bool {
        let mut v = y.to_vec();
        self.reduce(&mut v, None);
        vecops::is_zero(&v)
    }

    /// Reduce a copy of `y` against the pivots and return it.
    pub fn residue(&self, y: &[u8]) -> Vec<u8> {
        let mut v = y.to_vec();
        self.reduce(&mut v, None);
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn combo(cols: &[Vec<u8>], x: &[u8], dim: usize, p: u8) -> Vec<u8> {
        let mut acc = vec![0u8; dim];
        for (i, &c) in x.iter().enumerate() {
            vecops::add_scaled(&mut acc, &cols[i], c, p);
        }
        acc
    }

    #[test]
    fn kernel_and_solve() {
        let p = 3;
        let cols: Vec<Vec<u8>> = vec![
            vec![1, 0, 1],
            vec![0, 1, 1],
            vec![1, 1, 2], // c0 + c1
            vec![2, 0, 2], // 2*c0
        ];
        let mut e = Echelon::new(p, 3, true);
        let mut kernels = Vec::new();
        for c in cols.clone() {
            if let Inserted::Dependent(Some(k)) = e.insert(c) {
                kernels.push(k);
            }
        }
        assert_eq!(e.rank(), 2);
        assert_eq!(kernels.len(), 2);
        for k in &kernels {
            assert!(vecops::is_zero(&combo(&cols, k, 3, p)));
            assert_eq!(*k.last().unwrap(), 1);
        }
        let y = vec![2, 1, 0]; // 2*c0 + c1
        let x = e.solve(&y).unwrap();
        assert_eq!(combo(&cols, &x, 3, p), y);
        let y2 = vec![1, 2, 0]; // c0 + 2 c1
        let x2 = e.solve(&y2).unwrap();
        assert_eq!(combo(&cols, &x2, 3, p), y2);
        assert!(e.solve(&[0, 0, 1]).is_none());
    }

    #[test]
    fn random_rank_transpose_invariant() {
        // rank(M) == rank(M^T) on pseudo-random instances
        for p in [3u8, 5, 7] {
            let (r, c) = (17, 23);
            let mut state = 0x12345678u64;
            let mut next = || {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                ((state >> 33) % p as u64) as u8
            };
            let m: Vec<Vec<u8>> = (0..c).map(|_| (0..r).map(|_| next()).collect()).collect();
            let mut e1 = Echelon::new(p, r, false);
            for col in &m {
                e1.insert(col.clone());
            }
            let mut e2 = Echelon::new(p, c, false);
            for i in 0..r {
                e2.insert((0..c).map(|j| m[j][i]).collect());
            }
            assert_eq!(e1.rank(), e2.rank());
        }
    }
}
