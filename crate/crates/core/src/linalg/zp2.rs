//! Exact linear algebra over the local ring Z/p^2.
//!
//! Elimination pivots only on units (entries prime to p). Once no unit pivot
//! remains, the residual system has all coefficients divisible by p and is
//! solved as an F_p system after dividing out p. Inconsistencies come with a
//! row-combination certificate.

use crate::error::{Error, Result};
use crate::fp;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Zp2Matrix {
    pub p: u8,
    pub rows: usize,
    pub cols: usize,
    /// row-major, entries reduced mod p^2
    pub data: Vec<u16>,
}

pub enum LocalSolve {
    /// x with M x = b exactly mod p^2
    Solution(Vec<u16>),
    /// y with y^T M = 0 mod p^2 but y^T b != 0 mod p^2
    Inconsistent(Vec<u16>),
}

impl Zp2Matrix {
    pub fn zero(p: u8, rows: usize, cols: usize) -> Self {
        Zp2Matrix {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(p: u8, n: usize) -> Self {
        let mut m = Self::zero(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(p: u8, rows: Vec<Vec<u16>>) -> Self {
        let m2 = p as u16 * p as u16;
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c);
            data.extend(row.into_iter().map(|x| x % m2));
        }
        Zp2Matrix {
            p,
            rows: r,
            cols: c,
            data,
        }
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> u16 {
        self.data[i * self.cols + j]
    }

    pub fn apply(&self, x: &[u16]) -> Vec<u16> {
        let m2 = self.p as u32 * self.p as u32;
        (0..self.rows)
            .map(|i| {
                let mut acc = 0u64;
                for j in 0..self.cols {
                    acc += self.at(i, j) as u64 * x[j] as u64;
                }
                (acc % m2 as u64) as u16
            })
            .collect()
    }

    /// Solves M x = b mod p^2, or produces an inconsistency certificate.
    pub fn solve_local(&self, b: &[u16]) -> Result<LocalSolve> {
        if b.len() != self.rows {
            return Err(Error::ContextMismatch);
        }
        let p = self.p as u32;
        let m2 = p * p;
        let n = self.rows;
        let c = self.cols;
        // augmented with identity on the left to track row ops: [T | A | b]
        // T is rows x rows, A is the working copy.
        let mut t: Vec<Vec<u32>> = (0..n)
            .map(|i| {
                let mut r = vec![0u32; n];
                r[i] = 1;
                r
            })
            .collect();
        let mut a: Vec<Vec<u32>> = (0..n)
            .map(|i| (0..c).map(|j| self.at(i, j) as u32).collect())
            .collect();
        let mut rhs: Vec<u32> = b.iter().map(|&x| x as u32).collect();

        let mut pivot_of_col: Vec<Option<usize>> = vec![None; c];
        let mut used_row = vec![false; n];

        // phase 1: unit pivots
        for j in 0..c {
            let pr = (0..n).find(|&i| !used_row[i] && a[i][j] % p != 0);
            if let Some(pi) = pr {
                let inv = fp::inv_mod_p2(a[pi][j] as u16, self.p) as u32;
                for x in a[pi].iter_mut() {
                    *x = *x * inv % m2;
                }
                for x in t[pi].iter_mut() {
                    *x = *x * inv % m2;
                }
                rhs[pi] = rhs[pi] * inv % m2;
                for i in 0..n {
                    if i != pi && a[i][j] != 0 {
                        let f = a[i][j];
                        for k in 0..c {
                            a[i][k] = (a[i][k] + (m2 - f) * a[pi][k]) % m2;
                        }
                        for k in 0..n {
                            t[i][k] = (t[i][k] + (m2 - f) * t[pi][k]) % m2;
                        }
                        rhs[i] = (rhs[i] + (m2 - f) * rhs[pi]) % m2;
                    }
                }
                used_row[pi] = true;
                pivot_of_col[j] = Some(pi);
            }
        }

        // phase 2: residual rows have all entries divisible by p.
        // p * (a'/p) x = rhs  -> requires rhs divisible by p on those rows,
        // then solve the F_p system (a/p) x = rhs/p for the remaining freedom.
        // Because phase-1 pivot columns are cleared in residual rows, the
        // residual system only constrains non-pivot columns.
        for i in 0..n {
            if used_row[i] {
                continue;
            }
            debug_assert!(a[i].iter().all(|&x| x % p == 0));
            if rhs[i] % p != 0 {
                // row entries are divisible by p, so p * row kills M exactly
                let cert: Vec<u16> = t[i].iter().map(|&x| (x * p % m2) as u16).collect();
                return Ok(LocalSolve::Inconsistent(cert));
            }
        }
        // F_p elimination on residual/p over non-pivot columns
        let free_cols: Vec<usize> = (0..c).filter(|&j| pivot_of_col[j].is_none()).collect();
        let res_rows: Vec<usize> = (0..n).filter(|&i| !used_row[i]).collect();
        let mut fa: Vec<Vec<u32>> = res_rows
            .iter()
            .map(|&i| free_cols.iter().map(|&j| a[i][j] / p % p).collect())
            .collect();
        let mut fb: Vec<u32> = res_rows.iter().map(|&i| rhs[i] / p % p).collect();
        let mut ft: Vec<Vec<u32>> = res_rows.iter().map(|&i| t[i].clone()).collect();
        let mut fused = vec![false; res_rows.len()];
        let mut fpivot: Vec<Option<usize>> = vec![None; free_cols.len()];
        for j in 0..free_cols.len() {
            let pr = (0..res_rows.len()).find(|&i| !fused[i] && fa[i][j] != 0);
            if let Some(pi) = pr {
                let inv = fp::inv(fa[pi][j] as u8, self.p) as u32;
                for x in fa[pi].iter_mut() {
                    *x = *x * inv % p;
                }
                fb[pi] = fb[pi] * inv % p;
                for x in ft[pi].iter_mut() {
                    *x = *x * inv % m2;
                }
                for i in 0..res_rows.len() {
                    if i != pi && fa[i][j] != 0 {
                        let f = fa[i][j];
                        for k in 0..free_cols.len() {
                            fa[i][k] = (fa[i][k] + (p - f) * fa[pi][k]) % p;
                        }
                        fb[i] = (fb[i] + (p - f) * fb[pi]) % p;
                        for k in 0..n {
                            ft[i][k] = (ft[i][k] + (m2 - f) * ft[pi][k]) % m2;
                        }
                    }
                }
                fused[pi] = true;
                fpivot[j] = Some(pi);
            }
        }
        for i in 0..res_rows.len() {
            if !fused[i] && fb[i] != 0 {
                let cert: Vec<u16> = ft[i].iter().map(|&x| x as u16).collect();
                return Ok(LocalSolve::Inconsistent(cert));
            }
        }
        // assemble a particular solution
        let mut x = vec![0u32; c];
        for (jj, &j) in free_cols.iter().enumerate() {
            if let Some(pi) = fpivot[jj] {
                x[j] = fb[pi] % p;
            }
        }
        for j in 0..c {
            if let Some(pi) = pivot_of_col[j] {
                // x_j = rhs[pi] - sum_{k != j} a[pi][k] x_k  (a[pi][j] == 1)
                let mut acc = rhs[pi] as u64;
                for k in 0..c {
                    if k != j && a[pi][k] != 0 && x[k] != 0 {
                        acc += (m2 as u64 - a[pi][k] as u64) * x[k] as u64 % m2 as u64;
                    }
                }
                x[j] = (acc % m2 as u64) as u32;
            }
        }
        let xs: Vec<u16> = x.iter().map(|&v| v as u16).collect();
        // verify exactly
        let check = self.apply(&xs);
        if check
            .iter()
            .zip(b.iter())
            .all(|(l, r)| *l as u32 % m2 == *r as u32 % m2)
        {
            Ok(LocalSolve::Solution(xs))
        } else {
            Err(Error::Other("solve_local produced an invalid solution".into()))
        }
    }
}
