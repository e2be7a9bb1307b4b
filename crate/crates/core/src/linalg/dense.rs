//! Dense matrices over F_p.

use crate::error::{Error, Result};
use crate::linalg::echelon::{Echelon, Inserted};
use crate::linalg::vecops;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FpMatrix {
    pub p: u8,
    pub rows: usize,
    pub cols: usize,
    /// row-major, entries reduced mod p
    pub data: Vec<u8>,
}

/// Output of `rank_kernel_image`. Kernel columns satisfy M k = 0 exactly;
/// every image basis vector carries the coefficient certificate expressing it
/// over the original columns.
pub struct RankKernelImage {
    pub rank: usize,
    /// each of length `cols`
    pub kernel: Vec<Vec<u8>>,
    /// pairs (image vector of length `rows`, certificate of length `cols`)
    pub image: Vec<(Vec<u8>, Vec<u8>)>,
}

impl FpMatrix {
    pub fn zero(p: u8, rows: usize, cols: usize) -> Self {
        FpMatrix {
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

    pub fn from_rows(p: u8, rows: Vec<Vec<u8>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c);
            data.extend(row.into_iter().map(|x| x % p));
        }
        FpMatrix {
            p,
            rows: r,
            cols: c,
            data,
        }
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> u8 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u8) {
        self.data[i * self.cols + j] = v % self.p;
    }

    pub fn column(&self, j: usize) -> Vec<u8> {
        (0..self.rows).map(|i| self.at(i, j)).collect()
    }

    pub fn row(&self, i: usize) -> &[u8] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> FpMatrix {
        let mut t = FpMatrix::zero(self.p, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.at(i, j);
            }
        }
        t
    }

    pub fn mul(&self, other: &FpMatrix) -> Result<FpMatrix> {
        if self.p != other.p || self.cols != other.rows {
            return Err(Error::ContextMismatch);
        }
        let mut out = FpMatrix::zero(self.p, self.rows, other.cols);
        for i in 0..self.rows {
            let orow_start = i * other.cols;
            for k in 0..self.cols {
                let c = self.at(i, k);
                if c != 0 {
                    let src = other.row(k);
                    let dst = &mut out.data[orow_start..orow_start + other.cols];
                    vecops::add_scaled(dst, src, c, self.p);
                }
            }
        }
        Ok(out)
    }

    pub fn apply(&self, v: &[u8]) -> Vec<u8> {
        assert_eq!(v.len(), self.cols);
        let mut out = vec![0u8; self.rows];
        for i in 0..self.rows {
            let mut acc = 0u32;
            let row = self.row(i);
            for (a, &b) in row.iter().zip(v.iter()) {
                acc += *a as u32 * b as u32;
            }
            out[i] = (acc % self.p as u32) as u8;
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    /// Rank, kernel basis and image basis via column echelon. Bases are
    /// verified by multiplication before returning.
    pub fn rank_kernel_image(&self) -> RankKernelImage {
        let mut ech = Echelon::new(self.p, self.rows, true);
        let mut kernel = Vec::new();
        let mut image = Vec::new();
        for j in 0..self.cols {
            let col = self.column(j);
            match ech.insert(col.clone()) {
                Inserted::Pivot(_) => {
                    let mut cert = vec![0u8; self.cols];
                    cert[j] = 1;
                    image.push((col, cert));
                }
                Inserted::Dependent(Some(mut k)) => {
                    k.resize(self.cols, 0);
                    kernel.push(k);
                }
                Inserted::Dependent(None) => unreachable!(),
            }
        }
        // verify: M * k == 0 for kernel vectors, certificates reproduce image
        for k in &kernel {
            debug_assert!(vecops::is_zero(&self.apply(k)));
        }
        for (v, cert) in &image {
            debug_assert_eq!(&self.apply(cert), v);
        }
        RankKernelImage {
            rank: ech.rank(),
            kernel,
            image,
        }
    }

    pub fn rank(&self) -> usize {
        let mut ech = Echelon::new(self.p, self.rows, false);
        for j in 0..self.cols {
            ech.insert(self.column(j));
        }
        ech.rank()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_and_identity() {
        let z = FpMatrix::zero(3, 3, 3);
        let rki = z.rank_kernel_image();
        assert_eq!(rki.rank, 0);
        assert_eq!(rki.kernel.len(), 3);

        let id = FpMatrix::identity(3, 4);
        let rki = id.rank_kernel_image();
        assert_eq!(rki.rank, 4);
        assert!(rki.kernel.is_empty());
    }

    #[test]
    fn rank_nullity() {
        let m = FpMatrix::from_rows(5, vec![vec![1, 2, 3, 4], vec![2, 4, 1, 3], vec![3, 6, 4, 2]]);
        let rki = m.rank_kernel_image();
        assert_eq!(rki.rank + rki.kernel.len(), m.cols);
        for k in &rki.kernel {
            assert!(vecops::is_zero(&m.apply(k)));
        }
    }
}
