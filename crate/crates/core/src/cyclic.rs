//! F_p[C_p]-module linear algebra on the reduced permutation module: kernels
//! and images of (1-g) and (1-g)^{p-1}, and the first-page computation of the
//! associated twisted cohomology.
//!
//! The module is derived from the ambient rank-p permutation module with
//! basis t^(1)..t^(p) on which g acts by cyclic shift; the submodule is
//! spanned by u^(i) = t^(i) - t^(i+1), i = 1..p-1, and the action matrix is
//! recomputed from the embedding rather than hard-coded.

use crate::error::{Error, Result};
use crate::fp;
use crate::linalg::FpMatrix;
use serde::Serialize;

pub const MAX_CYCLIC_P: u32 = 13;

#[derive(Debug, Clone, Serialize)]
pub struct CpModule {
    pub p: u8,
    /// (p-1) x (p-1) matrix of g on the basis u^(1)..u^(p-1)
    pub action: FpMatrix,
}

#[derive(Debug, Clone, Serialize)]
pub struct KernelImageReport {
    pub p: u8,
    pub dim_ker_one_minus_g: usize,
    /// coordinates of the spanning kernel vector (expected: 1, 2, ..., p-1)
    pub ker_generator: Vec<u8>,
    pub dim_im_one_minus_g: usize,
    pub utilde_in_image: bool,
    /// (1-g)^{p-1} vanishes on the module
    pub nilpotent_power_zero: bool,
    /// (1-g)^{p-1} equals the norm element N = 1 + g + ... + g^{p-1} on the
    /// ambient permutation module
    pub norm_identity_ambient: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct E2Report {
    pub p: u8,
    pub dim_e2_02: usize,
    /// label of the spanning class of E_2^{0,2}
    pub e2_02_rep: String,
    pub dim_e2_12: usize,
    pub e2_12_rep: String,
}

impl CpModule {
    pub fn new(p: u32) -> Result<CpModule> {
        fp::check_odd_prime(p, MAX_CYCLIC_P)?;
        let p8 = p as u8;
        let n = p as usize;
        // ambient action on t^(i): g t^(i) = t^(i+1) (indices mod p)
        let mut ambient = FpMatrix::zero(p8, n, n);
        for j in 0..n {
            ambient.set((j + 1) % n, j, 1);
        }
        // embedding u^(i) = t^(i) - t^(i+1), i = 1..p-1, as columns
        let mut emb = FpMatrix::zero(p8, n, n - 1);
        for j in 0..n - 1 {
            emb.set(j, j, 1);
            emb.set(j + 1, j, p8 - 1);
        }
        // derive the action on the u-basis: solve emb * A = ambient * emb
        let target = ambient.mul(&emb)?;
        let mut action = FpMatrix::zero(p8, n - 1, n - 1);
        // emb has full column rank; solve column-wise
        let mut ech = crate::linalg::Echelon::new(p8, n, true);
        for j in 0..n - 1 {
            ech.insert(emb.column(j));
        }
        for j in 0..n - 1 {
            let col = target.column(j);
            let x = ech
                .solve(&col)
                .ok_or_else(|| Error::Other("permutation submodule is not g-stable".into()))?;
            for i in 0..n - 1 {
                action.set(i, j, x[i]);
            }
        }
        Ok(CpModule { p: p8, action })
    }

    pub fn dim(&self) -> usize {
        self.p as usize - 1
    }

    /// 1 - g on the module.
    pub fn one_minus_g(&self) -> FpMatrix {
        let n = self.dim();
        let mut m = self.action.clone();
        for i in 0..n {
            for j in 0..n {
                let v = if i == j {
                    fp::sub(1, m.at(i, j), self.p)
                } else {
                    fp::neg(m.at(i, j), self.p)
                };
                m.set(i, j, v);
            }
        }
        m
    }

    fn matrix_power(&self, m: &FpMatrix, e: usize) -> FpMatrix {
        let mut acc = FpMatrix::identity(self.p, m.rows);
        for _ in 0..e {
            acc = acc.mul(m).unwrap();
        }
        acc
    }

    /// utilde = u^(1) + 2 u^(2) + ... + (p-1) u^(p-1).
    pub fn utilde(&self) -> Vec<u8> {
        (1..self.p).map(|i| i % self.p).collect()
    }

    pub fn kernel_image_analysis(&self) -> KernelImageReport {
        let n = self.dim();
        let omg = self.one_minus_g();
        let rki = omg.rank_kernel_image();
        let utilde = self.utilde();
        // kernel must be spanned by utilde
        let ker_spanned = rki.kernel.len() == 1 && {
            let k = &rki.kernel[0];
            // proportional to utilde
            let scale = (0..n).find_map(|i| {
                if k[i] != 0 {
                    Some(fp::mul(utilde[i], fp::inv(k[i], self.p), self.p))
                } else {
                    None
                }
            });
            match scale {
                Some(s) => (0..n).all(|i| fp::mul(k[i], s, self.p) == utilde[i]),
                None => false,
            }
        };
        let mut im_ech = crate::linalg::Echelon::new(self.p, n, false);
        for (v, _) in &rki.image {
            im_ech.insert(v.clone());
        }
        let utilde_in_image = im_ech.contains(&utilde);
        let pw = self.matrix_power(&omg, n);
        let nilpotent_power_zero = pw.is_zero();
        // ambient identity: (1-g)^{p-1} = N on the rank-p permutation module
        let np = self.p as usize;
        let mut ambient = FpMatrix::zero(self.p, np, np);
        for j in 0..np {
            ambient.set((j + 1) % np, j, 1);
        }
        let mut one_minus = FpMatrix::zero(self.p, np, np);
        for i in 0..np {
            for j in 0..np {
                let v = if i == j {
                    fp::sub(1, ambient.at(i, j), self.p)
                } else {
                    fp::neg(ambient.at(i, j), self.p)
                };
                one_minus.set(i, j, v);
            }
        }
        let mut amb_pow = FpMatrix::identity(self.p, np);
        for _ in 0..np - 1 {
            amb_pow = amb_pow.mul(&one_minus).unwrap();
        }
        let mut norm = FpMatrix::zero(self.p, np, np);
        let mut gk = FpMatrix::identity(self.p, np);
        for _ in 0..np {
            for i in 0..np {
                for j in 0..np {
                    let v = fp::add(norm.at(i, j), gk.at(i, j), self.p);
                    norm.set(i, j, v);
                }
            }
            gk = gk.mul(&ambient).unwrap();
        }
        // g^p = identity on the ambient module
        let gp = self.matrix_power(&ambient, np);
        let norm_identity_ambient = amb_pow == norm && gp == FpMatrix::identity(self.p, np);

        KernelImageReport {
            p: self.p,
            dim_ker_one_minus_g: rki.kernel.len(),
            ker_generator: if ker_spanned {
                utilde
            } else {
                rki.kernel.first().cloned().unwrap_or_default()
            },
            dim_im_one_minus_g: rki.rank,
            utilde_in_image,
            nilpotent_power_zero,
            norm_identity_ambient,
        }
    }

    /// E_2 terms of the twisted first page: with d_1(u w_2^i) = ((1-g)u) w_1 w_2^i
    /// and d_1(u w_1 w_2^i) = ((1-g)^{p-1} u) w_2^{i+1}, the bidegree-(*,2)
    /// terms are E_2^{0,2} = ker(1-g) and E_2^{1,2} = ker (1-g)^{p-1} / im(1-g).
    pub fn e2_terms(&self) -> E2Report {
        let n = self.dim();
        let omg = self.one_minus_g();
        let rki = omg.rank_kernel_image();
        let dim_e2_02 = rki.kernel.len();
        let pw = self.matrix_power(&omg, n);
        let pw_rki = pw.rank_kernel_image();
        // ker (1-g)^{p-1} mod im(1-g)
        let mut ech = crate::linalg::Echelon::new(self.p, n, false);
        for (v, _) in &rki.image {
            ech.insert(v.clone());
        }
        let base_rank = ech.rank();
        let mut quot_dim = 0usize;
        for k in &pw_rki.kernel {
            if let crate::linalg::Inserted::Pivot(_) = ech.insert(k.clone()) {
                quot_dim += 1;
            }
        }
        debug_assert_eq!(ech.rank(), base_rank + quot_dim);
        // representative u^(1) w_1: check u^(1) is nonzero in the quotient
        let mut e1 = vec![0u8; n];
        e1[0] = 1;
        let mut ech2 = crate::linalg::Echelon::new(self.p, n, false);
        for (v, _) in &rki.image {
            ech2.insert(v.clone());
        }
        let rep_ok = matches!(ech2.insert(e1), crate::linalg::Inserted::Pivot(_));
        E2Report {
            p: self.p,
            dim_e2_02,
            e2_02_rep: "utilde".into(),
            dim_e2_12: quot_dim,
            e2_12_rep: if rep_ok { "u1.w1".into() } else { "-".into() },
        }
    }
}

/// Combined record for the CLI.
#[derive(Debug, Clone, Serialize)]
pub struct CyclicReport {
    pub kernel_image: KernelImageReport,
    pub e2: E2Report,
}

pub fn cyclic_report(p: u32) -> Result<CyclicReport> {
    let m = CpModule::new(p)?;
    Ok(CyclicReport {
        kernel_image: m.kernel_image_analysis(),
        e2: m.e2_terms(),
    })
}
