//! Exact arithmetic in the monomial subgroup of U(p) x U(p) generated by
//! diagonal matrices with p^2-th-root-of-unity entries and the cyclic
//! permutation matrix.
//!
//! A factor (s, w) denotes the matrix D(w) B^s where D(w) = diag(omega^{w_i})
//! with omega = exp(2 pi i / p^2), and B is the permutation matrix with
//! B e_j = e_{j-1} (indices mod p). Conjugation by B rotates a diagonal:
//! B D(w) B^{-1} = D(w') with w'[i] = w[i+1].
//!
//! Multiplication convention (locked by exhaustive associativity tests):
//! D(w)B^s . D(w')B^{s'} = D(w + rot^s(w')) B^{s+s'} with rot^s(w')[i] = w'[i+s].

use crate::error::{Error, Result};
use crate::fp;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

pub const MAX_P: usize = 7;

/// One factor: a monomial matrix D(w) B^s in U(p).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Factor {
    pub shift: u8,
    pub weights: [u16; MAX_P],
}

impl Factor {
    pub fn identity() -> Self {
        Factor {
            shift: 0,
            weights: [0; MAX_P],
        }
    }

    fn mul(&self, other: &Factor, p: u8) -> Factor {
        let p = p as usize;
        let m2 = (p * p) as u16;
        let mut w = [0u16; MAX_P];
        let s = self.shift as usize;
        for i in 0..p {
            let rotated = other.weights[(i + s) % p];
            let t = self.weights[i] + rotated;
            w[i] = if t >= m2 { t - m2 } else { t };
        }
        Factor {
            shift: ((self.shift + other.shift) % p as u8) as u8,
            weights: w,
        }
    }

    fn inv(&self, p: u8) -> Factor {
        let p = p as usize;
        let m2 = (p * p) as u16;
        let s = self.shift as usize;
        let sinv = (p - s) % p;
        let mut w = [0u16; MAX_P];
        for i in 0..p {
            // (D(w)B^s)^{-1} = D(v)B^{-s} with v[i] = -w[(i - s) mod p]
            let src = self.weights[(i + p - s) % p];
            w[i] = if src == 0 { 0 } else { m2 - src };
        }
        Factor {
            shift: sinv as u8,
            weights: w,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.shift == 0 && self.weights.iter().all(|&x| x == 0)
    }
}

/// An element of the two-factor monomial model of SU(p) x SU(p).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct MonomialElement {
    pub p: u8,
    pub f1: Factor,
    pub f2: Factor,
}

impl MonomialElement {
    pub fn identity(p: u8) -> Self {
        MonomialElement {
            p,
            f1: Factor::identity(),
            f2: Factor::identity(),
        }
    }

    pub fn mul(&self, other: &MonomialElement) -> MonomialElement {
        debug_assert_eq!(self.p, other.p);
        MonomialElement {
            p: self.p,
            f1: self.f1.mul(&other.f1, self.p),
            f2: self.f2.mul(&other.f2, self.p),
        }
    }

    pub fn inv(&self) -> MonomialElement {
        MonomialElement {
            p: self.p,
            f1: self.f1.inv(self.p),
            f2: self.f2.inv(self.p),
        }
    }

    pub fn pow(&self, mut e: i64) -> MonomialElement {
        let base = if e < 0 {
            e = -e;
            self.inv()
        } else {
            *self
        };
        let mut acc = MonomialElement::identity(self.p);
        for _ in 0..e {
            acc = acc.mul(&base);
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.f1.is_identity() && self.f2.is_identity()
    }

    pub fn order(&self) -> usize {
        let mut x = *self;
        let mut n = 1;
        while !x.is_identity() {
            x = x.mul(self);
            n += 1;
            debug_assert!(n <= 10_000);
        }
        n
    }

    pub fn commutes_with(&self, other: &MonomialElement) -> bool {
        self.mul(other) == other.mul(self)
    }
}

/// Serialization form matching the group JSON schema.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct ElementJson {
    pub shift1: u8,
    pub weights1: Vec<u16>,
    pub shift2: u8,
    pub weights2: Vec<u16>,
}

impl MonomialElement {
    pub fn to_json(&self) -> ElementJson {
        let p = self.p as usize;
        ElementJson {
            shift1: self.f1.shift,
            weights1: self.f1.weights[..p].to_vec(),
            shift2: self.f2.shift,
            weights2: self.f2.weights[..p].to_vec(),
        }
    }

    pub fn from_json(p: u8, j: &ElementJson) -> Result<Self> {
        let pu = p as usize;
        if j.weights1.len() != pu || j.weights2.len() != pu {
            return Err(Error::ContextMismatch);
        }
        let m2 = (pu * pu) as u16;
        let mut f1 = Factor {
            shift: j.shift1 % p,
            weights: [0; MAX_P],
        };
        let mut f2 = Factor {
            shift: j.shift2 % p,
            weights: [0; MAX_P],
        };
        for i in 0..pu {
            f1.weights[i] = j.weights1[i] % m2;
            f2.weights[i] = j.weights2[i] % m2;
        }
        Ok(MonomialElement { p, f1, f2 })
    }
}

/// The matrices of the construction, as one-factor values.
fn xi_factor(p: u8) -> Factor {
    let mut w = [0u16; MAX_P];
    for x in w.iter_mut().take(p as usize) {
        *x = p as u16;
    }
    Factor { shift: 0, weights: w }
}

fn alpha_factor(p: u8) -> Factor {
    let m2 = p as u16 * p as u16;
    let mut w = [0u16; MAX_P];
    for (i, x) in w.iter_mut().take(p as usize).enumerate() {
        *x = (i as u16 * p as u16) % m2;
    }
    Factor { shift: 0, weights: w }
}

fn beta_factor(_p: u8) -> Factor {
    Factor {
        shift: 1,
        weights: [0; MAX_P],
    }
}

/// sigma_k (k in 1..=p): diagonal with (i,i)-entry omega xi^{p-1} for i = k,
/// omega otherwise.
fn sigma_factor(p: u8, k: usize) -> Factor {
    let m2 = p as u16 * p as u16;
    let mut w = [0u16; MAX_P];
    for x in w.iter_mut().take(p as usize) {
        *x = 1;
    }
    // omega xi^{p-1} = omega^{1 + p(p-1)} = omega^{p^2 - p + 1}
    w[k - 1] = m2 - p as u16 + 1;
    Factor { shift: 0, weights: w }
}

/// Embeddings into the two-factor model.
pub fn gamma1(p: u8, f: Factor) -> MonomialElement {
    MonomialElement {
        p,
        f1: f,
        f2: Factor::identity(),
    }
}

pub fn gamma2(p: u8, f: Factor) -> MonomialElement {
    MonomialElement {
        p,
        f1: Factor::identity(),
        f2: f,
    }
}

pub fn delta(p: u8, f: Factor) -> MonomialElement {
    MonomialElement { p, f1: f, f2: f }
}

/// Named one-factor generators plus their standard embeddings, for an odd
/// prime p <= 7. Keys: "xi", "alpha", "beta", "sigma1".."sigmap" and the
/// embedded variants with prefixes "d_" (diagonal), "g1_", "g2_".
pub struct StandardGenerators {
    pub p: u8,
    pub xi: Factor,
    pub alpha: Factor,
    pub beta: Factor,
    pub sigma: Vec<Factor>,
}

pub fn standard_generators(p: u32) -> Result<StandardGenerators> {
    fp::check_odd_prime(p, MAX_P as u32)?;
    let p = p as u8;
    Ok(StandardGenerators {
        p,
        xi: xi_factor(p),
        alpha: alpha_factor(p),
        beta: beta_factor(p),
        sigma: (1..=p as usize).map(|k| sigma_factor(p, k)).collect(),
    })
}

impl StandardGenerators {
    pub fn named_map(&self) -> BTreeMap<String, MonomialElement> {
        let mut m = BTreeMap::new();
        let mut put = |name: &str, f: Factor| {
            m.insert(format!("d_{name}"), delta(self.p, f));
            m.insert(format!("g1_{name}"), gamma1(self.p, f));
            m.insert(format!("g2_{name}"), gamma2(self.p, f));
        };
        put("xi", self.xi);
        put("alpha", self.alpha);
        put("beta", self.beta);
        for (i, s) in self.sigma.iter().enumerate() {
            put(&format!("sigma{}", i + 1), *s);
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(p: u32) -> StandardGenerators {
        standard_generators(p).unwrap()
    }

    #[test]
    fn rejects_bad_primes() {
        assert!(standard_generators(2).is_err());
        assert!(standard_generators(9).is_err());
        assert!(standard_generators(1).is_err());
    }

    #[test]
    fn sigma_p_th_power_is_xi() {
        for p in [3u32, 5, 7] {
            let sg = g(p);
            for k in 0..p as usize {
                let s = gamma1(sg.p, sg.sigma[k]);
                assert_eq!(s.pow(p as i64), gamma1(sg.p, sg.xi), "p={p} k={k}");
            }
        }
    }

    #[test]
    fn sigma_chain_identity() {
        // sigma_2 sigma_3^2 ... sigma_p^{p-1} = xi^{(p-1)/2} alpha^{-1}
        for p in [3u32, 5, 7] {
            let sg = g(p);
            let mut prod = MonomialElement::identity(sg.p);
            for k in 2..=p as usize {
                prod = prod.mul(&gamma1(sg.p, sg.sigma[k - 1]).pow((k - 1) as i64));
            }
            let rhs = gamma1(sg.p, sg.xi)
                .pow(((p - 1) / 2) as i64)
                .mul(&gamma1(sg.p, sg.alpha).inv());
            assert_eq!(prod, rhs, "p={p}");
        }
    }

    #[test]
    fn beta_alpha_commutator_is_xi() {
        for p in [3u32, 5, 7] {
            let sg = g(p);
            let a = gamma1(sg.p, sg.alpha);
            let b = gamma1(sg.p, sg.beta);
            let comm = b.mul(&a).mul(&b.inv()).mul(&a.inv());
            assert_eq!(comm, gamma1(sg.p, sg.xi), "p={p}");
        }
    }

    #[test]
    fn gamma_relation() {
        // Gamma_1(x) = Delta(x) Gamma_2(x^{-1}) for x in {alpha, beta, xi}
        for p in [3u32, 5, 7] {
            let sg = g(p);
            for f in [sg.alpha, sg.beta, sg.xi] {
                let lhs = gamma1(sg.p, f);
                let rhs = delta(sg.p, f).mul(&gamma2(sg.p, f).inv());
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn exhaustive_associativity_on_generators() {
        for p in [3u32, 5] {
            let sg = g(p);
            let mut gens: Vec<MonomialElement> = Vec::new();
            for f in [sg.xi, sg.alpha, sg.beta, sg.sigma[0], sg.sigma[1]] {
                gens.push(delta(sg.p, f));
                gens.push(gamma1(sg.p, f));
                gens.push(gamma2(sg.p, f));
            }
            for a in &gens {
                for b in &gens {
                    for c in &gens {
                        assert_eq!(a.mul(b).mul(c), a.mul(&b.mul(c)));
                    }
                }
            }
        }
    }

    #[test]
    fn inverse_law() {
        let sg = g(5);
        let e = delta(sg.p, sg.sigma[2])
            .mul(&gamma1(sg.p, sg.beta))
            .mul(&gamma2(sg.p, sg.alpha));
        assert!(e.mul(&e.inv()).is_identity());
        assert!(e.inv().mul(&e).is_identity());
    }

    #[test]
    fn identity_law() {
        let sg = g(3);
        let a = delta(sg.p, sg.alpha);
        assert_eq!(MonomialElement::identity(3).mul(&a), a);
        assert_eq!(a.mul(&MonomialElement::identity(3)), a);
    }

    #[test]
    fn json_round_trip() {
        let sg = g(3);
        let e = delta(sg.p, sg.sigma[1]).mul(&gamma2(sg.p, sg.beta));
        let j = e.to_json();
        assert_eq!(MonomialElement::from_json(3, &j).unwrap(), e);
    }
}
