//! Exact symbolic model of Lambda(degree-1 generators) tensor
//! F_p[degree-2 generators], with the Bockstein Q0, the Milnor operation Q1,
//! induced ring maps, and the z-isolation submodule reductions.
//!
//! A generator named `x` contributes the degree-1 exterior class x1 and the
//! degree-2 polynomial class x2 = Q0 x1. Monomials are ordered by exterior
//! bitmask ascending, then exponent vector lexicographic.

use crate::error::{Error, Result};
use crate::fp;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolicRing {
    pub p: u8,
    /// one name per generator pair (a_i, A_i)
    pub names: Vec<String>,
}

pub type Ring = Arc<SymbolicRing>;

impl SymbolicRing {
    pub fn new(p: u8, names: &[&str]) -> Ring {
        Arc::new(SymbolicRing {
            p,
            names: names.iter().map(|s| s.to_string()).collect(),
        })
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }
}

/// (exterior subset bitmask, polynomial exponent vector)
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub ext: u8,
    pub exps: Vec<u16>,
}

impl Monomial {
    pub fn degree(&self) -> usize {
        self.ext.count_ones() as usize
            + 2 * self.exps.iter().map(|&e| e as usize).sum::<usize>()
    }

    pub fn one(rank: usize) -> Monomial {
        Monomial {
            ext: 0,
            exps: vec![0; rank],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolicClass {
    pub ring: Ring,
    /// monomial -> nonzero coefficient
    pub terms: BTreeMap<Monomial, u8>,
}

/// Number of pairs (i in a, j in b) with i > j: the transpositions needed to
/// merge the exterior factors of `b` after those of `a` into sorted order.
fn merge_sign_swaps(a: u8, b: u8) -> u32 {
    let mut swaps = 0u32;
    for i in 0..8u8 {
        if a & (1 << i) != 0 {
            let below = b & ((1u16 << i) as u8).wrapping_sub(1);
            swaps += below.count_ones();
        }
    }
    swaps
}

impl SymbolicClass {
    pub fn zero(ring: &Ring) -> SymbolicClass {
        SymbolicClass {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: &Ring) -> SymbolicClass {
        let mut c = Self::zero(ring);
        c.terms.insert(Monomial::one(ring.rank()), 1);
        c
    }

    /// The degree-1 exterior generator with the given index.
    pub fn gen1(ring: &Ring, i: usize) -> SymbolicClass {
        let mut c = Self::zero(ring);
        c.terms.insert(
            Monomial {
                ext: 1 << i,
                exps: vec![0; ring.rank()],
            },
            1,
        );
        c
    }

    /// The degree-2 polynomial generator with the given index.
    pub fn gen2(ring: &Ring, i: usize) -> SymbolicClass {
        let mut c = Self::zero(ring);
        let mut exps = vec![0; ring.rank()];
        exps[i] = 1;
        c.terms.insert(Monomial { ext: 0, exps }, 1);
        c
    }

    pub fn monomial(ring: &Ring, m: Monomial, coeff: u8) -> SymbolicClass {
        let mut c = Self::zero(ring);
        if coeff % ring.p != 0 {
            c.terms.insert(m, coeff % ring.p);
        }
        c
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Homogeneous degree if all terms agree.
    pub fn degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(|m| m.degree());
        let d = it.next()?;
        if it.all(|x| x == d) {
            Some(d)
        } else {
            None
        }
    }

    fn add_term(&mut self, m: Monomial, c: u8) {
        if c == 0 {
            return;
        }
        let p = self.ring.p;
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let nv = fp::add(*o.get(), c, p);
                if nv == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = nv;
                }
            }
        }
    }

    pub fn add(&self, other: &SymbolicClass) -> Result<SymbolicClass> {
        if self.ring != other.ring {
            return Err(Error::ContextMismatch);
        }
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn scale(&self, c: u8) -> SymbolicClass {
        let p = self.ring.p;
        let c = c % p;
        let mut out = Self::zero(&self.ring);
        if c == 0 {
            return out;
        }
        for (m, &v) in &self.terms {
            out.terms.insert(m.clone(), fp::mul(v, c, p));
        }
        out
    }

    pub fn sub(&self, other: &SymbolicClass) -> Result<SymbolicClass> {
        self.add(&other.scale(other.ring.p - 1))
    }

    pub fn mul(&self, other: &SymbolicClass) -> Result<SymbolicClass> {
        if self.ring != other.ring {
            return Err(Error::ContextMismatch);
        }
        let p = self.ring.p;
        let mut out = Self::zero(&self.ring);
        for (m1, &c1) in &self.terms {
            for (m2, &c2) in &other.terms {
                if m1.ext & m2.ext != 0 {
                    continue; // exterior square
                }
                let swaps = merge_sign_swaps(m1.ext, m2.ext);
                let mut c = fp::mul(c1, c2, p);
                if swaps % 2 == 1 {
                    c = fp::neg(c, p);
                }
                let exps = m1
                    .exps
                    .iter()
                    .zip(m2.exps.iter())
                    .map(|(a, b)| a + b)
                    .collect();
                out.add_term(
                    Monomial {
                        ext: m1.ext | m2.ext,
                        exps,
                    },
                    c,
                );
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: usize) -> Result<SymbolicClass> {
        let mut acc = Self::one(&self.ring);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Derivation sending a_i to A_i^k and A_i to 0; k = 1 is Q0, k = p is Q1.
    fn milnor_derivation(&self, k: u16) -> SymbolicClass {
        let p = self.ring.p;
        let mut out = Self::zero(&self.ring);
        for (m, &c) in &self.terms {
            for i in 0..self.ring.rank() {
                let bit = 1u8 << i;
                if m.ext & bit == 0 {
                    continue;
                }
                // sign: (-1)^{number of exterior factors before position i}
                let before = (m.ext & (bit - 1)).count_ones();
                let mut coeff = c;
                if before % 2 == 1 {
                    coeff = fp::neg(coeff, p);
                }
                let mut exps = m.exps.clone();
                exps[i] += k;
                out.add_term(
                    Monomial {
                        ext: m.ext & !bit,
                        exps,
                    },
                    coeff,
                );
            }
        }
        out
    }

    /// Bockstein: derivation with Q0 a_i = A_i, Q0 A_i = 0.
    pub fn q0(&self) -> SymbolicClass {
        self.milnor_derivation(1)
    }

    /// Milnor operation of degree 2p-1: derivation with Q1 a_i = A_i^p.
    pub fn q1(&self) -> SymbolicClass {
        self.milnor_derivation(self.ring.p as u16)
    }

    /// Coefficient of a monomial.
    pub fn coeff(&self, m: &Monomial) -> u8 {
        *self.terms.get(m).unwrap_or(&0)
    }

    pub fn pretty(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let names = &self.ring.names;
        let mut parts = Vec::new();
        for (m, &c) in &self.terms {
            let mut factors = Vec::new();
            for i in 0..self.ring.rank() {
                if m.ext & (1 << i) != 0 {
                    factors.push(format!("{}1", names[i]));
                }
            }
            for i in 0..self.ring.rank() {
                if m.exps[i] == 1 {
                    factors.push(format!("{}2", names[i]));
                } else if m.exps[i] > 1 {
                    factors.push(format!("{}2^{}", names[i], m.exps[i]));
                }
            }
            let body = if factors.is_empty() {
                "1".to_string()
            } else {
                factors.join("*")
            };
            if c == 1 {
                parts.push(body);
            } else {
                parts.push(format!("{c}*{body}"));
            }
        }
        parts.join(" + ")
    }

    pub fn to_json(&self) -> SymbolicJson {
        SymbolicJson {
            p: self.ring.p,
            generators: self.ring.names.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, &c)| TermJson {
                    coeff: c,
                    ext: (0..self.ring.rank())
                        .filter(|i| m.ext & (1 << i) != 0)
                        .map(|i| self.ring.names[i].clone())
                        .collect(),
                    poly: (0..self.ring.rank())
                        .filter(|&i| m.exps[i] > 0)
                        .map(|i| (self.ring.names[i].clone(), m.exps[i]))
                        .collect(),
                })
                .collect(),
        }
    }
}

impl fmt::Display for SymbolicClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.pretty())
    }
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct SymbolicJson {
    pub p: u8,
    pub generators: Vec<String>,
    pub terms: Vec<TermJson>,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct TermJson {
    pub coeff: u8,
    pub ext: Vec<String>,
    pub poly: BTreeMap<String, u16>,
}

/// A ring homomorphism induced by a linear substitution on the degree-1
/// layer: a_j maps to sum_i T[i][j] b_i in the target ring (and A_j to the
/// same combination of capitals). Commutes with Q0 and Q1.
pub struct InducedMap {
    pub source: Ring,
    pub target: Ring,
    /// target.rank() x source.rank()
    pub matrix: Vec<Vec<u8>>,
}

impl InducedMap {
    pub fn new(source: &Ring, target: &Ring, matrix: Vec<Vec<u8>>) -> Result<InducedMap> {
        if matrix.len() != target.rank() || matrix.iter().any(|r| r.len() != source.rank()) {
            return Err(Error::ContextMismatch);
        }
        if source.p != target.p {
            return Err(Error::ContextMismatch);
        }
        Ok(InducedMap {
            source: source.clone(),
            target: target.clone(),
            matrix,
        })
    }

    pub fn identity(ring: &Ring) -> InducedMap {
        let n = ring.rank();
        let matrix = (0..n)
            .map(|i| (0..n).map(|j| u8::from(i == j)).collect())
            .collect();
        InducedMap {
            source: ring.clone(),
            target: ring.clone(),
            matrix,
        }
    }

    fn image_gen1(&self, j: usize) -> SymbolicClass {
        let mut acc = SymbolicClass::zero(&self.target);
        for i in 0..self.target.rank() {
            let c = self.matrix[i][j];
            if c != 0 {
                acc = acc.add(&SymbolicClass::gen1(&self.target, i).scale(c)).unwrap();
            }
        }
        acc
    }

    fn image_gen2(&self, j: usize) -> SymbolicClass {
        let mut acc = SymbolicClass::zero(&self.target);
        for i in 0..self.target.rank() {
            let c = self.matrix[i][j];
            if c != 0 {
                acc = acc.add(&SymbolicClass::gen2(&self.target, i).scale(c)).unwrap();
            }
        }
        acc
    }

    pub fn apply(&self, u: &SymbolicClass) -> Result<SymbolicClass> {
        if u.ring != self.source {
            return Err(Error::ContextMismatch);
        }
        let mut out = SymbolicClass::zero(&self.target);
        for (m, &c) in &u.terms {
            let mut acc = SymbolicClass::one(&self.target).scale(c);
            for i in 0..self.source.rank() {
                if m.ext & (1 << i) != 0 {
                    acc = acc.mul(&self.image_gen1(i))?;
                }
            }
            for i in 0..self.source.rank() {
                for _ in 0..m.exps[i] {
                    acc = acc.mul(&self.image_gen2(i))?;
                }
            }
            out = out.add(&acc)?;
        }
        Ok(out)
    }
}

/// Which z-isolating submodule is meant; both act identically on a rank-3
/// model whose last generator is the z-family, and the tag records whether
/// the ambient ring is the A_3 or the A_3' model.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZSubmodule {
    M,
    MPrime,
}

/// Reduction of a class in a rank-3 model modulo the submodule generated by
/// 1, z1, z1 z2, z2^i and z1 z2^i (i >= 2) over the (x,y)-subalgebra: only
/// monomials whose z-part is exactly z2 survive. Returns the coefficient
/// record as a class in the rank-2 (x,y)-ring.
pub fn reduce_mod_z(u: &SymbolicClass, _which: ZSubmodule) -> Result<SymbolicClass> {
    if u.ring.rank() != 3 {
        return Err(Error::RingShape(format!(
            "expected a rank-3 model, got rank {}",
            u.ring.rank()
        )));
    }
    let sub = SymbolicRing::new(u.ring.p, &[&u.ring.names[0], &u.ring.names[1]]);
    let mut out = SymbolicClass::zero(&sub);
    let zbit = 1u8 << 2;
    for (m, &c) in &u.terms {
        if m.ext & zbit == 0 && m.exps[2] == 1 {
            out.add_term(
                Monomial {
                    ext: m.ext & 0b11,
                    exps: vec![m.exps[0], m.exps[1]],
                },
                c,
            );
        }
    }
    Ok(out)
}

/// Standard rank-3 model with generators named x, y, z (the A_3 shape).
pub fn a3_model(p: u8) -> Ring {
    SymbolicRing::new(p, &["x", "y", "z"])
}

/// Rank-4 model with generators x, y, w, z used for restriction sweeps.
pub fn xywz_model(p: u8) -> Ring {
    SymbolicRing::new(p, &["x", "y", "w", "z"])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c1(r: &Ring, i: usize) -> SymbolicClass {
        SymbolicClass::gen1(r, i)
    }
    fn c2(r: &Ring, i: usize) -> SymbolicClass {
        SymbolicClass::gen2(r, i)
    }

    #[test]
    fn exterior_square_and_sign() {
        let r = a3_model(3);
        let x1 = c1(&r, 0);
        let y1 = c1(&r, 1);
        assert!(x1.mul(&x1).unwrap().is_zero());
        let xy = x1.mul(&y1).unwrap();
        let yx = y1.mul(&x1).unwrap();
        assert_eq!(yx, xy.scale(2)); // y1 x1 = -x1 y1
        let z2 = c2(&r, 2);
        let xyz2 = xy.mul(&z2).unwrap();
        assert_eq!(xyz2.terms.len(), 1);
        assert_eq!(xyz2.degree(), Some(4));
    }

    #[test]
    fn q0_of_xyz_triple() {
        let r = a3_model(3);
        let m = c1(&r, 0).mul(&c1(&r, 1)).unwrap().mul(&c1(&r, 2)).unwrap();
        let q = m.q0();
        // x2 y1 z1 - x1 y2 z1 + x1 y1 z2
        let x2y1z1 = c2(&r, 0).mul(&c1(&r, 1)).unwrap().mul(&c1(&r, 2)).unwrap();
        let x1y2z1 = c1(&r, 0).mul(&c2(&r, 1)).unwrap().mul(&c1(&r, 2)).unwrap();
        let x1y1z2 = c1(&r, 0).mul(&c1(&r, 1)).unwrap().mul(&c2(&r, 2)).unwrap();
        let expect = x2y1z1.sub(&x1y2z1).unwrap().add(&x1y1z2).unwrap();
        assert_eq!(q, expect);
        assert!(q.q0().is_zero());
        assert!(c2(&r, 0).q0().is_zero());
    }

    #[test]
    fn q1_values() {
        for p in [3u8, 5, 7] {
            let r = a3_model(p);
            // Q1 z1 = z2^p
            let z1 = c1(&r, 2);
            assert_eq!(z1.q1(), c2(&r, 2).pow(p as usize).unwrap());
            // Q1(x1 y1 z2) = x2^p y1 z2 - x1 y2^p z2
            let u = c1(&r, 0).mul(&c1(&r, 1)).unwrap().mul(&c2(&r, 2)).unwrap();
            let t1 = c2(&r, 0)
                .pow(p as usize)
                .unwrap()
                .mul(&c1(&r, 1))
                .unwrap()
                .mul(&c2(&r, 2))
                .unwrap();
            let t2 = c1(&r, 0)
                .mul(&c2(&r, 1).pow(p as usize).unwrap())
                .unwrap()
                .mul(&c2(&r, 2))
                .unwrap();
            assert_eq!(u.q1(), t1.sub(&t2).unwrap());
            assert!(c2(&r, 0).q1().is_zero());
        }
    }

    #[test]
    fn operations_anticommute_and_square_to_zero() {
        // Q0^2 = 0, Q1^2 = 0, Q0 Q1 + Q1 Q0 = 0 on pseudo-random classes
        let p = 3u8;
        let r = a3_model(p);
        let mut state = 0xabcdefu64;
        let mut next = || {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            (state >> 33) as usize
        };
        for _ in 0..1000 {
            let mut cls = SymbolicClass::zero(&r);
            for _ in 0..4 {
                let ext = (next() % 8) as u8;
                let exps = vec![
                    (next() % 3) as u16,
                    (next() % 3) as u16,
                    (next() % 3) as u16,
                ];
                let coeff = (next() % 3) as u8;
                cls = cls
                    .add(&SymbolicClass::monomial(&r, Monomial { ext, exps }, coeff))
                    .unwrap();
            }
            assert!(cls.q0().q0().is_zero());
            assert!(cls.q1().q1().is_zero());
            let anti = cls.q0().q1().add(&cls.q1().q0()).unwrap();
            assert!(anti.is_zero());
        }
    }

    #[test]
    fn derivation_laws() {
        let p = 3u8;
        let r = a3_model(p);
        let u = c1(&r, 0).mul(&c2(&r, 1)).unwrap(); // x1 y2, odd degree
        let v = c1(&r, 1).mul(&c1(&r, 2)).unwrap(); // y1 z1, even degree
        let ops: [fn(&SymbolicClass) -> SymbolicClass; 2] =
            [|x| x.q0(), |x| x.q1()];
        for q in ops {
            let lhs = q(&u.mul(&v).unwrap());
            // deg u = 3 (odd): Q(uv) = Q(u) v - u Q(v)
            let rhs = q(&u)
                .mul(&v)
                .unwrap()
                .sub(&u.mul(&q(&v)).unwrap())
                .unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn induced_map_examples() {
        let p = 3u8;
        let r4 = xywz_model(p);
        let r3 = a3_model(p);
        // g: x->x, y->y, w->y, z->z
        let g = InducedMap::new(
            &r4,
            &r3,
            vec![
                vec![1, 0, 0, 0],
                vec![0, 1, 1, 0],
                vec![0, 0, 0, 1],
            ],
        )
        .unwrap();
        // g(w1 x1 z2) = y1 x1 z2 = -x1 y1 z2
        let w1x1z2 = c1(&r4, 2).mul(&c1(&r4, 0)).unwrap().mul(&c2(&r4, 3)).unwrap();
        let img = g.apply(&w1x1z2).unwrap();
        let x1y1z2 = c1(&r3, 0).mul(&c1(&r3, 1)).unwrap().mul(&c2(&r3, 2)).unwrap();
        assert_eq!(img, x1y1z2.scale(2));
        // commutes with Q0 and Q1
        assert_eq!(g.apply(&w1x1z2.q0()).unwrap(), img.q0());
        assert_eq!(g.apply(&w1x1z2.q1()).unwrap(), img.q1());
        // identity map
        let idm = InducedMap::identity(&r3);
        assert_eq!(idm.apply(&x1y1z2).unwrap(), x1y1z2);
    }

    #[test]
    fn reduce_examples() {
        let p = 3u8;
        let r = a3_model(p);
        let x1y1z1 = c1(&r, 0).mul(&c1(&r, 1)).unwrap().mul(&c1(&r, 2)).unwrap();
        let red = reduce_mod_z(&x1y1z1.q0(), ZSubmodule::M).unwrap();
        // only the x1 y1 z2 term survives, with coefficient +1
        let sub = red.ring.clone();
        let x1y1 = SymbolicClass::gen1(&sub, 0)
            .mul(&SymbolicClass::gen1(&sub, 1))
            .unwrap();
        assert_eq!(red, x1y1);
        // z1 x2 reduces to 0
        let z1x2 = c1(&r, 2).mul(&c2(&r, 0)).unwrap();
        assert!(reduce_mod_z(&z1x2, ZSubmodule::M).unwrap().is_zero());
        // Q1(x1 y1 z2) reduces to x2^p y1 - x1 y2^p (times z2), nonzero
        let u = c1(&r, 0).mul(&c1(&r, 1)).unwrap().mul(&c2(&r, 2)).unwrap();
        let red = reduce_mod_z(&u.q1(), ZSubmodule::M).unwrap();
        assert!(!red.is_zero());
        assert_eq!(red.terms.len(), 2);
    }

    #[test]
    fn z_submodule_is_q1_stable() {
        for p in [3u8, 5, 7] {
            let r = a3_model(p);
            let z1 = c1(&r, 2);
            let z2 = c2(&r, 2);
            let mut gens = vec![
                SymbolicClass::one(&r),
                z1.clone(),
                z1.mul(&z2).unwrap(),
            ];
            for i in 2..=(p as usize + 2) {
                gens.push(z2.pow(i).unwrap());
                gens.push(z1.mul(&z2.pow(i).unwrap()).unwrap());
            }
            for g in gens {
                for w in [ZSubmodule::M, ZSubmodule::MPrime] {
                    assert!(reduce_mod_z(&g.q1(), w).unwrap().is_zero());
                }
            }
        }
    }

    #[test]
    fn wrong_ring_shape_rejected() {
        let r = SymbolicRing::new(3, &["x", "y"]);
        let u = SymbolicClass::one(&r);
        assert!(matches!(
            reduce_mod_z(&u, ZSubmodule::M),
            Err(Error::RingShape(_))
        ));
    }
}
