//! Verified group homomorphisms.
//!
//! A homomorphism is given by images of the source generators and verified by
//! enumerating the graph subgroup of source x target: the assignment extends
//! to a homomorphism iff that subgroup has exactly |source| elements. On
//! failure a witness word (trivial in the source, nontrivial in the target)
//! is produced.

use crate::error::{Error, Result};
use crate::group::Group;
use crate::monomial::MonomialElement;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

#[derive(Clone)]
pub struct Homomorphism {
    pub source: Group,
    pub target: Group,
    /// canonical image (in the target) of each source generator
    pub images: Vec<MonomialElement>,
}

impl Homomorphism {
    pub fn new(source: Group, target: Group, images: Vec<MonomialElement>) -> Result<Self> {
        if images.len() != source.gens().len() {
            return Err(Error::HomImageCountMismatch {
                expected: source.gens().len(),
                got: images.len(),
            });
        }
        let images: Vec<MonomialElement> = images.iter().map(|e| target.canon(e)).collect();
        for im in &images {
            if !target.contains(im) {
                return Err(Error::NotInGroup);
            }
        }
        let h = Homomorphism {
            source,
            target,
            images,
        };
        h.verify()?;
        Ok(h)
    }

    /// Graph-subgroup verification.
    fn verify(&self) -> Result<()> {
        let s = &self.source;
        let t = &self.target;
        let sid = s.identity_id();
        let tid = t.identity_id();
        let gen_pairs: Vec<(u32, u32)> = s
            .gen_ids()
            .iter()
            .zip(self.images.iter())
            .map(|(&g, im)| (g, t.id_of(im).unwrap()))
            .collect();
        let mut seen: HashMap<(u32, u32), u32> = HashMap::new();
        // parent pointers for witness extraction: (parent index, generator)
        let mut parents: Vec<(u32, u16)> = vec![(u32::MAX, u16::MAX)];
        let mut order: Vec<(u32, u32)> = vec![(sid, tid)];
        seen.insert((sid, tid), 0);
        // first-coordinate occupancy for early duplicate detection
        let mut first_seen: HashMap<u32, u32> = HashMap::new();
        first_seen.insert(sid, 0);
        let mut head = 0;
        while head < order.len() {
            let (xs, xt) = order[head];
            let cur = head as u32;
            head += 1;
            for (gi, &(gs, gt)) in gen_pairs.iter().enumerate() {
                let ys = s.mul_ids(xs, gs);
                let yt = t.mul_ids(xt, gt);
                if seen.contains_key(&(ys, yt)) {
                    continue;
                }
                if let Some(&other) = first_seen.get(&ys) {
                    // two graph elements share the source coordinate
                    let mut w1 = unwind(&parents, cur);
                    w1.push(gi);
                    let w2 = unwind(&parents, other);
                    return Err(Error::HomRelationViolated {
                        word_a: w1,
                        word_b: w2,
                    });
                }
                let idx = order.len() as u32;
                seen.insert((ys, yt), idx);
                first_seen.insert(ys, idx);
                parents.push((cur, gi as u16));
                order.push((ys, yt));
            }
        }
        if order.len() == s.order() {
            Ok(())
        } else {
            // graph projects onto a proper subgroup only if generators do not
            // generate; that is ruled out by construction
            Err(Error::Other("graph subgroup smaller than source".into()))
        }
    }

    /// Evaluates the homomorphism on a source element id.
    pub fn apply_id(&self, id: u32) -> u32 {
        let t = &self.target;
        let mut acc = t.identity_id();
        let im_ids: Vec<u32> = self.images.iter().map(|e| t.id_of(e).unwrap()).collect();
        for &gi in self.source.word_of(id) {
            acc = t.mul_ids(acc, im_ids[gi as usize]);
        }
        acc
    }

    pub fn apply(&self, e: &MonomialElement) -> Result<MonomialElement> {
        let id = self.source.id_of(e)?;
        Ok(self.target.element(self.apply_id(id)))
    }

    /// Full element-wise image map (source id -> target id).
    pub fn image_map(&self) -> Vec<u32> {
        let t = &self.target;
        let im_ids: Vec<u32> = self.images.iter().map(|e| t.id_of(e).unwrap()).collect();
        let n = self.source.order();
        let mut out = vec![u32::MAX; n];
        // evaluate along BFS words
        for id in 0..n as u32 {
            let mut acc = t.identity_id();
            for &gi in self.source.word_of(id) {
                acc = t.mul_ids(acc, im_ids[gi as usize]);
            }
            out[id as usize] = acc;
        }
        out
    }

    pub fn is_bijective(&self) -> bool {
        if self.source.order() != self.target.order() {
            return false;
        }
        let map = self.image_map();
        let mut hit = vec![false; self.target.order()];
        for &y in &map {
            if hit[y as usize] {
                return false;
            }
            hit[y as usize] = true;
        }
        true
    }

    pub fn compose(&self, inner: &Homomorphism) -> Result<Homomorphism> {
        // self o inner : inner.source -> self.target
        if !std::sync::Arc::ptr_eq(&inner.target, &self.source) {
            return Err(Error::ContextMismatch);
        }
        let images: Result<Vec<MonomialElement>> = inner
            .images
            .iter()
            .map(|im| self.apply(im))
            .collect();
        Homomorphism::new(inner.source.clone(), self.target.clone(), images?)
    }

    pub fn equals(&self, other: &Homomorphism) -> bool {
        std::sync::Arc::ptr_eq(&self.source, &other.source)
            && std::sync::Arc::ptr_eq(&self.target, &other.target)
            && self.image_map() == other.image_map()
    }

    pub fn to_json(&self) -> HomJson {
        HomJson {
            source: self.source.to_json(),
            target: self.target.to_json(),
            images: self.images.iter().map(|e| e.to_json()).collect(),
        }
    }
}

fn unwind(parents: &[(u32, u16)], mut idx: u32) -> Vec<usize> {
    let mut w = Vec::new();
    while parents[idx as usize].0 != u32::MAX {
        let (par, gi) = parents[idx as usize];
        w.push(gi as usize);
        idx = par;
    }
    w.reverse();
    w
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct HomJson {
    pub source: crate::group::GroupJson,
    pub target: crate::group::GroupJson,
    pub images: Vec<crate::monomial::ElementJson>,
}
