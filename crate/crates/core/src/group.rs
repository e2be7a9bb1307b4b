//! Finite groups realized inside the two-factor monomial model, optionally as
//! quotients by a central subgroup of the ambient model.
//!
//! Elements of a quotient are stored as canonical coset representatives: the
//! representative minimizing the packed element key over the coset. Every
//! stored element therefore has exactly one representative and equality is
//! structural.

use crate::error::{Error, Result};
use crate::monomial::{ElementJson, MonomialElement};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::sync::Arc;

pub const DEFAULT_CAP: usize = 1_000_000;
const TABLE_CAP: usize = 4096;

/// Packs an element into a u128 whose integer order equals the lexicographic
/// order on (shift1, weights1, shift2, weights2).
pub fn pack(e: &MonomialElement) -> u128 {
    let mut k: u128 = e.f1.shift as u128;
    for w in e.f1.weights {
        k = (k << 7) | w as u128;
    }
    k = (k << 4) | e.f2.shift as u128;
    for w in e.f2.weights {
        k = (k << 7) | w as u128;
    }
    k
}

pub struct FiniteGroup {
    pub p: u8,
    /// ambient generators (identity entries removed)
    gens: Vec<MonomialElement>,
    /// generators of the central subgroup that was quotiented out
    center_quot_gens: Vec<MonomialElement>,
    /// all elements of that central subgroup (ambient), sorted
    center_quot_elems: Vec<MonomialElement>,
    /// canonical representatives, sorted by packed key; position = element id
    elems: Vec<MonomialElement>,
    index: HashMap<u128, u32>,
    /// word in `gens` (generator indices) reaching each element
    words: Vec<Vec<u16>>,
    invs: Vec<u32>,
    /// full multiplication table when the group is small enough
    table: Option<Vec<u32>>,
}

pub type Group = Arc<FiniteGroup>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupInvariants {
    pub order: usize,
    pub exponent: usize,
    pub center_order: usize,
    pub commutator_order: usize,
    /// cyclic orders of the abelianization, descending
    pub abelianization: Vec<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConjClass {
    pub representative: usize,
    pub size: usize,
    pub members: Vec<u32>,
}

impl FiniteGroup {
    /// Generates the subgroup of the monomial model spanned by `gens`,
    /// modulo the central subgroup generated by `center_gens`.
    pub fn generate_mod_center(
        p: u8,
        gens: &[MonomialElement],
        center_gens: &[MonomialElement],
        cap: usize,
    ) -> Result<Group> {
        for g in gens.iter().chain(center_gens.iter()) {
            if g.p != p {
                return Err(Error::ContextMismatch);
            }
        }
        // enumerate the central subgroup exactly in the ambient model
        let mut center_elems = vec![MonomialElement::identity(p)];
        {
            let mut seen: HashMap<u128, ()> = HashMap::new();
            seen.insert(pack(&center_elems[0]), ());
            let mut queue = vec![center_elems[0]];
            while let Some(x) = queue.pop() {
                for z in center_gens {
                    let y = x.mul(z);
                    if seen.insert(pack(&y), ()).is_none() {
                        center_elems.push(y);
                        queue.push(y);
                    }
                }
            }
            center_elems.sort_by_key(pack);
        }
        // soundness of coset arithmetic: generators must normalize the
        // quotiented subgroup
        {
            let keys: std::collections::HashSet<u128> = center_elems.iter().map(pack).collect();
            for (gi, g) in gens.iter().enumerate() {
                for z in &center_elems {
                    let conj = g.mul(z).mul(&g.inv());
                    if !keys.contains(&pack(&conj)) {
                        return Err(Error::NonCentral { witness_gen: gi });
                    }
                }
            }
        }
        // closure under multiplication by generators, in canonical form
        let canon = |e: &MonomialElement| -> MonomialElement {
            let mut best = *e;
            let mut best_key = pack(e);
            for z in &center_elems[1..] {
                let cand = e.mul(z);
                let k = pack(&cand);
                if k < best_key {
                    best_key = k;
                    best = cand;
                }
            }
            best
        };
        let gens: Vec<MonomialElement> = gens
            .iter()
            .copied()
            .filter(|g| !canon(g).is_identity())
            .collect();
        let id = MonomialElement::identity(p);
        let mut discovered: HashMap<u128, Vec<u16>> = HashMap::new();
        discovered.insert(pack(&canon(&id)), Vec::new());
        let mut order = vec![canon(&id)];
        let mut head = 0;
        while head < order.len() {
            let x = order[head];
            let wx = discovered[&pack(&x)].clone();
            head += 1;
            for (gi, g) in gens.iter().enumerate() {
                let y = canon(&x.mul(g));
                let key = pack(&y);
                if !discovered.contains_key(&key) {
                    if order.len() >= cap {
                        return Err(Error::CapExceeded { cap });
                    }
                    let mut w = wx.clone();
                    w.push(gi as u16);
                    discovered.insert(key, w);
                    order.push(y);
                }
            }
        }
        let mut elems = order;
        elems.sort_by_key(pack);
        let index: HashMap<u128, u32> = elems
            .iter()
            .enumerate()
            .map(|(i, e)| (pack(e), i as u32))
            .collect();
        let words: Vec<Vec<u16>> = elems.iter().map(|e| discovered[&pack(e)].clone()).collect();

        let n = elems.len();
        let mut group = FiniteGroup {
            p,
            gens,
            center_quot_gens: center_gens.to_vec(),
            center_quot_elems: center_elems,
            elems,
            index,
            words,
            invs: Vec::new(),
            table: None,
        };
        group.invs = (0..n as u32)
            .map(|i| {
                let inv = group.canon(&group.elems[i as usize].inv());
                group.index[&pack(&inv)]
            })
            .collect();
        if n <= TABLE_CAP {
            let mut table = vec![0u32; n * n];
            for i in 0..n {
                for j in 0..n {
                    let prod = group.canon(&group.elems[i].mul(&group.elems[j]));
                    table[i * n + j] = group.index[&pack(&prod)];
                }
            }
            group.table = Some(table);
        }
        Ok(Arc::new(group))
    }

    pub fn generate(p: u8, gens: &[MonomialElement], cap: usize) -> Result<Group> {
        Self::generate_mod_center(p, gens, &[], cap)
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn canon(&self, e: &MonomialElement) -> MonomialElement {
        let mut best = *e;
        let mut best_key = pack(e);
        for z in &self.center_quot_elems[1..] {
            let cand = e.mul(z);
            let k = pack(&cand);
            if k < best_key {
                best_key = k;
                best = cand;
            }
        }
        best
    }

    pub fn id_of(&self, e: &MonomialElement) -> Result<u32> {
        self.index
            .get(&pack(&self.canon(e)))
            .copied()
            .ok_or(Error::NotInGroup)
    }

    pub fn contains(&self, e: &MonomialElement) -> bool {
        self.index.contains_key(&pack(&self.canon(e)))
    }

    pub fn element(&self, id: u32) -> MonomialElement {
        self.elems[id as usize]
    }

    pub fn elements(&self) -> &[MonomialElement] {
        &self.elems
    }

    pub fn identity_id(&self) -> u32 {
        self.index[&pack(&self.canon(&MonomialElement::identity(self.p)))]
    }

    pub fn gens(&self) -> &[MonomialElement] {
        &self.gens
    }

    pub fn gen_ids(&self) -> Vec<u32> {
        self.gens.iter().map(|g| self.id_of(g).unwrap()).collect()
    }

    pub fn center_quot_gens(&self) -> &[MonomialElement] {
        &self.center_quot_gens
    }

    pub fn center_quot_elems(&self) -> &[MonomialElement] {
        &self.center_quot_elems
    }

    #[inline]
    pub fn mul_ids(&self, a: u32, b: u32) -> u32 {
        match &self.table {
            Some(t) => t[a as usize * self.elems.len() + b as usize],
            None => {
                let prod = self.canon(&self.elems[a as usize].mul(&self.elems[b as usize]));
                self.index[&pack(&prod)]
            }
        }
    }

    #[inline]
    pub fn inv_id(&self, a: u32) -> u32 {
        self.invs[a as usize]
    }

    pub fn has_table(&self) -> bool {
        self.table.is_some()
    }

    /// Word over stored generators evaluating to the element.
    pub fn word_of(&self, id: u32) -> &[u16] {
        &self.words[id as usize]
    }

    pub fn order_of(&self, id: u32) -> usize {
        let e = self.identity_id();
        let mut x = id;
        let mut n = 1usize;
        while x != e {
            x = self.mul_ids(x, id);
            n += 1;
        }
        n
    }

    pub fn center_ids(&self) -> Vec<u32> {
        let gen_ids = self.gen_ids();
        (0..self.elems.len() as u32)
            .filter(|&x| {
                gen_ids
                    .iter()
                    .all(|&g| self.mul_ids(x, g) == self.mul_ids(g, x))
            })
            .collect()
    }

    /// Element ids of the subgroup generated by the given ids.
    pub fn subgroup_ids(&self, gen_ids: &[u32]) -> Vec<u32> {
        let e = self.identity_id();
        let mut seen = vec![false; self.elems.len()];
        seen[e as usize] = true;
        let mut out = vec![e];
        let mut head = 0;
        while head < out.len() {
            let x = out[head];
            head += 1;
            for &g in gen_ids {
                let y = self.mul_ids(x, g);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    out.push(y);
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn commutator_subgroup_ids(&self) -> Vec<u32> {
        let n = self.elems.len() as u32;
        let mut comms: Vec<u32> = Vec::new();
        let mut seen = vec![false; n as usize];
        for a in 0..n {
            for b in 0..n {
                let c = self.mul_ids(
                    self.mul_ids(a, b),
                    self.mul_ids(self.inv_id(a), self.inv_id(b)),
                );
                if !seen[c as usize] {
                    seen[c as usize] = true;
                    comms.push(c);
                }
            }
        }
        self.subgroup_ids(&comms)
    }

    pub fn invariants(&self) -> GroupInvariants {
        let order = self.order();
        let exponent = (0..order as u32)
            .map(|i| self.order_of(i))
            .fold(1usize, num_lcm);
        let center_order = self.center_ids().len();
        let comm = self.commutator_subgroup_ids();
        let abelianization = self.abelianization_from_commutator(&comm);
        GroupInvariants {
            order,
            exponent,
            center_order,
            commutator_order: comm.len(),
            abelianization,
        }
    }

    /// Cyclic orders (descending) of G/[G,G], via greedy maximal-order
    /// generator extraction on the abstract coset table.
    fn abelianization_from_commutator(&self, comm: &[u32]) -> Vec<usize> {
        let n = self.elems.len();
        // label cosets xK by the minimal member id
        let in_comm: Vec<bool> = {
            let mut v = vec![false; n];
            for &c in comm {
                v[c as usize] = true;
            }
            v
        };
        let _ = &in_comm;
        let mut coset_label = vec![u32::MAX; n];
        let mut reps: Vec<u32> = Vec::new();
        for x in 0..n as u32 {
            if coset_label[x as usize] == u32::MAX {
                let rep = reps.len() as u32;
                for &k in comm {
                    let y = self.mul_ids(x, k);
                    coset_label[y as usize] = rep;
                }
                debug_assert_eq!(coset_label[x as usize], rep);
                reps.push(x);
            }
        }
        let m = reps.len();
        let mut table = vec![0u32; m * m];
        for i in 0..m {
            for j in 0..m {
                table[i * m + j] = coset_label[self.mul_ids(reps[i], reps[j]) as usize];
            }
        }
        abelian_invariant_factors(m, &table, coset_label[self.identity_id() as usize])
    }

    pub fn conjugacy_classes(&self) -> Vec<ConjClass> {
        let n = self.elems.len() as u32;
        let gen_ids = self.gen_ids();
        let mut seen = vec![false; n as usize];
        let mut classes = Vec::new();
        for x in 0..n {
            if seen[x as usize] {
                continue;
            }
            let mut members = vec![x];
            seen[x as usize] = true;
            let mut head = 0;
            while head < members.len() {
                let y = members[head];
                head += 1;
                for &g in &gen_ids {
                    let c = self.mul_ids(self.mul_ids(g, y), self.inv_id(g));
                    if !seen[c as usize] {
                        seen[c as usize] = true;
                        members.push(c);
                    }
                }
            }
            members.sort_unstable();
            classes.push(ConjClass {
                representative: members[0] as usize,
                size: members.len(),
                members,
            });
        }
        classes
    }

    /// Quotient by the cyclic central subgroup generated by (the class of) z.
    /// Returns the quotient together with the verified projection.
    pub fn central_quotient(
        self: &Group,
        z: &MonomialElement,
    ) -> Result<(Group, crate::hom::Homomorphism)> {
        let zc = self.canon(z);
        if !self.contains(&zc) {
            return Err(Error::NotInGroup);
        }
        for (gi, g) in self.gens.iter().enumerate() {
            let a = self.canon(&zc.mul(g));
            let b = self.canon(&g.mul(&zc));
            if a != b {
                return Err(Error::NonCentral { witness_gen: gi });
            }
        }
        let mut center_gens = self.center_quot_gens.clone();
        center_gens.push(zc);
        let quotient =
            FiniteGroup::generate_mod_center(self.p, &self.gens, &center_gens, DEFAULT_CAP)?;
        let images: Vec<MonomialElement> = self.gens.iter().map(|g| quotient.canon(g)).collect();
        let proj = crate::hom::Homomorphism::new(self.clone(), quotient.clone(), images)?;
        Ok((quotient, proj))
    }

    pub fn to_json(&self) -> GroupJson {
        GroupJson {
            p: self.p,
            generators: self.gens.iter().map(|g| g.to_json()).collect(),
            quotient_center: match self.center_quot_gens.len() {
                0 => None,
                1 => Some(CenterJson::One(self.center_quot_gens[0].to_json())),
                _ => Some(CenterJson::Many(
                    self.center_quot_gens.iter().map(|g| g.to_json()).collect(),
                )),
            },
        }
    }

    pub fn from_json(j: &GroupJson, cap: usize) -> Result<Group> {
        let gens: Result<Vec<_>> = j
            .generators
            .iter()
            .map(|e| MonomialElement::from_json(j.p, e))
            .collect();
        let center: Vec<MonomialElement> = match &j.quotient_center {
            None => Vec::new(),
            Some(CenterJson::One(e)) => vec![MonomialElement::from_json(j.p, e)?],
            Some(CenterJson::Many(v)) => v
                .iter()
                .map(|e| MonomialElement::from_json(j.p, e))
                .collect::<Result<Vec<_>>>()?,
        };
        FiniteGroup::generate_mod_center(j.p, &gens?, &center, cap)
    }
}

/// JSON schema: { p, generators, quotient_center } with deterministic field
/// order. `quotient_center` is a single element when the quotiented central
/// subgroup is cyclic, a list otherwise.
#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct GroupJson {
    pub p: u8,
    pub generators: Vec<ElementJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quotient_center: Option<CenterJson>,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
#[serde(untagged)]
pub enum CenterJson {
    One(ElementJson),
    Many(Vec<ElementJson>),
}

fn num_gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        num_gcd(b, a % b)
    }
}

fn num_lcm(a: usize, b: usize) -> usize {
    a / num_gcd(a, b) * b
}

/// Invariant factors of a finite abelian group given by a multiplication
/// table, by greedy extraction of a maximal-order element.
fn abelian_invariant_factors(n: usize, table: &[u32], identity: u32) -> Vec<usize> {
    if n == 1 {
        return Vec::new();
    }
    let order_of = |x: u32| -> usize {
        let mut y = x;
        let mut k = 1;
        while y != identity {
            y = table[y as usize * n + x as usize];
            k += 1;
        }
        k
    };
    let (x, ord) = (0..n as u32)
        .map(|x| (x, order_of(x)))
        .max_by_key(|&(x, o)| (o, std::cmp::Reverse(x)))
        .unwrap();
    // quotient by <x>
    let mut sub = vec![identity];
    let mut y = x;
    while y != identity {
        sub.push(y);
        y = table[y as usize * n + x as usize];
    }
    let mut label = vec![u32::MAX; n];
    let mut reps = Vec::new();
    for e in 0..n as u32 {
        if label[e as usize] == u32::MAX {
            let r = reps.len() as u32;
            for &s in &sub {
                label[table[e as usize * n + s as usize] as usize] = r;
            }
            reps.push(e);
        }
    }
    let m = reps.len();
    let mut qtable = vec![0u32; m * m];
    for i in 0..m {
        for j in 0..m {
            qtable[i * m + j] = label[table[reps[i] as usize * n + reps[j] as usize] as usize];
        }
    }
    let mut rest = abelian_invariant_factors(m, &qtable, label[identity as usize]);
    let mut out = vec![ord];
    out.append(&mut rest);
    out
}
