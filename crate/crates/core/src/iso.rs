//! Isomorphism testing: invariant fingerprints first, then
//! generator-image backtracking with incremental homomorphism closure.

use crate::error::Result;
use crate::group::{Elem, Group, GroupMap};
use crate::subgroup::{self, Subgroup};

/// Cheap isomorphism invariants compared before any search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fingerprint {
    pub order: usize,
    /// Sorted (element order, count) histogram.
    pub order_histogram: Vec<(u32, usize)>,
    pub center_size: usize,
    pub derived_size: usize,
    pub abelian: bool,
    /// Sorted multiset of (element order, conjugacy class size).
    pub class_profile: Vec<(u32, usize)>,
}

pub fn fingerprint(g: &Group) -> Fingerprint {
    let mut hist = std::collections::BTreeMap::new();
    for e in g.elems() {
        *hist.entry(g.order_of(e)).or_insert(0usize) += 1;
    }
    let whole = Subgroup::whole(g);
    let mut class_profile: Vec<(u32, usize)> = g
        .conjugacy_classes()
        .iter()
        .map(|c| (g.order_of(c[0]), c.len()))
        .collect();
    class_profile.sort_unstable();
    Fingerprint {
        order: g.order(),
        order_histogram: hist.into_iter().collect(),
        center_size: g.center_elems().len(),
        derived_size: subgroup::derived_subgroup(&whole).order(),
        abelian: g.is_abelian(),
        class_profile,
    }
}

/// Per-element invariants (element order, class size), indexed by element.
fn elem_invariants(g: &Group) -> Vec<(u32, usize)> {
    let mut inv = vec![(0u32, 0usize); g.order()];
    for c in g.conjugacy_classes().iter() {
        for &e in c {
            inv[e as usize] = (g.order_of(e), c.len());
        }
    }
    inv
}

/// Greedy deterministic generating sequence: repeatedly adjoin the least
/// element outside the running closure.
pub fn generating_sequence(g: &Group) -> Vec<Elem> {
    let mut gens = Vec::new();
    let mut reach = subgroup::closure(g, &[]);
    while reach.order() < g.order() {
        let next = g.elems().find(|&e| !reach.contains(e)).expect("proper closure");
        gens.push(next);
        let seed: Vec<Elem> = reach.elems().iter().copied().chain([next]).collect();
        reach = subgroup::closure(g, &seed);
    }
    gens
}

/// Tests isomorphism; on success returns a witness map.
pub fn is_isomorphic(a: &Group, b: &Group) -> Result<Option<GroupMap>> {
    crate::config::check_order(a.order())?;
    crate::config::check_order(b.order())?;
    if fingerprint(a) != fingerprint(b) {
        return Ok(None);
    }
    if a.order() == 1 {
        return Ok(Some(GroupMap { source: a.clone(), target: b.clone(), images: vec![0] }));
    }
    let gens = generating_sequence(a);
    let mut searcher = Searcher {
        a: a.clone(),
        b: b.clone(),
        inv_a: elem_invariants(a),
        inv_b: elem_invariants(b),
        gens,
        map: vec![UNSET; a.order()],
        known: Vec::new(),
        trail: Vec::new(),
    };
    searcher.map[0] = 0;
    searcher.known.push(0);
    if searcher.assign(0) {
        let images: Vec<Elem> = searcher.map.iter().map(|&v| v as Elem).collect();
        let witness = GroupMap { source: a.clone(), target: b.clone(), images };
        debug_assert!(witness.validate().is_ok() && witness.is_bijective());
        Ok(Some(witness))
    } else {
        Ok(None)
    }
}

const UNSET: i32 = -1;

struct Searcher {
    a: Group,
    b: Group,
    inv_a: Vec<(u32, usize)>,
    inv_b: Vec<(u32, usize)>,
    gens: Vec<Elem>,
    /// partial map a-element -> b-element
    map: Vec<i32>,
    /// a-elements with assigned images, in assignment order
    known: Vec<Elem>,
    /// map cells set since the last choice point
    trail: Vec<Elem>,
}

impl Searcher {
    fn assign(&mut self, gen_idx: usize) -> bool {
        if gen_idx == self.gens.len() {
            return self.is_bijective();
        }
        let gen = self.gens[gen_idx];
        let want = self.inv_a[gen as usize];
        let candidates: Vec<Elem> = self
            .b
            .elems()
            .filter(|&y| self.inv_b[y as usize] == want)
            .collect();
        for y in candidates {
            if self.map.iter().any(|&v| v == y as i32) {
                continue;
            }
            let known_mark = self.known.len();
            let trail_mark = self.trail.len();
            if self.extend(gen, y) && self.assign(gen_idx + 1) {
                return true;
            }
            // undo
            for &e in &self.trail[trail_mark..] {
                self.map[e as usize] = UNSET;
            }
            self.trail.truncate(trail_mark);
            self.known.truncate(known_mark);
        }
        false
    }

    /// Adds `gen -> y` and closes the partial map under products,
    /// checking consistency. Returns false on contradiction.
    fn extend(&mut self, gen: Elem, y: Elem) -> bool {
        if !self.set(gen, y) {
            return false;
        }
        let mut k = 0;
        while k < self.known.len() {
            let x = self.known[k];
            let fx = self.map[x as usize] as Elem;
            for j in 0..=k {
                let z = self.known[j];
                let fz = self.map[z as usize] as Elem;
                if !self.set(self.a.mul(x, z), self.b.mul(fx, fz)) {
                    return false;
                }
                if !self.set(self.a.mul(z, x), self.b.mul(fz, fx)) {
                    return false;
                }
            }
            k += 1;
        }
        true
    }

    fn set(&mut self, x: Elem, y: Elem) -> bool {
        match self.map[x as usize] {
            v if v == y as i32 => true,
            UNSET => {
                self.map[x as usize] = y as i32;
                self.known.push(x);
                self.trail.push(x);
                true
            }
            _ => false,
        }
    }

    fn is_bijective(&self) -> bool {
        let mut seen = crate::bitset::Bitset::new(self.b.order());
        self.map.iter().all(|&v| v != UNSET && seen.insert(v as usize))
    }
}
