//! Subgroups as sorted element-index sets inside a parent table.

use std::sync::Arc;

use crate::arith;
use crate::bitset::Bitset;
use crate::error::{Error, Result};
use crate::group::{Elem, Group};

/// A subgroup of a parent [`Group`], stored as a strictly sorted element
/// list plus a membership bitset.
#[derive(Clone)]
pub struct Subgroup {
    parent: Group,
    elems: Vec<Elem>,
    mask: Bitset,
}

impl std::fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Subgroup(|{}| of {})", self.elems.len(), self.parent.name())
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.parent, &other.parent) && self.elems == other.elems
    }
}
impl Eq for Subgroup {}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Subgroups of a common parent order by (size, element list); this is the
/// deterministic tie-breaking order used everywhere.
impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.elems.len(), &self.elems).cmp(&(other.elems.len(), &other.elems))
    }
}

impl std::hash::Hash for Subgroup {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        Arc::as_ptr(&self.parent).hash(state);
        self.elems.hash(state);
    }
}

impl Subgroup {
    pub fn trivial(parent: &Group) -> Subgroup {
        Subgroup {
            parent: parent.clone(),
            elems: vec![0],
            mask: Bitset::from_elems(parent.order(), [0]),
        }
    }

    pub fn whole(parent: &Group) -> Subgroup {
        let elems: Vec<Elem> = parent.elems().collect();
        let mask = Bitset::from_elems(parent.order(), elems.iter().map(|&e| e as usize));
        Subgroup { parent: parent.clone(), elems, mask }
    }

    /// Validating constructor: the set must contain the identity and be
    /// closed under product and inverse.
    pub fn from_elems(parent: &Group, mut elems: Vec<Elem>) -> Result<Subgroup> {
        elems.sort_unstable();
        elems.dedup();
        if elems.first() != Some(&0) {
            return Err(Error::invalid("subgroup must contain the identity"));
        }
        let mask = Bitset::from_elems(parent.order(), elems.iter().map(|&e| e as usize));
        for &a in &elems {
            if (a as usize) >= parent.order() {
                return Err(Error::invalid("element index out of range"));
            }
            if !mask.contains(parent.inv(a) as usize) {
                return Err(Error::invalid("set is not closed under inverse"));
            }
            for &b in &elems {
                if !mask.contains(parent.mul(a, b) as usize) {
                    return Err(Error::invalid("set is not closed under product"));
                }
            }
        }
        debug_assert_eq!(parent.order() % elems.len(), 0, "Lagrange");
        Ok(Subgroup { parent: parent.clone(), elems, mask })
    }

    pub(crate) fn from_sorted_unchecked(parent: Group, elems: Vec<Elem>, mask: Bitset) -> Subgroup {
        debug_assert!(elems.windows(2).all(|w| w[0] < w[1]));
        debug_assert_eq!(parent.order() % elems.len(), 0, "Lagrange");
        Subgroup { parent, elems, mask }
    }

    pub fn parent(&self) -> &Group {
        &self.parent
    }

    pub fn elems(&self) -> &[Elem] {
        &self.elems
    }

    pub fn mask(&self) -> &Bitset {
        &self.mask
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.elems.len() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.elems.len() == self.parent.order()
    }

    #[inline]
    pub fn contains(&self, e: Elem) -> bool {
        self.mask.contains(e as usize)
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.mask.is_subset_of(&other.mask)
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        let mask = self.mask.intersection(&other.mask);
        let elems = mask.iter().map(|e| e as Elem).collect();
        Subgroup { parent: self.parent.clone(), elems, mask }
    }

    pub fn conjugate(&self, g: Elem) -> Subgroup {
        let mut elems: Vec<Elem> = self.elems.iter().map(|&a| self.parent.conj(a, g)).collect();
        elems.sort_unstable();
        let mask = Bitset::from_elems(self.parent.order(), elems.iter().map(|&e| e as usize));
        Subgroup { parent: self.parent.clone(), elems, mask }
    }

    /// Is `self` normalized by every element of `other`?
    pub fn is_normalized_by(&self, other: &Subgroup) -> bool {
        other.elems.iter().all(|&g| {
            self.elems.iter().all(|&a| self.contains(self.parent.conj(a, g)))
        })
    }

    pub fn is_normal_in(&self, over: &Subgroup) -> bool {
        self.is_subset_of(over) && self.is_normalized_by(over)
    }

    pub fn is_abelian(&self) -> bool {
        self.elems.iter().all(|&a| {
            self.elems.iter().all(|&b| self.parent.mul(a, b) == self.parent.mul(b, a))
        })
    }

    /// Is this subgroup elementary abelian (abelian with exponent a prime,
    /// or trivial)?
    pub fn is_elementary_abelian(&self) -> bool {
        if self.is_trivial() {
            return true;
        }
        let Some(p) = arith::prime_power_base(self.elems.len() as u64) else {
            return false;
        };
        self.is_abelian()
            && self.elems.iter().all(|&a| a == 0 || self.parent.order_of(a) as u64 == p)
    }

    pub fn exponent(&self) -> u64 {
        self.elems
            .iter()
            .fold(1u64, |acc, &a| arith::lcm(acc, self.parent.order_of(a) as u64))
    }

    /// The unique prime dividing the order, for subgroups of prime-power
    /// order > 1.
    pub fn p_group_prime(&self) -> Result<u64> {
        arith::prime_power_base(self.elems.len() as u64)
            .ok_or(Error::NotPGroup { order: self.elems.len() })
    }

    /// Nilpotency class at most `k`? Computed via the lower central series.
    pub fn class_at_most(&self, k: u32) -> bool {
        let mut layer = self.clone();
        for _ in 0..k {
            if layer.is_trivial() {
                return true;
            }
            layer = commutator_subgroup(&self.parent, &layer, self);
        }
        layer.is_trivial()
    }

    /// Extracts the subgroup as a standalone table. Returns the table and
    /// the position-to-parent-element map.
    pub fn as_table(&self) -> Result<(Group, Vec<Elem>)> {
        let k = self.elems.len();
        let pos: std::collections::HashMap<Elem, Elem> = self
            .elems
            .iter()
            .enumerate()
            .map(|(i, &e)| (e, i as Elem))
            .collect();
        let mut mul = Vec::with_capacity(k * k);
        for &a in &self.elems {
            for &b in &self.elems {
                mul.push(pos[&self.parent.mul(a, b)]);
            }
        }
        let name = format!("{}[{}]", self.parent.name(), k);
        let table = crate::group::GroupTable::from_flat(name, k, mul, None, false)?;
        Ok((table, self.elems.clone()))
    }
}

/// Closure of a seed set: the smallest subgroup containing it. The empty
/// seed yields the trivial subgroup.
pub fn closure(parent: &Group, seed: &[Elem]) -> Subgroup {
    let elems = closure_elems_bounded(parent, seed.iter().copied(), usize::MAX)
        .expect("unbounded closure");
    let mask = Bitset::from_elems(parent.order(), elems.iter().map(|&e| e as usize));
    Subgroup::from_sorted_unchecked(parent.clone(), elems, mask)
}

/// Worklist product saturation. If `stop_beyond` is set and the partial
/// closure exceeds it, returns None (used by lattice enumeration to bail
/// out once the result is forced to be the whole scope).
pub(crate) fn closure_elems_bounded(
    parent: &Group,
    seed: impl IntoIterator<Item = Elem>,
    stop_beyond: usize,
) -> Option<Vec<Elem>> {
    let mut mask = Bitset::new(parent.order());
    mask.insert(0);
    let mut list: Vec<Elem> = vec![0];
    for s in seed {
        if mask.insert(s as usize) {
            list.push(s);
        }
    }
    let mut k = 0;
    while k < list.len() {
        let x = list[k];
        for j in 0..=k {
            let y = list[j];
            for z in [parent.mul(x, y), parent.mul(y, x)] {
                if mask.insert(z as usize) {
                    list.push(z);
                    if list.len() > stop_beyond {
                        return None;
                    }
                }
            }
        }
        k += 1;
    }
    list.sort_unstable();
    Some(list)
}

/// Centralizer of an element set within `scope`.
pub fn centralizer(scope: &Subgroup, targets: &[Elem]) -> Subgroup {
    let g = scope.parent();
    let elems: Vec<Elem> = scope
        .elems()
        .iter()
        .copied()
        .filter(|&c| targets.iter().all(|&t| g.mul(c, t) == g.mul(t, c)))
        .collect();
    let mask = Bitset::from_elems(g.order(), elems.iter().map(|&e| e as usize));
    Subgroup::from_sorted_unchecked(g.clone(), elems, mask)
}

/// Normalizer of `s` within `scope`; always contains `s` when `s <= scope`.
pub fn normalizer(scope: &Subgroup, s: &Subgroup) -> Subgroup {
    let g = scope.parent();
    let elems: Vec<Elem> = scope
        .elems()
        .iter()
        .copied()
        .filter(|&n| s.elems().iter().all(|&a| s.contains(g.conj(a, n))))
        .collect();
    let mask = Bitset::from_elems(g.order(), elems.iter().map(|&e| e as usize));
    Subgroup::from_sorted_unchecked(g.clone(), elems, mask)
}

/// Center of `scope` as a subgroup.
pub fn center(scope: &Subgroup) -> Subgroup {
    centralizer(scope, &scope.elems().to_vec())
}

/// `[X, Y] = <[x,y] : x in X, y in Y>`.
pub fn commutator_subgroup(parent: &Group, x: &Subgroup, y: &Subgroup) -> Subgroup {
    let mut seed: Vec<Elem> = Vec::new();
    for &a in x.elems() {
        for &b in y.elems() {
            let c = parent.comm(a, b);
            if c != 0 {
                seed.push(c);
            }
        }
    }
    seed.sort_unstable();
    seed.dedup();
    closure(parent, &seed)
}

/// Derived subgroup `[H, H]`.
pub fn derived_subgroup(h: &Subgroup) -> Subgroup {
    commutator_subgroup(h.parent(), h, h)
}

/// Smallest normal subgroup of `scope` containing `seed`.
pub fn normal_closure(scope: &Subgroup, seed: &[Elem]) -> Subgroup {
    let g = scope.parent();
    let mut all: Vec<Elem> = Vec::new();
    for &s in seed {
        for &x in scope.elems() {
            all.push(g.conj(s, x));
        }
    }
    all.sort_unstable();
    all.dedup();
    closure(g, &all)
}

/// Least element `x` of `scope` with `V^x <= P`.
///
/// Requires `V` a p-subgroup of `scope` and `P` a Sylow p-subgroup of
/// `scope`; existence is then guaranteed, and a failed scan is a kernel
/// defect.
pub fn conjugate_into(scope: &Subgroup, v: &Subgroup, p_sylow: &Subgroup, p: u64) -> Result<Elem> {
    let g = scope.parent();
    if !arith::is_p_power(v.order() as u64, p) || !v.is_subset_of(scope) {
        return Err(Error::NotPSubgroup);
    }
    if p_sylow.order() as u64 != arith::p_part(scope.order() as u64, p) {
        return Err(Error::SylowMismatch);
    }
    for &x in scope.elems() {
        if v.elems().iter().all(|&a| p_sylow.contains(g.conj(a, x))) {
            return Ok(x);
        }
    }
    unreachable!("Sylow's theorem guarantees a conjugator; kernel defect")
}

/// Does `A * B = scope` as a set product?
pub fn set_product_covers(scope: &Subgroup, a: &Subgroup, b: &Subgroup) -> bool {
    let g = scope.parent();
    let mut seen = Bitset::new(g.order());
    let mut count = 0usize;
    for &x in a.elems() {
        for &y in b.elems() {
            if seen.insert(g.mul(x, y) as usize) {
                count += 1;
            }
        }
    }
    count == scope.order() && scope.elems().iter().all(|&e| seen.contains(e as usize))
}

/// The set product `A * B` as an element list (not necessarily a subgroup).
pub fn set_product(a: &Subgroup, b: &Subgroup) -> Vec<Elem> {
    let g = a.parent();
    let mut seen = Bitset::new(g.order());
    let mut out = Vec::new();
    for &x in a.elems() {
        for &y in b.elems() {
            let z = g.mul(x, y);
            if seen.insert(z as usize) {
                out.push(z);
            }
        }
    }
    out.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::build::{build, Construction};

    #[test]
    fn closure_empty_seed_is_trivial() {
        let g = build(&Construction::Symmetric { n: 3 }).unwrap();
        let c = closure(&g, &[]);
        assert_eq!(c.elems(), &[0]);
    }

    #[test]
    fn closure_of_three_cycle_in_sym3() {
        let g = build(&Construction::Symmetric { n: 3 }).unwrap();
        let t = g.elems().find(|&e| g.order_of(e) == 3).unwrap();
        let c = closure(&g, &[t]);
        assert_eq!(c.order(), 3);
    }

    #[test]
    fn closure_of_heisenberg_generators_is_everything() {
        let g = build(&Construction::Heisenberg { p: 3 }).unwrap();
        // (a,b,c) indexed as 9a + 3b + c; x = (1,0,0), y = (0,1,0)
        let c = closure(&g, &[9, 3]);
        assert_eq!(c.order(), 27);
    }

    #[test]
    fn centralizer_of_identity_is_whole() {
        let g = build(&Construction::Symmetric { n: 3 }).unwrap();
        let whole = Subgroup::whole(&g);
        assert_eq!(centralizer(&whole, &[0]).order(), 6);
    }

    #[test]
    fn heisenberg_center_has_order_three() {
        let g = build(&Construction::Heisenberg { p: 3 }).unwrap();
        let whole = Subgroup::whole(&g);
        assert_eq!(center(&whole).order(), 3);
    }

    #[test]
    fn sym3_sylow3_is_self_centralizing() {
        let g = build(&Construction::Symmetric { n: 3 }).unwrap();
        let whole = Subgroup::whole(&g);
        let syl = crate::sylow::sylow(&whole, 3);
        let c = centralizer(&whole, &syl.elems().to_vec());
        assert_eq!(c, syl);
    }

    #[test]
    fn normalizer_examples() {
        let g = build(&Construction::Alternating { n: 4 }).unwrap();
        let whole = Subgroup::whole(&g);
        assert_eq!(normalizer(&whole, &whole), whole);
        let syl3 = crate::sylow::sylow(&whole, 3);
        assert_eq!(normalizer(&whole, &syl3), syl3);
    }

    #[test]
    fn wreath_top_normalizer_has_order_nine() {
        let g = build(&Construction::WreathCpCp { p: 3 }).unwrap();
        let whole = Subgroup::whole(&g);
        // element (0, t) has index 1 under the (n, h) -> n*|H| + h indexing
        let top = closure(&g, &[1]);
        assert_eq!(top.order(), 3);
        assert_eq!(normalizer(&whole, &top).order(), 9);
    }

    #[test]
    fn commutator_subgroup_examples() {
        let heis = build(&Construction::Heisenberg { p: 3 }).unwrap();
        let whole = Subgroup::whole(&heis);
        let trivial = Subgroup::trivial(&heis);
        assert_eq!(commutator_subgroup(&heis, &whole, &trivial).order(), 1);
        let derived = commutator_subgroup(&heis, &whole, &whole);
        assert_eq!(derived, center(&whole));
        assert_eq!(derived.order(), 3);

        let s3 = build(&Construction::Symmetric { n: 3 }).unwrap();
        let w3 = Subgroup::whole(&s3);
        assert_eq!(commutator_subgroup(&s3, &w3, &w3).order(), 3);
    }

    #[test]
    fn conjugate_into_rules() {
        let g = build(&Construction::Alternating { n: 4 }).unwrap();
        let whole = Subgroup::whole(&g);
        let p = crate::sylow::sylow(&whole, 3);
        // V inside P: least conjugator is the identity
        assert_eq!(conjugate_into(&whole, &p, &p, 3).unwrap(), 0);
        let triv = Subgroup::trivial(&g);
        assert_eq!(conjugate_into(&whole, &triv, &p, 3).unwrap(), 0);
        // another Sylow 3-subgroup conjugates onto the chosen one
        let other = g
            .elems()
            .filter(|&e| g.order_of(e) == 3 && !p.contains(e))
            .map(|e| closure(&g, &[e]))
            .next()
            .unwrap();
        let x = conjugate_into(&whole, &other, &p, 3).unwrap();
        assert_eq!(other.conjugate(x), p);
    }

    #[test]
    fn subgroup_validation_rejects_junk() {
        let g = build(&Construction::Cyclic { n: 4 }).unwrap();
        assert!(Subgroup::from_elems(&g, vec![0, 1]).is_err());
        assert!(Subgroup::from_elems(&g, vec![1, 2]).is_err());
        assert!(Subgroup::from_elems(&g, vec![0, 2]).is_ok());
    }
}
