//! Complete subgroup lattices by cyclic extension.
//!
//! Layer k+1 is built from layer k by adjoining single elements and
//! closing. Extensions are restricted to prime-step elements (`x^q` in the
//! base subgroup for a prime `q`), which loses nothing: any subgroup is
//! reached through a chain of prime-step extensions. When the scope is
//! solvable the extending element may further be required to normalize the
//! base (every solvable subgroup has a composition series with prime
//! cyclic quotients), which turns each extension into a cheap coset
//! product. Non-solvable scopes fall back to full closures.

use std::collections::{BTreeSet, VecDeque};
use std::sync::Arc;

use crate::arith;
use crate::bitset::Bitset;
use crate::error::Result;
use crate::group::{Elem, Group};
use crate::subgroup::{self, Subgroup};

/// All subgroups of the whole group, sorted by (order, element list).
pub fn all_subgroups(g: &Group) -> Result<Vec<Subgroup>> {
    subgroups_of(&Subgroup::whole(g))
}

/// All subgroups of `scope` (as subgroups of the parent), sorted by
/// (order, element list). Results are cached on the parent table.
pub fn subgroups_of(scope: &Subgroup) -> Result<Vec<Subgroup>> {
    crate::config::check_order(scope.order())?;
    let lists = subgroup_lists(scope);
    let g = scope.parent();
    Ok(lists
        .iter()
        .map(|elems| {
            let mask = Bitset::from_elems(g.order(), elems.iter().map(|&e| e as usize));
            Subgroup::from_sorted_unchecked(g.clone(), elems.clone(), mask)
        })
        .collect())
}

fn subgroup_lists(scope: &Subgroup) -> Arc<Vec<Vec<Elem>>> {
    let g = scope.parent();
    let cache = g.lattice_cache();
    if let Some(hit) = cache.lock().unwrap().get(scope.elems()) {
        return hit.clone();
    }
    let computed = Arc::new(enumerate(scope));
    cache
        .lock()
        .unwrap()
        .entry(scope.elems().to_vec())
        .or_insert(computed)
        .clone()
}

fn enumerate(scope: &Subgroup) -> Vec<Vec<Elem>> {
    let g = scope.parent();
    let solvable = is_solvable(scope);
    let mut found: BTreeSet<Vec<Elem>> = BTreeSet::new();
    let mut queue: VecDeque<Vec<Elem>> = VecDeque::new();
    found.insert(vec![0]);
    queue.push_back(vec![0]);

    while let Some(h_elems) = queue.pop_front() {
        let h_mask = Bitset::from_elems(g.order(), h_elems.iter().map(|&e| e as usize));
        let h = Subgroup::from_sorted_unchecked(g.clone(), h_elems.clone(), h_mask);
        let candidates: Vec<Elem> = if solvable {
            subgroup::normalizer(scope, &h).elems().to_vec()
        } else {
            scope.elems().to_vec()
        };
        for x in candidates {
            if h.contains(x) || !is_prime_step(g, &h, x) {
                continue;
            }
            let k = if normalizes(g, &h, x) {
                coset_extension(g, &h, x)
            } else {
                match subgroup::closure_elems_bounded(
                    g,
                    h.elems().iter().copied().chain([x]),
                    scope.order() / 2,
                ) {
                    Some(elems) => elems,
                    None => scope.elems().to_vec(),
                }
            };
            if !found.contains(&k) {
                found.insert(k.clone());
                queue.push_back(k);
            }
        }
    }
    let mut out: Vec<Vec<Elem>> = found.into_iter().collect();
    out.sort_unstable_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    out
}

/// Does some prime power of `x` land in `h` one step before `x` does?
/// Precisely: is there a prime `q` with `x^q` in `h`?
fn is_prime_step(g: &Group, h: &Subgroup, x: Elem) -> bool {
    let ord = g.order_of(x) as u64;
    arith::prime_factors(ord)
        .iter()
        .any(|&(q, _)| h.contains(g.pow(x, q)))
}

fn normalizes(g: &Group, h: &Subgroup, x: Elem) -> bool {
    h.elems().iter().all(|&a| h.contains(g.conj(a, x)))
}

/// `<H, x>` for `x` normalizing `H`: the union of cosets `H x^i`.
fn coset_extension(g: &Group, h: &Subgroup, x: Elem) -> Vec<Elem> {
    let mut mask = Bitset::new(g.order());
    let mut out: Vec<Elem> = Vec::new();
    let mut power = 0 as Elem;
    loop {
        for &a in h.elems() {
            let e = g.mul(a, power);
            if mask.insert(e as usize) {
                out.push(e);
            }
        }
        power = g.mul(power, x);
        if mask.contains(power as usize) {
            break;
        }
    }
    out.sort_unstable();
    out
}

/// Solvability via the derived series.
pub fn is_solvable(scope: &Subgroup) -> bool {
    let mut layer = scope.clone();
    loop {
        let next = subgroup::derived_subgroup(&layer);
        if next.is_trivial() {
            return true;
        }
        if next.order() == layer.order() {
            return false;
        }
        layer = next;
    }
}

/// Maximal proper subgroups of `scope`.
pub fn maximal_subgroups(scope: &Subgroup) -> Result<Vec<Subgroup>> {
    let subs = subgroups_of(scope)?;
    let proper: Vec<&Subgroup> = subs.iter().filter(|s| s.order() < scope.order()).collect();
    Ok(proper
        .iter()
        .filter(|s| {
            !proper
                .iter()
                .any(|t| t.order() > s.order() && s.is_subset_of(t))
        })
        .map(|s| (*s).clone())
        .collect())
}

/// Subgroups of `scope` normal in `scope`.
pub fn normal_subgroups_of(scope: &Subgroup) -> Result<Vec<Subgroup>> {
    Ok(subgroups_of(scope)?
        .into_iter()
        .filter(|s| s.is_normalized_by(scope))
        .collect())
}

/// Partitions `subs` into orbits under conjugation by `conjugators`,
/// preserving determinism: orbits are listed by their least member, each
/// orbit sorted. Returns indices into `subs`. Conjugates that fall outside
/// the list (possible when `subs` is a sublattice) are ignored.
pub fn conjugation_orbits(subs: &[Subgroup], conjugators: &Subgroup) -> Vec<Vec<usize>> {
    use std::collections::HashMap;
    let index: HashMap<&[Elem], usize> =
        subs.iter().enumerate().map(|(i, s)| (s.elems(), i)).collect();
    let mut seen = vec![false; subs.len()];
    let mut orbits = Vec::new();
    for start in 0..subs.len() {
        if seen[start] {
            continue;
        }
        let mut orbit = BTreeSet::new();
        orbit.insert(start);
        for &x in conjugators.elems() {
            let c = subs[start].conjugate(x);
            if let Some(&i) = index.get(c.elems()) {
                orbit.insert(i);
            }
        }
        for &i in &orbit {
            seen[i] = true;
        }
        orbits.push(orbit.into_iter().collect());
    }
    orbits
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::build::{build, Construction};

    #[test]
    fn cyclic_prime_has_two_subgroups() {
        let g = build(&Construction::Cyclic { n: 3 }).unwrap();
        assert_eq!(all_subgroups(&g).unwrap().len(), 2);
    }

    #[test]
    fn alt4_has_ten_subgroups() {
        let g = build(&Construction::Alternating { n: 4 }).unwrap();
        let subs = all_subgroups(&g).unwrap();
        assert_eq!(subs.len(), 10);
        let mut by_order = std::collections::BTreeMap::new();
        for s in &subs {
            *by_order.entry(s.order()).or_insert(0usize) += 1;
        }
        assert_eq!(by_order, [(1, 1), (2, 3), (3, 4), (4, 1), (12, 1)].into());
    }

    #[test]
    fn heisenberg_lattice_matches_structure() {
        // 1 trivial + 13 of order 3 + 4 maximal (all containing the
        // center) + the whole group
        let g = build(&Construction::Heisenberg { p: 3 }).unwrap();
        let subs = all_subgroups(&g).unwrap();
        assert_eq!(subs.len(), 19);
        assert_eq!(subs.iter().filter(|s| s.order() == 3).count(), 13);
        assert_eq!(subs.iter().filter(|s| s.order() == 9).count(), 4);
    }

    #[test]
    fn alt5_lattice_is_complete_despite_nonsolvability() {
        let g = build(&Construction::Alternating { n: 5 }).unwrap();
        let whole = Subgroup::whole(&g);
        assert!(!is_solvable(&whole));
        let subs = all_subgroups(&g).unwrap();
        // classical count: 59 subgroups of A5
        assert_eq!(subs.len(), 59);
        assert!(subs.iter().any(|s| s.order() == 60));
        assert_eq!(subs.iter().filter(|s| s.order() == 10).count(), 6);
        assert_eq!(subs.iter().filter(|s| s.order() == 12).count(), 5);
    }

    #[test]
    fn maximal_subgroups_of_heisenberg() {
        let g = build(&Construction::Heisenberg { p: 3 }).unwrap();
        let whole = Subgroup::whole(&g);
        let maxes = maximal_subgroups(&whole).unwrap();
        assert_eq!(maxes.len(), 4);
        assert!(maxes.iter().all(|m| m.order() == 9));
    }

    #[test]
    fn normal_subgroups_of_sym3() {
        let g = build(&Construction::Symmetric { n: 3 }).unwrap();
        let whole = Subgroup::whole(&g);
        let normals = normal_subgroups_of(&whole).unwrap();
        let orders: Vec<usize> = normals.iter().map(|s| s.order()).collect();
        assert_eq!(orders, vec![1, 3, 6]);
    }

    #[test]
    fn sublattice_is_filtered_lattice() {
        let g = build(&Construction::Symmetric { n: 4 }).unwrap();
        let whole = Subgroup::whole(&g);
        let syl2 = crate::sylow::sylow(&whole, 2);
        let subs = subgroups_of(&syl2).unwrap();
        // D8 has 10 subgroups
        assert_eq!(subs.len(), 10);
        assert!(subs.iter().all(|s| s.is_subset_of(&syl2)));
    }
}
