//! Independent brute-force reference implementations.
//!
//! The test suites compare the optimized kernel paths against these. To
//! stay meaningful as cross-checks they use only raw table arithmetic
//! (`mul`, `inv`, element orders) and their own closure code — nothing
//! from `lattice`, `thompson` or `fusion`.

use std::collections::BTreeSet;

use crate::group::{Elem, Group};
use crate::subgroup::Subgroup;

/// Self-contained subset closure on raw tables.
fn close(g: &Group, seed: &[Elem]) -> Vec<Elem> {
    let mut in_set = vec![false; g.order()];
    in_set[0] = true;
    let mut list = vec![0 as Elem];
    for &s in seed {
        if !in_set[s as usize] {
            in_set[s as usize] = true;
            list.push(s);
        }
    }
    let mut k = 0;
    while k < list.len() {
        for j in 0..=k {
            for z in [g.mul(list[k], list[j]), g.mul(list[j], list[k])] {
                if !in_set[z as usize] {
                    in_set[z as usize] = true;
                    list.push(z);
                }
            }
        }
        k += 1;
    }
    list.sort_unstable();
    list
}

/// Every subgroup of `scope`, found by closing every subset of size at
/// most `ceil(log2 |scope|)` (larger subsets generate nothing new, since
/// any subgroup of order m has a generating set of size at most log2 m).
pub fn subgroups_by_subset_closure(g: &Group, scope: &[Elem]) -> Vec<Vec<Elem>> {
    let max_gens = (usize::BITS - scope.len().leading_zeros()) as usize;
    let mut found: BTreeSet<Vec<Elem>> = BTreeSet::new();
    found.insert(vec![0]);
    let nonid: Vec<Elem> = scope.iter().copied().filter(|&e| e != 0).collect();
    let mut stack: Vec<(Vec<Elem>, usize)> = vec![(Vec::new(), 0)];
    while let Some((subset, next)) = stack.pop() {
        for i in next..nonid.len() {
            let mut bigger = subset.clone();
            bigger.push(nonid[i]);
            found.insert(close(g, &bigger));
            if bigger.len() < max_gens {
                stack.push((bigger, i + 1));
            }
        }
    }
    let mut out: Vec<Vec<Elem>> = found.into_iter().collect();
    out.sort_unstable_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    out
}

/// Every abelian subgroup of `scope`: closures of singletons and
/// commuting pairs, then repeated extension by commuting outside
/// elements. Each abelian subgroup has a chain of abelian subgroups
/// below it, so the extension loop reaches everything.
pub fn abelian_subgroups_direct(g: &Group, scope: &[Elem]) -> Vec<Vec<Elem>> {
    let commute = |a: Elem, b: Elem| g.mul(a, b) == g.mul(b, a);
    let in_scope = {
        let mut mask = vec![false; g.order()];
        for &e in scope {
            mask[e as usize] = true;
        }
        mask
    };
    let mut found: BTreeSet<Vec<Elem>> = BTreeSet::new();
    let mut queue: Vec<Vec<Elem>> = Vec::new();
    let push = |set: Vec<Elem>, found: &mut BTreeSet<Vec<Elem>>, queue: &mut Vec<Vec<Elem>>| {
        if found.insert(set.clone()) {
            queue.push(set);
        }
    };
    push(vec![0], &mut found, &mut queue);
    for &a in scope {
        if a == 0 {
            continue;
        }
        push(close(g, &[a]), &mut found, &mut queue);
        for &b in scope {
            if b > a && commute(a, b) {
                let c = close(g, &[a, b]);
                if is_abelian_set(g, &c) {
                    push(c, &mut found, &mut queue);
                }
            }
        }
    }
    while let Some(set) = queue.pop() {
        for &x in scope {
            if set.binary_search(&x).is_ok() || !in_scope[x as usize] {
                continue;
            }
            if set.iter().all(|&a| commute(a, x)) {
                let mut seed = set.clone();
                seed.push(x);
                let c = close(g, &seed);
                if is_abelian_set(g, &c) {
                    push(c, &mut found, &mut queue);
                }
            }
        }
    }
    let mut out: Vec<Vec<Elem>> = found.into_iter().collect();
    out.sort_unstable_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    out
}

fn is_abelian_set(g: &Group, set: &[Elem]) -> bool {
    set.iter().all(|&a| set.iter().all(|&b| g.mul(a, b) == g.mul(b, a)))
}

/// Rank of an abelian subgroup located the slow way: the largest
/// elementary abelian subgroup found by enumerating the abelian
/// subgroups of `a` directly.
pub fn abelian_rank_by_subgroup_scan(g: &Group, a: &[Elem], p: u64) -> u32 {
    let mut best = 1usize;
    for s in abelian_subgroups_direct(g, a) {
        if s.iter().all(|&e| e == 0 || g.order_of(e) as u64 == p) {
            best = best.max(s.len());
        }
    }
    crate::arith::exact_log(best as u64, p)
}

/// The fully naive p-stability quantifier: every p-subgroup from the
/// subset-closure lattice, no conjugacy reduction.
pub fn p_stable_naive(g: &Group, p: u64) -> bool {
    let whole: Vec<Elem> = g.elems().collect();
    for sub in subgroups_by_subset_closure(g, &whole) {
        if !crate::arith::is_p_power(sub.len() as u64, p) {
            continue;
        }
        let p0 = Subgroup::from_elems(g, sub).expect("closure output is a subgroup");
        let whole_sub = Subgroup::whole(g);
        let norm = crate::subgroup::normalizer(&whole_sub, &p0);
        let cent = crate::subgroup::centralizer(&whole_sub, p0.elems());
        let sect = crate::section::quotient(&norm, &cent).expect("C normal in N");
        let core = crate::sylow::p_core(&Subgroup::whole(sect.quotient()), p);
        for &x in norm.elems() {
            if crate::replacement::iterated_commutator_check(&whole_sub, &p0, x, 2)
                && !core.contains(sect.project(x).expect("x in N"))
            {
                return false;
            }
        }
    }
    true
}

/// The fully naive fusion-control quantifier over every subgroup of P.
pub fn controls_fusion_naive(g: &Group, p_sylow: &[Elem], n: &[Elem]) -> bool {
    let subs = subgroups_by_subset_closure(g, p_sylow);
    let whole = Subgroup::whole(g);
    let nmask = {
        let mut m = vec![false; g.order()];
        for &e in n {
            m[e as usize] = true;
        }
        m
    };
    let pmask = {
        let mut m = vec![false; g.order()];
        for &e in p_sylow {
            m[e as usize] = true;
        }
        m
    };
    for u in subs {
        let cent: Vec<Elem> = whole
            .elems()
            .iter()
            .copied()
            .filter(|&c| u.iter().all(|&t| g.mul(c, t) == g.mul(t, c)))
            .collect();
        let mut cn = vec![false; g.order()];
        for &c in &cent {
            for (y, &inn) in nmask.iter().enumerate() {
                if inn {
                    cn[g.mul(c, y as Elem) as usize] = true;
                }
            }
        }
        for x in g.elems() {
            if u.iter().all(|&a| pmask[g.conj(a, x) as usize]) && !cn[x as usize] {
                return false;
            }
        }
    }
    true
}

/// Strong closure quantified over every nonempty subset of `d`, the
/// definition taken literally. Exponential: callers keep `d` small.
pub fn strongly_closed_subset_quantifier(g: &Group, p_sylow: &[Elem], d: &[Elem]) -> bool {
    assert!(d.len() <= 20, "subset quantifier is exponential");
    let pmask = {
        let mut m = vec![false; g.order()];
        for &e in p_sylow {
            m[e as usize] = true;
        }
        m
    };
    let dmask = {
        let mut m = vec![false; g.order()];
        for &e in d {
            m[e as usize] = true;
        }
        m
    };
    for bits in 1u32..(1 << d.len()) {
        let subset: Vec<Elem> = d
            .iter()
            .enumerate()
            .filter(|(i, _)| bits >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        for x in g.elems() {
            let images: Vec<Elem> = subset.iter().map(|&u| g.conj(u, x)).collect();
            if images.iter().all(|&v| pmask[v as usize])
                && !images.iter().all(|&v| dmask[v as usize])
            {
                return false;
            }
        }
    }
    true
}

/// All abelian subgroups satisfying the four replacement conclusions for
/// `(scope, A, B)` — the existence oracle for the replacement theorem.
pub fn replacement_candidates(
    scope: &Subgroup,
    a: &Subgroup,
    b: &Subgroup,
) -> Vec<Subgroup> {
    let g = scope.parent();
    let checker = crate::replacement::ConclusionChecker::new(scope, a, b);
    let mut out = Vec::new();
    for elems in abelian_subgroups_direct(g, scope.elems()) {
        let cand = Subgroup::from_elems(g, elems).expect("closure output is a subgroup");
        if checker.holds(&cand) {
            out.push(cand);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::build::{build, Construction};

    #[test]
    fn subset_closure_matches_lattice_on_small_groups() {
        for c in [
            Construction::Symmetric { n: 3 },
            Construction::Alternating { n: 4 },
            Construction::Dihedral { n: 6 },
            Construction::Quaternion { n: 2 },
            Construction::Cyclic { n: 24 },
            Construction::Symmetric { n: 4 },
        ] {
            let g = build(&c).unwrap();
            let whole: Vec<Elem> = g.elems().collect();
            let naive = subgroups_by_subset_closure(&g, &whole);
            let fast: Vec<Vec<Elem>> = crate::lattice::all_subgroups(&g)
                .unwrap()
                .into_iter()
                .map(|s| s.elems().to_vec())
                .collect();
            assert_eq!(naive, fast, "{}", g.name());
        }
    }

    #[test]
    fn abelian_enumeration_matches_lattice_filter() {
        for c in [
            Construction::Heisenberg { p: 3 },
            Construction::WreathCpCp { p: 3 },
            Construction::ElementaryAbelian { p: 3, k: 3 },
        ] {
            let g = build(&c).unwrap();
            let whole: Vec<Elem> = g.elems().collect();
            let direct = abelian_subgroups_direct(&g, &whole);
            let filtered: Vec<Vec<Elem>> = crate::lattice::all_subgroups(&g)
                .unwrap()
                .into_iter()
                .filter(|s| s.is_abelian())
                .map(|s| s.elems().to_vec())
                .collect();
            assert_eq!(direct, filtered, "{}", g.name());
        }
    }

    #[test]
    fn naive_stability_agrees_with_kernel_on_small_groups() {
        for c in [
            Construction::Symmetric { n: 3 },
            Construction::Alternating { n: 4 },
            Construction::Dihedral { n: 9 },
            Construction::Symmetric { n: 4 },
        ] {
            let g = build(&c).unwrap();
            let fast = crate::fusion::is_p_stable(&g, 3).unwrap().stable;
            assert_eq!(p_stable_naive(&g, 3), fast, "{}", g.name());
        }
    }
}
