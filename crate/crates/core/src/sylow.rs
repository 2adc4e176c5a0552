//! Sylow subgroups and the standard cores `O_p`, `O_{p'}`, `O_{p',p}`.

use crate::arith;
use crate::bitset::Bitset;
use crate::error::Result;
use crate::group::{Elem, Group};
use crate::section;
use crate::subgroup::{self, Subgroup};

/// A Sylow p-subgroup of `scope`, canonicalized to the lexicographically
/// least element set among all its conjugates in `scope`.
///
/// When `p` does not divide the order the trivial subgroup is returned.
pub fn sylow(scope: &Subgroup, p: u64) -> Subgroup {
    let g = scope.parent();
    let target = arith::p_part(scope.order() as u64, p) as usize;
    let mut cur = Subgroup::trivial(g);
    while cur.order() < target {
        let norm = subgroup::normalizer(scope, &cur);
        let x = norm
            .elems()
            .iter()
            .copied()
            .find(|&x| !cur.contains(x) && arith::is_p_power(g.order_of(x) as u64, p))
            .expect("a proper p-subgroup grows inside its normalizer");
        let seed: Vec<Elem> = cur.elems().iter().copied().chain([x]).collect();
        cur = subgroup::closure(g, &seed);
    }
    // canonical representative among conjugates
    let mut best = cur.clone();
    for x in scope.elems().iter().copied() {
        let c = cur.conjugate(x);
        if c.elems() < best.elems() {
            best = c;
        }
    }
    best
}

pub fn sylow_of_group(g: &Group, p: u64) -> Subgroup {
    sylow(&Subgroup::whole(g), p)
}

/// `O_p(scope)`: the intersection of all Sylow p-subgroups (equivalently
/// the largest normal p-subgroup).
pub fn p_core(scope: &Subgroup, p: u64) -> Subgroup {
    let g = scope.parent();
    let syl = sylow(scope, p);
    let mut mask = syl.mask().clone();
    for &x in scope.elems() {
        mask.intersect_with(syl.conjugate(x).mask());
    }
    let elems: Vec<Elem> = mask.iter().map(|e| e as Elem).collect();
    Subgroup::from_sorted_unchecked(g.clone(), elems, mask)
}

/// `O_{p'}(g)`: the largest normal subgroup of order coprime to `p`.
///
/// Generated by the conjugacy classes whose normal closure is a
/// p'-group; the join of normal p'-subgroups is again one.
pub fn p_prime_core(g: &Group, p: u64) -> Subgroup {
    let mut seed: Vec<Elem> = Vec::new();
    for class in g.conjugacy_classes().iter() {
        if g.order_of(class[0]) as u64 % p == 0 {
            continue;
        }
        let nc = subgroup::closure(g, class);
        if nc.order() as u64 % p != 0 {
            seed.extend_from_slice(class);
        }
    }
    let core = subgroup::closure(g, &seed);
    debug_assert!(core.order() as u64 % p != 0 || core.order() == 1);
    core
}

/// `O_{p',p}(g)`: the preimage of `O_p(g / O_{p'}(g))`.
pub fn p_prime_p_core(g: &Group, p: u64) -> Result<Subgroup> {
    let whole = Subgroup::whole(g);
    let pprime = p_prime_core(g, p);
    let sect = section::quotient(&whole, &pprime)?;
    let upper = p_core(&Subgroup::whole(sect.quotient()), p);
    let elems: Vec<Elem> = whole
        .elems()
        .iter()
        .copied()
        .filter(|&e| upper.contains(sect.project(e).expect("whole-group section")))
        .collect();
    let mask = Bitset::from_elems(g.order(), elems.iter().map(|&e| e as usize));
    Ok(Subgroup::from_sorted_unchecked(g.clone(), elems, mask))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::build::{build, Construction};

    #[test]
    fn sym3_has_normal_sylow3() {
        let g = build(&Construction::Symmetric { n: 3 }).unwrap();
        let s = sylow_of_group(&g, 3);
        assert_eq!(s.order(), 3);
        assert!(s.is_normalized_by(&Subgroup::whole(&g)));
    }

    #[test]
    fn alt4_sylow2_is_the_klein_four() {
        let g = build(&Construction::Alternating { n: 4 }).unwrap();
        let s = sylow_of_group(&g, 2);
        assert_eq!(s.order(), 4);
        assert!(s.is_normalized_by(&Subgroup::whole(&g)));
        assert!(s.elems().iter().all(|&e| e == 0 || g.order_of(e) == 2));
    }

    #[test]
    fn qd3_sylow3_has_order_27() {
        let g = build(&Construction::Qd { p: 3 }).unwrap();
        assert_eq!(g.order(), 216);
        let s = sylow_of_group(&g, 3);
        assert_eq!(s.order(), 27);
    }

    #[test]
    fn sylow_for_non_dividing_prime_is_trivial() {
        let g = build(&Construction::Symmetric { n: 3 }).unwrap();
        assert!(sylow_of_group(&g, 5).is_trivial());
    }

    #[test]
    fn sylows_are_conjugate() {
        let g = build(&Construction::Alternating { n: 4 }).unwrap();
        let whole = Subgroup::whole(&g);
        let p = sylow_of_group(&g, 3);
        // all order-3 subgroups are Sylow here and must be conjugate to p
        for e in g.elems().filter(|&e| g.order_of(e) == 3) {
            let q = subgroup::closure(&g, &[e]);
            assert!(whole.elems().iter().any(|&x| q.conjugate(x) == p));
        }
    }

    #[test]
    fn cores_of_alt4() {
        let g = build(&Construction::Alternating { n: 4 }).unwrap();
        let whole = Subgroup::whole(&g);
        assert_eq!(p_core(&whole, 3).order(), 1);
        assert_eq!(p_core(&whole, 2).order(), 4);
        assert_eq!(p_prime_core(&g, 3).order(), 4);
        assert_eq!(p_prime_core(&g, 2).order(), 1);
        assert_eq!(p_prime_p_core(&g, 2).unwrap().order(), 4);
        // O_{3',3}(A4) = preimage of O_3(A4/V4) = whole group
        assert_eq!(p_prime_p_core(&g, 3).unwrap().order(), 12);
    }

    #[test]
    fn p_prime_core_of_sym3_times_z3_is_trivial() {
        let c = Construction::DirectProduct {
            factors: vec![Construction::Symmetric { n: 3 }, Construction::Cyclic { n: 3 }],
        };
        let g = build(&c).unwrap();
        assert_eq!(p_prime_core(&g, 3).order(), 1);
    }
}
