//! Constructive abelian replacement in odd-order p-groups.
//!
//! Given an abelian `A` and a class-two `B` with `B' <= A`, `A` normalizing
//! `B` but `B` not normalizing `A`, [`replace`] produces an abelian `A*`
//! of the same order with `A ∩ B < A* ∩ B`, `A* <= N(A) ∩ <A^G>`,
//! exponent dividing that of `A` and rank at least that of `A`. The
//! construction descends through maximal subgroups and finishes with the
//! join `H = A·A^b` for a coset representative `b`.

use crate::error::{Error, Result};
use crate::group::Elem;
use crate::lattice;
use crate::subgroup::{self, Subgroup};
use crate::thompson;

/// Tag naming the first failed replacement hypothesis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HypothesisTag {
    ANotInScope,
    BNotInScope,
    ANotAbelian,
    BClassTooLarge,
    DerivedNotInA,
    ANotNormalizingB,
    BNormalizesA,
}

impl std::fmt::Display for HypothesisTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            HypothesisTag::ANotInScope => "A not inside scope",
            HypothesisTag::BNotInScope => "B not inside scope",
            HypothesisTag::ANotAbelian => "A not abelian",
            HypothesisTag::BClassTooLarge => "class",
            HypothesisTag::DerivedNotInA => "B' not inside A",
            HypothesisTag::ANotNormalizingB => "A does not normalize B",
            HypothesisTag::BNormalizesA => "B normalizes A",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug)]
pub struct HypothesisReport {
    pub satisfied: bool,
    pub first_failure: Option<HypothesisTag>,
}

/// Checks the replacement hypotheses for `(scope, A, B)`.
///
/// The scope must be a p-group of odd order (`EvenPrime` for p = 2).
pub fn check_hypotheses(scope: &Subgroup, a: &Subgroup, b: &Subgroup) -> Result<HypothesisReport> {
    let p = scope.p_group_prime()?;
    if p == 2 {
        return Err(Error::EvenPrime);
    }
    let fail = |tag| Ok(HypothesisReport { satisfied: false, first_failure: Some(tag) });
    if !a.is_subset_of(scope) {
        return fail(HypothesisTag::ANotInScope);
    }
    if !b.is_subset_of(scope) {
        return fail(HypothesisTag::BNotInScope);
    }
    if !a.is_abelian() {
        return fail(HypothesisTag::ANotAbelian);
    }
    if !b.class_at_most(2) {
        return fail(HypothesisTag::BClassTooLarge);
    }
    if !subgroup::derived_subgroup(b).is_subset_of(a) {
        return fail(HypothesisTag::DerivedNotInA);
    }
    if !b.is_normalized_by(a) {
        return fail(HypothesisTag::ANotNormalizingB);
    }
    if a.is_normalized_by(b) {
        return fail(HypothesisTag::BNormalizesA);
    }
    Ok(HypothesisReport { satisfied: true, first_failure: None })
}

/// One level of the descent.
#[derive(Clone, Debug)]
pub struct ReplacementStep {
    /// Scope at this level (after the `G = AB` reduction).
    pub scope: Subgroup,
    /// The chosen maximal subgroup containing `A`.
    pub max_subgroup: Subgroup,
    /// Set on the terminal level only: the coset representative `b`.
    pub rep: Option<Elem>,
    /// Terminal level: `H = A · A^b`.
    pub join: Option<Subgroup>,
    /// Terminal level: `Z = A ∩ A^b`.
    pub meet: Option<Subgroup>,
}

#[derive(Clone, Debug)]
pub struct ReplacementResult {
    pub a_star: Subgroup,
    pub trace: Vec<ReplacementStep>,
}

/// Runs the replacement construction. All four conclusions are asserted
/// against the original inputs before returning; a failure there is a
/// kernel defect, not an input error.
pub fn replace(scope: &Subgroup, a: &Subgroup, b: &Subgroup) -> Result<ReplacementResult> {
    let report = check_hypotheses(scope, a, b)?;
    if let Some(tag) = report.first_failure {
        return Err(Error::hypothesis(tag.to_string()));
    }
    let g = scope.parent();
    let mut trace = Vec::new();

    // reduce to G = AB; a subgroup because A normalizes B
    let mut cur_scope = {
        let seed: Vec<Elem> =
            a.elems().iter().chain(b.elems().iter()).copied().collect();
        subgroup::closure(g, &seed)
    };
    let mut cur_b = b.clone();

    let a_star = loop {
        debug_assert!(
            subgroup::set_product_covers(&cur_scope, a, &cur_b),
            "scope must equal the set product A·B"
        );
        let max_subs = lattice::maximal_subgroups(&cur_scope)?;
        let m = max_subs
            .iter()
            .filter(|m| a.is_subset_of(m))
            .min()
            .cloned()
            .expect("A is proper in the scope, so some maximal subgroup contains it");
        let mb = m.intersection(&cur_b);
        if !a.is_normalized_by(&mb) {
            // descend into (M, A, M ∩ B)
            trace.push(ReplacementStep {
                scope: cur_scope.clone(),
                max_subgroup: m.clone(),
                rep: None,
                join: None,
                meet: None,
            });
            cur_scope = m;
            cur_b = cur_scope.intersection(&mb);
            continue;
        }
        // here M = N_scope(A); pick the least b outside M
        debug_assert_eq!(m, subgroup::normalizer(&cur_scope, a));
        let rep = cur_b
            .elems()
            .iter()
            .copied()
            .find(|&x| !m.contains(x))
            .expect("B is not inside M at the terminal level");
        let a_conj = a.conjugate(rep);
        let join_seed: Vec<Elem> =
            a.elems().iter().chain(a_conj.elems().iter()).copied().collect();
        let join = subgroup::closure(g, &join_seed);
        debug_assert_eq!(
            subgroup::set_product(a, &a_conj),
            join.elems().to_vec(),
            "H = A·A^b is already a subgroup"
        );
        let meet = a.intersection(&a_conj);
        let hb = join.intersection(&cur_b);
        let star_seed: Vec<Elem> =
            hb.elems().iter().chain(meet.elems().iter()).copied().collect();
        let a_star = subgroup::closure(g, &star_seed);
        assert_eq!(
            subgroup::set_product(&hb, &meet),
            a_star.elems().to_vec(),
            "A* = (H∩B)·Z is already a subgroup"
        );
        trace.push(ReplacementStep {
            scope: cur_scope.clone(),
            max_subgroup: m,
            rep: Some(rep),
            join: Some(join),
            meet: Some(meet),
        });
        break a_star;
    };

    assert_conclusions(scope, a, b, &a_star);
    Ok(ReplacementResult { a_star, trace })
}

/// Precomputed data for testing the four conclusions against a fixed
/// `(scope, A, B)`; candidate scans reuse it.
pub struct ConclusionChecker {
    b: Subgroup,
    a_order: usize,
    ab_order: usize,
    norm: Subgroup,
    conj_join: Subgroup,
    rank_a: u32,
    exp_a: u64,
}

impl ConclusionChecker {
    pub fn new(scope: &Subgroup, a: &Subgroup, b: &Subgroup) -> ConclusionChecker {
        let conj_join = {
            let mut seed: Vec<Elem> = Vec::new();
            for &x in scope.elems() {
                seed.extend(a.elems().iter().map(|&e| scope.parent().conj(e, x)));
            }
            seed.sort_unstable();
            seed.dedup();
            subgroup::closure(scope.parent(), &seed)
        };
        let (rank_a, exp_a) = thompson::rank_and_exponent(a).expect("A is abelian");
        ConclusionChecker {
            b: b.clone(),
            a_order: a.order(),
            ab_order: a.intersection(b).order(),
            norm: subgroup::normalizer(scope, a),
            conj_join,
            rank_a,
            exp_a,
        }
    }

    pub fn holds(&self, cand: &Subgroup) -> bool {
        if !cand.is_abelian() || cand.order() != self.a_order {
            return false;
        }
        if cand.intersection(&self.b).order() <= self.ab_order {
            return false;
        }
        if !cand.is_subset_of(&self.norm) || !cand.is_subset_of(&self.conj_join) {
            return false;
        }
        let (rank_s, exp_s) = thompson::rank_and_exponent(cand).expect("candidate is abelian");
        self.exp_a % exp_s == 0 && self.rank_a <= rank_s
    }
}

/// The four conclusions, checked against the original `(scope, A, B)`.
pub fn conclusions_hold(scope: &Subgroup, a: &Subgroup, b: &Subgroup, cand: &Subgroup) -> bool {
    ConclusionChecker::new(scope, a, b).holds(cand)
}

fn assert_conclusions(scope: &Subgroup, a: &Subgroup, b: &Subgroup, a_star: &Subgroup) {
    assert!(a_star.is_abelian(), "A* must be abelian");
    assert_eq!(a_star.order(), a.order(), "conclusion (a)");
    assert!(
        a.intersection(b).order() < a_star.intersection(b).order(),
        "conclusion (b)"
    );
    assert!(conclusions_hold(scope, a, b, a_star), "conclusions (a)-(d)");
}

/// `<[b, a] : a in A>`, with the Glauberman-lemma hypotheses checked on
/// `(scope, b_host, A)` first: scope of odd prime-power order equal to
/// `B·A`, `B` normal with `B' <= Z(scope)`, `A` abelian, `[B,A,A,A] = 1`.
pub fn commutator_segment(
    scope: &Subgroup,
    b_host: &Subgroup,
    b: Elem,
    a: &Subgroup,
) -> Result<Subgroup> {
    let p = scope.p_group_prime()?;
    if p == 2 {
        return Err(Error::EvenPrime);
    }
    if !b_host.contains(b) {
        return Err(Error::hypothesis("b lies outside B"));
    }
    if !subgroup::set_product_covers(scope, b_host, a) {
        return Err(Error::hypothesis("scope is not B·A"));
    }
    if !b_host.is_normalized_by(scope) {
        return Err(Error::hypothesis("B not normal in scope"));
    }
    let z = subgroup::center(scope);
    if !subgroup::derived_subgroup(b_host).is_subset_of(&z) {
        return Err(Error::hypothesis("B' not central in scope"));
    }
    if !a.is_abelian() {
        return Err(Error::hypothesis("A not abelian"));
    }
    let step1 = commutator_with_subgroup(scope, b_host, a);
    let step2 = commutator_with_subgroup(scope, &step1, a);
    let step3 = commutator_with_subgroup(scope, &step2, a);
    if !step3.is_trivial() {
        return Err(Error::hypothesis("[B,A,A,A] != 1"));
    }
    Ok(segment(scope, b, a))
}

/// The raw segment `<[b, a] : a in A>` with no hypothesis checks.
pub fn segment(scope: &Subgroup, b: Elem, a: &Subgroup) -> Subgroup {
    let g = scope.parent();
    let mut seed: Vec<Elem> = a.elems().iter().map(|&x| g.comm(b, x)).collect();
    seed.sort_unstable();
    seed.dedup();
    subgroup::closure(g, &seed)
}

/// Do the raw commutators `{[b, a] : a in A}` pairwise commute? When they
/// do, the segment they generate is abelian.
pub fn segment_set_commutes(scope: &Subgroup, b: Elem, a: &Subgroup) -> bool {
    let g = scope.parent();
    let set: Vec<Elem> = a.elems().iter().map(|&x| g.comm(b, x)).collect();
    set.iter().all(|&u| set.iter().all(|&v| g.mul(u, v) == g.mul(v, u)))
}

fn commutator_with_subgroup(scope: &Subgroup, x: &Subgroup, a: &Subgroup) -> Subgroup {
    subgroup::commutator_subgroup(scope.parent(), x, a)
}

/// Is the depth-fold iterated commutator `[X, g, g, ..., g]` trivial?
/// Convention: `[X, g] = <x^{-1} x^g : x in X>`, closed at each stage.
pub fn iterated_commutator_check(scope: &Subgroup, x: &Subgroup, g_elem: Elem, depth: u32) -> bool {
    iterated_commutator(scope, x, g_elem, depth).is_trivial()
}

pub fn iterated_commutator(scope: &Subgroup, x: &Subgroup, g_elem: Elem, depth: u32) -> Subgroup {
    let g = scope.parent();
    let mut layer = x.clone();
    for _ in 0..depth {
        if layer.is_trivial() {
            return layer;
        }
        let mut seed: Vec<Elem> = layer.elems().iter().map(|&e| g.comm(e, g_elem)).collect();
        seed.sort_unstable();
        seed.dedup();
        layer = subgroup::closure(g, &seed);
    }
    layer
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::build::{build, Construction};
    use crate::group::Group;

    fn wreath() -> (Group, Subgroup, Subgroup, Subgroup) {
        let g = build(&Construction::WreathCpCp { p: 3 }).unwrap();
        let whole = Subgroup::whole(&g);
        // (n, h) -> n*3 + h: the top generator is index 1, the base is
        // every index divisible by 3
        let top = subgroup::closure(&g, &[1]);
        let base = Subgroup::from_elems(&g, (0..27).map(|n| n * 3).collect()).unwrap();
        (g, whole, top, base)
    }

    #[test]
    fn wreath_hypotheses_hold() {
        let (_, whole, top, base) = wreath();
        let rep = check_hypotheses(&whole, &top, &base).unwrap();
        assert!(rep.satisfied, "{:?}", rep.first_failure);
    }

    #[test]
    fn b_normalizing_a_is_flagged() {
        let (g, whole, top, _) = wreath();
        // B = A: certainly normalizes A
        let rep = check_hypotheses(&whole, &top, &top).unwrap();
        assert_eq!(rep.first_failure, Some(HypothesisTag::BNormalizesA));
        // A contained in B forces the same tag (B' <= A makes B normalize A)
        let z = subgroup::center(&whole);
        let rep = check_hypotheses(&whole, &z, &whole).unwrap();
        assert!(!rep.satisfied);
        let _ = g;
    }

    #[test]
    fn class_three_b_is_flagged() {
        let g = build(&Construction::WreathCpCp { p: 3 }).unwrap();
        let whole = Subgroup::whole(&g);
        assert!(!whole.class_at_most(2));
        let a = Subgroup::whole(&g);
        // A = whole is not abelian, so use a maximal abelian piece instead
        let base = Subgroup::from_elems(&g, (0..27).map(|n| n * 3).collect()).unwrap();
        let rep = check_hypotheses(&whole, &base, &whole).unwrap();
        assert_eq!(rep.first_failure, Some(HypothesisTag::BClassTooLarge));
        let _ = a;
    }

    #[test]
    fn even_prime_is_rejected() {
        let g = build(&Construction::Quaternion { n: 2 }).unwrap();
        let whole = Subgroup::whole(&g);
        let z = subgroup::center(&whole);
        assert_eq!(check_hypotheses(&whole, &z, &whole).unwrap_err(), Error::EvenPrime);
    }

    #[test]
    fn wreath_replacement_yields_the_diagonal() {
        let (g, whole, top, base) = wreath();
        let res = replace(&whole, &top, &base).unwrap();
        assert_eq!(res.a_star.order(), 3);
        // the output is the center of the wreath product (the diagonal)
        assert_eq!(res.a_star, subgroup::center(&whole));
        assert_eq!(res.a_star.intersection(&base).order(), 3);
        assert_eq!(top.intersection(&base).order(), 1);
        assert!(res.trace.len() >= 2, "wreath case descends one level");
        assert!(res.trace.last().unwrap().rep.is_some());
        let _ = g;
    }

    #[test]
    fn trace_scopes_strictly_decrease() {
        let (_, whole, top, base) = wreath();
        let res = replace(&whole, &top, &base).unwrap();
        for w in res.trace.windows(2) {
            assert!(w[1].scope.order() < w[0].scope.order());
        }
    }

    #[test]
    fn heisenberg_commutator_segments_are_abelian() {
        let g = build(&Construction::Heisenberg { p: 3 }).unwrap();
        let whole = Subgroup::whole(&g);
        // A = a maximal abelian subgroup; B = G. B' = Z(G) <= A and
        // [B,A] <= Z gives [B,A,A,A] = 1.
        let fam = thompson::abelian_family(&whole, thompson::FamilyKind::Order).unwrap();
        let a = fam.members[0].clone();
        for b in g.elems() {
            let seg = commutator_segment(&whole, &whole, b, &a).unwrap();
            assert!(seg.is_abelian(), "segment at b={b}");
            assert!(segment_set_commutes(&whole, b, &a));
        }
    }

    #[test]
    fn central_a_gives_trivial_segments() {
        let g = build(&Construction::Heisenberg { p: 3 }).unwrap();
        let whole = Subgroup::whole(&g);
        let z = subgroup::center(&whole);
        for b in g.elems() {
            assert!(segment(&whole, b, &z).is_trivial());
        }
    }

    #[test]
    fn heisenberg_times_z3_replacement_matches_the_oracle() {
        let g = build(&Construction::DirectProduct {
            factors: vec![Construction::Heisenberg { p: 3 }, Construction::Cyclic { n: 3 }],
        })
        .unwrap();
        let whole = Subgroup::whole(&g);
        let subs = crate::lattice::all_subgroups(&g).unwrap();
        let mut satisfied = 0usize;
        for a in subs.iter().filter(|a| a.is_abelian()) {
            for b in &subs {
                let rep = check_hypotheses(&whole, a, b).unwrap();
                if !rep.satisfied {
                    continue;
                }
                satisfied += 1;
                let out = replace(&whole, a, b).unwrap();
                let candidates = crate::oracle::replacement_candidates(&whole, a, b);
                assert!(!candidates.is_empty());
                assert!(candidates.contains(&out.a_star));
                if satisfied >= 12 {
                    return;
                }
            }
        }
        assert!(satisfied > 0, "no hypothesis-satisfying pair found");
    }

    #[test]
    fn wreath_segment_with_central_extension_of_the_top() {
        // A = <t> Z(G), B = the base: G = BA, B normal and abelian,
        // [B,A,A,A] = 1; every segment [b, A] must be abelian
        let (g, whole, top, base) = wreath();
        let z = subgroup::center(&whole);
        let seed: Vec<Elem> =
            top.elems().iter().chain(z.elems().iter()).copied().collect();
        let a = subgroup::closure(&g, &seed);
        assert_eq!(a.order(), 9);
        assert!(a.is_abelian());
        for b in base.elems().iter().copied() {
            let seg = commutator_segment(&whole, &base, b, &a).unwrap();
            assert!(seg.is_abelian());
            assert!(segment_set_commutes(&whole, b, &a));
        }
    }

    #[test]
    fn iterated_commutators_in_the_wreath_product() {
        let (g, whole, top, base) = wreath();
        let t = top.elems()[1];
        assert!(iterated_commutator_check(&whole, &base, t, 3));
        assert!(!iterated_commutator_check(&whole, &base, t, 2));
        // a central g dies at depth 1
        let z = subgroup::center(&whole).elems()[1];
        assert!(iterated_commutator_check(&whole, &base, z, 1));
        let _ = g;
    }
}
