//! p-local predicates: strongly closed sets, fusion control, p-stability,
//! p-constraint, Qd(p)-freeness and p-nilpotency.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::arith;
use crate::bitset::Bitset;
use crate::error::{Error, Result};
use crate::group::{Elem, Group};
use crate::lattice;
use crate::section;
use crate::subgroup::{self, Subgroup};
use crate::sylow;
use crate::thompson::{self, FamilyKind};

/// A group with a chosen odd prime and a fixed Sylow p-subgroup, carrying
/// the caches the fusion machinery keeps hitting.
pub struct PrimeContext {
    group: Group,
    p: u64,
    sylow: Subgroup,
    p_subgroups: OnceLock<Arc<Vec<Subgroup>>>,
    orbit_reps: OnceLock<Vec<usize>>,
    stability: OnceLock<StabilityOutcome>,
    fusion_memo: Mutex<HashMap<Vec<Elem>, (bool, Option<FusionWitness>)>>,
}

impl PrimeContext {
    /// Rejects `p = 2`: every statement this context feeds requires an odd
    /// prime. (The raw predicates that are defined at 2 take `(G, p)`
    /// directly.)
    pub fn new(g: &Group, p: u64) -> Result<PrimeContext> {
        if p == 2 {
            return Err(Error::EvenPrime);
        }
        if !arith::is_prime(p) {
            return Err(Error::invalid(format!("{p} is not prime")));
        }
        Ok(PrimeContext {
            group: g.clone(),
            p,
            sylow: sylow::sylow_of_group(g, p),
            p_subgroups: OnceLock::new(),
            orbit_reps: OnceLock::new(),
            stability: OnceLock::new(),
            fusion_memo: Mutex::new(HashMap::new()),
        })
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn sylow(&self) -> &Subgroup {
        &self.sylow
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup::whole(&self.group)
    }

    /// All subgroups of the chosen Sylow subgroup.
    pub fn p_subgroups(&self) -> Arc<Vec<Subgroup>> {
        self.p_subgroups
            .get_or_init(|| {
                Arc::new(lattice::subgroups_of(&self.sylow).expect("|P| <= |G| <= bound"))
            })
            .clone()
    }

    /// Indices of G-conjugacy class representatives among `p_subgroups`.
    pub fn p_subgroup_class_reps(&self) -> &[usize] {
        self.orbit_reps.get_or_init(|| {
            let subs = self.p_subgroups();
            lattice::conjugation_orbits(&subs, &self.whole())
                .into_iter()
                .map(|orbit| orbit[0])
                .collect()
        })
    }

    pub fn is_p_stable(&self) -> &StabilityOutcome {
        self.stability
            .get_or_init(|| stability_outcome(self))
    }
}

/// Failure witness for the subgroup-quantified fusion predicates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusionWitness {
    pub subgroup: Vec<Elem>,
    pub g: Elem,
}

/// Exact strong-closure check for an element set `D ⊆ P`.
///
/// Subset quantification reduces to single elements (a subset lands in P
/// exactly when each element does); the subset-level oracle in the test
/// suite pins that reduction down on small orders.
pub fn is_strongly_closed(ctx: &PrimeContext, d: &[Elem]) -> Result<(bool, Option<(Elem, Elem)>)> {
    if d.is_empty() {
        return Err(Error::EmptyIntersection);
    }
    if d.iter().any(|&u| !ctx.sylow().contains(u)) {
        return Err(Error::invalid("D must be a subset of the Sylow subgroup"));
    }
    let g = ctx.group();
    let dmask = Bitset::from_elems(g.order(), d.iter().map(|&e| e as usize));
    for &u in d {
        for x in g.elems() {
            let c = g.conj(u, x);
            if ctx.sylow().contains(c) && !dmask.contains(c as usize) {
                return Ok((false, Some((u, x))));
            }
        }
    }
    Ok((true, None))
}

/// A certified strongly closed subset of the Sylow subgroup.
#[derive(Clone, Debug)]
pub struct StronglyClosedSet {
    group: Group,
    p: u64,
    sylow: Subgroup,
    elems: Vec<Elem>,
}

impl StronglyClosedSet {
    pub fn new(ctx: &PrimeContext, mut elems: Vec<Elem>) -> Result<StronglyClosedSet> {
        elems.sort_unstable();
        elems.dedup();
        let (closed, witness) = is_strongly_closed(ctx, &elems)?;
        if !closed {
            let (u, x) = witness.expect("failure carries a witness");
            return Err(Error::invalid(format!(
                "set is not strongly closed: element {u} escapes via {x}"
            )));
        }
        // a strongly closed set is in particular a normal subset of P
        debug_assert!(elems.iter().all(|&u| {
            ctx.sylow()
                .elems()
                .iter()
                .all(|&x| elems.binary_search(&ctx.group().conj(u, x)).is_ok())
        }));
        Ok(StronglyClosedSet {
            group: ctx.group().clone(),
            p: ctx.prime(),
            sylow: ctx.sylow().clone(),
            elems,
        })
    }

    pub fn elems(&self) -> &[Elem] {
        &self.elems
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn sylow(&self) -> &Subgroup {
        &self.sylow
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    /// The subgroup `<D>` generated by the set.
    pub fn span(&self) -> Subgroup {
        subgroup::closure(&self.group, &self.elems)
    }
}

/// Does `N` control strong G-fusion in the Sylow subgroup of the context?
///
/// Checked over G-conjugacy class representatives of subgroups of P; the
/// restriction to representatives is equivalent to the full quantifier
/// (pinned by the naive oracle in the tests).
pub fn controls_strong_fusion(
    ctx: &PrimeContext,
    n: &Subgroup,
) -> Result<(bool, Option<FusionWitness>)> {
    if let Some(hit) = ctx.fusion_memo.lock().unwrap().get(n.elems()) {
        return Ok(hit.clone());
    }
    let g = ctx.group();
    let whole = ctx.whole();
    let subs = ctx.p_subgroups();
    let mut outcome = (true, None);
    'search: for &rep in ctx.p_subgroup_class_reps() {
        let u = &subs[rep];
        let cent = subgroup::centralizer(&whole, u.elems());
        let mut cn = Bitset::new(g.order());
        for &c in cent.elems() {
            for &m in n.elems() {
                cn.insert(g.mul(c, m) as usize);
            }
        }
        for x in g.elems() {
            if u.elems().iter().all(|&a| ctx.sylow().contains(g.conj(a, x)))
                && !cn.contains(x as usize)
            {
                outcome = (false, Some(FusionWitness { subgroup: u.elems().to_vec(), g: x }));
                break 'search;
            }
        }
    }
    ctx.fusion_memo.lock().unwrap().insert(n.elems().to_vec(), outcome.clone());
    Ok(outcome)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilityOutcome {
    pub stable: bool,
    pub witness: Option<FusionWitness>,
}

/// p-stability of `G` at an odd prime.
///
/// For every p-subgroup (up to conjugacy) and every normalizer element `g`
/// with `[P0, g, g] = 1`, the coset of `g` must land inside
/// `O_p(N(P0)/C(P0))`.
pub fn is_p_stable(g: &Group, p: u64) -> Result<StabilityOutcome> {
    let ctx = PrimeContext::new(g, p)?;
    Ok(stability_outcome(&ctx))
}

fn stability_outcome(ctx: &PrimeContext) -> StabilityOutcome {
    let whole = ctx.whole();
    let subs = ctx.p_subgroups();
    for &rep in ctx.p_subgroup_class_reps() {
        let p0 = &subs[rep];
        let norm = subgroup::normalizer(&whole, p0);
        let cent = subgroup::centralizer(&whole, p0.elems());
        let sect = section::quotient(&norm, &cent).expect("centralizer is normal in normalizer");
        let core = sylow::p_core(&Subgroup::whole(sect.quotient()), ctx.prime());
        for &x in norm.elems() {
            if !crate::replacement::iterated_commutator_check(&whole, p0, x, 2) {
                continue;
            }
            let image = sect.project(x).expect("x lies in the normalizer");
            if !core.contains(image) {
                return StabilityOutcome {
                    stable: false,
                    witness: Some(FusionWitness { subgroup: p0.elems().to_vec(), g: x }),
                };
            }
        }
    }
    StabilityOutcome { stable: true, witness: None }
}

/// p-constraint: `C_G(U) <= O_{p',p}(G)` for `U` a Sylow p-subgroup of
/// `O_{p',p}(G)`. Defined for every prime, including 2.
pub fn is_p_constrained(g: &Group, p: u64) -> Result<bool> {
    if !arith::is_prime(p) {
        return Err(Error::invalid(format!("{p} is not prime")));
    }
    let opp = sylow::p_prime_p_core(g, p)?;
    let u = sylow::sylow(&opp, p);
    let cent = subgroup::centralizer(&Subgroup::whole(g), u.elems());
    Ok(cent.is_subset_of(&opp))
}

#[derive(Clone, Debug)]
pub struct QdpFreeOutcome {
    pub free: bool,
    /// A section `(H, K)` with `H/K` isomorphic to `Qd(p)`, when not free.
    pub witness: Option<(Subgroup, Subgroup)>,
}

/// Qd(p)-freeness: no section of `G` is isomorphic to `Qd(p)`.
///
/// Groups smaller than `|Qd(p)| = p^3 (p^2 - 1)` are free outright.
pub fn is_qdp_free(g: &Group, p: u64) -> Result<QdpFreeOutcome> {
    if p == 2 {
        return Err(Error::EvenPrime);
    }
    if !arith::is_prime(p) {
        return Err(Error::invalid(format!("{p} is not prime")));
    }
    let qd_order = (p * p * p * (p * p - 1)) as usize;
    if g.order() < qd_order {
        return Ok(QdpFreeOutcome { free: true, witness: None });
    }
    let qd = crate::build::qd(p)?;
    for h in lattice::all_subgroups(g)? {
        if h.order() % qd_order != 0 {
            continue;
        }
        for k in lattice::normal_subgroups_of(&h)? {
            if h.order() / k.order() != qd_order {
                continue;
            }
            let sect = section::quotient(&h, &k)?;
            if crate::iso::is_isomorphic(sect.quotient(), &qd)?.is_some() {
                return Ok(QdpFreeOutcome { free: false, witness: Some((h, k)) });
            }
        }
    }
    Ok(QdpFreeOutcome { free: true, witness: None })
}

/// p-nilpotency: `O_{p'}(G)` is a normal p-complement. Returns the
/// complement as witness when true. Defined for every prime.
pub fn is_p_nilpotent(g: &Group, p: u64) -> (bool, Option<Subgroup>) {
    let core = sylow::p_prime_core(g, p);
    let p_part = arith::p_part(g.order() as u64, p);
    if g.order() as u64 == p_part * core.order() as u64 {
        (true, Some(core))
    } else {
        (false, None)
    }
}

#[derive(Clone, Debug)]
pub struct IntersectionReport {
    pub intersection: StronglyClosedSet,
    /// `G = N_G(D ∩ N) · N` as a set product.
    pub factorization_ok: bool,
}

/// Intersects a strongly closed set with a normal subgroup: the result is
/// strongly closed again and `G = N_G(D ∩ N) N`.
pub fn strongly_closed_intersection(
    ctx: &PrimeContext,
    d: &StronglyClosedSet,
    n: &Subgroup,
) -> Result<IntersectionReport> {
    if !n.is_normalized_by(&ctx.whole()) {
        return Err(Error::NotNormal);
    }
    let inter: Vec<Elem> = d.elems().iter().copied().filter(|&e| n.contains(e)).collect();
    if inter.is_empty() {
        return Err(Error::EmptyIntersection);
    }
    // re-verified from scratch; the constructor would reject a failure
    let intersection = StronglyClosedSet::new(ctx, inter.clone())?;
    let stab = set_stabilizer(ctx.group(), &inter);
    let factorization_ok = subgroup::set_product_covers(&ctx.whole(), &stab, n);
    Ok(IntersectionReport { intersection, factorization_ok })
}

/// Setwise stabilizer `{g : D^g = D}` as a subgroup.
pub fn set_stabilizer(g: &Group, set: &[Elem]) -> Subgroup {
    let mask = Bitset::from_elems(g.order(), set.iter().map(|&e| e as usize));
    let elems: Vec<Elem> = g
        .elems()
        .filter(|&x| set.iter().all(|&u| mask.contains(g.conj(u, x) as usize)))
        .collect();
    let m = Bitset::from_elems(g.order(), elems.iter().map(|&e| e as usize));
    Subgroup::from_sorted_unchecked(g.clone(), elems, m)
}

#[derive(Clone, Debug)]
pub struct ImagesReport {
    /// None when `D^g ∩ H` is empty (the statement's nonemptiness proviso).
    pub part_a: Option<(bool, Option<(Elem, Elem)>)>,
    pub part_b: (bool, Option<(Elem, Elem)>),
}

impl ImagesReport {
    pub fn pass(&self) -> bool {
        self.part_a.map(|(ok, _)| ok).unwrap_or(true) && self.part_b.0
    }
}

/// Image behaviour of a strongly closed set: (a) `D^g ∩ H` is strongly
/// closed in `P^g ∩ H` with respect to `H`; (b) `DN/N` is strongly closed
/// in `PN/N` with respect to `G/N`.
pub fn strongly_closed_images(
    ctx: &PrimeContext,
    d: &StronglyClosedSet,
    h: &Subgroup,
    n: &Subgroup,
    g_elem: Elem,
) -> Result<ImagesReport> {
    let g = ctx.group();
    let whole = ctx.whole();
    if !n.is_normalized_by(&whole) {
        return Err(Error::NotNormal);
    }
    let p_conj = ctx.sylow().conjugate(g_elem);
    let ph = p_conj.intersection(h);
    if ph.order() as u64 != arith::p_part(h.order() as u64, ctx.prime()) {
        return Err(Error::SylowMismatch);
    }

    // (a) inside H
    let d_conj: Vec<Elem> = d.elems().iter().map(|&u| g.conj(u, g_elem)).collect();
    let dh: Vec<Elem> = d_conj.iter().copied().filter(|&u| h.contains(u)).collect();
    let part_a = if dh.is_empty() {
        None
    } else {
        let dh_mask = Bitset::from_elems(g.order(), dh.iter().map(|&e| e as usize));
        let mut verdict = (true, None);
        'outer: for &u in &dh {
            for &x in h.elems() {
                let c = g.conj(u, x);
                if ph.contains(c) && !dh_mask.contains(c as usize) {
                    verdict = (false, Some((u, x)));
                    break 'outer;
                }
            }
        }
        Some(verdict)
    };

    // (b) inside G/N
    let sect = section::quotient(&whole, n)?;
    let quo = sect.quotient();
    let d_image: Vec<Elem> = {
        let mut v: Vec<Elem> =
            d.elems().iter().map(|&u| sect.project(u).expect("whole section")).collect();
        v.sort_unstable();
        v.dedup();
        v
    };
    let p_image: Vec<Elem> = {
        let mut v: Vec<Elem> = ctx
            .sylow()
            .elems()
            .iter()
            .map(|&u| sect.project(u).expect("whole section"))
            .collect();
        v.sort_unstable();
        v.dedup();
        v
    };
    debug_assert_eq!(
        p_image.len() as u64,
        arith::p_part(quo.order() as u64, ctx.prime()),
        "PN/N is a Sylow subgroup of G/N"
    );
    let d_mask = Bitset::from_elems(quo.order(), d_image.iter().map(|&e| e as usize));
    let p_mask = Bitset::from_elems(quo.order(), p_image.iter().map(|&e| e as usize));
    let mut part_b = (true, None);
    'outer_b: for &u in &d_image {
        for y in quo.elems() {
            let c = quo.conj(u, y);
            if p_mask.contains(c as usize) && !d_mask.contains(c as usize) {
                part_b = (false, Some((u, y)));
                break 'outer_b;
            }
        }
    }

    Ok(ImagesReport { part_a, part_b })
}

#[derive(Clone, Debug)]
pub struct QuotientStabilityReport {
    pub base_stable: bool,
    pub quotient_stable: bool,
}

impl QuotientStabilityReport {
    /// p-stability must pass to `G / O_{p'}(G)`.
    pub fn implication_ok(&self) -> bool {
        !self.base_stable || self.quotient_stable
    }
}

pub fn quotient_p_stability_check(g: &Group, p: u64) -> Result<QuotientStabilityReport> {
    let base = is_p_stable(g, p)?;
    let core = sylow::p_prime_core(g, p);
    let sect = section::quotient(&Subgroup::whole(g), &core)?;
    let quotient = is_p_stable(sect.quotient(), p)?;
    Ok(QuotientStabilityReport { base_stable: base.stable, quotient_stable: quotient.stable })
}

#[derive(Clone, Debug)]
pub struct CoreCheckReport {
    pub abelian_normals_checked: usize,
    pub pass: bool,
    pub witness: Option<Vec<Elem>>,
}

/// Under p-stability and `C_G(O_p(G)) <= O_p(G)`: every abelian normal
/// subgroup of the Sylow subgroup lies inside `O_p(G)`.
pub fn abelian_normal_in_core_check(ctx: &PrimeContext) -> Result<CoreCheckReport> {
    if !ctx.is_p_stable().stable {
        return Err(Error::hypothesis("G is not p-stable"));
    }
    let whole = ctx.whole();
    let core = sylow::p_core(&whole, ctx.prime());
    let cent = subgroup::centralizer(&whole, core.elems());
    if !cent.is_subset_of(&core) {
        return Err(Error::hypothesis("C_G(O_p(G)) not inside O_p(G)"));
    }
    let mut checked = 0;
    for a in ctx.p_subgroups().iter() {
        if !a.is_abelian() || !a.is_normalized_by(ctx.sylow()) {
            continue;
        }
        checked += 1;
        if !a.is_subset_of(&core) {
            return Ok(CoreCheckReport {
                abelian_normals_checked: checked,
                pass: false,
                witness: Some(a.elems().to_vec()),
            });
        }
    }
    Ok(CoreCheckReport { abelian_normals_checked: checked, pass: true, witness: None })
}

/// Finds a member of the `kind` family of `N` normalized by `B`, starting
/// from the member with the largest intersection with `B` and applying
/// abelian replacement until one is normalized.
///
/// Preconditions: odd order host, `B, N` normal in the host, `class(B) <= 2`,
/// and `B'` contained in every family member.
pub fn crucial_lemma_search(
    p_host: &Subgroup,
    b: &Subgroup,
    n: &Subgroup,
    kind: FamilyKind,
) -> Result<Subgroup> {
    let p = p_host.p_group_prime()?;
    if p == 2 {
        return Err(Error::EvenPrime);
    }
    if !b.is_normal_in(p_host) || !n.is_normal_in(p_host) {
        return Err(Error::hypothesis("B and N must be normal in the host"));
    }
    if !b.class_at_most(2) {
        return Err(Error::hypothesis("class"));
    }
    let family = thompson::abelian_family(n, kind)?;
    let b_derived = subgroup::derived_subgroup(b);
    if family.members.iter().any(|a| !b_derived.is_subset_of(a)) {
        return Err(Error::hypothesis("B' not inside every family member"));
    }
    let mut current = family
        .members
        .iter()
        .max_by_key(|a| (a.intersection(b).order(), std::cmp::Reverse((*a).clone())))
        .expect("families are nonempty")
        .clone();
    loop {
        if current.is_normalized_by(b) {
            return Ok(current);
        }
        let replaced = crate::replacement::replace(p_host, &current, b)?;
        let a_star = replaced.a_star;
        assert!(
            family.members.contains(&a_star),
            "replacement output stays in the family"
        );
        assert!(
            a_star.intersection(b).order() > current.intersection(b).order(),
            "intersection with B grows"
        );
        current = a_star;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::build::{build, Construction};

    fn sym3_z3() -> Group {
        build(&Construction::DirectProduct {
            factors: vec![Construction::Symmetric { n: 3 }, Construction::Cyclic { n: 3 }],
        })
        .unwrap()
    }

    #[test]
    fn whole_sylow_is_strongly_closed() {
        let g = build(&Construction::Alternating { n: 4 }).unwrap();
        let ctx = PrimeContext::new(&g, 3).unwrap();
        let d = ctx.sylow().elems().to_vec();
        assert_eq!(is_strongly_closed(&ctx, &d).unwrap(), (true, None));
    }

    #[test]
    fn central_factor_is_strongly_closed_in_sym3_z3() {
        let g = sym3_z3();
        let ctx = PrimeContext::new(&g, 3).unwrap();
        // the direct factor Z3: elements (identity, z) with indices 0..2
        let d: Vec<Elem> = vec![1, 2];
        let with_one: Vec<Elem> = vec![0, 1, 2];
        assert!(is_strongly_closed(&ctx, &with_one).unwrap().0);
        assert!(is_strongly_closed(&ctx, &d).unwrap().0);
    }

    #[test]
    fn strong_closure_positive_and_negative_cases() {
        // A4 does not fuse a 3-cycle with its inverse, so {1, t} is
        // strongly closed in P = <t>
        let g = build(&Construction::Alternating { n: 4 }).unwrap();
        let ctx = PrimeContext::new(&g, 3).unwrap();
        let d: Vec<Elem> = ctx.sylow().elems().iter().copied().take(2).collect();
        let (ok, witness) = is_strongly_closed(&ctx, &d).unwrap();
        assert!(ok, "witness {witness:?}");

        // In Qd(3) the complement acts transitively on the base, so the
        // center of the Sylow subgroup (which sits inside the base) fuses
        // out of itself: not strongly closed, with a witness
        let qd = build(&Construction::Qd { p: 3 }).unwrap();
        let qctx = PrimeContext::new(&qd, 3).unwrap();
        let zp = subgroup::center(qctx.sylow());
        let (ok, witness) = is_strongly_closed(&qctx, &zp.elems().to_vec()).unwrap();
        assert!(!ok);
        let (u, x) = witness.unwrap();
        let c = qd.conj(u, x);
        assert!(qctx.sylow().contains(c) && !zp.contains(c));
    }

    #[test]
    fn fusion_control_by_whole_group_is_trivial() {
        let g = build(&Construction::Alternating { n: 4 }).unwrap();
        let ctx = PrimeContext::new(&g, 3).unwrap();
        let (ok, _) = controls_strong_fusion(&ctx, &ctx.whole()).unwrap();
        assert!(ok);
    }

    #[test]
    fn sylow_normalizer_controls_fusion_in_alt4_and_sym3() {
        let g = build(&Construction::Alternating { n: 4 }).unwrap();
        let ctx = PrimeContext::new(&g, 3).unwrap();
        let n = subgroup::normalizer(&ctx.whole(), ctx.sylow());
        assert_eq!(n.order(), 3);
        let (ok, w) = controls_strong_fusion(&ctx, &n).unwrap();
        assert!(ok, "witness {w:?}");

        // In Sym3 the Sylow 3-subgroup is normal, so its normalizer is the
        // whole group and controls fusion; the Sylow subgroup alone does
        // not (a transposition conjugates P to P but is not in C(P)·P)
        let s3 = build(&Construction::Symmetric { n: 3 }).unwrap();
        let ctx = PrimeContext::new(&s3, 3).unwrap();
        let n = subgroup::normalizer(&ctx.whole(), ctx.sylow());
        assert_eq!(n.order(), 6);
        let (ok, _) = controls_strong_fusion(&ctx, &n).unwrap();
        assert!(ok);
        let (ok, w) = controls_strong_fusion(&ctx, ctx.sylow()).unwrap();
        assert!(!ok);
        assert!(w.is_some());
    }

    #[test]
    fn p_groups_are_p_stable() {
        for c in [
            Construction::Heisenberg { p: 3 },
            Construction::WreathCpCp { p: 3 },
            Construction::Cyclic { n: 81 },
        ] {
            let g = build(&c).unwrap();
            assert!(is_p_stable(&g, 3).unwrap().stable, "{}", g.name());
        }
    }

    #[test]
    fn qd3_is_not_3_stable_with_base_witness() {
        let g = build(&Construction::Qd { p: 3 }).unwrap();
        let out = is_p_stable(&g, 3).unwrap();
        assert!(!out.stable);
        let w = out.witness.expect("failure carries a witness");
        // verify the witness is genuine
        let whole = Subgroup::whole(&g);
        let p0 = Subgroup::from_elems(&g, w.subgroup.clone()).unwrap();
        assert!(crate::replacement::iterated_commutator_check(&whole, &p0, w.g, 2));
        let norm = subgroup::normalizer(&whole, &p0);
        assert!(norm.contains(w.g));
        let cent = subgroup::centralizer(&whole, p0.elems());
        let sect = section::quotient(&norm, &cent).unwrap();
        let core = sylow::p_core(&Subgroup::whole(sect.quotient()), 3);
        assert!(!core.contains(sect.project(w.g).unwrap()));
    }

    #[test]
    fn base_and_transvection_violate_3_stability_in_qd3() {
        let g = build(&Construction::Qd { p: 3 }).unwrap();
        let whole = Subgroup::whole(&g);
        // base = pairs (v, I) at indices v*24
        let base = Subgroup::from_elems(&g, (0..9).map(|v| v * 24).collect()).unwrap();
        // a transvection: an order-3 element of the SL(2,3) complement
        // with [base, s, s] = 1
        let s = (1..24u16)
            .find(|&m| {
                g.order_of(m) == 3
                    && crate::replacement::iterated_commutator_check(&whole, &base, m, 2)
            })
            .expect("transvections exist in the complement");
        let norm = subgroup::normalizer(&whole, &base);
        assert_eq!(norm.order(), 216, "the base is normal");
        let cent = subgroup::centralizer(&whole, base.elems());
        assert_eq!(cent, base, "the action is faithful");
        let sect = section::quotient(&norm, &cent).unwrap();
        assert_eq!(sect.order(), 24);
        let core = sylow::p_core(&Subgroup::whole(sect.quotient()), 3);
        assert_eq!(core.order(), 1, "O_3(SL(2,3)) = 1");
        assert!(!core.contains(sect.project(s).unwrap()));
    }

    #[test]
    fn p_constraint_examples() {
        let a4 = build(&Construction::Alternating { n: 4 }).unwrap();
        assert!(is_p_constrained(&a4, 3).unwrap());
        let heis = build(&Construction::Heisenberg { p: 3 }).unwrap();
        assert!(is_p_constrained(&heis, 3).unwrap());
        let a5 = build(&Construction::Alternating { n: 5 }).unwrap();
        assert!(!is_p_constrained(&a5, 5).unwrap());
    }

    #[test]
    fn qdp_freeness_examples() {
        let a4 = build(&Construction::Alternating { n: 4 }).unwrap();
        assert!(is_qdp_free(&a4, 3).unwrap().free);

        let qd = build(&Construction::Qd { p: 3 }).unwrap();
        let out = is_qdp_free(&qd, 3).unwrap();
        assert!(!out.free);
        let (h, k) = out.witness.unwrap();
        assert_eq!(h.order(), 216);
        assert_eq!(k.order(), 1);
    }

    #[test]
    fn qd3_times_z2_is_not_qd3_free() {
        let g = build(&Construction::DirectProduct {
            factors: vec![Construction::Qd { p: 3 }, Construction::Cyclic { n: 2 }],
        })
        .unwrap();
        let out = is_qdp_free(&g, 3).unwrap();
        assert!(!out.free);
        let (h, k) = out.witness.unwrap();
        assert_eq!((h.order(), k.order()), (216, 1));
    }

    #[test]
    fn prime_two_policy() {
        // contexts and the oddness-dependent predicates reject p = 2
        let g = build(&Construction::Symmetric { n: 4 }).unwrap();
        assert!(matches!(PrimeContext::new(&g, 2), Err(Error::EvenPrime)));
        assert!(matches!(is_p_stable(&g, 2), Err(Error::EvenPrime)));
        assert!(matches!(is_qdp_free(&g, 2), Err(Error::EvenPrime)));
        // the raw predicates accept p = 2
        assert!(is_p_constrained(&g, 2).unwrap());
        let a4 = build(&Construction::Alternating { n: 4 }).unwrap();
        let (nilp, _) = is_p_nilpotent(&a4, 2);
        assert!(!nilp, "A4 has no normal 2-complement");
    }

    #[test]
    fn p_nilpotency_examples() {
        let a4 = build(&Construction::Alternating { n: 4 }).unwrap();
        let (ok, w) = is_p_nilpotent(&a4, 3);
        assert!(ok);
        assert_eq!(w.unwrap().order(), 4);

        let s3 = build(&Construction::Symmetric { n: 3 }).unwrap();
        assert!(!is_p_nilpotent(&s3, 3).0);

        let heis = build(&Construction::Heisenberg { p: 3 }).unwrap();
        let (ok, w) = is_p_nilpotent(&heis, 3);
        assert!(ok);
        assert!(w.unwrap().is_trivial());
    }

    #[test]
    fn strongly_closed_intersection_in_sym3_z3() {
        let g = sym3_z3();
        let ctx = PrimeContext::new(&g, 3).unwrap();
        let d = StronglyClosedSet::new(&ctx, ctx.sylow().elems().to_vec()).unwrap();
        // N = the central Z3 factor
        let n = Subgroup::from_elems(&g, vec![0, 1, 2]).unwrap();
        assert!(n.is_normalized_by(&ctx.whole()));
        let report = strongly_closed_intersection(&ctx, &d, &n).unwrap();
        assert_eq!(report.intersection.elems(), &[0, 1, 2]);
        assert!(report.factorization_ok);

        // N = whole: intersection is D itself
        let report = strongly_closed_intersection(&ctx, &d, &ctx.whole()).unwrap();
        assert_eq!(report.intersection.elems(), d.elems());
        assert!(report.factorization_ok);

        // disjoint normal subgroup: empty intersection
        let sym_part: Vec<Elem> = (0..6).map(|i| i * 3).collect();
        let m = Subgroup::from_elems(&g, sym_part).unwrap();
        let a3: Vec<Elem> = m
            .elems()
            .iter()
            .copied()
            .filter(|&e| e == 0 || g.order_of(e) == 3)
            .collect();
        let a3 = Subgroup::from_elems(&g, a3).unwrap();
        let d_small = StronglyClosedSet::new(&ctx, vec![1, 2]).unwrap();
        assert_eq!(
            strongly_closed_intersection(&ctx, &d_small, &a3).unwrap_err(),
            Error::EmptyIntersection
        );
    }

    #[test]
    fn strongly_closed_images_cases() {
        let g = sym3_z3();
        let ctx = PrimeContext::new(&g, 3).unwrap();
        let whole = ctx.whole();
        let d = StronglyClosedSet::new(&ctx, vec![1, 2]).unwrap();

        // H = G, g = identity: part (a) reduces to the strong-closure
        // check; N = G makes part (b) the trivial quotient, vacuously
        // closed
        let rep = strongly_closed_images(&ctx, &d, &whole, &whole, 0).unwrap();
        assert_eq!(rep.part_a, Some((true, None)));
        assert!(rep.part_b.0);
        assert!(rep.pass());

        // H = the Sym3 x 1 factor: D^g ∩ H is empty, so part (a) is
        // skipped per the nonemptiness proviso
        let h = Subgroup::from_elems(&g, (0..6).map(|i| i * 3).collect()).unwrap();
        let trivial = Subgroup::trivial(&g);
        let rep = strongly_closed_images(&ctx, &d, &h, &trivial, 0).unwrap();
        assert!(rep.part_a.is_none());
        assert!(rep.part_b.0);

        // the positioning precondition is enforced: in A4 a second Sylow
        // 3-subgroup meets the chosen one trivially
        let a4 = build(&Construction::Alternating { n: 4 }).unwrap();
        let actx = PrimeContext::new(&a4, 3).unwrap();
        let ad = StronglyClosedSet::new(&actx, actx.sylow().elems().to_vec()).unwrap();
        let other = a4
            .elems()
            .filter(|&e| a4.order_of(e) == 3 && !actx.sylow().contains(e))
            .map(|e| subgroup::closure(&a4, &[e]))
            .next()
            .unwrap();
        let atriv = Subgroup::trivial(&a4);
        assert_eq!(
            strongly_closed_images(&actx, &ad, &other, &atriv, 0).unwrap_err(),
            Error::SylowMismatch
        );
    }

    #[test]
    fn quotient_stability_implication() {
        for g in [
            sym3_z3(),
            build(&Construction::Alternating { n: 4 }).unwrap(),
            build(&Construction::Qd { p: 3 }).unwrap(),
        ] {
            let rep = quotient_p_stability_check(&g, 3).unwrap();
            assert!(rep.implication_ok(), "{}", g.name());
        }
    }

    #[test]
    fn abelian_normals_sink_into_the_core() {
        // (Z3 x Z3) ⋊ Z2 by inversion
        let e9 = build(&Construction::ElementaryAbelian { p: 3, k: 2 }).unwrap();
        let inv_row: Vec<u16> = (0..9u16).map(|x| e9.inv(x)).collect();
        let id_row: Vec<u16> = (0..9).collect();
        let g = crate::build::semidirect(&e9, &cyclic2(), &[id_row, inv_row], "E9:Z2").unwrap();
        let ctx = PrimeContext::new(&g, 3).unwrap();
        let rep = abelian_normal_in_core_check(&ctx).unwrap();
        assert!(rep.pass, "witness {:?}", rep.witness);
        assert!(rep.abelian_normals_checked > 0);
    }

    fn cyclic2() -> Group {
        build(&Construction::Cyclic { n: 2 }).unwrap()
    }

    #[test]
    fn crucial_search_finds_a_normalized_member() {
        // central B: every member works
        let heis = build(&Construction::Heisenberg { p: 3 }).unwrap();
        let whole = Subgroup::whole(&heis);
        let z = subgroup::center(&whole);
        let a = crucial_lemma_search(&whole, &z, &whole, FamilyKind::Order).unwrap();
        assert!(a.is_normalized_by(&z));

        // wreath product: B = whole has class 3, rejected
        let w = build(&Construction::WreathCpCp { p: 3 }).unwrap();
        let ww = Subgroup::whole(&w);
        let base = Subgroup::from_elems(&w, (0..27).map(|n| n * 3).collect()).unwrap();
        assert!(matches!(
            crucial_lemma_search(&ww, &ww, &base, FamilyKind::Elementary),
            Err(Error::Hypothesis { .. })
        ));

        // B = base (class 1), N = base: the base itself is the unique
        // maximal elementary abelian target
        let a = crucial_lemma_search(&ww, &base, &base, FamilyKind::Elementary).unwrap();
        assert_eq!(a, base);
    }
}
