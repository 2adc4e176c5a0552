//! Conjugacy functors and section conjugacy functors.
//!
//! A base functor (one of `J_x`, `ZJ_x`, `ΩZJ_x`) combines with a strongly
//! closed set `D` into the subscripted functor `W_D` on p-subgroups and
//! the section functor `W*_D` on p-group sections. Axiom verification
//! sweeps live here too, together with a deliberately non-equivariant
//! fixture that keeps the axiom checker honest.

use std::collections::HashMap;
use std::sync::Mutex;

use crate::arith;
use crate::bitset::Bitset;
use crate::error::{Error, Result};
use crate::fusion::PrimeContext;
use crate::group::{Elem, Group};
use crate::lattice;
use crate::section::{self, Section};
use crate::subgroup::{self, Subgroup};
use crate::thompson::{self, FamilyKind};

/// The base subgroup-valued operators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BaseFunctor {
    /// `J_x`.
    J(FamilyKind),
    /// `Z(J_x(·))`.
    CenterJ(FamilyKind),
    /// `Ω(Z(J_x(·)))`.
    OmegaCenterJ(FamilyKind),
    /// Negative control: the cyclic subgroup on the greatest element.
    /// Satisfies containment and nontriviality but is not
    /// conjugation-equivariant; the axiom checker must flag it.
    GreatestElementCyclic,
}

impl BaseFunctor {
    /// The nine real base functors (the fixture is excluded).
    pub const ALL: [BaseFunctor; 9] = [
        BaseFunctor::J(FamilyKind::Order),
        BaseFunctor::J(FamilyKind::Rank),
        BaseFunctor::J(FamilyKind::Elementary),
        BaseFunctor::CenterJ(FamilyKind::Order),
        BaseFunctor::CenterJ(FamilyKind::Rank),
        BaseFunctor::CenterJ(FamilyKind::Elementary),
        BaseFunctor::OmegaCenterJ(FamilyKind::Order),
        BaseFunctor::OmegaCenterJ(FamilyKind::Rank),
        BaseFunctor::OmegaCenterJ(FamilyKind::Elementary),
    ];

    /// The trio appearing in the normality and fusion statements:
    /// `ZJ_o`, `ΩZJ_r`, `ΩZJ_e`.
    pub const STATEMENT_TRIO: [BaseFunctor; 3] = [
        BaseFunctor::CenterJ(FamilyKind::Order),
        BaseFunctor::OmegaCenterJ(FamilyKind::Rank),
        BaseFunctor::OmegaCenterJ(FamilyKind::Elementary),
    ];

    pub fn label(self) -> String {
        match self {
            BaseFunctor::J(k) => format!("J_{k}"),
            BaseFunctor::CenterJ(k) => format!("ZJ_{k}"),
            BaseFunctor::OmegaCenterJ(k) => format!("OmegaZJ_{k}"),
            BaseFunctor::GreatestElementCyclic => "greatest-cyclic-fixture".to_string(),
        }
    }

    /// Applies the base functor to a p-subgroup.
    pub fn apply(self, u: &Subgroup) -> Result<Subgroup> {
        if u.is_trivial() {
            return Ok(u.clone());
        }
        match self {
            BaseFunctor::J(kind) => thompson::thompson_subgroup(u, kind),
            BaseFunctor::CenterJ(kind) => {
                Ok(subgroup::center(&thompson::thompson_subgroup(u, kind)?))
            }
            BaseFunctor::OmegaCenterJ(kind) => {
                thompson::omega(&subgroup::center(&thompson::thompson_subgroup(u, kind)?))
            }
            BaseFunctor::GreatestElementCyclic => {
                let top = *u.elems().last().expect("nontrivial");
                Ok(subgroup::closure(u.parent(), &[top]))
            }
        }
    }

    /// Applies the base functor to a whole section, landing in its
    /// quotient group.
    pub fn apply_to_section(self, s: &Section) -> Result<Subgroup> {
        self.apply(&Subgroup::whole(s.quotient()))
    }
}

/// Which branch of the subscripted/section case split fired.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FunctorCase {
    /// Plain functor, no subscript.
    PlainWhole,
    /// `W(<U ∩ D>)` with a nontrivial intersection span.
    IntersectionGenerated,
    /// `<U ∩ D> = 1`: fell back to `W(U)`.
    EmptyIntersectionFallback,
    /// Section: `W(<D^g ∩ H> K / K)`.
    SectionIntersection,
    /// Section: `D^g ∩ H ⊆ K`, so `W(H/K)`.
    SectionPlain,
}

#[derive(Clone, Debug)]
pub struct FunctorValue {
    pub output: Subgroup,
    /// The conjugator used to move the input into the Sylow subgroup
    /// (None when it already sat inside).
    pub conjugator: Option<Elem>,
    pub case: FunctorCase,
}

/// A conjugacy functor on the p-subgroups of a scope group: either a
/// plain base functor or a subscripted `W_D` relative to a Sylow
/// subgroup of that scope.
pub struct SubgroupFunctor {
    scope: Subgroup,
    p: u64,
    base: BaseFunctor,
    /// `(sylow, D)` for the subscripted form; `None` is the plain functor.
    subscript: Option<(Subgroup, Vec<Elem>)>,
    /// Cross-check evaluations through a second conjugator.
    pub check_well_defined: bool,
    memo: Mutex<HashMap<Vec<Elem>, FunctorValue>>,
}

impl SubgroupFunctor {
    pub fn plain(scope: Subgroup, p: u64, base: BaseFunctor) -> SubgroupFunctor {
        SubgroupFunctor {
            scope,
            p,
            base,
            subscript: None,
            check_well_defined: false,
            memo: Mutex::new(HashMap::new()),
        }
    }

    /// `W_D` over the full group of the context. An empty `D` degrades to
    /// the plain functor; otherwise `D` must be strongly closed (checked).
    pub fn subscripted(ctx: &PrimeContext, base: BaseFunctor, d: Vec<Elem>) -> Result<SubgroupFunctor> {
        if d.is_empty() {
            return Ok(Self::plain(ctx.whole(), ctx.prime(), base));
        }
        let (closed, _) = crate::fusion::is_strongly_closed(ctx, &d)?;
        if !closed {
            return Err(Error::invalid("subscript set must be strongly closed"));
        }
        Ok(Self::subscripted_unchecked(ctx.whole(), ctx.prime(), base, ctx.sylow().clone(), d))
    }

    /// `W_D` relative to an explicit (scope, Sylow, D) triple. The caller
    /// vouches for strong closure of `D` in that Sylow subgroup — used
    /// for the conjugated and restricted variants that the statements
    /// certify themselves.
    pub fn subscripted_unchecked(
        scope: Subgroup,
        p: u64,
        base: BaseFunctor,
        sylow: Subgroup,
        mut d: Vec<Elem>,
    ) -> SubgroupFunctor {
        d.sort_unstable();
        d.dedup();
        let subscript = if d.is_empty() { None } else { Some((sylow, d)) };
        SubgroupFunctor {
            scope,
            p,
            base,
            subscript,
            check_well_defined: false,
            memo: Mutex::new(HashMap::new()),
        }
    }

    pub fn scope(&self) -> &Subgroup {
        &self.scope
    }

    pub fn d_elems(&self) -> Option<&[Elem]> {
        self.subscript.as_ref().map(|(_, d)| d.as_slice())
    }

    /// Evaluates the functor at a p-subgroup of the scope.
    pub fn apply(&self, v: &Subgroup) -> Result<FunctorValue> {
        if !v.is_subset_of(&self.scope) || !arith::is_p_power(v.order() as u64, self.p) {
            return Err(Error::NotPSubgroup);
        }
        if let Some(hit) = self.memo.lock().unwrap().get(v.elems()) {
            return Ok(hit.clone());
        }
        let value = self.apply_uncached(v)?;
        self.memo.lock().unwrap().insert(v.elems().to_vec(), value.clone());
        Ok(value)
    }

    fn apply_uncached(&self, v: &Subgroup) -> Result<FunctorValue> {
        let Some((sylow, d)) = &self.subscript else {
            let output = self.base.apply(v)?;
            return Ok(FunctorValue { output, conjugator: None, case: FunctorCase::PlainWhole });
        };
        if v.is_subset_of(sylow) {
            let inter: Vec<Elem> =
                v.elems().iter().copied().filter(|e| d.binary_search(e).is_ok()).collect();
            let span = subgroup::closure(v.parent(), &inter);
            return if span.is_trivial() {
                Ok(FunctorValue {
                    output: self.base.apply(v)?,
                    conjugator: None,
                    case: FunctorCase::EmptyIntersectionFallback,
                })
            } else {
                Ok(FunctorValue {
                    output: self.base.apply(&span)?,
                    conjugator: None,
                    case: FunctorCase::IntersectionGenerated,
                })
            };
        }
        // position V inside the Sylow subgroup, evaluate, move back
        let g = self.scope.parent();
        let x = subgroup::conjugate_into(&self.scope, v, sylow, self.p)?;
        let inner = self.apply(&v.conjugate(x))?;
        let output = inner.output.conjugate(g.inv(x));
        if self.check_well_defined {
            if let Some(&x2) = self
                .scope
                .elems()
                .iter()
                .find(|&&y| y != x && v.elems().iter().all(|&a| sylow.contains(g.conj(a, y))))
            {
                let alt = self.apply(&v.conjugate(x2))?.output.conjugate(g.inv(x2));
                assert_eq!(output, alt, "subscripted functor value depends on the conjugator");
            }
        }
        Ok(FunctorValue { output, conjugator: Some(x), case: inner.case })
    }
}

#[derive(Clone, Debug)]
pub struct SectionValue {
    /// The value as a subgroup of the section's quotient table.
    pub output: Subgroup,
    /// The Sylow-positioning conjugator `g` with `P^g ∩ H` Sylow in `H`.
    pub positioner: Elem,
    pub case: FunctorCase,
}

/// The section conjugacy functor `W*_D` on p-group sections of the whole
/// group of its context.
pub struct SectionFunctor {
    group: Group,
    p: u64,
    sylow: Subgroup,
    base: BaseFunctor,
    d: Vec<Elem>,
    /// Cross-check through a second positioning conjugator.
    pub check_well_defined: bool,
    // (top, bottom) -> (value elems, positioner, case); raw element data
    // because each quotient call makes a fresh table instance
    memo: Mutex<HashMap<(Vec<Elem>, Vec<Elem>), (Vec<Elem>, Elem, FunctorCase)>>,
}

impl SectionFunctor {
    pub fn new(ctx: &PrimeContext, base: BaseFunctor, d: Vec<Elem>) -> Result<SectionFunctor> {
        if !d.is_empty() {
            let (closed, _) = crate::fusion::is_strongly_closed(ctx, &d)?;
            if !closed {
                return Err(Error::invalid("subscript set must be strongly closed"));
            }
        }
        let mut d = d;
        d.sort_unstable();
        d.dedup();
        Ok(SectionFunctor {
            group: ctx.group().clone(),
            p: ctx.prime(),
            sylow: ctx.sylow().clone(),
            base,
            d,
            check_well_defined: false,
            memo: Mutex::new(HashMap::new()),
        })
    }

    pub fn base(&self) -> BaseFunctor {
        self.base
    }

    pub fn d_elems(&self) -> &[Elem] {
        &self.d
    }

    /// Least `g` with `P^g ∩ H` a Sylow p-subgroup of `H`.
    pub fn position(&self, h: &Subgroup) -> Elem {
        self.positioners(h)
            .next()
            .expect("Sylow subgroups of H extend to Sylow subgroups of G")
    }

    fn positioners<'a>(&'a self, h: &'a Subgroup) -> impl Iterator<Item = Elem> + 'a {
        let g = self.group.clone();
        let target = arith::p_part(h.order() as u64, self.p);
        let h = h.clone();
        g.clone().elems().filter(move |&x| {
            let mut count = 0u64;
            for &u in self.sylow.elems() {
                if h.contains(g.conj(u, x)) {
                    count += 1;
                }
            }
            count == target
        })
    }

    /// Evaluates `W*_D` on a p-group section.
    pub fn apply(&self, s: &Section) -> Result<SectionValue> {
        if !arith::is_p_power(s.order() as u64, self.p) {
            return Err(Error::NotPSubgroup);
        }
        let key = (s.top().elems().to_vec(), s.bottom().elems().to_vec());
        if let Some((elems, positioner, case)) = self.memo.lock().unwrap().get(&key) {
            let output = Subgroup::from_elems(s.quotient(), elems.clone())
                .expect("memoized value is a subgroup of the quotient");
            return Ok(SectionValue { output, positioner: *positioner, case: *case });
        }
        let x = self.position(s.top());
        let value = self.apply_positioned(s, x)?;
        if self.check_well_defined {
            if let Some(x2) = self.positioners(s.top()).find(|&y| y != x) {
                let alt = self.apply_positioned(s, x2)?;
                assert_eq!(
                    value.output, alt.output,
                    "section functor value depends on the positioning conjugator"
                );
            }
        }
        self.memo.lock().unwrap().insert(
            key,
            (value.output.elems().to_vec(), value.positioner, value.case),
        );
        Ok(value)
    }

    fn apply_positioned(&self, s: &Section, x: Elem) -> Result<SectionValue> {
        let g = &self.group;
        let d_conj: Vec<Elem> = self.d.iter().map(|&u| g.conj(u, x)).collect();
        let dh: Vec<Elem> =
            d_conj.into_iter().filter(|&u| s.top().contains(u)).collect();
        if dh.iter().all(|&u| s.bottom().contains(u)) {
            let output = self.base.apply_to_section(s)?;
            return Ok(SectionValue { output, positioner: x, case: FunctorCase::SectionPlain });
        }
        let span = subgroup::closure(g, &dh);
        debug_assert!(span.is_subset_of(s.top()));
        let image = s.project_subgroup(&span)?;
        let output = self.base.apply(&image)?;
        Ok(SectionValue { output, positioner: x, case: FunctorCase::SectionIntersection })
    }
}

/// All p-subgroups of the context's group: conjugates of the subgroups of
/// the chosen Sylow subgroup, deterministically ordered.
pub fn all_p_subgroups(ctx: &PrimeContext) -> Vec<Subgroup> {
    let g = ctx.group();
    let mut seen: std::collections::BTreeSet<Vec<Elem>> = std::collections::BTreeSet::new();
    for u in ctx.p_subgroups().iter() {
        for x in g.elems() {
            seen.insert(u.conjugate(x).elems().to_vec());
        }
    }
    seen.into_iter()
        .map(|elems| {
            let mask = Bitset::from_elems(g.order(), elems.iter().map(|&e| e as usize));
            Subgroup::from_sorted_unchecked(g.clone(), elems, mask)
        })
        .collect()
}

#[derive(Clone, Debug, Default)]
pub struct AxiomReport {
    pub containment_failures: Vec<String>,
    pub nontriviality_failures: Vec<String>,
    pub equivariance_failures: Vec<String>,
    /// `W_D = W_{D^y}` failures (subscripted functors only).
    pub subscript_conjugate_failures: Vec<String>,
    pub checked: usize,
}

impl AxiomReport {
    pub fn pass(&self) -> bool {
        self.containment_failures.is_empty()
            && self.nontriviality_failures.is_empty()
            && self.equivariance_failures.is_empty()
            && self.subscript_conjugate_failures.is_empty()
    }

    fn note(bucket: &mut Vec<String>, msg: String) {
        if bucket.len() < 8 {
            bucket.push(msg);
        }
    }
}

/// Exhaustively checks the conjugacy-functor axioms for `w` over every
/// p-subgroup of the context, plus `W_D = W_{D^y}` for every `y` when `w`
/// is subscripted.
pub fn verify_conjugacy_axioms(ctx: &PrimeContext, w: &SubgroupFunctor) -> Result<AxiomReport> {
    let g = ctx.group();
    let p_subs = all_p_subgroups(ctx);
    let mut report = AxiomReport::default();
    for u in &p_subs {
        let value = w.apply(u)?;
        report.checked += 1;
        if !value.output.is_subset_of(u) {
            AxiomReport::note(
                &mut report.containment_failures,
                format!("W(U) not inside U at U={:?}", u.elems()),
            );
        }
        if value.output.is_trivial() && !u.is_trivial() {
            AxiomReport::note(
                &mut report.nontriviality_failures,
                format!("W(U) trivial at nontrivial U={:?}", u.elems()),
            );
        }
        for x in g.elems() {
            let lhs = value.output.conjugate(x);
            let rhs = w.apply(&u.conjugate(x))?.output;
            if lhs != rhs {
                AxiomReport::note(
                    &mut report.equivariance_failures,
                    format!("W(U)^g != W(U^g) at U={:?}, g={x}", u.elems()),
                );
                break;
            }
        }
    }
    if let Some(d) = w.d_elems() {
        for y in g.elems() {
            let sylow_y = ctx.sylow().conjugate(y);
            let d_y: Vec<Elem> = d.iter().map(|&u| g.conj(u, y)).collect();
            let w_y = SubgroupFunctor::subscripted_unchecked(
                ctx.whole(),
                ctx.prime(),
                base_of(w),
                sylow_y,
                d_y,
            );
            for u in &p_subs {
                if w.apply(u)?.output != w_y.apply(u)?.output {
                    AxiomReport::note(
                        &mut report.subscript_conjugate_failures,
                        format!("W_D != W_D^y at y={y}, U={:?}", u.elems()),
                    );
                    break;
                }
            }
        }
    }
    Ok(report)
}

fn base_of(w: &SubgroupFunctor) -> BaseFunctor {
    w.base
}

#[derive(Clone, Debug, Default)]
pub struct SectionAxiomReport {
    pub containment_failures: Vec<String>,
    pub nontriviality_failures: Vec<String>,
    pub equivariance_failures: Vec<String>,
    /// Axiom (iv) compatibility failures.
    pub sylow_compat_failures: Vec<String>,
    pub sections_checked: usize,
    pub quadruples_checked: usize,
}

impl SectionAxiomReport {
    pub fn pass(&self) -> bool {
        self.containment_failures.is_empty()
            && self.nontriviality_failures.is_empty()
            && self.equivariance_failures.is_empty()
            && self.sylow_compat_failures.is_empty()
    }
}

/// Enumerates the p-group sections `(H, K)` of the group, bounded by
/// section order.
pub fn p_sections(g: &Group, p: u64, max_order: usize) -> Result<Vec<(Subgroup, Subgroup)>> {
    let mut out = Vec::new();
    for h in lattice::all_subgroups(g)? {
        for k in lattice::normal_subgroups_of(&h)? {
            let idx = h.order() / k.order();
            if idx <= max_order && arith::is_p_power(idx as u64, p) {
                out.push((h.clone(), k));
            }
        }
    }
    Ok(out)
}

/// Checks the section-conjugacy-functor axioms (i)-(iv) for `w` over all
/// p-group sections of bounded order.
pub fn verify_section_axioms(
    ctx: &PrimeContext,
    w: &SectionFunctor,
    max_section_order: usize,
) -> Result<SectionAxiomReport> {
    let g = ctx.group();
    let mut report = SectionAxiomReport::default();
    let sections = p_sections(g, ctx.prime(), max_section_order)?;
    let note = AxiomReport::note;
    // conjugate sections recur constantly in the equivariance loop
    let mut section_cache: HashMap<(Vec<Elem>, Vec<Elem>), Section> = HashMap::new();
    let mut cached_quotient = |h: &Subgroup, k: &Subgroup| -> Result<Section> {
        let key = (h.elems().to_vec(), k.elems().to_vec());
        if let Some(hit) = section_cache.get(&key) {
            return Ok(hit.clone());
        }
        let sect = section::quotient(h, k)?;
        section_cache.insert(key, sect.clone());
        Ok(sect)
    };
    for (h, k) in &sections {
        let sect = cached_quotient(h, k)?;
        let value = w.apply(&sect)?;
        report.sections_checked += 1;
        // (i) holds structurally (the value is a subgroup of the quotient)
        if !value.output.is_subset_of(&Subgroup::whole(sect.quotient())) {
            note(
                &mut report.containment_failures,
                format!("value escapes the section at H={:?}", h.elems()),
            );
        }
        // (ii)
        if value.output.is_trivial() && sect.order() > 1 {
            note(
                &mut report.nontriviality_failures,
                format!("trivial value on nontrivial section H/K, H={:?}, K={:?}", h.elems(), k.elems()),
            );
        }
        // (iii): W(H/K)^x = W(H^x/K^x), transported through conjugation
        for x in g.elems() {
            let hx = h.conjugate(x);
            let kx = k.conjugate(x);
            let sx = cached_quotient(&hx, &kx)?;
            let transported = transport_value(&sect, &value.output, x, &sx);
            let direct = w.apply(&sx)?.output;
            if transported != direct {
                note(
                    &mut report.equivariance_failures,
                    format!("section equivariance fails at H={:?}, x={x}", h.elems()),
                );
                break;
            }
        }
    }
    // (iv): N normal in H, N <= K, K/N a p'-group, P0/N Sylow in H/N,
    // W(P0/N) = L/N forces W(H/K) = LK/K
    for (h, k) in &sections {
        let sect_hk = section::quotient(h, k)?;
        let w_hk = w.apply(&sect_hk)?.output;
        for n in lattice::normal_subgroups_of(h)? {
            if !n.is_subset_of(k) || (k.order() / n.order()) as u64 % ctx.prime() == 0 {
                continue;
            }
            if (k.order() / n.order()) > 1 && arith::p_part((k.order() / n.order()) as u64, ctx.prime()) > 1 {
                continue;
            }
            let hn = section::quotient(h, &n)?;
            let sylow_size =
                n.order() as u64 * arith::p_part((h.order() / n.order()) as u64, ctx.prime());
            for p0 in lattice::subgroups_of(h)? {
                if p0.order() as u64 != sylow_size || !n.is_subset_of(&p0) {
                    continue;
                }
                report.quadruples_checked += 1;
                let sect_p0n = section::quotient(&p0, &n)?;
                let val_p0 = w.apply(&sect_p0n)?.output;
                // L = preimage of the value inside P0
                let l = sect_p0n.preimage_subgroup(&val_p0);
                // LK/K inside H/K
                let lk_image: Vec<Elem> = {
                    let mut v: Vec<Elem> = l
                        .elems()
                        .iter()
                        .map(|&e| sect_hk.project(e).expect("L <= P0 <= H"))
                        .collect();
                    v.sort_unstable();
                    v.dedup();
                    v
                };
                let expected = Subgroup::from_elems(sect_hk.quotient(), lk_image)
                    .expect("image of a subgroup is a subgroup");
                if w_hk != expected {
                    note(
                        &mut report.sylow_compat_failures,
                        format!(
                            "axiom (iv) fails at H={:?}, K={:?}, N={:?}, P0={:?}",
                            h.elems(),
                            k.elems(),
                            n.elems(),
                            p0.elems()
                        ),
                    );
                }
                let _ = &hn;
            }
        }
    }
    Ok(report)
}

/// Moves a value on `H/K` to `H^x/K^x` along the conjugation isomorphism.
fn transport_value(from: &Section, value: &Subgroup, x: Elem, to: &Section) -> Subgroup {
    let g = from.top().parent();
    let mut elems: Vec<Elem> = Vec::new();
    for q in value.elems() {
        // any preimage representative works
        let rep = *from
            .top()
            .elems()
            .iter()
            .find(|&&e| from.project(e) == Some(*q))
            .expect("projection is surjective");
        elems.push(to.project(g.conj(rep, x)).expect("conjugate lies in H^x"));
    }
    elems.sort_unstable();
    elems.dedup();
    Subgroup::from_elems(to.quotient(), elems).expect("image of a subgroup")
}

#[derive(Clone, Debug)]
pub struct RestrictionReport {
    pub checked: usize,
    pub pass: bool,
    pub witness: Option<String>,
}

/// The restricted functor `W_{D^g ∩ H}` on `L_p(H)` must agree with the
/// global `W_D` there.
pub fn restriction_consistency_check(
    ctx: &PrimeContext,
    base: BaseFunctor,
    d: &[Elem],
    h: &Subgroup,
    g_elem: Elem,
) -> Result<RestrictionReport> {
    let g = ctx.group();
    let p_h = ctx.sylow().conjugate(g_elem).intersection(h);
    if p_h.order() as u64 != arith::p_part(h.order() as u64, ctx.prime()) {
        return Err(Error::SylowMismatch);
    }
    let d_h: Vec<Elem> =
        d.iter().map(|&u| g.conj(u, g_elem)).filter(|&u| h.contains(u)).collect();
    let local = SubgroupFunctor::subscripted_unchecked(
        h.clone(),
        ctx.prime(),
        base,
        p_h.clone(),
        d_h,
    );
    let global = SubgroupFunctor::subscripted_unchecked(
        ctx.whole(),
        ctx.prime(),
        base,
        ctx.sylow().clone(),
        d.to_vec(),
    );
    let mut checked = 0;
    for u in lattice::subgroups_of(h)? {
        if !arith::is_p_power(u.order() as u64, ctx.prime()) {
            continue;
        }
        checked += 1;
        let lhs = local.apply(&u)?.output;
        let rhs = global.apply(&u)?.output;
        if lhs != rhs {
            return Ok(RestrictionReport {
                checked,
                pass: false,
                witness: Some(format!("U={:?}", u.elems())),
            });
        }
    }
    Ok(RestrictionReport { checked, pass: true, witness: None })
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
    fn base_functors_on_abelian_groups() {
        let g = build(&Construction::ElementaryAbelian { p: 3, k: 2 }).unwrap();
        let u = Subgroup::whole(&g);
        for base in [BaseFunctor::CenterJ(FamilyKind::Order), BaseFunctor::J(FamilyKind::Order)] {
            assert_eq!(base.apply(&u).unwrap(), u);
        }
        let triv = Subgroup::trivial(&g);
        for base in BaseFunctor::ALL {
            assert_eq!(base.apply(&triv).unwrap(), triv);
        }
    }

    #[test]
    fn omega_center_j_on_heisenberg() {
        let g = build(&Construction::Heisenberg { p: 3 }).unwrap();
        let u = Subgroup::whole(&g);
        let v = BaseFunctor::OmegaCenterJ(FamilyKind::Elementary).apply(&u).unwrap();
        // J_e(Heis27) = Heis27 (exponent 3), so the value is Z(G), order 3
        assert_eq!(v, subgroup::center(&u));
    }

    #[test]
    fn w_d_with_d_equal_p_is_plain_w_on_sylow_subgroups() {
        let g = build(&Construction::Alternating { n: 4 }).unwrap();
        let ctx = PrimeContext::new(&g, 3).unwrap();
        let base = BaseFunctor::CenterJ(FamilyKind::Order);
        let w_d =
            SubgroupFunctor::subscripted(&ctx, base, ctx.sylow().elems().to_vec()).unwrap();
        for u in ctx.p_subgroups().iter() {
            if u.is_trivial() {
                continue;
            }
            let lhs = w_d.apply(u).unwrap();
            assert_eq!(lhs.output, base.apply(u).unwrap());
            assert_eq!(lhs.case, FunctorCase::IntersectionGenerated);
        }
    }

    #[test]
    fn w_d_distinguished_factor_case() {
        // G = Sym3 x Z3, D = the central Z3 factor: W_D(P) = W(<P ∩ D>) = D
        let g = sym3_z3();
        let ctx = PrimeContext::new(&g, 3).unwrap();
        let base = BaseFunctor::CenterJ(FamilyKind::Order);
        let d: Vec<Elem> = vec![0, 1, 2];
        let w_d = SubgroupFunctor::subscripted(&ctx, base, d.clone()).unwrap();
        let value = w_d.apply(ctx.sylow()).unwrap();
        assert_eq!(value.case, FunctorCase::IntersectionGenerated);
        assert_eq!(value.output.elems(), &[0, 1, 2]);
    }

    #[test]
    fn w_d_falls_back_when_intersection_is_trivial() {
        let g = sym3_z3();
        let ctx = PrimeContext::new(&g, 3).unwrap();
        let base = BaseFunctor::CenterJ(FamilyKind::Order);
        let d: Vec<Elem> = vec![0, 1, 2];
        let w_d = SubgroupFunctor::subscripted(&ctx, base, d).unwrap();
        // V = the A3 part of the Sylow subgroup meets D in the identity
        let a3: Vec<Elem> = g
            .elems()
            .filter(|&e| e % 3 == 0 && (e == 0 || g.order_of(e) == 3))
            .collect();
        let v = Subgroup::from_elems(&g, a3).unwrap();
        assert_eq!(v.order(), 3);
        let value = w_d.apply(&v).unwrap();
        assert_eq!(value.case, FunctorCase::EmptyIntersectionFallback);
        assert_eq!(value.output, base.apply(&v).unwrap());
    }

    #[test]
    fn w_d_conjugates_non_sylow_inputs_back() {
        let g = build(&Construction::Alternating { n: 4 }).unwrap();
        let ctx = PrimeContext::new(&g, 3).unwrap();
        let base = BaseFunctor::CenterJ(FamilyKind::Order);
        let mut w_d =
            SubgroupFunctor::subscripted(&ctx, base, ctx.sylow().elems().to_vec()).unwrap();
        w_d.check_well_defined = true;
        // a Sylow 3-subgroup other than the chosen one
        let other = g
            .elems()
            .filter(|&e| g.order_of(e) == 3 && !ctx.sylow().contains(e))
            .map(|e| subgroup::closure(&g, &[e]))
            .next()
            .unwrap();
        let value = w_d.apply(&other).unwrap();
        assert!(value.conjugator.is_some());
        // ZJ_o of a cyclic group is itself, moved back to the input
        assert_eq!(value.output, other);
    }

    #[test]
    fn conjugacy_axioms_hold_for_real_functors_on_alt4() {
        let g = build(&Construction::Alternating { n: 4 }).unwrap();
        let ctx = PrimeContext::new(&g, 3).unwrap();
        for base in [
            BaseFunctor::CenterJ(FamilyKind::Order),
            BaseFunctor::OmegaCenterJ(FamilyKind::Elementary),
        ] {
            let w = SubgroupFunctor::subscripted(&ctx, base, ctx.sylow().elems().to_vec())
                .unwrap();
            let report = verify_conjugacy_axioms(&ctx, &w).unwrap();
            assert!(report.pass(), "{base:?}: {report:?}");
        }
    }

    #[test]
    fn fixture_fails_equivariance_somewhere() {
        // the fixture must be caught on at least one corpus-like group;
        // Heis27 has noncyclic subgroups whose greatest element moves
        // under conjugation
        let mut caught = false;
        for g in [build(&Construction::Heisenberg { p: 3 }).unwrap(), sym3_z3()] {
            let ctx = PrimeContext::new(&g, 3).unwrap();
            let w = SubgroupFunctor::plain(ctx.whole(), 3, BaseFunctor::GreatestElementCyclic);
            let report = verify_conjugacy_axioms(&ctx, &w).unwrap();
            assert!(report.containment_failures.is_empty());
            assert!(report.nontriviality_failures.is_empty());
            if !report.equivariance_failures.is_empty() {
                caught = true;
            }
        }
        assert!(caught, "the fixture functor evaded the axiom checker");
    }

    #[test]
    fn section_functor_cases_on_sym3_z3() {
        let g = sym3_z3();
        let ctx = PrimeContext::new(&g, 3).unwrap();
        let base = BaseFunctor::CenterJ(FamilyKind::Order);
        let d: Vec<Elem> = vec![0, 1, 2];
        let mut w = SectionFunctor::new(&ctx, base, d.clone()).unwrap();
        w.check_well_defined = true;

        // K = 1, H = the central factor <= P, D ∩ H = D nontrivial:
        // the intersection branch fires
        let h = Subgroup::from_elems(&g, d.clone()).unwrap();
        let sect = section::quotient(&h, &Subgroup::trivial(&g)).unwrap();
        let value = w.apply(&sect).unwrap();
        assert_eq!(value.case, FunctorCase::SectionIntersection);
        assert_eq!(value.output.order(), 3);

        // H = P, K = D: D ∩ H ⊆ K, so the plain branch fires and the
        // value is the whole (cyclic, order 3) quotient
        let k = Subgroup::from_elems(&g, d).unwrap();
        let sect = section::quotient(ctx.sylow(), &k).unwrap();
        let value = w.apply(&sect).unwrap();
        assert_eq!(value.case, FunctorCase::SectionPlain);
        assert_eq!(value.output.order(), 3);
        assert_eq!(value.output, Subgroup::whole(sect.quotient()));
    }

    #[test]
    fn section_axioms_hold_on_sym3_z3() {
        let g = sym3_z3();
        let ctx = PrimeContext::new(&g, 3).unwrap();
        for base in BaseFunctor::STATEMENT_TRIO {
            let w = SectionFunctor::new(&ctx, base, ctx.sylow().elems().to_vec()).unwrap();
            let report = verify_section_axioms(&ctx, &w, 9).unwrap();
            assert!(report.pass(), "{base:?}: {report:?}");
            assert!(report.sections_checked > 0);
            assert!(report.quadruples_checked > 0);
        }
    }

    #[test]
    fn w_star_specializes_to_w_d_on_trivial_bottom() {
        let g = build(&Construction::Alternating { n: 4 }).unwrap();
        let ctx = PrimeContext::new(&g, 3).unwrap();
        let base = BaseFunctor::CenterJ(FamilyKind::Order);
        let d = ctx.sylow().elems().to_vec();
        let w_d = SubgroupFunctor::subscripted(&ctx, base, d.clone()).unwrap();
        let w_star = SectionFunctor::new(&ctx, base, d).unwrap();
        for h in ctx.p_subgroups().iter() {
            let sect = section::quotient(h, &Subgroup::trivial(&g)).unwrap();
            let star = w_star.apply(&sect).unwrap();
            let flat = w_d.apply(h).unwrap();
            // compare through the projection H -> H/1
            let image = sect.project_subgroup(&flat.output).unwrap();
            assert_eq!(star.output, image);
        }
    }

    #[test]
    fn restriction_agrees_on_sylow_normalizer() {
        let g = build(&Construction::Alternating { n: 4 }).unwrap();
        let ctx = PrimeContext::new(&g, 3).unwrap();
        let h = subgroup::normalizer(&ctx.whole(), ctx.sylow());
        let base = BaseFunctor::CenterJ(FamilyKind::Order);
        let rep =
            restriction_consistency_check(&ctx, base, ctx.sylow().elems(), &h, 0).unwrap();
        assert!(rep.pass, "{:?}", rep.witness);
        assert!(rep.checked > 0);
        // whole-group restriction with g = identity is a tautology
        let rep = restriction_consistency_check(&ctx, base, ctx.sylow().elems(), &ctx.whole(), 0)
            .unwrap();
        assert!(rep.pass);
    }
}
