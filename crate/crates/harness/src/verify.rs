//! Theorem and lemma verifiers.
//!
//! Each verifier evaluates the statement's hypotheses and its conclusion
//! through separate code paths (sharing only the group kernel) and emits
//! one [`VerificationRecord`]. Hypotheses are never assumed: a record with
//! every hypothesis true and a false conclusion is a kernel defect, and
//! the campaign treats it as such.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use zjkit_core::fusion::{self, PrimeContext, StronglyClosedSet};
use zjkit_core::functors::{self, BaseFunctor, SectionFunctor, SubgroupFunctor};
use zjkit_core::group::Elem;
use zjkit_core::lattice;
use zjkit_core::replacement;
use zjkit_core::section;
use zjkit_core::subgroup::{self, Subgroup};
use zjkit_core::sylow;
use zjkit_core::thompson::{self, FamilyKind};

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct VerificationRecord {
    pub group: String,
    pub order: usize,
    pub p: u64,
    pub d: String,
    pub check: String,
    pub hypotheses: BTreeMap<String, bool>,
    pub conclusion: Option<bool>,
    pub witness: Option<String>,
    pub ms: u128,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub toggled: Option<String>,
}

impl VerificationRecord {
    /// The zero-tolerance invariant: a false conclusion is only admissible
    /// under a false hypothesis.
    pub fn invariant_ok(&self) -> bool {
        !(self.hypotheses.values().all(|&v| v) && self.conclusion == Some(false))
    }
}

/// Hypothesis toggles for the counterexample-probe mode. A toggled clause
/// is recorded as false (so the record stays invariant-safe) and no longer
/// gates conclusion evaluation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Toggles {
    pub strong_closure_off: bool,
    pub stability_off: bool,
    pub omega_off: bool,
}

impl Toggles {
    pub const NONE: Toggles =
        Toggles { strong_closure_off: false, stability_off: false, omega_off: false };

    pub fn label(&self) -> Option<String> {
        let mut parts = Vec::new();
        if self.strong_closure_off {
            parts.push("strong-closure");
        }
        if self.stability_off {
            parts.push("stability");
        }
        if self.omega_off {
            parts.push("omega");
        }
        if parts.is_empty() {
            None
        } else {
            Some(parts.join(","))
        }
    }
}

/// Lazily computed per-(group, prime) facts shared across verifiers.
pub struct CtxFacts<'a> {
    pub ctx: &'a PrimeContext,
    pub name: String,
    cic: OnceLock<bool>,
    p_constrained: OnceLock<bool>,
    qdp_free: OnceLock<bool>,
    local_pc: OnceLock<bool>,
}

impl<'a> CtxFacts<'a> {
    pub fn new(name: &str, ctx: &'a PrimeContext) -> CtxFacts<'a> {
        CtxFacts {
            ctx,
            name: name.to_string(),
            cic: OnceLock::new(),
            p_constrained: OnceLock::new(),
            qdp_free: OnceLock::new(),
            local_pc: OnceLock::new(),
        }
    }

    pub fn p_stable(&self) -> bool {
        self.ctx.is_p_stable().stable
    }

    /// `C_G(O_p(G)) <= O_p(G)`.
    pub fn centralizer_in_core(&self) -> bool {
        *self.cic.get_or_init(|| {
            let whole = self.ctx.whole();
            let core = sylow::p_core(&whole, self.ctx.prime());
            subgroup::centralizer(&whole, core.elems()).is_subset_of(&core)
        })
    }

    pub fn p_constrained(&self) -> bool {
        *self.p_constrained.get_or_init(|| {
            fusion::is_p_constrained(self.ctx.group(), self.ctx.prime()).expect("prime validated")
        })
    }

    pub fn qdp_free(&self) -> bool {
        *self.qdp_free.get_or_init(|| {
            fusion::is_qdp_free(self.ctx.group(), self.ctx.prime())
                .expect("bounds hold for corpus groups")
                .free
        })
    }

    /// `N_G(U)` p-constrained for every nontrivial `U <= P` (up to
    /// conjugacy; the predicate is conjugation-invariant).
    pub fn local_p_constrained(&self) -> bool {
        *self.local_pc.get_or_init(|| {
            let whole = self.ctx.whole();
            let subs = self.ctx.p_subgroups();
            self.ctx.p_subgroup_class_reps().iter().all(|&i| {
                let u = &subs[i];
                if u.is_trivial() {
                    return true;
                }
                let n = subgroup::normalizer(&whole, u);
                let (table, _) = n.as_table().expect("bound holds");
                fusion::is_p_constrained(&table, self.ctx.prime()).expect("prime validated")
            })
        })
    }

    fn base_record(&self, check: &str, d: String) -> VerificationRecord {
        VerificationRecord {
            group: self.name.clone(),
            order: self.ctx.group().order(),
            p: self.ctx.prime(),
            d,
            check: check.to_string(),
            hypotheses: BTreeMap::new(),
            conclusion: None,
            witness: None,
            ms: 0,
            toggled: None,
        }
    }
}

pub fn describe_subgroup(s: &Subgroup) -> String {
    describe_elems("subgrp", s.elems())
}

pub fn describe_elems(tag: &str, elems: &[Elem]) -> String {
    if elems.len() > 12 {
        let head: Vec<String> = elems.iter().take(12).map(|e| e.to_string()).collect();
        format!("{tag}|n={}|[{},..]", elems.len(), head.join(","))
    } else {
        let all: Vec<String> = elems.iter().map(|e| e.to_string()).collect();
        format!("{tag}|n={}|[{}]", elems.len(), all.join(","))
    }
}

/// Adds a hypothesis clause, honoring a probe toggle.
fn clause(
    hyps: &mut BTreeMap<String, bool>,
    gate: &mut bool,
    name: &str,
    value: bool,
    toggled_off: bool,
) {
    if toggled_off {
        hyps.insert(format!("{name}(toggled-off)"), false);
    } else {
        hyps.insert(name.to_string(), value);
        *gate &= value;
    }
}

/// When the omega toggle is active the conclusion is computed without
/// the omega operator; the record marks that as a falsified clause so the
/// zero-tolerance invariant cannot trip on the modified statement.
fn mark_omega_toggle(hyps: &mut BTreeMap<String, bool>, toggles: Toggles) {
    if toggles.omega_off {
        hyps.insert("omega_applied(toggled-off)".to_string(), false);
    }
}

fn statement_trio(omega_off: bool) -> [BaseFunctor; 3] {
    if omega_off {
        [
            BaseFunctor::CenterJ(FamilyKind::Order),
            BaseFunctor::CenterJ(FamilyKind::Rank),
            BaseFunctor::CenterJ(FamilyKind::Elementary),
        ]
    } else {
        BaseFunctor::STATEMENT_TRIO
    }
}

fn is_strongly_closed_subgroup(facts: &CtxFacts, d: &Subgroup) -> bool {
    d.is_subset_of(facts.ctx.sylow())
        && fusion::is_strongly_closed(facts.ctx, &d.elems().to_vec())
            .map(|(ok, _)| ok)
            .unwrap_or(false)
}

/// The first normality statement: under p-stability and
/// `C_G(O_p(G)) <= O_p(G)`, the trio applied to a strongly closed subgroup
/// is normal in `G`.
pub fn verify_b(facts: &CtxFacts, d: &Subgroup, toggles: Toggles) -> VerificationRecord {
    let mut rec = facts.base_record("B", describe_subgroup(d));
    rec.toggled = toggles.label();
    mark_omega_toggle(&mut rec.hypotheses, toggles);
    let mut gate = true;
    clause(&mut rec.hypotheses, &mut gate, "p_odd", true, false);
    clause(&mut rec.hypotheses, &mut gate, "p_stable", facts.p_stable(), toggles.stability_off);
    clause(&mut rec.hypotheses, &mut gate, "centralizer_in_core", facts.centralizer_in_core(), false);
    clause(
        &mut rec.hypotheses,
        &mut gate,
        "d_strongly_closed_subgroup",
        is_strongly_closed_subgroup(facts, d),
        toggles.strong_closure_off,
    );
    if !gate {
        return rec;
    }
    let whole = facts.ctx.whole();
    let mut ok = true;
    for base in statement_trio(toggles.omega_off) {
        let s = base.apply(d).expect("D is a p-group");
        if !s.is_normalized_by(&whole) {
            ok = false;
            rec.witness = Some(format!("{} not normal: {}", base.label(), describe_subgroup(&s)));
            break;
        }
    }
    rec.conclusion = Some(ok);
    rec
}

/// Corollary: when `Ω(D)` has exponent p the three un-omega'd centers
/// `Z(J_x(Ω(D)))` are normal and coincide.
pub fn verify_cor_c(facts: &CtxFacts, d: &Subgroup, toggles: Toggles) -> VerificationRecord {
    let mut rec = facts.base_record("C", describe_subgroup(d));
    rec.toggled = toggles.label();
    let mut gate = true;
    clause(&mut rec.hypotheses, &mut gate, "p_odd", true, false);
    clause(&mut rec.hypotheses, &mut gate, "p_stable", facts.p_stable(), toggles.stability_off);
    clause(&mut rec.hypotheses, &mut gate, "centralizer_in_core", facts.centralizer_in_core(), false);
    clause(
        &mut rec.hypotheses,
        &mut gate,
        "d_strongly_closed_subgroup",
        is_strongly_closed_subgroup(facts, d),
        toggles.strong_closure_off,
    );
    let omega_d = thompson::omega(d).expect("D is a p-group");
    clause(
        &mut rec.hypotheses,
        &mut gate,
        "omega_d_exponent_p",
        !omega_d.is_trivial() && omega_d.exponent() == facts.ctx.prime(),
        false,
    );
    if !gate {
        return rec;
    }
    let whole = facts.ctx.whole();
    let mut values = Vec::new();
    let mut ok = true;
    for kind in FamilyKind::ALL {
        let s = BaseFunctor::CenterJ(kind).apply(&omega_d).expect("p-group");
        if !s.is_normalized_by(&whole) {
            ok = false;
            rec.witness = Some(format!("Z(J_{kind}(Omega(D))) not normal"));
            break;
        }
        values.push(s);
    }
    if ok && !(values[0] == values[1] && values[1] == values[2]) {
        ok = false;
        rec.witness = Some("the three values do not coincide".to_string());
    }
    rec.conclusion = Some(ok);
    rec
}

/// `Z_x(K) ∩ B` is normal in `G` for a strongly closed set `D` with
/// `K = <D>`, a normal p-subgroup `B`, provided every family member of
/// `K` sits inside `D`.
pub fn verify_t32(
    facts: &CtxFacts,
    d_set: &[Elem],
    b: &Subgroup,
    kind: FamilyKind,
    toggles: Toggles,
) -> VerificationRecord {
    let d_desc = format!("{};B={};x={kind}", describe_elems("set", d_set), b.order());
    let mut rec = facts.base_record("T3.2", d_desc);
    rec.toggled = toggles.label();
    mark_omega_toggle(&mut rec.hypotheses, toggles);
    let mut gate = true;
    clause(&mut rec.hypotheses, &mut gate, "p_odd", true, false);
    clause(&mut rec.hypotheses, &mut gate, "p_stable", facts.p_stable(), toggles.stability_off);
    let closed = fusion::is_strongly_closed(facts.ctx, d_set).map(|(ok, _)| ok).unwrap_or(false);
    clause(&mut rec.hypotheses, &mut gate, "d_strongly_closed_set", closed, toggles.strong_closure_off);
    let whole = facts.ctx.whole();
    let b_ok = b.is_normalized_by(&whole)
        && zjkit_core::arith::is_p_power(b.order() as u64, facts.ctx.prime());
    clause(&mut rec.hypotheses, &mut gate, "b_normal_p_subgroup", b_ok, false);
    let k = subgroup::closure(facts.ctx.group(), d_set);
    let family_in_d = family_inside_set(&k, kind, d_set);
    clause(&mut rec.hypotheses, &mut gate, "family_in_d", family_in_d, false);
    if !gate {
        return rec;
    }
    let z = z_x(&k, kind, toggles.omega_off);
    let zb = z.intersection(b);
    rec.conclusion = Some(zb.is_normalized_by(&whole));
    if rec.conclusion == Some(false) {
        rec.witness = Some(format!("Z_x ∩ B = {}", describe_subgroup(&zb)));
    }
    rec
}

fn z_x(k: &Subgroup, kind: FamilyKind, omega_off: bool) -> Subgroup {
    let base = match kind {
        FamilyKind::Order => BaseFunctor::CenterJ(FamilyKind::Order),
        _ if omega_off => BaseFunctor::CenterJ(kind),
        _ => BaseFunctor::OmegaCenterJ(kind),
    };
    base.apply(k).expect("K is a p-group")
}

fn family_inside_set(k: &Subgroup, kind: FamilyKind, d_set: &[Elem]) -> bool {
    if k.is_trivial() {
        return true;
    }
    let fam = match thompson::abelian_family(k, kind) {
        Ok(f) => f,
        Err(_) => return false,
    };
    fam.members
        .iter()
        .all(|m| m.elems().iter().all(|e| d_set.binary_search(e).is_ok()))
}

/// Fusion-control version: the normalizer of `Z_x(K)` controls strong
/// G-fusion in `P` for p-stable, p-constrained `G`.
pub fn verify_t36(
    facts: &CtxFacts,
    d_set: &[Elem],
    kind: FamilyKind,
    toggles: Toggles,
) -> VerificationRecord {
    let d_desc = format!("{};x={kind}", describe_elems("set", d_set));
    let mut rec = facts.base_record("T3.6", d_desc);
    rec.toggled = toggles.label();
    mark_omega_toggle(&mut rec.hypotheses, toggles);
    let mut gate = true;
    clause(&mut rec.hypotheses, &mut gate, "p_odd", true, false);
    clause(&mut rec.hypotheses, &mut gate, "p_stable", facts.p_stable(), toggles.stability_off);
    clause(&mut rec.hypotheses, &mut gate, "p_constrained", facts.p_constrained(), false);
    let closed = fusion::is_strongly_closed(facts.ctx, d_set).map(|(ok, _)| ok).unwrap_or(false);
    clause(&mut rec.hypotheses, &mut gate, "d_strongly_closed_set", closed, toggles.strong_closure_off);
    let k = subgroup::closure(facts.ctx.group(), d_set);
    clause(&mut rec.hypotheses, &mut gate, "family_in_d", family_inside_set(&k, kind, d_set), false);
    if !gate {
        return rec;
    }
    let z = z_x(&k, kind, toggles.omega_off);
    let n = subgroup::normalizer(&facts.ctx.whole(), &z);
    let (ok, witness) = fusion::controls_strong_fusion(facts.ctx, &n).expect("N <= G");
    rec.conclusion = Some(ok);
    if let Some(w) = witness {
        rec.witness = Some(format!("U={:?}, g={}", w.subgroup, w.g));
    }
    rec
}

/// Normalizers of the trio control fusion when every local normalizer is
/// p-constrained and `G` is p-stable.
pub fn verify_e(facts: &CtxFacts, d: &Subgroup, toggles: Toggles) -> VerificationRecord {
    let mut rec = facts.base_record("E", describe_subgroup(d));
    rec.toggled = toggles.label();
    mark_omega_toggle(&mut rec.hypotheses, toggles);
    let mut gate = true;
    clause(&mut rec.hypotheses, &mut gate, "p_odd", true, false);
    clause(&mut rec.hypotheses, &mut gate, "p_stable", facts.p_stable(), toggles.stability_off);
    clause(&mut rec.hypotheses, &mut gate, "local_p_constrained", facts.local_p_constrained(), false);
    clause(
        &mut rec.hypotheses,
        &mut gate,
        "d_strongly_closed_subgroup",
        is_strongly_closed_subgroup(facts, d),
        toggles.strong_closure_off,
    );
    if !gate {
        return rec;
    }
    fusion_control_conclusion(facts, d, toggles, &mut rec, false);
    rec
}

/// Same conclusion as Theorem E under Qd(p)-freeness.
pub fn verify_f(facts: &CtxFacts, d: &Subgroup, toggles: Toggles) -> VerificationRecord {
    let mut rec = facts.base_record("F", describe_subgroup(d));
    rec.toggled = toggles.label();
    mark_omega_toggle(&mut rec.hypotheses, toggles);
    let mut gate = true;
    clause(&mut rec.hypotheses, &mut gate, "p_odd", true, false);
    clause(&mut rec.hypotheses, &mut gate, "qdp_free", facts.qdp_free(), false);
    clause(
        &mut rec.hypotheses,
        &mut gate,
        "d_strongly_closed_subgroup",
        is_strongly_closed_subgroup(facts, d),
        toggles.strong_closure_off,
    );
    if !gate {
        return rec;
    }
    fusion_control_conclusion(facts, d, toggles, &mut rec, false);
    rec
}

fn fusion_control_conclusion(
    facts: &CtxFacts,
    d: &Subgroup,
    toggles: Toggles,
    rec: &mut VerificationRecord,
    through_omega_d: bool,
) {
    let whole = facts.ctx.whole();
    let host = if through_omega_d { thompson::omega(d).expect("p-group") } else { d.clone() };
    let bases: Vec<BaseFunctor> = if through_omega_d {
        FamilyKind::ALL.iter().map(|&k| BaseFunctor::CenterJ(k)).collect()
    } else {
        statement_trio(toggles.omega_off).to_vec()
    };
    let mut ok = true;
    for base in bases {
        let s = base.apply(&host).expect("p-group");
        let n = subgroup::normalizer(&whole, &s);
        let (controls, witness) = fusion::controls_strong_fusion(facts.ctx, &n).expect("N <= G");
        if !controls {
            ok = false;
            rec.witness = witness.map(|w| {
                format!("{}: U={:?}, g={}", base.label(), w.subgroup, w.g)
            });
            break;
        }
    }
    rec.conclusion = Some(ok);
}

/// Corollary to the fusion theorem: with `exp(Ω(D)) = p` the un-omega'd
/// normalizers control fusion, and the three coincide.
pub fn verify_cor_f(facts: &CtxFacts, d: &Subgroup, toggles: Toggles) -> VerificationRecord {
    let mut rec = facts.base_record("CorF", describe_subgroup(d));
    rec.toggled = toggles.label();
    let mut gate = true;
    clause(&mut rec.hypotheses, &mut gate, "p_odd", true, false);
    clause(&mut rec.hypotheses, &mut gate, "qdp_free", facts.qdp_free(), false);
    clause(
        &mut rec.hypotheses,
        &mut gate,
        "d_strongly_closed_subgroup",
        is_strongly_closed_subgroup(facts, d),
        toggles.strong_closure_off,
    );
    let omega_d = thompson::omega(d).expect("p-group");
    clause(
        &mut rec.hypotheses,
        &mut gate,
        "omega_d_exponent_p",
        !omega_d.is_trivial() && omega_d.exponent() == facts.ctx.prime(),
        false,
    );
    if !gate {
        return rec;
    }
    fusion_control_conclusion(facts, d, toggles, &mut rec, true);
    if rec.conclusion == Some(true) {
        let a = BaseFunctor::CenterJ(FamilyKind::Order).apply(&omega_d).unwrap();
        let b = BaseFunctor::CenterJ(FamilyKind::Rank).apply(&omega_d).unwrap();
        let c = BaseFunctor::CenterJ(FamilyKind::Elementary).apply(&omega_d).unwrap();
        if !(a == b && b == c) {
            rec.conclusion = Some(false);
            rec.witness = Some("the three values do not coincide".to_string());
        }
    }
    rec
}

/// p-nilpotency criterion: if the normalizer of one trio member is
/// p-nilpotent, so is `G`.
pub fn verify_h(facts: &CtxFacts, d: &Subgroup, toggles: Toggles) -> VerificationRecord {
    let mut rec = facts.base_record("H", describe_subgroup(d));
    rec.toggled = toggles.label();
    mark_omega_toggle(&mut rec.hypotheses, toggles);
    let mut gate = true;
    clause(&mut rec.hypotheses, &mut gate, "p_odd", true, false);
    clause(
        &mut rec.hypotheses,
        &mut gate,
        "d_strongly_closed_subgroup",
        is_strongly_closed_subgroup(facts, d),
        toggles.strong_closure_off,
    );
    let whole = facts.ctx.whole();
    let mut nilpotent_normalizer = None;
    for base in statement_trio(toggles.omega_off) {
        let s = base.apply(d).expect("p-group");
        let n = subgroup::normalizer(&whole, &s);
        let (table, _) = n.as_table().expect("bound holds");
        if fusion::is_p_nilpotent(&table, facts.ctx.prime()).0 {
            nilpotent_normalizer = Some(base.label());
            break;
        }
    }
    clause(
        &mut rec.hypotheses,
        &mut gate,
        "normalizer_p_nilpotent",
        nilpotent_normalizer.is_some(),
        false,
    );
    if !gate {
        return rec;
    }
    let (ok, complement) = fusion::is_p_nilpotent(facts.ctx.group(), facts.ctx.prime());
    rec.conclusion = Some(ok);
    rec.witness = match (nilpotent_normalizer, complement) {
        (Some(w), Some(c)) => Some(format!("via {w}; complement order {}", c.order())),
        (Some(w), None) => Some(format!("via {w}; no complement")),
        _ => None,
    };
    rec
}

/// Replacement theorem scan over one p-group: every hypothesis-satisfying
/// pair must replace successfully with all four conclusions verified.
pub fn verify_replacement_scan(facts: &CtxFacts) -> VerificationRecord {
    let mut rec = facts.base_record("A", "-".to_string());
    let g = facts.ctx.group();
    let whole = facts.ctx.whole();
    let mut gate = true;
    clause(&mut rec.hypotheses, &mut gate, "p_odd", true, false);
    let p_group = zjkit_core::arith::is_p_power(g.order() as u64, facts.ctx.prime());
    clause(&mut rec.hypotheses, &mut gate, "p_group", p_group, false);
    if !gate {
        return rec;
    }
    let subs = lattice::all_subgroups(g).expect("bound holds");
    let profiles: Vec<(bool, bool, Subgroup, Subgroup)> = subs
        .iter()
        .map(|s| {
            (
                s.is_abelian(),
                s.class_at_most(2),
                subgroup::derived_subgroup(s),
                subgroup::normalizer(&whole, s),
            )
        })
        .collect();
    let mut pairs = 0usize;
    let mut failures = Vec::new();
    for (ai, a) in subs.iter().enumerate() {
        if !profiles[ai].0 {
            continue;
        }
        for (bi, b) in subs.iter().enumerate() {
            let (_, class2, b_derived, _) = &profiles[bi];
            if !class2
                || !b_derived.is_subset_of(a)
                || !b.is_normalized_by(a)
                || b.is_subset_of(&profiles[ai].3)
            {
                continue;
            }
            // cross-check against the dedicated hypothesis checker
            let report = replacement::check_hypotheses(&whole, a, b).expect("odd p-group");
            if !report.satisfied {
                continue;
            }
            pairs += 1;
            match replacement::replace(&whole, a, b) {
                Ok(result) => {
                    if !replacement::conclusions_hold(&whole, a, b, &result.a_star) {
                        failures.push(format!("conclusions fail at A={:?} B={:?}", a.elems(), b.elems()));
                    }
                    let bound = (g.order() as f64).log(facts.ctx.prime() as f64).ceil() as usize;
                    if result.trace.len() > bound {
                        failures.push(format!("trace too long at A={:?} B={:?}", a.elems(), b.elems()));
                    }
                }
                Err(e) => failures.push(format!("replace error {e} at A={:?}", a.elems())),
            }
        }
    }
    rec.conclusion = Some(failures.is_empty());
    rec.witness = Some(if failures.is_empty() {
        format!("pairs={pairs}")
    } else {
        format!("pairs={pairs}; first failure: {}", failures[0])
    });
    rec
}

/// Commutator-segment lemma scan: in every configuration `G = BA` with
/// `B` normal, `B' <= Z(G)`, `A` abelian and `[B,A,A,A] = 1`, each
/// segment `[b, A]` is abelian (as a raw commutator set and as the
/// subgroup it generates).
pub fn verify_glauberman_lemma(facts: &CtxFacts) -> VerificationRecord {
    let mut rec = facts.base_record("GlbLemma", "-".to_string());
    let g = facts.ctx.group();
    let whole = facts.ctx.whole();
    let mut gate = true;
    clause(&mut rec.hypotheses, &mut gate, "p_odd", true, false);
    let p_group = zjkit_core::arith::is_p_power(g.order() as u64, facts.ctx.prime());
    clause(&mut rec.hypotheses, &mut gate, "p_group", p_group, false);
    if !gate {
        return rec;
    }
    let subs = lattice::all_subgroups(g).expect("bound holds");
    let z = subgroup::center(&whole);
    let mut configs = 0usize;
    let mut checks = 0usize;
    let mut failure = None;
    for b_host in &subs {
        if !b_host.is_normalized_by(&whole)
            || !subgroup::derived_subgroup(b_host).is_subset_of(&z)
        {
            continue;
        }
        for a in &subs {
            if !a.is_abelian() || !subgroup::set_product_covers(&whole, b_host, a) {
                continue;
            }
            let step1 = subgroup::commutator_subgroup(g, b_host, a);
            let step2 = subgroup::commutator_subgroup(g, &step1, a);
            let step3 = subgroup::commutator_subgroup(g, &step2, a);
            if !step3.is_trivial() {
                continue;
            }
            configs += 1;
            for &b in b_host.elems() {
                checks += 1;
                let seg = replacement::commutator_segment(&whole, b_host, b, a)
                    .expect("hypotheses verified above");
                if !seg.is_abelian() || !replacement::segment_set_commutes(&whole, b, a) {
                    failure = Some(format!("b={b}, A={:?}", a.elems()));
                }
            }
        }
    }
    rec.conclusion = Some(failure.is_none());
    rec.witness = Some(match failure {
        None => format!("configs={configs}, segments={checks}"),
        Some(f) => f,
    });
    rec
}

/// Rank lemma scan: for every abelian subgroup, the rank computed through
/// the p-torsion route agrees with the largest elementary abelian
/// subgroup found by direct enumeration.
pub fn verify_rank_lemma(facts: &CtxFacts) -> VerificationRecord {
    let mut rec = facts.base_record("RankLemma", "-".to_string());
    let g = facts.ctx.group();
    let mut gate = true;
    let p_group = zjkit_core::arith::is_p_power(g.order() as u64, facts.ctx.prime());
    clause(&mut rec.hypotheses, &mut gate, "p_group", p_group, false);
    if !gate {
        return rec;
    }
    let mut checked = 0usize;
    let mut failure = None;
    for a in lattice::all_subgroups(g).expect("bound holds") {
        if !a.is_abelian() || a.is_trivial() {
            continue;
        }
        checked += 1;
        let (rank, _) = thompson::rank_and_exponent(&a).expect("abelian");
        let slow =
            zjkit_core::oracle::abelian_rank_by_subgroup_scan(g, a.elems(), facts.ctx.prime());
        if rank != slow {
            failure = Some(format!("A={:?}: {rank} vs {slow}", a.elems()));
            break;
        }
    }
    rec.conclusion = Some(failure.is_none());
    rec.witness = Some(failure.unwrap_or_else(|| format!("abelians={checked}")));
    rec
}

/// J-subgroup monotonicity over every subgroup and every kind.
pub fn verify_j_monotonicity(facts: &CtxFacts) -> VerificationRecord {
    let mut rec = facts.base_record("L3.1", "-".to_string());
    let g = facts.ctx.group();
    let mut gate = true;
    let p_group = zjkit_core::arith::is_p_power(g.order() as u64, facts.ctx.prime());
    clause(&mut rec.hypotheses, &mut gate, "p_group", p_group, false);
    if !gate {
        return rec;
    }
    let whole = facts.ctx.whole();
    let mut checked = 0usize;
    let mut failure = None;
    'outer: for r in lattice::all_subgroups(g).expect("bound holds") {
        for kind in FamilyKind::ALL {
            checked += 1;
            let rep = thompson::j_monotonicity_check(&whole, &r, kind).expect("R <= P");
            if !rep.pass() {
                failure = Some(format!("R={:?}, kind={kind}: {:?}", r.elems(), rep.witness));
                break 'outer;
            }
        }
    }
    rec.conclusion = Some(failure.is_none());
    rec.witness = Some(failure.unwrap_or_else(|| format!("pairs={checked}")));
    rec
}

/// Abelian normal subgroups of `P` sink into `O_p(G)` under p-stability
/// and `C_G(O_p(G)) <= O_p(G)`.
pub fn verify_opg(facts: &CtxFacts, toggles: Toggles) -> VerificationRecord {
    let mut rec = facts.base_record("opg", "-".to_string());
    rec.toggled = toggles.label();
    let mut gate = true;
    clause(&mut rec.hypotheses, &mut gate, "p_odd", true, false);
    clause(&mut rec.hypotheses, &mut gate, "p_stable", facts.p_stable(), toggles.stability_off);
    clause(&mut rec.hypotheses, &mut gate, "centralizer_in_core", facts.centralizer_in_core(), false);
    if !gate {
        return rec;
    }
    // conclusion through independent code: direct scan rather than the
    // packaged checker
    let whole = facts.ctx.whole();
    let core = sylow::p_core(&whole, facts.ctx.prime());
    let mut checked = 0usize;
    let mut failure = None;
    for a in facts.ctx.p_subgroups().iter() {
        if !a.is_abelian() || !a.is_normalized_by(facts.ctx.sylow()) {
            continue;
        }
        checked += 1;
        if !a.is_subset_of(&core) {
            failure = Some(format!("A={:?}", a.elems()));
            break;
        }
    }
    rec.conclusion = Some(failure.is_none());
    rec.witness = Some(failure.unwrap_or_else(|| format!("abelian_normals={checked}")));
    rec
}

/// Intersection lemma: `D ∩ N` stays strongly closed and
/// `G = N_G(D ∩ N) N`, over the supplied normal subgroups.
pub fn verify_strongly_closed_lemma(
    facts: &CtxFacts,
    d_set: &[Elem],
    normals: &[Subgroup],
) -> VerificationRecord {
    let mut rec = facts.base_record("L-strogly", describe_elems("set", d_set));
    let mut gate = true;
    let closed = fusion::is_strongly_closed(facts.ctx, d_set).map(|(ok, _)| ok).unwrap_or(false);
    clause(&mut rec.hypotheses, &mut gate, "d_strongly_closed_set", closed, false);
    if !gate {
        return rec;
    }
    let d = StronglyClosedSet::new(facts.ctx, d_set.to_vec()).expect("verified above");
    let mut checked = 0usize;
    let mut failure = None;
    for n in normals {
        match fusion::strongly_closed_intersection(facts.ctx, &d, n) {
            Ok(report) => {
                checked += 1;
                if !report.factorization_ok {
                    failure = Some(format!("factorization fails at N order {}", n.order()));
                    break;
                }
            }
            Err(zjkit_core::Error::EmptyIntersection) => continue,
            Err(e) => {
                failure = Some(format!("unexpected error {e}"));
                break;
            }
        }
    }
    rec.conclusion = Some(failure.is_none());
    rec.witness = Some(failure.unwrap_or_else(|| format!("normals={checked}")));
    rec
}

/// Crucial-lemma scan: for normal `B, N` in a p-group with `class(B) <= 2`
/// and `B'` inside every family member, the search yields a `B`-normalized
/// member.
pub fn verify_crucial(facts: &CtxFacts) -> VerificationRecord {
    let mut rec = facts.base_record("L-crucial", "-".to_string());
    let g = facts.ctx.group();
    let mut gate = true;
    clause(&mut rec.hypotheses, &mut gate, "p_odd", true, false);
    let p_group = zjkit_core::arith::is_p_power(g.order() as u64, facts.ctx.prime());
    clause(&mut rec.hypotheses, &mut gate, "p_group", p_group, false);
    if !gate {
        return rec;
    }
    let whole = facts.ctx.whole();
    let normals = lattice::normal_subgroups_of(&whole).expect("bound holds");
    let mut instances = 0usize;
    let mut failure = None;
    'outer: for b in &normals {
        if !b.class_at_most(2) {
            continue;
        }
        let b_derived = subgroup::derived_subgroup(b);
        for n in &normals {
            for kind in FamilyKind::ALL {
                let fam = thompson::abelian_family(n, kind).expect("p-group");
                if fam.members.iter().any(|m| !b_derived.is_subset_of(m)) {
                    continue;
                }
                instances += 1;
                match fusion::crucial_lemma_search(&whole, b, n, kind) {
                    Ok(a) => {
                        if !a.is_normalized_by(b) || !fam.members.contains(&a) {
                            failure = Some(format!(
                                "bad member at B={:?}, N={:?}, kind={kind}",
                                b.elems(),
                                n.elems()
                            ));
                            break 'outer;
                        }
                    }
                    Err(e) => {
                        failure = Some(format!("search failed: {e}"));
                        break 'outer;
                    }
                }
            }
        }
    }
    rec.conclusion = Some(failure.is_none());
    rec.witness = Some(failure.unwrap_or_else(|| format!("instances={instances}")));
    rec
}

/// p-stability passes to `G / O_{p'}(G)`.
pub fn verify_quotient_stability(facts: &CtxFacts) -> VerificationRecord {
    let mut rec = facts.base_record("Lp-stable", "-".to_string());
    let mut gate = true;
    clause(&mut rec.hypotheses, &mut gate, "p_odd", true, false);
    if !gate {
        return rec;
    }
    let report = fusion::quotient_p_stability_check(facts.ctx.group(), facts.ctx.prime())
        .expect("bound holds");
    rec.conclusion = Some(report.implication_ok());
    rec.witness = Some(format!(
        "base={}, quotient={}",
        report.base_stable, report.quotient_stable
    ));
    rec
}

/// Image lemma: conjugate-intersections of `D` stay strongly closed in
/// subgroups, and images stay strongly closed in quotients.
pub fn verify_sc2(
    facts: &CtxFacts,
    d_set: &[Elem],
    subgroup_reps: &[Subgroup],
    normals: &[Subgroup],
) -> VerificationRecord {
    let mut rec = facts.base_record("L-sc2", describe_elems("set", d_set));
    let mut gate = true;
    let closed = fusion::is_strongly_closed(facts.ctx, d_set).map(|(ok, _)| ok).unwrap_or(false);
    clause(&mut rec.hypotheses, &mut gate, "d_strongly_closed_set", closed, false);
    if !gate {
        return rec;
    }
    let d = StronglyClosedSet::new(facts.ctx, d_set.to_vec()).expect("verified above");
    let trivial = Subgroup::trivial(facts.ctx.group());
    let whole = facts.ctx.whole();
    let mut part_a_checked = 0usize;
    let mut part_b_checked = 0usize;
    let mut failure = None;
    // part (a): subgroups with their least Sylow-positioning conjugator
    for h in subgroup_reps {
        let g_elem = least_positioner(facts.ctx, h);
        match fusion::strongly_closed_images(facts.ctx, &d, h, &trivial, g_elem) {
            Ok(report) => {
                part_a_checked += 1;
                if !report.pass() {
                    failure = Some(format!("part (a) fails at H order {}", h.order()));
                    break;
                }
            }
            Err(e) => {
                failure = Some(format!("part (a) error {e}"));
                break;
            }
        }
    }
    // part (b): quotients by each normal subgroup
    if failure.is_none() {
        for n in normals {
            match fusion::strongly_closed_images(facts.ctx, &d, &whole, n, 0) {
                Ok(report) => {
                    part_b_checked += 1;
                    if !report.pass() {
                        failure = Some(format!("part (b) fails at N order {}", n.order()));
                        break;
                    }
                }
                Err(e) => {
                    failure = Some(format!("part (b) error {e}"));
                    break;
                }
            }
        }
    }
    rec.conclusion = Some(failure.is_none());
    rec.witness =
        Some(failure.unwrap_or_else(|| format!("a={part_a_checked}, b={part_b_checked}")));
    rec
}

pub fn least_positioner(ctx: &PrimeContext, h: &Subgroup) -> Elem {
    let g = ctx.group();
    let target = zjkit_core::arith::p_part(h.order() as u64, ctx.prime());
    g.elems()
        .find(|&x| {
            ctx.sylow().elems().iter().filter(|&&u| h.contains(g.conj(u, x))).count() as u64
                == target
        })
        .expect("Sylow subgroups of H extend into G")
}

/// The subscripted functor is a conjugacy functor, and `W_D = W_{D^y}`.
pub fn verify_conj_functor_lemma(
    facts: &CtxFacts,
    d_set: &[Elem],
    bases: &[BaseFunctor],
) -> VerificationRecord {
    let mut rec = facts.base_record("L-cf", describe_elems("set", d_set));
    let mut gate = true;
    let closed = fusion::is_strongly_closed(facts.ctx, d_set).map(|(ok, _)| ok).unwrap_or(false);
    clause(&mut rec.hypotheses, &mut gate, "d_strongly_closed_set", closed, false);
    if !gate {
        return rec;
    }
    let mut failure = None;
    let mut checked = 0usize;
    for &base in bases {
        let w = SubgroupFunctor::subscripted(facts.ctx, base, d_set.to_vec())
            .expect("strong closure verified");
        match functors::verify_conjugacy_axioms(facts.ctx, &w) {
            Ok(report) => {
                checked += report.checked;
                if !report.pass() {
                    failure = Some(format!("{}: {report:?}", base.label()));
                    break;
                }
            }
            Err(e) => {
                failure = Some(format!("{}: error {e}", base.label()));
                break;
            }
        }
    }
    rec.conclusion = Some(failure.is_none());
    rec.witness = Some(failure.unwrap_or_else(|| format!("evaluations={checked}")));
    rec
}

/// Restriction remark: `W_{D^g ∩ H}` equals `W_D` on the p-subgroups of H.
pub fn verify_restriction(
    facts: &CtxFacts,
    d_set: &[Elem],
    subgroup_reps: &[Subgroup],
    bases: &[BaseFunctor],
) -> VerificationRecord {
    let mut rec = facts.base_record("R-res", describe_elems("set", d_set));
    let mut gate = true;
    let closed = fusion::is_strongly_closed(facts.ctx, d_set).map(|(ok, _)| ok).unwrap_or(false);
    clause(&mut rec.hypotheses, &mut gate, "d_strongly_closed_set", closed, false);
    if !gate {
        return rec;
    }
    let mut failure = None;
    let mut checked = 0usize;
    'outer: for h in subgroup_reps {
        let g_elem = least_positioner(facts.ctx, h);
        for &base in bases {
            match functors::restriction_consistency_check(facts.ctx, base, d_set, h, g_elem) {
                Ok(report) => {
                    checked += report.checked;
                    if !report.pass {
                        failure = Some(format!(
                            "{} at H order {}: {:?}",
                            base.label(),
                            h.order(),
                            report.witness
                        ));
                        break 'outer;
                    }
                }
                Err(e) => {
                    failure = Some(format!("error {e}"));
                    break 'outer;
                }
            }
        }
    }
    rec.conclusion = Some(failure.is_none());
    rec.witness = Some(failure.unwrap_or_else(|| format!("evaluations={checked}")));
    rec
}

/// Restricted and quotient functors are conjugacy functors: the
/// subscripted construction survives passage to subgroups (via `D^g ∩ H`),
/// quotients (via `DN/N`) and sections (via `(D^g ∩ H)K/K`).
pub fn verify_section_functor_lemma(
    facts: &CtxFacts,
    d_set: &[Elem],
    subgroup_reps: &[Subgroup],
    normals: &[Subgroup],
    base: BaseFunctor,
) -> VerificationRecord {
    let d_desc = format!("{};W={}", describe_elems("set", d_set), base.label());
    let mut rec = facts.base_record("L-scf", d_desc);
    let mut gate = true;
    let closed = fusion::is_strongly_closed(facts.ctx, d_set).map(|(ok, _)| ok).unwrap_or(false);
    clause(&mut rec.hypotheses, &mut gate, "d_strongly_closed_set", closed, false);
    if !gate {
        return rec;
    }
    let g = facts.ctx.group();
    let p = facts.ctx.prime();
    let mut failure = None;
    let mut contexts = 0usize;

    // (a) restriction to subgroups
    for h in subgroup_reps {
        let g_elem = least_positioner(facts.ctx, h);
        let p_h = facts.ctx.sylow().conjugate(g_elem).intersection(h);
        let d_h: Vec<Elem> =
            d_set.iter().map(|&u| g.conj(u, g_elem)).filter(|&u| h.contains(u)).collect();
        let w = SubgroupFunctor::subscripted_unchecked(h.clone(), p, base, p_h.clone(), d_h);
        contexts += 1;
        if let Some(f) = scoped_axiom_failure(h, &p_h, p, &w) {
            failure = Some(format!("restricted functor at H order {}: {f}", h.order()));
            break;
        }
    }
    // (b) quotients
    if failure.is_none() {
        for n in normals {
            let sect = section::quotient(&facts.ctx.whole(), n).expect("N normal");
            let d_img = project_set(&sect, d_set);
            let p_img = sect.project_subgroup(facts.ctx.sylow()).expect("P <= G");
            let quo_whole = Subgroup::whole(sect.quotient());
            let w = SubgroupFunctor::subscripted_unchecked(
                quo_whole.clone(),
                p,
                base,
                p_img.clone(),
                d_img,
            );
            contexts += 1;
            if let Some(f) = scoped_axiom_failure(&quo_whole, &p_img, p, &w) {
                failure = Some(format!("quotient functor at N order {}: {f}", n.order()));
                break;
            }
        }
    }
    // (c) sections H/K: combine both passages
    if failure.is_none() {
        'outer: for h in subgroup_reps {
            let g_elem = least_positioner(facts.ctx, h);
            let p_h = facts.ctx.sylow().conjugate(g_elem).intersection(h);
            let d_h: Vec<Elem> =
                d_set.iter().map(|&u| g.conj(u, g_elem)).filter(|&u| h.contains(u)).collect();
            for k in lattice::normal_subgroups_of(h).expect("bound holds") {
                if k.is_trivial() || k.order() == h.order() {
                    continue;
                }
                let sect = section::quotient(h, &k).expect("K normal in H");
                let d_img = project_set(&sect, &d_h);
                let pk = subgroup::closure(
                    g,
                    &[p_h.elems(), k.elems()].concat(),
                );
                // (P^g ∩ H)K/K: project the product subgroup
                let p_img = match sect.project_subgroup(&pk.intersection(h)) {
                    Ok(s) => s,
                    Err(_) => continue,
                };
                if p_img.order() as u64
                    != zjkit_core::arith::p_part(sect.order() as u64, p)
                {
                    continue;
                }
                let quo_whole = Subgroup::whole(sect.quotient());
                let w = SubgroupFunctor::subscripted_unchecked(
                    quo_whole.clone(),
                    p,
                    base,
                    p_img.clone(),
                    d_img,
                );
                contexts += 1;
                if let Some(f) = scoped_axiom_failure(&quo_whole, &p_img, p, &w) {
                    failure = Some(format!(
                        "section functor at H order {}, K order {}: {f}",
                        h.order(),
                        k.order()
                    ));
                    break 'outer;
                }
            }
        }
    }
    rec.conclusion = Some(failure.is_none());
    rec.witness = Some(failure.unwrap_or_else(|| format!("contexts={contexts}")));
    rec
}

fn project_set(sect: &section::Section, set: &[Elem]) -> Vec<Elem> {
    let mut out: Vec<Elem> = set
        .iter()
        .filter_map(|&u| sect.project(u))
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Conjugacy-functor axioms for `w` over the p-subgroups of `scope`, with
/// conjugators drawn from `scope`. Returns the first failure.
fn scoped_axiom_failure(
    scope: &Subgroup,
    sylow_of_scope: &Subgroup,
    p: u64,
    w: &SubgroupFunctor,
) -> Option<String> {
    let g = scope.parent();
    // p-subgroups of the scope: scope-conjugates of Sylow sublattice
    let mut seen = std::collections::BTreeSet::new();
    for u in lattice::subgroups_of(sylow_of_scope).expect("bound holds") {
        for &x in scope.elems() {
            seen.insert(u.conjugate(x).elems().to_vec());
        }
    }
    let p_subs: Vec<Subgroup> = seen
        .into_iter()
        .map(|elems| Subgroup::from_elems(g, elems).expect("conjugate of a subgroup"))
        .collect();
    let _ = p;
    for u in &p_subs {
        let value = match w.apply(u) {
            Ok(v) => v,
            Err(e) => return Some(format!("evaluation error {e} at U={:?}", u.elems())),
        };
        if !value.output.is_subset_of(u) {
            return Some(format!("containment fails at U={:?}", u.elems()));
        }
        if value.output.is_trivial() && !u.is_trivial() {
            return Some(format!("nontriviality fails at U={:?}", u.elems()));
        }
        for &x in scope.elems() {
            let lhs = value.output.conjugate(x);
            let rhs = match w.apply(&u.conjugate(x)) {
                Ok(v) => v.output,
                Err(e) => return Some(format!("evaluation error {e}")),
            };
            if lhs != rhs {
                return Some(format!("equivariance fails at U={:?}, x={x}", u.elems()));
            }
        }
    }
    None
}

/// The section functor: case-split formula (cross-checked against an
/// independently built subscripted functor on the quotient) plus the
/// section axioms.
pub fn verify_final_lemma(
    facts: &CtxFacts,
    d_set: &[Elem],
    base: BaseFunctor,
    max_section_order: usize,
) -> VerificationRecord {
    let d_desc = format!("{};W={}", describe_elems("set", d_set), base.label());
    let mut rec = facts.base_record("L-final", d_desc);
    let mut gate = true;
    let closed = fusion::is_strongly_closed(facts.ctx, d_set).map(|(ok, _)| ok).unwrap_or(false);
    clause(&mut rec.hypotheses, &mut gate, "d_strongly_closed_set", closed, false);
    if !gate {
        return rec;
    }
    let w = SectionFunctor::new(facts.ctx, base, d_set.to_vec()).expect("strong closure verified");
    let g = facts.ctx.group();
    let p = facts.ctx.prime();
    let mut failure = None;

    // the axioms (i)-(iv)
    match functors::verify_section_axioms(facts.ctx, &w, max_section_order) {
        Ok(report) => {
            if !report.pass() {
                failure = Some(format!("axioms fail: {report:?}"));
            }
        }
        Err(e) => failure = Some(format!("axiom sweep error {e}")),
    }

    // dual route: W*_D(H/K) must equal the subscripted functor built on
    // the quotient, evaluated at the whole quotient
    let mut cross_checked = 0usize;
    if failure.is_none() {
        for (h, k) in functors::p_sections(g, p, max_section_order).expect("bound holds") {
            let sect = section::quotient(&h, &k).expect("normal");
            let star = w.apply(&sect).expect("p-section");
            let x = star.positioner;
            let d_h: Vec<Elem> =
                d_set.iter().map(|&u| g.conj(u, x)).filter(|&u| h.contains(u)).collect();
            let d_img = project_set(&sect, &d_h);
            let quo_whole = Subgroup::whole(sect.quotient());
            let sylow_img = {
                // (P^x ∩ H)K/K is a Sylow subgroup of H/K
                let ph = facts.ctx.sylow().conjugate(x).intersection(&h);
                sect.project_subgroup(&ph).expect("inside H")
            };
            let w_quot = SubgroupFunctor::subscripted_unchecked(
                quo_whole.clone(),
                p,
                base,
                sylow_img,
                d_img,
            );
            let expected = w_quot.apply(&quo_whole).expect("whole quotient");
            cross_checked += 1;
            if expected.output != star.output {
                failure = Some(format!(
                    "case split disagrees with the quotient functor at H order {}, K order {}",
                    h.order(),
                    k.order()
                ));
                break;
            }
        }
    }
    rec.conclusion = Some(failure.is_none());
    rec.witness = Some(failure.unwrap_or_else(|| format!("sections={cross_checked}")));
    rec
}

/// Normality of `W*_D` on Sylow subgroups of p-stable, self-centralizing
/// sections.
pub fn verify_ff(
    facts: &CtxFacts,
    d: &Subgroup,
    subgroup_reps: &[Subgroup],
) -> VerificationRecord {
    let mut rec = facts.base_record("L-ff", describe_subgroup(d));
    let mut gate = true;
    clause(&mut rec.hypotheses, &mut gate, "p_odd", true, false);
    clause(
        &mut rec.hypotheses,
        &mut gate,
        "d_strongly_closed_subgroup",
        is_strongly_closed_subgroup(facts, d),
        false,
    );
    if !gate {
        return rec;
    }
    let g = facts.ctx.group();
    let p = facts.ctx.prime();
    let mut sections = 0usize;
    let mut qualifying = 0usize;
    let mut failure = None;
    'outer: for x in subgroup_reps {
        for k in lattice::normal_subgroups_of(x).expect("bound holds") {
            sections += 1;
            let sect = section::quotient(x, &k).expect("normal");
            let quo = sect.quotient();
            // section hypotheses: p-stable and C(O_p) <= O_p
            let quo_whole = Subgroup::whole(quo);
            let core = sylow::p_core(&quo_whole, p);
            if !subgroup::centralizer(&quo_whole, core.elems()).is_subset_of(&core) {
                continue;
            }
            if !fusion::is_p_stable(quo, p).expect("odd prime").stable {
                continue;
            }
            qualifying += 1;
            // S in Syl_p(G*): pull back, apply W*_D to the p-section, push
            // the value into G* and test normality
            let s_bar = sylow::sylow(&quo_whole, p);
            let s0 = sect.preimage_subgroup(&s_bar);
            for base in BaseFunctor::STATEMENT_TRIO {
                let w = SectionFunctor::new(facts.ctx, base, d.elems().to_vec())
                    .expect("strong closure verified");
                let p_sect = section::quotient(&s0, &k).expect("K normal in S0");
                let value = w.apply(&p_sect).expect("p-section");
                // transport: preimage in S0, then image inside G* = X/K
                let pre = p_sect.preimage_subgroup(&value.output);
                let in_quo = sect.project_subgroup(&pre).expect("inside X");
                if !in_quo.is_normalized_by(&quo_whole) {
                    failure = Some(format!(
                        "{} not normal in section X order {}, K order {}",
                        base.label(),
                        x.order(),
                        k.order()
                    ));
                    break 'outer;
                }
            }
        }
    }
    let _ = g;
    rec.conclusion = Some(failure.is_none());
    rec.witness =
        Some(failure.unwrap_or_else(|| format!("sections={sections}, qualifying={qualifying}")));
    rec
}
