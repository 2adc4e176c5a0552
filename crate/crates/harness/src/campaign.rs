//! Campaign orchestration: candidate enumeration, check scheduling,
//! parallel execution and report emission.

use std::collections::BTreeSet;
use std::io::Write;
use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;

use zjkit_core::fusion::{self, PrimeContext};
use zjkit_core::functors::BaseFunctor;
use zjkit_core::group::Elem;
use zjkit_core::lattice;
use zjkit_core::subgroup::{self, Subgroup};
use zjkit_core::sylow;
use zjkit_core::thompson::{self, FamilyKind};

use crate::corpus::CorpusEntry;
use crate::verify::{self, CtxFacts, Toggles, VerificationRecord};
use crate::HarnessError;

/// How far the D-candidate enumeration goes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DMode {
    /// Exhaustive strongly closed subgroups for |P| <= 81, fusion-class
    /// unions for the set-valued statements.
    Full,
    /// Only the Sylow subgroup itself.
    SylowOnly,
}

/// Sweep bounds. The exhaustive lemma and functor sweeps are quadratic to
/// quartic in the lattice, so they stop at these orders; the fusion and
/// normality theorems run on every entry.
const PGROUP_SCAN_MAX: usize = 243;
const LEMMA_SWEEP_MAX: usize = 81;
const SECTION_AXIOM_MAX: usize = 27;
const FUSION_CLASS_UNION_MAX: usize = 8;
const EXHAUSTIVE_NORMALS_MAX: usize = 48;

pub const ALL_CHECKS: [&str; 21] = [
    "A", "GlbLemma", "RankLemma", "L3.1", "opg", "L-strogly", "L-crucial", "T3.2", "T3.6",
    "Lp-stable", "L-sc2", "L-cf", "L-scf", "L-final", "L-ff", "B", "C", "E", "F", "H", "CorF",
];

const LEMMA_GROUP: [&str; 8] =
    ["GlbLemma", "RankLemma", "L3.1", "opg", "L-strogly", "L-crucial", "Lp-stable", "L-sc2"];
const FUNCTOR_GROUP: [&str; 5] = ["L-cf", "L-scf", "L-final", "L-ff", "R-res"];

/// Expands a `--checks` list ("all", group names, individual ids).
pub fn parse_checks(spec: &[String]) -> Result<BTreeSet<String>, HarnessError> {
    let mut out = BTreeSet::new();
    for token in spec.iter().flat_map(|s| s.split(',')) {
        let token = token.trim();
        match token {
            "" => {}
            "all" => {
                out.extend(ALL_CHECKS.iter().map(|s| s.to_string()));
                out.insert("R-res".to_string());
            }
            "lemmas" => out.extend(LEMMA_GROUP.iter().map(|s| s.to_string())),
            "functors" => out.extend(FUNCTOR_GROUP.iter().map(|s| s.to_string())),
            t if ALL_CHECKS.contains(&t) || t == "R-res" => {
                out.insert(t.to_string());
            }
            t => return Err(HarnessError::Usage(format!("unknown check {t:?}"))),
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct CampaignConfig {
    pub checks: BTreeSet<String>,
    pub d_mode: DMode,
    pub jobs: usize,
    /// Record wall time per record. Off by default: timing breaks
    /// byte-for-byte report determinism.
    pub timing: bool,
    pub toggles: Toggles,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        CampaignConfig {
            checks: parse_checks(&["all".to_string()]).expect("static"),
            d_mode: DMode::Full,
            jobs: 0,
            timing: false,
            toggles: Toggles::NONE,
        }
    }
}

pub struct CampaignOutcome {
    pub records: Vec<VerificationRecord>,
    pub violations: usize,
    pub total_ms: u128,
}

pub fn run_campaign(
    corpus: &[CorpusEntry],
    cfg: &CampaignConfig,
) -> Result<CampaignOutcome, HarnessError> {
    let start = Instant::now();
    let work: Vec<(&CorpusEntry, u64)> = corpus
        .iter()
        .flat_map(|e| e.primes.iter().map(move |&p| (e, p)))
        .collect();
    let run = || -> Result<Vec<Vec<VerificationRecord>>, HarnessError> {
        work.par_iter()
            .map(|(entry, p)| run_entry(entry, *p, cfg))
            .collect()
    };
    let nested = if cfg.jobs > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.jobs)
            .build()
            .map_err(|e| HarnessError::Usage(format!("thread pool: {e}")))?
            .install(run)?
    } else {
        run()?
    };
    let mut records: Vec<VerificationRecord> = nested.into_iter().flatten().collect();
    records.sort_by(|a, b| {
        (&a.group, a.order, a.p, &a.check, &a.d).cmp(&(&b.group, b.order, b.p, &b.check, &b.d))
    });
    let violations = records.iter().filter(|r| !r.invariant_ok()).count();
    Ok(CampaignOutcome { records, violations, total_ms: start.elapsed().as_millis() })
}

fn run_entry(
    entry: &CorpusEntry,
    p: u64,
    cfg: &CampaignConfig,
) -> Result<Vec<VerificationRecord>, HarnessError> {
    let ctx = PrimeContext::new(&entry.group, p).map_err(HarnessError::Kernel)?;
    let facts = CtxFacts::new(&entry.name, &ctx);
    let order = entry.group.order();
    let mut records = Vec::new();
    let wants = |c: &str| cfg.checks.contains(c);
    let toggles = cfg.toggles;

    let mut push = |mut rec: VerificationRecord, elapsed: Instant| {
        rec.ms = if cfg.timing { elapsed.elapsed().as_millis() } else { 0 };
        records.push(rec);
    };
    macro_rules! timed {
        ($expr:expr) => {{
            let t = Instant::now();
            let rec = $expr;
            push(rec, t);
        }};
    }

    // subgroup-valued D candidates
    let d_subgroups = d_subgroup_candidates(&ctx, cfg.d_mode, toggles);
    // set-valued D candidates
    let d_sets = d_set_candidates(&ctx, cfg.d_mode, &d_subgroups, toggles);
    // bounded list for the functor sweeps
    let d_functor = d_functor_candidates(&ctx);

    for d in &d_subgroups {
        if wants("B") {
            timed!(verify::verify_b(&facts, d, toggles));
        }
        if wants("C") {
            timed!(verify::verify_cor_c(&facts, d, toggles));
        }
        if wants("E") {
            timed!(verify::verify_e(&facts, d, toggles));
        }
        if wants("F") {
            timed!(verify::verify_f(&facts, d, toggles));
        }
        if wants("CorF") {
            timed!(verify::verify_cor_f(&facts, d, toggles));
        }
        if wants("H") {
            timed!(verify::verify_h(&facts, d, toggles));
        }
    }

    if wants("T3.2") {
        let bs = b_candidates(&ctx);
        for d_set in &d_sets {
            for b in &bs {
                for kind in FamilyKind::ALL {
                    timed!(verify::verify_t32(&facts, d_set, b, kind, toggles));
                }
            }
        }
    }
    if wants("T3.6") {
        for d_set in &d_sets {
            for kind in FamilyKind::ALL {
                timed!(verify::verify_t36(&facts, d_set, kind, toggles));
            }
        }
    }

    if wants("A") && order <= PGROUP_SCAN_MAX {
        timed!(verify::verify_replacement_scan(&facts));
    }
    if wants("GlbLemma") && order <= LEMMA_SWEEP_MAX {
        timed!(verify::verify_glauberman_lemma(&facts));
    }
    if wants("RankLemma") && order <= PGROUP_SCAN_MAX {
        timed!(verify::verify_rank_lemma(&facts));
    }
    if wants("L3.1") && order <= LEMMA_SWEEP_MAX {
        timed!(verify::verify_j_monotonicity(&facts));
    }
    if wants("opg") {
        timed!(verify::verify_opg(&facts, toggles));
    }
    if wants("Lp-stable") {
        timed!(verify::verify_quotient_stability(&facts));
    }
    if wants("L-crucial") && order <= LEMMA_SWEEP_MAX {
        timed!(verify::verify_crucial(&facts));
    }

    if order <= LEMMA_SWEEP_MAX {
        let reps = subgroup_class_reps(&ctx);
        let normals = bounded_normals(&ctx);
        if wants("L-strogly") {
            for d_set in &d_sets {
                timed!(verify::verify_strongly_closed_lemma(&facts, d_set, &normals));
            }
        }
        if wants("L-sc2") {
            for d_set in &d_sets {
                timed!(verify::verify_sc2(&facts, d_set, &reps, &normals));
            }
        }
        if wants("L-cf") {
            for d_set in &d_functor {
                timed!(verify::verify_conj_functor_lemma(&facts, d_set, &BaseFunctor::ALL));
            }
        }
        if wants("R-res") {
            for d_set in &d_functor {
                timed!(verify::verify_restriction(
                    &facts,
                    d_set,
                    &reps,
                    &BaseFunctor::STATEMENT_TRIO
                ));
            }
        }
        if wants("L-scf") {
            for d_set in &d_functor {
                for base in BaseFunctor::STATEMENT_TRIO {
                    timed!(verify::verify_section_functor_lemma(
                        &facts, d_set, &reps, &normals, base
                    ));
                }
            }
        }
        if wants("L-final") {
            for d_set in &d_functor {
                for base in BaseFunctor::STATEMENT_TRIO {
                    timed!(verify::verify_final_lemma(&facts, d_set, base, SECTION_AXIOM_MAX));
                }
            }
        }
        if wants("L-ff") {
            for d in &d_subgroups {
                timed!(verify::verify_ff(&facts, d, &reps));
            }
        }
    }

    Ok(records)
}

/// Strongly closed subgroup candidates, plus omega and center variants
/// (hypotheses are re-evaluated per record, so unverified variants are
/// harmless). In probe mode with the strong-closure toggle the scan keeps
/// non-strongly-closed subgroups too.
fn d_subgroup_candidates(ctx: &PrimeContext, mode: DMode, toggles: Toggles) -> Vec<Subgroup> {
    let sylow = ctx.sylow().clone();
    if mode == DMode::SylowOnly {
        return vec![sylow];
    }
    let mut out: BTreeSet<Subgroup> = BTreeSet::new();
    out.insert(sylow.clone());
    if sylow.order() <= LEMMA_SWEEP_MAX {
        for s in ctx.p_subgroups().iter() {
            if s.is_trivial() {
                continue;
            }
            let keep = toggles.strong_closure_off
                || fusion::is_strongly_closed(ctx, &s.elems().to_vec())
                    .map(|(ok, _)| ok)
                    .unwrap_or(false);
            if keep {
                out.insert(s.clone());
            }
        }
    } else {
        out.insert(thompson::omega(&sylow).expect("p-group"));
        out.insert(subgroup::center(&sylow));
    }
    let omegas: Vec<Subgroup> = out
        .iter()
        .map(|d| thompson::omega(d).expect("p-group"))
        .filter(|o| !o.is_trivial())
        .collect();
    out.extend(omegas);
    out.into_iter().collect()
}

/// Set-valued D candidates: all unions of fusion classes when the class
/// count is small, otherwise the element sets of the subgroup candidates.
fn d_set_candidates(
    ctx: &PrimeContext,
    mode: DMode,
    d_subgroups: &[Subgroup],
    toggles: Toggles,
) -> Vec<Vec<Elem>> {
    if mode == DMode::SylowOnly {
        return vec![ctx.sylow().elems().to_vec()];
    }
    let classes = fusion_classes(ctx);
    if classes.len() <= FUSION_CLASS_UNION_MAX && !toggles.strong_closure_off {
        let mut out = Vec::new();
        for bits in 1u32..(1 << classes.len()) {
            let mut set: Vec<Elem> = Vec::new();
            for (i, class) in classes.iter().enumerate() {
                if bits >> i & 1 == 1 {
                    set.extend_from_slice(class);
                }
            }
            set.sort_unstable();
            out.push(set);
        }
        out.sort();
        out.dedup();
        out
    } else {
        let mut out: Vec<Vec<Elem>> =
            d_subgroups.iter().map(|d| d.elems().to_vec()).collect();
        out.sort();
        out.dedup();
        out
    }
}

/// Partition of the Sylow subgroup into fusion classes: the finest
/// partition whose unions are exactly the strongly closed subsets.
pub fn fusion_classes(ctx: &PrimeContext) -> Vec<Vec<Elem>> {
    let g = ctx.group();
    let sylow = ctx.sylow();
    let elems = sylow.elems();
    let index = |e: Elem| elems.binary_search(&e).expect("element of P");
    let mut parent: Vec<usize> = (0..elems.len()).collect();
    fn find(parent: &mut Vec<usize>, mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for (i, &u) in elems.iter().enumerate() {
        for x in g.elems() {
            let c = g.conj(u, x);
            if sylow.contains(c) {
                let j = index(c);
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri.max(rj)] = ri.min(rj);
                }
            }
        }
    }
    let mut classes: std::collections::BTreeMap<usize, Vec<Elem>> = Default::default();
    for (i, &u) in elems.iter().enumerate() {
        classes.entry(find(&mut parent, i)).or_default().push(u);
    }
    classes.into_values().collect()
}

/// `B` candidates for the `Z_x ∩ B` statement: trivial, `O_p(G)`, and all
/// normal p-subgroups on small orders.
fn b_candidates(ctx: &PrimeContext) -> Vec<Subgroup> {
    let whole = ctx.whole();
    let mut out: BTreeSet<Subgroup> = BTreeSet::new();
    out.insert(Subgroup::trivial(ctx.group()));
    out.insert(sylow::p_core(&whole, ctx.prime()));
    if ctx.group().order() <= EXHAUSTIVE_NORMALS_MAX {
        for n in lattice::normal_subgroups_of(&whole).expect("bound holds") {
            if zjkit_core::arith::is_p_power(n.order() as u64, ctx.prime()) {
                out.insert(n);
            }
        }
    }
    out.into_iter().collect()
}

/// Conjugacy-class representatives of all subgroups of the group.
fn subgroup_class_reps(ctx: &PrimeContext) -> Vec<Subgroup> {
    let whole = ctx.whole();
    let subs = lattice::all_subgroups(ctx.group()).expect("bound holds");
    lattice::conjugation_orbits(&subs, &whole)
        .into_iter()
        .map(|orbit| subs[orbit[0]].clone())
        .collect()
}

/// Normal subgroups used by the intersection/image sweeps: all of them on
/// small orders, a structural selection above that.
fn bounded_normals(ctx: &PrimeContext) -> Vec<Subgroup> {
    let whole = ctx.whole();
    let g = ctx.group();
    if g.order() <= EXHAUSTIVE_NORMALS_MAX {
        return lattice::normal_subgroups_of(&whole).expect("bound holds");
    }
    let mut out: BTreeSet<Subgroup> = BTreeSet::new();
    out.insert(Subgroup::trivial(g));
    out.insert(whole.clone());
    out.insert(subgroup::center(&whole));
    out.insert(subgroup::derived_subgroup(&whole));
    out.insert(sylow::p_core(&whole, ctx.prime()));
    out.insert(sylow::p_prime_core(g, ctx.prime()));
    out.into_iter().collect()
}

/// D candidates for the functor sweeps: a bounded representative set (the
/// axiom sweeps are cubic in the lattice, so exhaustive D enumeration is
/// reserved for the fusion statements).
fn d_functor_candidates(ctx: &PrimeContext) -> Vec<Vec<Elem>> {
    let sylow = ctx.sylow().clone();
    let mut out: BTreeSet<Vec<Elem>> = BTreeSet::new();
    let consider = |s: &Subgroup, out: &mut BTreeSet<Vec<Elem>>| {
        if !s.is_trivial()
            && fusion::is_strongly_closed(ctx, &s.elems().to_vec())
                .map(|(ok, _)| ok)
                .unwrap_or(false)
        {
            out.insert(s.elems().to_vec());
        }
    };
    consider(&sylow, &mut out);
    consider(&thompson::omega(&sylow).expect("p-group"), &mut out);
    consider(&subgroup::center(&sylow), &mut out);
    // the least nontrivial proper strongly closed subgroup, if any
    if sylow.order() <= LEMMA_SWEEP_MAX {
        for s in ctx.p_subgroups().iter() {
            if s.is_trivial() || s.order() == sylow.order() {
                continue;
            }
            if fusion::is_strongly_closed(ctx, &s.elems().to_vec())
                .map(|(ok, _)| ok)
                .unwrap_or(false)
            {
                out.insert(s.elems().to_vec());
                break;
            }
        }
    }
    out.into_iter().collect()
}

/// Writes a JSONL report: one timestamp header line, then one record per
/// line. With timing off the body is byte-deterministic.
pub fn write_report(
    outcome: &CampaignOutcome,
    path: &Path,
) -> Result<(), HarnessError> {
    let ts = std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    let mut buf = Vec::new();
    writeln!(
        buf,
        "# zjkit-report ts={ts} total_ms={} records={} violations={}",
        outcome.total_ms,
        outcome.records.len(),
        outcome.violations
    )
    .expect("write to vec");
    for rec in &outcome.records {
        let line = serde_json::to_string(rec).expect("records serialize");
        writeln!(buf, "{line}").expect("write to vec");
    }
    std::fs::write(path, buf).map_err(|e| HarnessError::io(path, e))
}
