//! Pins the expected hypothesis/conclusion shape of individual verifier
//! records on named corpus groups.

use zjkit_core::fusion::PrimeContext;
use zjkit_core::subgroup::Subgroup;
use zjkit_core::thompson::FamilyKind;

use zjkit_harness::corpus::{build_corpus, CorpusConfig, CorpusEntry};
use zjkit_harness::verify::{self, CtxFacts, Toggles};

fn entry(name: &str) -> CorpusEntry {
    build_corpus(&CorpusConfig::default())
        .unwrap()
        .into_iter()
        .find(|e| e.name == name)
        .unwrap_or_else(|| panic!("{name} missing from the corpus"))
}

fn active(rec: &verify::VerificationRecord) -> bool {
    rec.hypotheses.values().all(|&v| v) && rec.conclusion == Some(true)
}

#[test]
fn theorem_b_on_the_inverted_nine_group() {
    let e = entry("E9:Z2");
    let ctx = PrimeContext::new(&e.group, 3).unwrap();
    let facts = CtxFacts::new(&e.name, &ctx);
    let rec = verify::verify_b(&facts, ctx.sylow(), Toggles::NONE);
    assert!(active(&rec), "{rec:?}");
}

#[test]
fn theorem_b_is_vacuous_on_qd3() {
    let e = entry("Qd(3)");
    let ctx = PrimeContext::new(&e.group, 3).unwrap();
    let facts = CtxFacts::new(&e.name, &ctx);
    let rec = verify::verify_b(&facts, ctx.sylow(), Toggles::NONE);
    assert_eq!(rec.hypotheses.get("p_stable"), Some(&false));
    assert_eq!(rec.conclusion, None);
}

#[test]
fn theorem_b_on_a_3_group_is_trivially_active() {
    let e = entry("Heis27");
    let ctx = PrimeContext::new(&e.group, 3).unwrap();
    let facts = CtxFacts::new(&e.name, &ctx);
    let rec = verify::verify_b(&facts, ctx.sylow(), Toggles::NONE);
    assert!(active(&rec), "{rec:?}");
}

#[test]
fn theorem_f_shapes() {
    // A4 at p = 3 is Qd(3)-free by order: conclusion asserted
    let e = entry("Alt4");
    let ctx = PrimeContext::new(&e.group, 3).unwrap();
    let facts = CtxFacts::new(&e.name, &ctx);
    let rec = verify::verify_f(&facts, ctx.sylow(), Toggles::NONE);
    assert!(active(&rec), "{rec:?}");

    // Sym3 likewise
    let e = entry("Sym3");
    let ctx = PrimeContext::new(&e.group, 3).unwrap();
    let facts = CtxFacts::new(&e.name, &ctx);
    let rec = verify::verify_f(&facts, ctx.sylow(), Toggles::NONE);
    assert!(active(&rec), "{rec:?}");

    // Qd(3): hypothesis false, vacuous
    let e = entry("Qd(3)");
    let ctx = PrimeContext::new(&e.group, 3).unwrap();
    let facts = CtxFacts::new(&e.name, &ctx);
    let rec = verify::verify_f(&facts, ctx.sylow(), Toggles::NONE);
    assert_eq!(rec.hypotheses.get("qdp_free"), Some(&false));
    assert_eq!(rec.conclusion, None);
}

#[test]
fn theorem_h_shapes() {
    // A4, p = 3: N_G(Z(J_o(P))) = P is 3-nilpotent, so A4 must be, and is
    let e = entry("Alt4");
    let ctx = PrimeContext::new(&e.group, 3).unwrap();
    let facts = CtxFacts::new(&e.name, &ctx);
    let rec = verify::verify_h(&facts, ctx.sylow(), Toggles::NONE);
    assert!(active(&rec), "{rec:?}");
    assert!(rec.witness.as_deref().unwrap_or("").contains("complement order 4"));

    // A5, p = 5: the dihedral normalizer is not 5-nilpotent; vacuous
    let e = entry("Alt5");
    let ctx = PrimeContext::new(&e.group, 5).unwrap();
    let facts = CtxFacts::new(&e.name, &ctx);
    let rec = verify::verify_h(&facts, ctx.sylow(), Toggles::NONE);
    assert_eq!(rec.hypotheses.get("normalizer_p_nilpotent"), Some(&false));
    assert_eq!(rec.conclusion, None);

    // p-groups: both sides trivially p-nilpotent
    let e = entry("Z3wrZ3");
    let ctx = PrimeContext::new(&e.group, 3).unwrap();
    let facts = CtxFacts::new(&e.name, &ctx);
    let rec = verify::verify_h(&facts, ctx.sylow(), Toggles::NONE);
    assert!(active(&rec), "{rec:?}");
}

#[test]
fn theorem_t36_vacuous_on_a5_at_p5() {
    // A5 is not 5-constrained; the record must be vacuous there
    let e = entry("Alt5");
    let ctx = PrimeContext::new(&e.group, 5).unwrap();
    let facts = CtxFacts::new(&e.name, &ctx);
    let d = ctx.sylow().elems().to_vec();
    let rec = verify::verify_t36(&facts, &d, FamilyKind::Order, Toggles::NONE);
    assert_eq!(rec.hypotheses.get("p_constrained"), Some(&false));
    assert_eq!(rec.conclusion, None);
}

#[test]
fn theorem_t32_strongest_instance_on_e9_z2() {
    let e = entry("E9:Z2");
    let ctx = PrimeContext::new(&e.group, 3).unwrap();
    let facts = CtxFacts::new(&e.name, &ctx);
    let d = ctx.sylow().elems().to_vec();
    let b = zjkit_core::sylow::p_core(&ctx.whole(), 3);
    assert_eq!(b.order(), 9, "O_3 is the whole Sylow subgroup here");
    for kind in FamilyKind::ALL {
        let rec = verify::verify_t32(&facts, &d, &b, kind, Toggles::NONE);
        assert!(active(&rec), "kind {kind}: {rec:?}");
    }
    // B = 1: conclusion trivial but still evaluated
    let trivial = Subgroup::trivial(&e.group);
    let rec = verify::verify_t32(&facts, &d, &trivial, FamilyKind::Order, Toggles::NONE);
    assert!(active(&rec));
}

#[test]
fn corollary_c_applies_exactly_when_omega_d_has_exponent_p() {
    // Heis27 has exponent 3: the corollary applies to D = P
    let e = entry("Heis27");
    let ctx = PrimeContext::new(&e.group, 3).unwrap();
    let facts = CtxFacts::new(&e.name, &ctx);
    let rec = verify::verify_cor_c(&facts, ctx.sylow(), Toggles::NONE);
    assert!(active(&rec), "{rec:?}");

    // Z9: Omega(D) has exponent 3 inside an exponent-9 group; applies too
    let e = entry("Z9");
    let ctx = PrimeContext::new(&e.group, 3).unwrap();
    let facts = CtxFacts::new(&e.name, &ctx);
    let rec = verify::verify_cor_c(&facts, ctx.sylow(), Toggles::NONE);
    assert!(active(&rec), "{rec:?}");
}

#[test]
fn stability_toggle_exposes_qd3_conclusion_behaviour() {
    // with the stability hypothesis toggled off, the Theorem B conclusion
    // is evaluated on the non-3-stable Qd(3); whatever its value, the
    // record is invariant-safe and logs the toggle
    let e = entry("Qd(3)");
    let ctx = PrimeContext::new(&e.group, 3).unwrap();
    let facts = CtxFacts::new(&e.name, &ctx);
    let toggles = Toggles { stability_off: true, ..Toggles::NONE };
    // D = the base: strongly closed (it is normal), so the remaining
    // hypotheses hold and the conclusion gets computed
    let base = Subgroup::from_elems(&e.group, (0..9).map(|v| v * 24).collect()).unwrap();
    let rec = verify::verify_b(&facts, &base, toggles);
    assert_eq!(rec.toggled.as_deref(), Some("stability"));
    assert!(rec.hypotheses.contains_key("p_stable(toggled-off)"));
    assert!(rec.conclusion.is_some());
    assert!(rec.invariant_ok());
}
