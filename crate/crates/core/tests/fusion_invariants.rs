//! Fusion-layer invariants: quantifier reductions against naive oracles
//! and structural consequences of the definitions.

use zjkit_core::build::{build, Construction};
use zjkit_core::fusion::{self, PrimeContext};
use zjkit_core::group::Group;
use zjkit_core::subgroup::{self, Subgroup};
use zjkit_core::{lattice, oracle};

fn small_zoo() -> Vec<Group> {
    [
        Construction::Symmetric { n: 3 },
        Construction::Alternating { n: 4 },
        Construction::Symmetric { n: 4 },
        Construction::DirectProduct {
            factors: vec![Construction::Symmetric { n: 3 }, Construction::Cyclic { n: 3 }],
        },
        Construction::Dihedral { n: 9 },
    ]
    .iter()
    .map(|c| build(c).unwrap())
    .collect()
}

#[test]
fn class_rep_fusion_control_matches_naive_quantifier() {
    for g in small_zoo() {
        let ctx = PrimeContext::new(&g, 3).unwrap();
        let whole = ctx.whole();
        // candidate controlling subgroups: the Sylow subgroup, its
        // normalizer, centralizers of class reps, and the whole group
        let mut candidates = vec![
            ctx.sylow().clone(),
            subgroup::normalizer(&whole, ctx.sylow()),
            whole.clone(),
            Subgroup::trivial(&g),
        ];
        candidates.push(subgroup::center(&whole));
        for n in candidates {
            let fast = fusion::controls_strong_fusion(&ctx, &n).unwrap().0;
            let naive =
                oracle::controls_fusion_naive(&g, ctx.sylow().elems(), n.elems());
            assert_eq!(fast, naive, "{} with N order {}", g.name(), n.order());
        }
    }
}

#[test]
fn stability_class_reduction_matches_naive_quantifier() {
    for g in small_zoo() {
        let fast = fusion::is_p_stable(&g, 3).unwrap().stable;
        assert_eq!(fast, oracle::p_stable_naive(&g, 3), "{}", g.name());
    }
}

#[test]
fn p_stability_is_inherited_by_subgroups() {
    // groups of order <= 128: if G is p-stable, every subgroup is
    for c in [
        Construction::Symmetric { n: 4 },
        Construction::Alternating { n: 4 },
        Construction::WreathCpCp { p: 3 },
        Construction::DirectProduct {
            factors: vec![Construction::Symmetric { n: 3 }, Construction::Cyclic { n: 3 }],
        },
        Construction::Dihedral { n: 9 },
    ] {
        let g = build(&c).unwrap();
        assert!(g.order() <= 128);
        if !fusion::is_p_stable(&g, 3).unwrap().stable {
            continue;
        }
        for h in lattice::all_subgroups(&g).unwrap() {
            let (table, _) = h.as_table().unwrap();
            assert!(
                fusion::is_p_stable(&table, 3).unwrap().stable,
                "{}: subgroup of order {} not 3-stable",
                g.name(),
                h.order()
            );
        }
    }
}

#[test]
fn fusion_control_is_monotone_in_the_controlling_subgroup() {
    for g in small_zoo() {
        let ctx = PrimeContext::new(&g, 3).unwrap();
        let whole = ctx.whole();
        let subs = lattice::all_subgroups(&g).unwrap();
        let controlling: Vec<&Subgroup> = subs
            .iter()
            .filter(|n| fusion::controls_strong_fusion(&ctx, n).unwrap().0)
            .collect();
        for n in &controlling {
            for m in &subs {
                if n.is_subset_of(m) {
                    assert!(
                        fusion::controls_strong_fusion(&ctx, m).unwrap().0,
                        "{}: monotonicity fails {} -> {}",
                        g.name(),
                        n.order(),
                        m.order()
                    );
                }
            }
        }
        let _ = whole;
    }
}

#[test]
fn strongly_closed_sets_are_normalizer_stable_and_span_normally() {
    for g in small_zoo() {
        let ctx = PrimeContext::new(&g, 3).unwrap();
        let whole = ctx.whole();
        let norm_p = subgroup::normalizer(&whole, ctx.sylow());
        for s in lattice::subgroups_of(ctx.sylow()).unwrap() {
            if s.is_trivial() {
                continue;
            }
            let d = s.elems().to_vec();
            if !fusion::is_strongly_closed(&ctx, &d).unwrap().0 {
                continue;
            }
            // D^x = D for x normalizing P
            for &x in norm_p.elems() {
                let mut conj: Vec<_> = d.iter().map(|&u| g.conj(u, x)).collect();
                conj.sort_unstable();
                assert_eq!(conj, d, "{}", g.name());
            }
            // <D> is normal in P
            let span = subgroup::closure(&g, &d);
            assert!(span.is_normal_in(ctx.sylow()), "{}", g.name());
        }
    }
}

#[test]
fn qd3_fails_stability_and_small_groups_are_qd3_free() {
    let qd = build(&Construction::Qd { p: 3 }).unwrap();
    assert!(!fusion::is_p_stable(&qd, 3).unwrap().stable);
    for g in small_zoo() {
        assert!(g.order() < 216);
        assert!(fusion::is_qdp_free(&g, 3).unwrap().free, "{}", g.name());
    }
}
