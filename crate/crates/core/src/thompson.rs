//! Abelian-subgroup analytics of a p-group: the three maximality families,
//! the Thompson subgroups they generate, the omega subgroup, and rank.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::arith;
use crate::error::{Error, Result};
use crate::group::Elem;
use crate::lattice;
use crate::subgroup::{self, Subgroup};

/// Which maximality measure selects the abelian family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FamilyKind {
    /// Abelian subgroups of maximal order (the `o` family).
    Order,
    /// Abelian subgroups of maximal rank (the `r` family).
    Rank,
    /// Elementary abelian subgroups of maximal order (the `e` family).
    Elementary,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 3] = [FamilyKind::Order, FamilyKind::Rank, FamilyKind::Elementary];

    pub fn label(self) -> &'static str {
        match self {
            FamilyKind::Order => "o",
            FamilyKind::Rank => "r",
            FamilyKind::Elementary => "e",
        }
    }
}

impl std::fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// One of the families `A_o(X)`, `A_r(X)`, `A_e(X)`: every abelian
/// (resp. elementary abelian) subgroup attaining the extremal score.
#[derive(Clone, Debug)]
pub struct AbelianFamily {
    pub kind: FamilyKind,
    pub host: Subgroup,
    /// All members, sorted by (order, element list).
    pub members: Vec<Subgroup>,
    /// The extremal value: max order, max rank, or max elementary order.
    pub score: u64,
}

fn measure(kind: FamilyKind, s: &Subgroup) -> Result<u64> {
    Ok(match kind {
        FamilyKind::Order | FamilyKind::Elementary => s.order() as u64,
        FamilyKind::Rank => rank_and_exponent(s)?.0 as u64,
    })
}

fn qualifies(kind: FamilyKind, s: &Subgroup) -> bool {
    match kind {
        FamilyKind::Order | FamilyKind::Rank => s.is_abelian(),
        FamilyKind::Elementary => s.is_elementary_abelian(),
    }
}

/// Computes a family exhaustively from the subgroup lattice of the host.
/// Results are cached on the parent table (the theorem campaigns evaluate
/// heavily overlapping hosts).
pub fn abelian_family(x: &Subgroup, kind: FamilyKind) -> Result<AbelianFamily> {
    if !x.is_trivial() {
        x.p_group_prime()?;
    }
    let g = x.parent();
    let key = (x.elems().to_vec(), kind.label().as_bytes()[0]);
    if let Some(hit) = g.family_cache().lock().unwrap().get(&key) {
        let (score, lists) = hit.as_ref();
        let members = lists
            .iter()
            .map(|elems| {
                let mask = crate::bitset::Bitset::from_elems(
                    g.order(),
                    elems.iter().map(|&e| e as usize),
                );
                Subgroup::from_sorted_unchecked(g.clone(), elems.clone(), mask)
            })
            .collect();
        return Ok(AbelianFamily { kind, host: x.clone(), members, score: *score });
    }
    let mut members: Vec<Subgroup> = Vec::new();
    let mut score = 0u64;
    for s in lattice::subgroups_of(x)? {
        if !qualifies(kind, &s) {
            continue;
        }
        let m = measure(kind, &s)?;
        match m.cmp(&score) {
            std::cmp::Ordering::Greater => {
                score = m;
                members.clear();
                members.push(s);
            }
            std::cmp::Ordering::Equal => members.push(s),
            std::cmp::Ordering::Less => {}
        }
    }
    members.sort();
    let lists: Vec<Vec<Elem>> = members.iter().map(|m| m.elems().to_vec()).collect();
    g.family_cache().lock().unwrap().insert(key, Arc::new((score, lists)));
    Ok(AbelianFamily { kind, host: x.clone(), members, score })
}

/// `J_o`, `J_r` or `J_e` of the host: the subgroup generated by every
/// family member.
pub fn thompson_subgroup(x: &Subgroup, kind: FamilyKind) -> Result<Subgroup> {
    let family = abelian_family(x, kind)?;
    Ok(generated_by(&family))
}

pub fn generated_by(family: &AbelianFamily) -> Subgroup {
    let mut seed: Vec<Elem> = Vec::new();
    for m in &family.members {
        seed.extend_from_slice(m.elems());
    }
    seed.sort_unstable();
    seed.dedup();
    subgroup::closure(family.host.parent(), &seed)
}

/// `Omega(K) = <x in K : x^p = 1>` for a p-group `K`. The trivial group
/// maps to itself.
pub fn omega(k: &Subgroup) -> Result<Subgroup> {
    if k.is_trivial() {
        return Ok(k.clone());
    }
    let p = k.p_group_prime()?;
    let g = k.parent();
    let seed: Vec<Elem> = k
        .elems()
        .iter()
        .copied()
        .filter(|&e| e != 0 && g.order_of(e) as u64 == p)
        .collect();
    Ok(subgroup::closure(g, &seed))
}

/// Rank and exponent of an abelian subgroup.
///
/// The rank is computed as the rank of the p-torsion subgroup (for abelian
/// groups this is the largest elementary abelian subgroup) and
/// cross-checked against the minimal-generator count `log_p |A / A^p|`;
/// disagreement would be a kernel defect.
pub fn rank_and_exponent(a: &Subgroup) -> Result<(u32, u64)> {
    if !a.is_abelian() {
        return Err(Error::NotAbelian);
    }
    if a.is_trivial() {
        return Ok((0, 1));
    }
    let p = a.p_group_prime()?;
    let g = a.parent();
    let torsion_size = a
        .elems()
        .iter()
        .filter(|&&e| e == 0 || g.order_of(e) as u64 == p)
        .count() as u64;
    // for abelian A the p-torsion set is already a subgroup
    let rank = arith::exact_log(torsion_size, p);
    let mut powers: Vec<Elem> = a.elems().iter().map(|&e| g.pow(e, p)).collect();
    powers.sort_unstable();
    powers.dedup();
    let frattini_index = a.order() as u64 / powers.len() as u64;
    assert_eq!(
        rank,
        arith::exact_log(frattini_index, p),
        "rank routes disagree on an abelian subgroup"
    );
    Ok((rank, a.exponent()))
}

/// Report from checking the equality/containment behaviour of the
/// Thompson subgroup between a p-group and a subgroup of it.
#[derive(Clone, Debug)]
pub struct MonotonicityReport {
    /// `A in family(P), A <= R` implies `J(R) <= J(P)`.
    pub containment_ok: bool,
    /// `J(P) = J(R)` if and only if `J(P) <= R`.
    pub equality_iff_ok: bool,
    pub witness: Option<String>,
}

impl MonotonicityReport {
    pub fn pass(&self) -> bool {
        self.containment_ok && self.equality_iff_ok
    }
}

/// Verifies both directions of the J-subgroup monotonicity statement for
/// `R <= P`.
pub fn j_monotonicity_check(
    p_host: &Subgroup,
    r: &Subgroup,
    kind: FamilyKind,
) -> Result<MonotonicityReport> {
    if !r.is_subset_of(p_host) {
        return Err(Error::invalid("R must be a subgroup of P"));
    }
    let fam_p = abelian_family(p_host, kind)?;
    let j_p = generated_by(&fam_p);
    let j_r = thompson_subgroup(r, kind)?;

    let mut witness = None;
    let some_member_inside = fam_p.members.iter().any(|a| a.is_subset_of(r));
    let containment_ok = if some_member_inside {
        let ok = j_r.is_subset_of(&j_p);
        if !ok {
            witness = Some("member inside R but J(R) not inside J(P)".to_string());
        }
        ok
    } else {
        true
    };

    let equal = j_p == j_r;
    let inside = j_p.is_subset_of(r);
    let equality_iff_ok = equal == inside;
    if !equality_iff_ok && witness.is_none() {
        witness = Some(format!("J(P)=J(R): {equal}, J(P)<=R: {inside}"));
    }
    Ok(MonotonicityReport { containment_ok, equality_iff_ok, witness })
}
