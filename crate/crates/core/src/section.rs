//! Sections `H/K`: a quotient table together with the projection map.

use std::collections::HashMap;

use crate::bitset::Bitset;
use crate::error::{Error, Result};
use crate::group::{Elem, Group, GroupTable};
use crate::subgroup::Subgroup;

/// A section of a group: `top / bottom` with `bottom` normal in `top`,
/// realized as its own [`Group`] plus the projection.
#[derive(Clone, Debug)]
pub struct Section {
    top: Subgroup,
    bottom: Subgroup,
    quotient: Group,
    /// Quotient index of each element of `top`, positionally aligned with
    /// `top.elems()`.
    projection: Vec<Elem>,
}

/// Forms `top / bottom`. Cosets are indexed by their least representative
/// in ascending order, which puts the identity coset at index 0.
pub fn quotient(top: &Subgroup, bottom: &Subgroup) -> Result<Section> {
    if !bottom.is_subset_of(top) || !bottom.is_normalized_by(top) {
        return Err(Error::NotNormal);
    }
    let g = top.parent();
    // least representative of each coset, per element of top
    let mut coset_rep: HashMap<Elem, Elem> = HashMap::new();
    let mut reps: Vec<Elem> = Vec::new();
    for &h in top.elems() {
        if coset_rep.contains_key(&h) {
            continue;
        }
        let mut members: Vec<Elem> = bottom.elems().iter().map(|&k| g.mul(k, h)).collect();
        members.sort_unstable();
        let rep = members[0];
        for m in members {
            coset_rep.insert(m, rep);
        }
        reps.push(rep);
    }
    reps.sort_unstable();
    let index_of: HashMap<Elem, Elem> =
        reps.iter().enumerate().map(|(i, &r)| (r, i as Elem)).collect();
    let n = reps.len();
    let mut mul = Vec::with_capacity(n * n);
    for &a in &reps {
        for &b in &reps {
            mul.push(index_of[&coset_rep[&g.mul(a, b)]]);
        }
    }
    let name = format!("{}/{}", top_name(top), bottom.order());
    let quotient = GroupTable::from_flat(name, n, mul, None, false)?;
    let projection = top.elems().iter().map(|h| index_of[&coset_rep[h]]).collect();
    Ok(Section { top: top.clone(), bottom: bottom.clone(), quotient, projection })
}

fn top_name(top: &Subgroup) -> String {
    if top.is_whole() {
        top.parent().name().to_string()
    } else {
        format!("{}[{}]", top.parent().name(), top.order())
    }
}

impl Section {
    pub fn top(&self) -> &Subgroup {
        &self.top
    }

    pub fn bottom(&self) -> &Subgroup {
        &self.bottom
    }

    pub fn quotient(&self) -> &Group {
        &self.quotient
    }

    pub fn order(&self) -> usize {
        self.quotient.order()
    }

    pub fn is_trivial(&self) -> bool {
        self.quotient.order() == 1
    }

    /// Image of a parent element; `None` if it lies outside `top`.
    pub fn project(&self, e: Elem) -> Option<Elem> {
        self.top
            .elems()
            .binary_search(&e)
            .ok()
            .map(|pos| self.projection[pos])
    }

    /// Image of a subgroup of `top` as a subgroup of the quotient.
    pub fn project_subgroup(&self, s: &Subgroup) -> Result<Subgroup> {
        if !s.is_subset_of(&self.top) {
            return Err(Error::invalid("subgroup is not inside the section top"));
        }
        let mut elems: Vec<Elem> = s
            .elems()
            .iter()
            .map(|&e| self.project(e).expect("subset of top"))
            .collect();
        elems.sort_unstable();
        elems.dedup();
        let mask = Bitset::from_elems(self.quotient.order(), elems.iter().map(|&e| e as usize));
        Ok(Subgroup::from_sorted_unchecked(self.quotient.clone(), elems, mask))
    }

    /// All parent elements mapping onto a quotient subgroup, as a subgroup
    /// of the parent.
    pub fn preimage_subgroup(&self, q: &Subgroup) -> Subgroup {
        let g = self.top.parent();
        let elems: Vec<Elem> = self
            .top
            .elems()
            .iter()
            .copied()
            .filter(|&e| q.contains(self.project(e).expect("element of top")))
            .collect();
        let mask = Bitset::from_elems(g.order(), elems.iter().map(|&e| e as usize));
        Subgroup::from_sorted_unchecked(g.clone(), elems, mask)
    }

    /// Kernel of the projection (must equal `bottom`; exposed for tests).
    pub fn kernel(&self) -> Vec<Elem> {
        self.top
            .elems()
            .iter()
            .copied()
            .filter(|&e| self.project(e) == Some(0))
            .collect()
    }
}
