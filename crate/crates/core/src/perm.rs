//! Permutations on `0..degree` and flattening of permutation groups into
//! Cayley tables.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::group::{Elem, Group, GroupTable};

pub type Perm = Vec<u16>;

/// Composition acting left-to-right: `(p * q)(x) = q(p(x))`.
pub fn compose(p: &Perm, q: &Perm) -> Perm {
    p.iter().map(|&x| q[x as usize]).collect()
}

pub fn identity(degree: usize) -> Perm {
    (0..degree as u16).collect()
}

pub fn is_even(p: &Perm) -> bool {
    let mut seen = vec![false; p.len()];
    let mut transpositions = 0;
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = p[x] as usize;
            len += 1;
        }
        transpositions += len - 1;
    }
    transpositions % 2 == 0
}

/// Parses disjoint-cycle notation with 1-based points, e.g. `"(1 2 3)(4 5)"`.
/// Commas are accepted as separators too. The permutation is padded to
/// `degree`.
pub fn parse_cycles(s: &str, degree: usize) -> Result<Perm> {
    let mut p = identity(degree);
    let body = s.trim();
    if body.is_empty() || body == "()" {
        return Ok(p);
    }
    if !body.starts_with('(') {
        return Err(Error::invalid(format!("cycle notation must start with '(': {s:?}")));
    }
    let mut used = vec![false; degree + 1];
    for cycle in body.split(')') {
        let cycle = cycle.trim();
        if cycle.is_empty() {
            continue;
        }
        let cycle = cycle
            .strip_prefix('(')
            .ok_or_else(|| Error::invalid(format!("unbalanced parentheses in {s:?}")))?;
        let points: Vec<usize> = cycle
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::invalid(format!("bad point {t:?} in {s:?}")))
            })
            .collect::<Result<_>>()?;
        for &pt in &points {
            if pt == 0 || pt > degree {
                return Err(Error::invalid(format!(
                    "point {pt} out of range 1..={degree} in {s:?}"
                )));
            }
            if used[pt] {
                return Err(Error::invalid(format!("point {pt} repeated in {s:?}")));
            }
            used[pt] = true;
        }
        for w in points.windows(2) {
            p[w[0] - 1] = (w[1] - 1) as u16;
        }
        if points.len() > 1 {
            p[points[points.len() - 1] - 1] = (points[0] - 1) as u16;
        }
    }
    Ok(p)
}

/// Largest point mentioned in a list of cycle strings (1-based), so the
/// caller can pick a degree.
pub fn max_point(gens: &[String]) -> Result<usize> {
    let mut m = 1usize;
    for s in gens {
        for tok in s.split(|c: char| !c.is_ascii_digit()) {
            if tok.is_empty() {
                continue;
            }
            let v: usize = tok
                .parse()
                .map_err(|_| Error::invalid(format!("bad point {tok:?} in {s:?}")))?;
            m = m.max(v);
        }
    }
    Ok(m)
}

/// Generates the group generated by `gens` and flattens it to a table.
///
/// Elements are ordered lexicographically by image vector; the identity is
/// automatically least, so it lands at index 0.
pub fn group_from_perms(name: impl Into<String>, gens: &[Perm]) -> Result<Group> {
    let degree = gens.first().map(|g| g.len()).unwrap_or(1);
    if gens.iter().any(|g| g.len() != degree) {
        return Err(Error::invalid("permutation generators have mixed degrees"));
    }
    let bound = crate::config::order_bound();
    let mut elems: Vec<Perm> = vec![identity(degree)];
    let mut seen: HashMap<Perm, ()> = elems.iter().cloned().map(|p| (p, ())).collect();
    let mut k = 0;
    while k < elems.len() {
        let cur = elems[k].clone();
        for g in gens {
            let next = compose(&cur, g);
            if !seen.contains_key(&next) {
                if elems.len() >= bound {
                    return Err(Error::BoundExceeded { order: elems.len() + 1, bound });
                }
                seen.insert(next.clone(), ());
                elems.push(next);
            }
        }
        k += 1;
    }
    elems.sort_unstable();
    table_from_keyed_elements(name, elems, |a, b| compose(a, b), Some(gens))
}

/// Builds a table from a sorted, deduplicated list of element keys and a
/// composition function. The identity key (composition unit) is moved to
/// the front; the rest keep their sorted order.
pub fn table_from_keyed_elements<K: Ord + Clone + std::hash::Hash>(
    name: impl Into<String>,
    mut keys: Vec<K>,
    compose: impl Fn(&K, &K) -> K,
    gen_keys: Option<&[K]>,
) -> Result<Group> {
    // locate the identity: e with e*e = e
    let id_pos = keys
        .iter()
        .position(|k| compose(k, k) == *k)
        .ok_or_else(|| Error::invalid("no idempotent element; not a group"))?;
    let id = keys.remove(id_pos);
    let mut ordered = vec![id];
    ordered.append(&mut keys);
    let index: HashMap<K, Elem> =
        ordered.iter().cloned().enumerate().map(|(i, k)| (k, i as Elem)).collect();
    let n = ordered.len();
    let mut mul = Vec::with_capacity(n * n);
    for a in &ordered {
        for b in &ordered {
            let c = compose(a, b);
            let &i = index
                .get(&c)
                .ok_or_else(|| Error::invalid("element set is not closed under composition"))?;
            mul.push(i);
        }
    }
    let gens = gen_keys.map(|gs| gs.iter().map(|g| index[g]).collect());
    GroupTable::from_flat(name, n, mul, gens, false)
}
