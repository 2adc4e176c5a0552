//! Named constructions of the standard small groups.

use serde::{Deserialize, Serialize};

use crate::arith;
use crate::error::{Error, Result};
use crate::group::{Elem, Group, GroupTable};
use crate::perm;

/// A serializable group construction descriptor.
///
/// Composite constructions (`direct_product`, `semidirect`) nest. For a
/// semidirect product `N ⋊ H` the action is a `|H| × |N|` table:
/// `action[h][n]` is the image of `n` under the automorphism attached to
/// `h`, and the assignment must be a homomorphism `H -> Aut(N)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Construction {
    Cyclic { n: usize },
    ElementaryAbelian { p: u64, k: u32 },
    /// Dihedral group of order `2n`.
    Dihedral { n: usize },
    /// Generalized quaternion (dicyclic) group of order `4n`, `n >= 2`.
    Quaternion { n: usize },
    /// Extraspecial group of order `p^3` and exponent `p` (upper
    /// unitriangular 3x3 matrices over F_p).
    Heisenberg { p: u64 },
    Extraspecial { p: u64, exponent: ExtraspecialExponent },
    /// The regular wreath product `Z_p wr Z_p` of order `p^(p+1)`.
    WreathCpCp { p: u64 },
    /// `SL(2, p)`.
    SpecialLinear2 { p: u64 },
    /// `Qd(p) = (Z_p x Z_p) ⋊ SL(2, p)` with the natural action.
    Qd { p: u64 },
    Symmetric { n: usize },
    Alternating { n: usize },
    DirectProduct { factors: Vec<Construction> },
    Semidirect {
        normal: Box<Construction>,
        acting: Box<Construction>,
        action: Vec<Vec<u16>>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ExtraspecialExponent {
    #[serde(rename = "p")]
    P,
    #[serde(rename = "p2")]
    PSquared,
}

impl Construction {
    /// Canonical display name of the constructed group.
    pub fn describe(&self) -> String {
        match self {
            Construction::Cyclic { n } => format!("Z{n}"),
            Construction::ElementaryAbelian { p, k } => format!("E{}", p.pow(*k)),
            Construction::Dihedral { n } => format!("D{}", 2 * n),
            Construction::Quaternion { n } => format!("Q{}", 4 * n),
            Construction::Heisenberg { p } => format!("Heis{}", p.pow(3)),
            Construction::Extraspecial { p, exponent: ExtraspecialExponent::P } => {
                format!("Heis{}", p.pow(3))
            }
            Construction::Extraspecial { p, exponent: ExtraspecialExponent::PSquared } => {
                format!("M{}", p.pow(3))
            }
            Construction::WreathCpCp { p } => format!("Z{p}wrZ{p}"),
            Construction::SpecialLinear2 { p } => format!("SL(2,{p})"),
            Construction::Qd { p } => format!("Qd({p})"),
            Construction::Symmetric { n } => format!("Sym{n}"),
            Construction::Alternating { n } => format!("Alt{n}"),
            Construction::DirectProduct { factors } => factors
                .iter()
                .map(Construction::describe)
                .collect::<Vec<_>>()
                .join("x"),
            Construction::Semidirect { normal, acting, .. } => {
                format!("{}:{}", normal.describe(), acting.describe())
            }
        }
    }
}

/// Builds the table for a construction descriptor.
pub fn build(c: &Construction) -> Result<Group> {
    let g = build_inner(c)?;
    Ok(g)
}

fn build_inner(c: &Construction) -> Result<Group> {
    match c {
        Construction::Cyclic { n } => cyclic(*n),
        Construction::ElementaryAbelian { p, k } => elementary_abelian(*p, *k),
        Construction::Dihedral { n } => dihedral(*n),
        Construction::Quaternion { n } => quaternion(*n),
        Construction::Heisenberg { p } => heisenberg(*p),
        Construction::Extraspecial { p, exponent } => match exponent {
            ExtraspecialExponent::P => heisenberg(*p),
            ExtraspecialExponent::PSquared => extraspecial_exponent_p2(*p),
        },
        Construction::WreathCpCp { p } => wreath_cp_cp(*p),
        Construction::SpecialLinear2 { p } => special_linear2(*p),
        Construction::Qd { p } => qd(*p),
        Construction::Symmetric { n } => symmetric(*n),
        Construction::Alternating { n } => alternating(*n),
        Construction::DirectProduct { factors } => {
            if factors.is_empty() {
                return cyclic(1);
            }
            let mut acc = build_inner(&factors[0])?;
            for f in &factors[1..] {
                acc = direct_product(&acc, &build_inner(f)?)?;
            }
            Ok(acc.with_name(c.describe()))
        }
        Construction::Semidirect { normal, acting, action } => {
            let n = build_inner(normal)?;
            let h = build_inner(acting)?;
            semidirect(&n, &h, action, c.describe())
        }
    }
}

pub fn cyclic(n: usize) -> Result<Group> {
    if n == 0 {
        return Err(Error::invalid("cyclic group needs n >= 1"));
    }
    crate::config::check_order(n)?;
    let mut mul = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            mul.push(((i + j) % n) as Elem);
        }
    }
    GroupTable::from_flat(format!("Z{n}"), n, mul, Some(vec![1.min(n - 1) as Elem]), false)
}

pub fn elementary_abelian(p: u64, k: u32) -> Result<Group> {
    if !arith::is_prime(p) {
        return Err(Error::invalid(format!("{p} is not prime")));
    }
    let mut acc = cyclic(p as usize)?;
    for _ in 1..k.max(1) {
        acc = direct_product(&acc, &cyclic(p as usize)?)?;
    }
    if k == 0 {
        acc = cyclic(1)?;
    }
    Ok(acc.with_name(format!("E{}", p.pow(k))))
}

/// Direct product with index `(a, b) -> a * |B| + b`.
pub fn direct_product(a: &Group, b: &Group) -> Result<Group> {
    let (na, nb) = (a.order(), b.order());
    let n = na * nb;
    crate::config::check_order(n)?;
    let mut mul = Vec::with_capacity(n * n);
    for i in 0..n {
        let (a1, b1) = ((i / nb) as Elem, (i % nb) as Elem);
        for j in 0..n {
            let (a2, b2) = ((j / nb) as Elem, (j % nb) as Elem);
            let prod = a.mul(a1, a2) as usize * nb + b.mul(b1, b2) as usize;
            mul.push(prod as Elem);
        }
    }
    GroupTable::from_flat(format!("{}x{}", a.name(), b.name()), n, mul, None, false)
}

/// Semidirect product `N ⋊ H` with index `(n, h) -> n * |H| + h` and
/// multiplication `(n, h)(n', h') = (n · α_h(n'), h h')`.
///
/// `action[h]` must be an automorphism of `N` and `h -> action[h]` a
/// homomorphism; both are checked exhaustively.
pub fn semidirect(
    n: &Group,
    h: &Group,
    action: &[Vec<u16>],
    name: impl Into<String>,
) -> Result<Group> {
    let (nn, nh) = (n.order(), h.order());
    crate::config::check_order(nn * nh)?;
    if action.len() != nh || action.iter().any(|row| row.len() != nn) {
        return Err(Error::invalid("action table has wrong shape"));
    }
    for (hi, row) in action.iter().enumerate() {
        let mut seen = crate::bitset::Bitset::new(nn);
        for &img in row {
            if img as usize >= nn || !seen.insert(img as usize) {
                return Err(Error::invalid(format!("action row {hi} is not a permutation")));
            }
        }
        if row[0] != 0 {
            return Err(Error::invalid(format!("action row {hi} moves the identity")));
        }
        for x in 0..nn as Elem {
            for y in 0..nn as Elem {
                if action[hi][n.mul(x, y) as usize] != n.mul(row[x as usize], row[y as usize]) {
                    return Err(Error::invalid(format!("action row {hi} is not multiplicative")));
                }
            }
        }
    }
    if action[0].iter().enumerate().any(|(i, &v)| v as usize != i) {
        return Err(Error::invalid("action of the identity must be trivial"));
    }
    for h1 in 0..nh {
        for h2 in 0..nh {
            let h12 = h.mul(h1 as Elem, h2 as Elem) as usize;
            for x in 0..nn {
                if action[h12][x] != action[h1][action[h2][x] as usize] {
                    return Err(Error::invalid("action is not a homomorphism into Aut(N)"));
                }
            }
        }
    }
    let total = nn * nh;
    let mut mul = Vec::with_capacity(total * total);
    for i in 0..total {
        let (n1, h1) = ((i / nh) as Elem, (i % nh) as Elem);
        for j in 0..total {
            let (n2, h2) = ((j / nh) as Elem, (j % nh) as Elem);
            let np = n.mul(n1, action[h1 as usize][n2 as usize]);
            let hp = h.mul(h1, h2);
            mul.push((np as usize * nh + hp as usize) as Elem);
        }
    }
    GroupTable::from_flat(name, total, mul, None, false)
}

pub fn dihedral(n: usize) -> Result<Group> {
    if n == 0 {
        return Err(Error::invalid("dihedral group needs n >= 1"));
    }
    let rot = cyclic(n)?;
    let flip = cyclic(2)?;
    let invert: Vec<u16> = (0..n as u16).map(|x| rot.inv(x)).collect();
    let ident: Vec<u16> = (0..n as u16).collect();
    semidirect(&rot, &flip, &[ident, invert], format!("D{}", 2 * n))
}

pub fn quaternion(n: usize) -> Result<Group> {
    if n < 2 {
        return Err(Error::invalid("generalized quaternion needs n >= 2"));
    }
    let two_n = 2 * n;
    let total = 4 * n;
    crate::config::check_order(total)?;
    // elements a^i b^j, index i + j * 2n
    let idx = |i: usize, j: usize| (i % two_n) + j * two_n;
    let mut mul = vec![0 as Elem; total * total];
    for i in 0..two_n {
        for j in 0..2 {
            for i2 in 0..two_n {
                for j2 in 0..2 {
                    let (ri, rj) = if j == 0 {
                        (i + i2, j2)
                    } else if j2 == 0 {
                        (i + two_n - i2, 1)
                    } else {
                        (i + two_n - i2 + n, 0)
                    };
                    mul[idx(i, j) * total + idx(i2, j2)] = idx(ri, rj % 2) as Elem;
                }
            }
        }
    }
    GroupTable::from_flat(format!("Q{total}"), total, mul, Some(vec![1, two_n as Elem]), false)
}

/// Upper unitriangular 3x3 matrices over F_p: elements `(a, b, c)` with
/// `(a,b,c)(a',b',c') = (a+a', b+b', c+c'+ab')`, indexed as `a·p² + b·p + c`.
pub fn heisenberg(p: u64) -> Result<Group> {
    if !arith::is_prime(p) {
        return Err(Error::invalid(format!("{p} is not prime")));
    }
    let p = p as usize;
    let n = p * p * p;
    crate::config::check_order(n)?;
    let idx = |a: usize, b: usize, c: usize| (a * p + b) * p + c;
    let mut mul = vec![0 as Elem; n * n];
    for a in 0..p {
        for b in 0..p {
            for c in 0..p {
                let i = idx(a, b, c);
                for a2 in 0..p {
                    for b2 in 0..p {
                        for c2 in 0..p {
                            let j = idx(a2, b2, c2);
                            let v = idx((a + a2) % p, (b + b2) % p, (c + c2 + a * b2) % p);
                            mul[i * n + j] = v as Elem;
                        }
                    }
                }
            }
        }
    }
    GroupTable::from_flat(
        format!("Heis{n}"),
        n,
        mul,
        Some(vec![idx(1, 0, 0) as Elem, idx(0, 1, 0) as Elem]),
        false,
    )
}

/// The extraspecial group of order `p^3` and exponent `p^2`:
/// `Z_{p^2} ⋊ Z_p` with the acting generator mapping `x -> x^{1+p}`.
fn extraspecial_exponent_p2(p: u64) -> Result<Group> {
    if !arith::is_prime(p) {
        return Err(Error::invalid(format!("{p} is not prime")));
    }
    let p = p as usize;
    let base = cyclic(p * p)?;
    let top = cyclic(p)?;
    let one_step: Vec<u16> = (0..(p * p) as u16).map(|x| ((x as usize * (1 + p)) % (p * p)) as u16).collect();
    let mut rows = vec![(0..(p * p) as u16).collect::<Vec<u16>>()];
    for k in 1..p {
        let prev = &rows[k - 1];
        rows.push(prev.iter().map(|&x| one_step[x as usize]).collect());
    }
    semidirect(&base, &top, &rows, format!("M{}", p * p * p))
}

/// `Z_p wr Z_p`: the base is `Z_p^p` (digits big-endian in the index) and
/// the acting generator rotates digits left.
pub fn wreath_cp_cp(p: u64) -> Result<Group> {
    if !arith::is_prime(p) {
        return Err(Error::invalid(format!("{p} is not prime")));
    }
    let k = p as u32;
    let base = elementary_abelian(p, k)?;
    let top = cyclic(p as usize)?;
    let pu = p as usize;
    let nn = base.order();
    let digits = |mut x: usize| -> Vec<usize> {
        let mut d = vec![0; pu];
        for i in (0..pu).rev() {
            d[i] = x % pu;
            x /= pu;
        }
        d
    };
    let undigits = |d: &[usize]| -> usize { d.iter().fold(0, |acc, &v| acc * pu + v) };
    let mut rows = Vec::with_capacity(pu);
    for shift in 0..pu {
        let row: Vec<u16> = (0..nn)
            .map(|x| {
                let d = digits(x);
                let rotated: Vec<usize> = (0..pu).map(|i| d[(i + shift) % pu]).collect();
                undigits(&rotated) as u16
            })
            .collect();
        rows.push(row);
    }
    semidirect(&base, &top, &rows, format!("Z{p}wrZ{p}"))
}

fn sl2_keys(p: u64) -> Vec<[u64; 4]> {
    let mut keys = Vec::new();
    for a in 0..p {
        for b in 0..p {
            for c in 0..p {
                for d in 0..p {
                    if (a * d + p * p - b * c) % p == 1 % p {
                        keys.push([a, b, c, d]);
                    }
                }
            }
        }
    }
    keys.sort_unstable();
    keys
}

fn sl2_compose(p: u64, m: &[u64; 4], n: &[u64; 4]) -> [u64; 4] {
    [
        (m[0] * n[0] + m[1] * n[2]) % p,
        (m[0] * n[1] + m[1] * n[3]) % p,
        (m[2] * n[0] + m[3] * n[2]) % p,
        (m[2] * n[1] + m[3] * n[3]) % p,
    ]
}

pub fn special_linear2(p: u64) -> Result<Group> {
    if !arith::is_prime(p) {
        return Err(Error::invalid(format!("{p} is not prime")));
    }
    let order = (p * p * p - p).max(1) as usize;
    crate::config::check_order(order)?;
    let keys = sl2_keys(p);
    perm::table_from_keyed_elements(
        format!("SL(2,{p})"),
        keys,
        |m, n| sl2_compose(p, m, n),
        None,
    )
}

/// `Qd(p)`: the natural semidirect product of the 2-dimensional F_p vector
/// group with `SL(2, p)` acting by matrix-times-column-vector.
pub fn qd(p: u64) -> Result<Group> {
    if !arith::is_prime(p) {
        return Err(Error::invalid(format!("{p} is not prime")));
    }
    let order = (p * p) * (p * p * p - p);
    crate::config::check_order(order as usize)?;
    let base = elementary_abelian(p, 2)?;
    let sl = special_linear2(p)?;
    // recover matrix keys in table order: sorted with identity first
    let mut keys = sl2_keys(p);
    let id_pos = keys.iter().position(|k| *k == [1, 0, 0, 1]).unwrap();
    let id = keys.remove(id_pos);
    keys.insert(0, id);
    let pu = p;
    let rows: Vec<Vec<u16>> = keys
        .iter()
        .map(|m| {
            (0..(p * p))
                .map(|v| {
                    let (x, y) = (v / pu, v % pu);
                    let nx = (m[0] * x + m[1] * y) % pu;
                    let ny = (m[2] * x + m[3] * y) % pu;
                    (nx * pu + ny) as u16
                })
                .collect()
        })
        .collect();
    semidirect(&base, &sl, &rows, format!("Qd({p})"))
}

fn all_perms(n: usize) -> Vec<perm::Perm> {
    let mut out = Vec::new();
    let mut cur: Vec<u16> = (0..n as u16).collect();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
    out
}

pub fn symmetric(n: usize) -> Result<Group> {
    if n == 0 {
        return Err(Error::invalid("symmetric group needs n >= 1"));
    }
    let order: usize = (1..=n).product();
    crate::config::check_order(order)?;
    perm::table_from_keyed_elements(format!("Sym{n}"), all_perms(n), |a, b| perm::compose(a, b), None)
}

pub fn alternating(n: usize) -> Result<Group> {
    if n == 0 {
        return Err(Error::invalid("alternating group needs n >= 1"));
    }
    let order: usize = ((1..=n).product::<usize>() / 2).max(1);
    crate::config::check_order(order)?;
    let evens: Vec<perm::Perm> = all_perms(n).into_iter().filter(perm::is_even).collect();
    perm::table_from_keyed_elements(format!("Alt{n}"), evens, |a, b| perm::compose(a, b), None)
}
