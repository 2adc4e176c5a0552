//! Finite groups as immutable multiplication tables.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::arith;
use crate::bitset::Bitset;
use crate::error::{Error, Result};

/// Dense element index into a Cayley table. Index 0 is always the identity.
pub type Elem = u16;

/// Shared handle to a group; all subgroup machinery works through this.
pub type Group = Arc<GroupTable>;

/// A finite group given by its full multiplication table.
///
/// Immutable after construction; the lazily filled caches are
/// value-deterministic, so sharing across threads is safe.
pub struct GroupTable {
    name: String,
    order: usize,
    mul: Vec<Elem>,
    inv: Vec<Elem>,
    elem_orders: Vec<u32>,
    gens: Option<Vec<Elem>>,
    classes: OnceLock<Arc<Vec<Vec<Elem>>>>,
    center: OnceLock<Vec<Elem>>,
    // subgroup lattices keyed by scope element list; raw element vectors
    // only, to avoid Arc cycles through Subgroup
    lattices: OnceLock<Mutex<HashMap<Vec<Elem>, Arc<Vec<Vec<Elem>>>>>>,
    // abelian families keyed by (scope, kind tag): (score, member lists)
    families: OnceLock<Mutex<HashMap<(Vec<Elem>, u8), Arc<(u64, Vec<Vec<Elem>>)>>>>,
}

impl std::fmt::Debug for GroupTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GroupTable({} | {})", self.name, self.order)
    }
}

impl GroupTable {
    /// Builds a table from rows, validating identity, inverses and the
    /// Latin-square property. `check_associativity` runs the full cubic
    /// check and should be set for untrusted input.
    pub fn from_rows(
        name: impl Into<String>,
        rows: Vec<Vec<usize>>,
        gens: Option<Vec<Elem>>,
        check_associativity: bool,
    ) -> Result<Group> {
        let order = rows.len();
        if order == 0 {
            return Err(Error::invalid("empty multiplication table"));
        }
        crate::config::check_order(order)?;
        let mut mul = Vec::with_capacity(order * order);
        for row in &rows {
            if row.len() != order {
                return Err(Error::invalid("multiplication table is not square"));
            }
            for &v in row {
                if v >= order {
                    return Err(Error::invalid(format!(
                        "table entry {v} out of range for order {order}"
                    )));
                }
                mul.push(v as Elem);
            }
        }
        Self::from_flat(name, order, mul, gens, check_associativity)
    }

    pub(crate) fn from_flat(
        name: impl Into<String>,
        order: usize,
        mul: Vec<Elem>,
        gens: Option<Vec<Elem>>,
        check_associativity: bool,
    ) -> Result<Group> {
        crate::config::check_order(order)?;
        assert_eq!(mul.len(), order * order);
        let at = |a: usize, b: usize| mul[a * order + b] as usize;
        // identity at index 0
        for i in 0..order {
            if at(0, i) != i || at(i, 0) != i {
                return Err(Error::invalid("index 0 is not a two-sided identity"));
            }
        }
        // Latin square
        for i in 0..order {
            let mut row = Bitset::new(order);
            let mut col = Bitset::new(order);
            for j in 0..order {
                if !row.insert(at(i, j)) || !col.insert(at(j, i)) {
                    return Err(Error::invalid(format!(
                        "row or column {i} is not a permutation"
                    )));
                }
            }
        }
        // inverses
        let mut inv = vec![0 as Elem; order];
        for i in 0..order {
            let j = (0..order)
                .find(|&j| at(i, j) == 0)
                .expect("latin square has a right inverse");
            if at(j, i) != 0 {
                return Err(Error::invalid(format!("element {i} has no two-sided inverse")));
            }
            inv[i] = j as Elem;
        }
        if check_associativity {
            for a in 0..order {
                for b in 0..order {
                    let ab = at(a, b);
                    for c in 0..order {
                        if at(ab, c) != at(a, at(b, c)) {
                            return Err(Error::invalid(format!(
                                "associativity fails at ({a},{b},{c})"
                            )));
                        }
                    }
                }
            }
        }
        // element orders: smallest k >= 1 with i^k = identity
        let mut elem_orders = vec![1u32; order];
        for i in 1..order {
            let mut x = i;
            let mut ord = 1;
            while x != 0 {
                x = at(x, i);
                ord += 1;
            }
            elem_orders[i] = ord;
        }
        Ok(Arc::new(GroupTable {
            name: name.into(),
            order,
            mul,
            inv,
            elem_orders,
            gens,
            classes: OnceLock::new(),
            center: OnceLock::new(),
            lattices: OnceLock::new(),
            families: OnceLock::new(),
        }))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a as usize * self.order + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inv[a as usize]
    }

    /// Conjugate `a^g = g^{-1} a g`.
    #[inline]
    pub fn conj(&self, a: Elem, g: Elem) -> Elem {
        self.mul(self.mul(self.inv(g), a), g)
    }

    /// Commutator `[a, b] = a^{-1} b^{-1} a b`.
    #[inline]
    pub fn comm(&self, a: Elem, b: Elem) -> Elem {
        self.mul(self.inv(self.mul(b, a)), self.mul(a, b))
    }

    pub fn pow(&self, a: Elem, mut k: u64) -> Elem {
        let ord = self.elem_orders[a as usize] as u64;
        k %= ord;
        let mut acc = 0 as Elem;
        let mut base = a;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn order_of(&self, a: Elem) -> u32 {
        self.elem_orders[a as usize]
    }

    /// Exponent of the group: lcm of element orders.
    pub fn exponent(&self) -> u64 {
        self.elem_orders.iter().fold(1u64, |acc, &o| arith::lcm(acc, o as u64))
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order as Elem)
            .all(|a| (0..self.order as Elem).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Declared generators, if the table was built from them.
    pub fn gens(&self) -> Option<&[Elem]> {
        self.gens.as_deref()
    }

    pub fn elems(&self) -> impl Iterator<Item = Elem> + Clone {
        0..self.order as Elem
    }

    /// Conjugacy classes of elements, each sorted, ordered by least member.
    pub fn conjugacy_classes(&self) -> Arc<Vec<Vec<Elem>>> {
        self.classes
            .get_or_init(|| {
                let n = self.order;
                let mut seen = Bitset::new(n);
                let mut classes = Vec::new();
                for a in 0..n as Elem {
                    if seen.contains(a as usize) {
                        continue;
                    }
                    let mut class: Vec<Elem> = (0..n as Elem)
                        .map(|g| self.conj(a, g))
                        .collect();
                    class.sort_unstable();
                    class.dedup();
                    for &x in &class {
                        seen.insert(x as usize);
                    }
                    classes.push(class);
                }
                Arc::new(classes)
            })
            .clone()
    }

    /// Elements commuting with everything, sorted.
    pub fn center_elems(&self) -> &[Elem] {
        self.center.get_or_init(|| {
            (0..self.order as Elem)
                .filter(|&z| {
                    (0..self.order as Elem).all(|g| self.mul(z, g) == self.mul(g, z))
                })
                .collect()
        })
    }

    /// Full associativity sweep; cheap enough below the order bound and
    /// used by the table-invariant tests.
    pub fn verify_associativity(&self) -> bool {
        let n = self.order as Elem;
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub(crate) fn lattice_cache(
        &self,
    ) -> &Mutex<HashMap<Vec<Elem>, Arc<Vec<Vec<Elem>>>>> {
        self.lattices.get_or_init(|| Mutex::new(HashMap::new()))
    }

    pub(crate) fn family_cache(
        &self,
    ) -> &Mutex<HashMap<(Vec<Elem>, u8), Arc<(u64, Vec<Vec<Elem>>)>>> {
        self.families.get_or_init(|| Mutex::new(HashMap::new()))
    }

    /// Renames the table (used when constructions wrap each other).
    pub fn with_name(self: &Arc<Self>, name: impl Into<String>) -> Group {
        Arc::new(GroupTable {
            name: name.into(),
            order: self.order,
            mul: self.mul.clone(),
            inv: self.inv.clone(),
            elem_orders: self.elem_orders.clone(),
            gens: self.gens.clone(),
            classes: OnceLock::new(),
            center: OnceLock::new(),
            lattices: OnceLock::new(),
            families: OnceLock::new(),
        })
    }

    pub fn mul_rows(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|i| (0..self.order).map(|j| self.mul[i * self.order + j] as usize).collect())
            .collect()
    }
}

impl PartialEq for GroupTable {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.mul == other.mul
    }
}
impl Eq for GroupTable {}

/// A homomorphism between tables, given by the image of every element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupMap {
    pub source: Group,
    pub target: Group,
    pub images: Vec<Elem>,
}

impl GroupMap {
    pub fn identity(g: &Group) -> Self {
        GroupMap { source: g.clone(), target: g.clone(), images: g.elems().collect() }
    }

    pub fn apply(&self, a: Elem) -> Elem {
        self.images[a as usize]
    }

    /// Checks the homomorphism law and that 0 maps to 0.
    pub fn validate(&self) -> Result<()> {
        if self.images.len() != self.source.order() {
            return Err(Error::invalid("image vector has wrong length"));
        }
        if self.images[0] != 0 {
            return Err(Error::invalid("identity does not map to identity"));
        }
        for a in self.source.elems() {
            for b in self.source.elems() {
                if self.apply(self.source.mul(a, b))
                    != self.target.mul(self.apply(a), self.apply(b))
                {
                    return Err(Error::invalid(format!(
                        "homomorphism law fails at ({a},{b})"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn is_bijective(&self) -> bool {
        let mut seen = Bitset::new(self.target.order());
        self.images.len() == self.target.order()
            && self.images.iter().all(|&i| seen.insert(i as usize))
    }
}
