//! A plain fixed-capacity bitset over element indices.
//!
//! Membership tests dominate the inner loops of closure and lattice
//! enumeration, so subgroups carry one of these alongside their sorted
//! element list.

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bitset {
    words: Vec<u64>,
}

impl Bitset {
    pub fn new(capacity: usize) -> Self {
        Bitset { words: vec![0; capacity.div_ceil(64)] }
    }

    pub fn from_elems<I: IntoIterator<Item = usize>>(capacity: usize, elems: I) -> Self {
        let mut s = Bitset::new(capacity);
        for e in elems {
            s.insert(e);
        }
        s
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        (self.words[i >> 6] >> (i & 63)) & 1 == 1
    }

    /// Inserts `i`; returns true if it was not already present.
    #[inline]
    pub fn insert(&mut self, i: usize) -> bool {
        let w = &mut self.words[i >> 6];
        let bit = 1u64 << (i & 63);
        let fresh = *w & bit == 0;
        *w |= bit;
        fresh
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_subset_of(&self, other: &Bitset) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn intersection(&self, other: &Bitset) -> Bitset {
        Bitset {
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
        }
    }

    pub fn intersect_with(&mut self, other: &Bitset) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * 64 + b)
                }
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_ops() {
        let mut s = Bitset::new(200);
        assert!(s.insert(0));
        assert!(s.insert(130));
        assert!(!s.insert(130));
        assert!(s.contains(130));
        assert!(!s.contains(131));
        assert_eq!(s.count(), 2);
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 130]);

        let t = Bitset::from_elems(200, [0, 5, 130]);
        assert!(s.is_subset_of(&t));
        assert!(!t.is_subset_of(&s));
        assert_eq!(s.intersection(&t).count(), 2);
    }
}
