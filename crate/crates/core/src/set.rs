use std::cmp::Ordering;
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Serialize, Serializer};

use crate::algebra::Elem;

/// A subset of a carrier `{0, .., n-1}`.
///
/// Ordering compares the ascending member sequences lexicographically, so
/// `{0, 3} < {1} < {1, 2}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ElementSet {
    bits: FixedBitSet,
}

impl ElementSet {
    pub fn empty(universe: usize) -> Self {
        Self {
            bits: FixedBitSet::with_capacity(universe),
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(universe);
        bits.insert_range(..);
        Self { bits }
    }

    pub fn from_members<I: IntoIterator<Item = Elem>>(universe: usize, members: I) -> Self {
        let mut set = Self::empty(universe);
        for x in members {
            set.insert(x);
        }
        set
    }

    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    #[inline]
    pub fn contains(&self, x: Elem) -> bool {
        self.bits.contains(x)
    }

    /// Inserts `x`; returns true when it was not already present.
    pub fn insert(&mut self, x: Elem) -> bool {
        !self.bits.put(x)
    }

    pub fn remove(&mut self, x: Elem) {
        self.bits.set(x, false);
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.universe()
    }

    pub fn iter(&self) -> impl Iterator<Item = Elem> + '_ {
        self.bits.ones()
    }

    pub fn members(&self) -> Vec<Elem> {
        self.iter().collect()
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn intersection(&self, other: &ElementSet) -> ElementSet {
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        ElementSet { bits }
    }

    pub fn union(&self, other: &ElementSet) -> ElementSet {
        let mut bits = self.bits.clone();
        bits.union_with(&other.bits);
        ElementSet { bits }
    }
}

impl Ord for ElementSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter()
            .cmp(other.iter())
            .then(self.universe().cmp(&other.universe()))
    }
}

impl PartialOrd for ElementSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, x) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for ElementSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lexicographic_order_on_members() {
        let a = ElementSet::from_members(4, [0, 3]);
        let b = ElementSet::from_members(4, [1]);
        let c = ElementSet::from_members(4, [1, 2]);
        assert!(a < b);
        assert!(b < c);
        let mut sets = vec![c.clone(), a.clone(), b.clone()];
        sets.sort();
        assert_eq!(sets, vec![a, b, c]);
    }

    #[test]
    fn insert_reports_novelty() {
        let mut s = ElementSet::empty(3);
        assert!(s.insert(2));
        assert!(!s.insert(2));
        assert_eq!(s.members(), vec![2]);
        assert_eq!(ElementSet::full(3).len(), 3);
    }
}
