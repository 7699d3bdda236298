//! Small index sets over hyperplane indices, backed by a `u64` bitmask.
//!
//! Flats, partition blocks and certificate bookkeeping all manipulate sets of
//! hyperplane indices; a bitmask makes closure, dedup and subset tests cheap
//! and gives every set a canonical integer key.

use std::fmt;

/// A set of hyperplane indices (each `< 64`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct IndexSet(pub u64);

impl IndexSet {
    pub const EMPTY: IndexSet = IndexSet(0);

    pub fn singleton(i: usize) -> Self {
        debug_assert!(i < 64);
        IndexSet(1u64 << i)
    }

    /// All indices `0..n`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= 64);
        if n == 64 {
            IndexSet(u64::MAX)
        } else {
            IndexSet((1u64 << n) - 1)
        }
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = IndexSet::EMPTY;
        for i in iter {
            s.insert(i);
        }
        s
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(&self, i: usize) -> bool {
        i < 64 && (self.0 >> i) & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        debug_assert!(i < 64);
        self.0 |= 1u64 << i;
    }

    pub fn remove(&mut self, i: usize) {
        self.0 &= !(1u64 << i);
    }

    pub fn union(&self, other: IndexSet) -> IndexSet {
        IndexSet(self.0 | other.0)
    }

    pub fn intersection(&self, other: IndexSet) -> IndexSet {
        IndexSet(self.0 & other.0)
    }

    pub fn difference(&self, other: IndexSet) -> IndexSet {
        IndexSet(self.0 & !other.0)
    }

    pub fn is_subset(&self, other: IndexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_proper_subset(&self, other: IndexSet) -> bool {
        self.0 != other.0 && self.is_subset(other)
    }

    /// Ascending iterator over the member indices.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let i = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(i)
            }
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Smallest member, if any.
    pub fn first(&self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    /// Position of `i` in the ascending member order, if present.
    pub fn position_of(&self, i: usize) -> Option<usize> {
        if self.contains(i) {
            Some((self.0 & ((1u64 << i) - 1)).count_ones() as usize)
        } else {
            None
        }
    }

    /// The `k`-th smallest member.
    pub fn nth(&self, k: usize) -> Option<usize> {
        self.iter().nth(k)
    }

    /// Relabel `self` (intersected with `members`) into positions within the
    /// ascending member order of `members`.
    pub fn relabel_into(&self, members: IndexSet) -> IndexSet {
        self.intersection(members)
            .iter()
            .map(|g| members.position_of(g).expect("member present"))
            .collect()
    }
}

impl FromIterator<usize> for IndexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        IndexSet::from_indices(iter)
    }
}

impl fmt::Debug for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self)
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for i in self.iter() {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{}", i)?;
            first = false;
        }
        Ok(())
    }
}
