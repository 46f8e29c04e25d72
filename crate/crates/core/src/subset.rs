//! Bitmask subsets of a ground set with at most 64 elements.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Largest ground set representable by [`Subset`].
pub const MAX_GROUND: usize = 64;

/// A subset of `0..n` stored as a bitmask. Bit `i` set means element `i` is present.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset(pub u64);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    /// The full set `{0, .., n-1}`.
    pub fn full(n: usize) -> Subset {
        assert!(n <= MAX_GROUND, "ground set too large for a bitmask");
        if n == MAX_GROUND {
            Subset(u64::MAX)
        } else {
            Subset((1u64 << n) - 1)
        }
    }

    pub fn singleton(u: usize) -> Subset {
        Subset(1u64 << u)
    }

    pub fn from_elems<I: IntoIterator<Item = usize>>(elems: I) -> Subset {
        elems.into_iter().fold(Subset::EMPTY, |s, u| s.with(u))
    }

    #[inline]
    pub fn bits(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn contains(self, u: usize) -> bool {
        u < MAX_GROUND && self.0 >> u & 1 == 1
    }

    #[inline]
    pub fn with(self, u: usize) -> Subset {
        Subset(self.0 | 1u64 << u)
    }

    #[inline]
    pub fn without(self, u: usize) -> Subset {
        Subset(self.0 & !(1u64 << u))
    }

    #[inline]
    pub fn insert(&mut self, u: usize) {
        self.0 |= 1u64 << u;
    }

    #[inline]
    pub fn remove(&mut self, u: usize) {
        self.0 &= !(1u64 << u);
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    #[inline]
    pub fn difference(self, other: Subset) -> Subset {
        Subset(self.0 & !other.0)
    }

    #[inline]
    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    /// Largest element plus one, or 0 for the empty set.
    pub fn bound(self) -> usize {
        MAX_GROUND - self.0.leading_zeros() as usize
    }

    /// Elements in ascending id order.
    pub fn iter(self) -> Elems {
        Elems(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

pub struct Elems(u64);

impl Iterator for Elems {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let u = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(u)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Elems {}

impl IntoIterator for Subset {
    type Item = usize;
    type IntoIter = Elems;

    fn into_iter(self) -> Elems {
        self.iter()
    }
}

impl FromIterator<usize> for Subset {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        Subset::from_elems(iter)
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, u) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{u}")?;
        }
        write!(f, "}}")
    }
}

// Serialized as a sorted list of element ids.
impl Serialize for Subset {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for Subset {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let elems = Vec::<usize>::deserialize(deserializer)?;
        if let Some(&bad) = elems.iter().find(|&&u| u >= MAX_GROUND) {
            return Err(serde::de::Error::custom(format!(
                "element {bad} exceeds the {MAX_GROUND}-element limit"
            )));
        }
        Ok(Subset::from_elems(elems))
    }
}
