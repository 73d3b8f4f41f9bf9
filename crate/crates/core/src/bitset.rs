//! Fixed-width subsets of a ground set with at most 64 elements.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Hard cap on the ground set size.
pub const MAX_ELEMENTS: usize = 64;

/// A subset of `{0, .., 63}` stored as a bit mask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(into = "Vec<usize>", from = "Vec<usize>")]
pub struct ElementSet(pub u64);

impl ElementSet {
    pub const EMPTY: ElementSet = ElementSet(0);

    pub fn singleton(e: usize) -> Self {
        debug_assert!(e < MAX_ELEMENTS);
        ElementSet(1u64 << e)
    }

    /// The set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        if n >= 64 {
            ElementSet(u64::MAX)
        } else {
            ElementSet((1u64 << n) - 1)
        }
    }

    pub fn from_elements<I: IntoIterator<Item = usize>>(it: I) -> Self {
        let mut s = ElementSet::EMPTY;
        for e in it {
            s.insert(e);
        }
        s
    }

    #[inline]
    pub fn bits(self) -> u64 {
        self.0
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
    pub fn contains(self, e: usize) -> bool {
        e < MAX_ELEMENTS && (self.0 >> e) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, e: usize) {
        self.0 |= 1u64 << e;
    }

    #[inline]
    pub fn remove(&mut self, e: usize) {
        self.0 &= !(1u64 << e);
    }

    #[inline]
    pub fn with(self, e: usize) -> Self {
        ElementSet(self.0 | (1u64 << e))
    }

    #[inline]
    pub fn without(self, e: usize) -> Self {
        ElementSet(self.0 & !(1u64 << e))
    }

    #[inline]
    pub fn union(self, other: Self) -> Self {
        ElementSet(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: Self) -> Self {
        ElementSet(self.0 & other.0)
    }

    #[inline]
    pub fn difference(self, other: Self) -> Self {
        ElementSet(self.0 & !other.0)
    }

    #[inline]
    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    /// Smallest element by id.
    #[inline]
    pub fn first(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    pub fn iter(self) -> Elements {
        Elements(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// All subsets of `self` (including empty and `self`), in Gray-free
    /// increasing-mask order.
    pub fn subsets(self) -> Subsets {
        Subsets {
            mask: self.0,
            next: Some(0),
        }
    }
}

impl From<Vec<usize>> for ElementSet {
    fn from(v: Vec<usize>) -> Self {
        ElementSet::from_elements(v)
    }
}

impl From<ElementSet> for Vec<usize> {
    fn from(s: ElementSet) -> Self {
        s.to_vec()
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
        for (k, e) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

pub struct Elements(u64);

impl Iterator for Elements {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let e = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(e)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Elements {}

pub struct Subsets {
    mask: u64,
    next: Option<u64>,
}

impl Iterator for Subsets {
    type Item = ElementSet;

    fn next(&mut self) -> Option<ElementSet> {
        let cur = self.next?;
        self.next = if cur == self.mask {
            None
        } else {
            Some((cur.wrapping_sub(self.mask)) & self.mask)
        };
        Some(ElementSet(cur))
    }
}

/// All `k`-subsets of `{0, .., n-1}` in colexicographic order.
pub fn k_subsets(n: usize, k: usize) -> impl Iterator<Item = ElementSet> {
    let mut cur: Option<u64> = if k > n {
        None
    } else if k == 0 {
        Some(0)
    } else {
        Some((1u64 << k) - 1)
    };
    let limit: u128 = 1u128 << n;
    std::iter::from_fn(move || {
        let c = cur?;
        if (c as u128) >= limit {
            return None;
        }
        cur = if c == 0 {
            None
        } else {
            // Gosper's hack
            let lowest = c & c.wrapping_neg();
            let ripple = c.wrapping_add(lowest);
            if ripple == 0 {
                None
            } else {
                let ones = ((c ^ ripple) >> 2) / lowest;
                Some(ripple | ones)
            }
        };
        Some(ElementSet(c))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subsets_enumerates_all() {
        let s = ElementSet::from_elements([1, 4, 6]);
        let subs: Vec<_> = s.subsets().collect();
        assert_eq!(subs.len(), 8);
        assert!(subs.iter().all(|t| t.is_subset(s)));
    }

    #[test]
    fn k_subsets_counts() {
        assert_eq!(k_subsets(6, 3).count(), 20);
        assert_eq!(k_subsets(5, 0).count(), 1);
        assert_eq!(k_subsets(3, 4).count(), 0);
        assert_eq!(k_subsets(64, 1).count(), 64);
        assert!(k_subsets(7, 2).all(|s| s.len() == 2 && s.is_subset(ElementSet::full(7))));
    }

    #[test]
    fn serde_as_sorted_list() {
        let s = ElementSet::from_elements([5, 0, 2]);
        assert_eq!(serde_json::to_string(&s).unwrap(), "[0,2,5]");
        let t: ElementSet = serde_json::from_str("[2,5,0]").unwrap();
        assert_eq!(s, t);
    }
}
