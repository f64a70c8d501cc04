use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A subset of a carrier `{0, .., n-1}` stored as a bit vector.
///
/// Bit `i` set means element `i` is a member. Carriers are capped at
/// [`MAX_ORDER`](super::MAX_ORDER) elements, so one `u16` is enough.
///
/// The `Ord` impl compares the ascending member sequences lexicographically,
/// with a proper prefix sorting first: `{} < {0} < {0,1} < {0,2} < {1}`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct CellSet(u16);

impl CellSet {
    pub const EMPTY: CellSet = CellSet(0);

    pub const fn from_bits(bits: u16) -> Self {
        CellSet(bits)
    }

    pub const fn bits(self) -> u16 {
        self.0
    }

    pub const fn singleton(x: usize) -> Self {
        CellSet(1 << x)
    }

    /// The whole carrier of the given order.
    pub const fn full(order: usize) -> Self {
        CellSet(((1u32 << order) - 1) as u16)
    }

    pub fn from_members<I: IntoIterator<Item = usize>>(members: I) -> Self {
        members
            .into_iter()
            .fold(CellSet::EMPTY, |acc, x| acc.with(x))
    }

    #[inline]
    pub const fn with(self, x: usize) -> Self {
        CellSet(self.0 | (1 << x))
    }

    #[inline]
    pub const fn contains(self, x: usize) -> bool {
        self.0 >> x & 1 == 1
    }

    #[inline]
    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub const fn union(self, other: CellSet) -> CellSet {
        CellSet(self.0 | other.0)
    }

    #[inline]
    pub const fn intersection(self, other: CellSet) -> CellSet {
        CellSet(self.0 & other.0)
    }

    #[inline]
    pub const fn difference(self, other: CellSet) -> CellSet {
        CellSet(self.0 & !other.0)
    }

    #[inline]
    pub const fn is_subset(self, other: CellSet) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub const fn is_disjoint(self, other: CellSet) -> bool {
        self.0 & other.0 == 0
    }

    /// The member when this is a singleton.
    #[inline]
    pub fn single(self) -> Option<usize> {
        if self.0.count_ones() == 1 {
            Some(self.0.trailing_zeros() as usize)
        } else {
            None
        }
    }

    /// Largest member, if any.
    #[inline]
    pub fn max(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(15 - self.0.leading_zeros() as usize)
        }
    }

    /// Smallest member, if any.
    #[inline]
    pub fn min(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    pub fn iter(self) -> Members {
        Members(self.0)
    }

    /// Elementwise image `{ f(x) : x in self }`.
    #[inline]
    pub fn map(self, f: impl Fn(usize) -> usize) -> CellSet {
        self.iter().fold(CellSet::EMPTY, |acc, x| acc.with(f(x)))
    }

    /// Elementwise image under a permutation given as an image array.
    #[inline]
    pub fn permute(self, sigma: &[usize]) -> CellSet {
        self.map(|x| sigma[x])
    }

    /// True when every member is below `order`.
    pub fn fits(self, order: usize) -> bool {
        self.is_subset(CellSet::full(order))
    }

    /// Every subset of a carrier of the given order, in ascending bit order.
    pub fn all(order: usize) -> impl Iterator<Item = CellSet> {
        (0..1u32 << order).map(|b| CellSet(b as u16))
    }
}

impl Ord for CellSet {
    fn cmp(&self, other: &Self) -> Ordering {
        let diff = self.0 ^ other.0;
        if diff == 0 {
            return Ordering::Equal;
        }
        // Below the lowest differing element both sequences agree. The side
        // holding that element is smaller unless the other side has run out.
        let i = diff.trailing_zeros();
        let above = !((2u32 << i) - 1) as u16;
        if self.contains(i as usize) {
            if other.0 & above != 0 {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        } else if self.0 & above != 0 {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }
}

impl PartialOrd for CellSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub struct Members(u16);

impl Iterator for Members {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let x = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(x)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Members {}

impl IntoIterator for CellSet {
    type Item = usize;
    type IntoIter = Members;

    fn into_iter(self) -> Members {
        self.iter()
    }
}

impl FromIterator<usize> for CellSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        CellSet::from_members(iter)
    }
}

impl fmt::Display for CellSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, x) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for CellSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for CellSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for CellSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let members = Vec::<usize>::deserialize(d)?;
        if let Some(&bad) = members.iter().find(|&&x| x >= super::MAX_ORDER) {
            return Err(serde::de::Error::custom(format!(
                "element {bad} exceeds the order cap"
            )));
        }
        Ok(CellSet::from_members(members))
    }
}
