//! Bundles (item subsets) and allocations (ordered partitions).
//!
//! Items are numbered `1..=m`; item `k` lives in bit `k-1` of the mask, so
//! the integer mask doubles as the canonical subset index used by table
//! valuations and the JSON formats. Bundle ordering (`Ord`) is mask order,
//! which is the "lexicographically smallest bundle" tie-break rule used
//! throughout.

use std::fmt;

use crate::error::{Error, Result};

/// Hard cap on the item count; masks are `u32`.
pub const MAX_ITEMS: usize = 24;

/// A subset of the item set `[m]`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Bundle(u32);

impl Bundle {
    pub const EMPTY: Bundle = Bundle(0);

    pub fn from_mask(mask: u32) -> Bundle {
        Bundle(mask)
    }

    pub fn mask(self) -> u32 {
        self.0
    }

    /// The full item set `[m]`.
    pub fn full(m: usize) -> Bundle {
        assert!(m <= MAX_ITEMS, "item count {m} exceeds {MAX_ITEMS}");
        if m == 0 {
            Bundle(0)
        } else {
            Bundle((1u32 << m) - 1)
        }
    }

    /// `{item}` for a 1-based item index.
    pub fn singleton(item: usize) -> Bundle {
        assert!((1..=MAX_ITEMS).contains(&item), "item {item} out of range");
        Bundle(1 << (item - 1))
    }

    pub fn from_items(items: &[usize]) -> Bundle {
        items
            .iter()
            .fold(Bundle::EMPTY, |b, &g| b.union(Bundle::singleton(g)))
    }

    pub fn contains(self, item: usize) -> bool {
        item >= 1 && item <= MAX_ITEMS && self.0 & (1 << (item - 1)) != 0
    }

    pub fn with(self, item: usize) -> Bundle {
        self.union(Bundle::singleton(item))
    }

    pub fn without(self, item: usize) -> Bundle {
        Bundle(self.0 & !Bundle::singleton(item).0)
    }

    pub fn union(self, other: Bundle) -> Bundle {
        Bundle(self.0 | other.0)
    }

    pub fn intersection(self, other: Bundle) -> Bundle {
        Bundle(self.0 & other.0)
    }

    pub fn difference(self, other: Bundle) -> Bundle {
        Bundle(self.0 & !other.0)
    }

    /// `[m] \ self`.
    pub fn complement(self, m: usize) -> Bundle {
        Bundle(Bundle::full(m).0 & !self.0)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset_of(self, other: Bundle) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Bundle) -> bool {
        self.0 & other.0 == 0
    }

    /// Whether all members fall inside `[m]`.
    pub fn in_range(self, m: usize) -> bool {
        self.is_subset_of(Bundle::full(m))
    }

    /// 1-based item indices in ascending order.
    pub fn items(self) -> impl Iterator<Item = usize> {
        let mask = self.0;
        (1..=MAX_ITEMS).filter(move |k| mask & (1 << (k - 1)) != 0)
    }

    /// All subsets of `[m]` in ascending mask order.
    pub fn all(m: usize) -> impl Iterator<Item = Bundle> {
        assert!(m <= MAX_ITEMS);
        (0..1u64 << m).map(|mask| Bundle(mask as u32))
    }
}

impl fmt::Display for Bundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, g) in self.items().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "g{g}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for Bundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl serde::Serialize for Bundle {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_u32(self.mask())
    }
}

/// An ordered partition of `[m]` into one bundle per player.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Allocation {
    m: usize,
    bundles: Vec<Bundle>,
}

impl Allocation {
    /// Validates the partition property: pairwise disjoint, union `[m]`.
    pub fn new(bundles: Vec<Bundle>, m: usize) -> Result<Allocation> {
        if bundles.is_empty() {
            return Err(Error::InvalidAllocation("no players".into()));
        }
        let mut seen = Bundle::EMPTY;
        for (i, b) in bundles.iter().enumerate() {
            if !b.in_range(m) {
                return Err(Error::InvalidAllocation(format!(
                    "bundle {b} of player {i} leaves [{m}]"
                )));
            }
            if !seen.is_disjoint(*b) {
                return Err(Error::InvalidAllocation(format!(
                    "bundle {b} of player {i} overlaps an earlier bundle"
                )));
            }
            seen = seen.union(*b);
        }
        if seen != Bundle::full(m) {
            return Err(Error::InvalidAllocation(format!(
                "bundles do not cover [{m}]"
            )));
        }
        Ok(Allocation { m, bundles })
    }

    /// Two-player allocation `(own, [m] \ own)`.
    pub fn split(own: Bundle, m: usize) -> Allocation {
        Allocation {
            m,
            bundles: vec![own, own.complement(m)],
        }
    }

    pub fn n(&self) -> usize {
        self.bundles.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn bundle(&self, player: usize) -> Bundle {
        self.bundles[player]
    }

    pub fn bundles(&self) -> &[Bundle] {
        &self.bundles
    }

    /// The reversed allocation; for two players this swaps the bundles.
    pub fn reversed(&self) -> Allocation {
        let mut bundles = self.bundles.clone();
        bundles.reverse();
        Allocation { m: self.m, bundles }
    }
}

impl fmt::Display for Allocation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, b) in self.bundles.iter().enumerate() {
            if i > 0 {
                write!(f, " | ")?;
            }
            write!(f, "{b}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Allocation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
