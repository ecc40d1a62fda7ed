//! Arity and subset masks over the index set `{1, ..., n}`.

use std::fmt;

use crate::error::{Error, Result};

/// Default upper bound on the number of variables.
pub const DEFAULT_MAX_ARITY: usize = 20;

/// Hard ceiling for any configured cap; masks are stored in a `u32`.
pub const ARITY_CEILING: usize = 30;

/// Number of variables `n` in an expression or set sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arity(usize);

impl Arity {
    /// Validates `n` against [`DEFAULT_MAX_ARITY`].
    pub fn new(n: usize) -> Result<Self> {
        Self::with_max(n, DEFAULT_MAX_ARITY)
    }

    /// Validates `n` against a caller-supplied cap (itself at most [`ARITY_CEILING`]).
    pub fn with_max(n: usize, max: usize) -> Result<Self> {
        let max = max.min(ARITY_CEILING);
        if n == 0 || n > max {
            return Err(Error::Arity { n, max });
        }
        Ok(Arity(n))
    }

    pub fn get(self) -> usize {
        self.0
    }

    /// Number of subsets of `{1..n}`, including the empty one.
    pub fn powerset_len(self) -> usize {
        1usize << self.0
    }

    /// Mask with every index set.
    pub fn full_mask(self) -> SubsetMask {
        SubsetMask(((1u64 << self.0) - 1) as u32)
    }

    /// All nonempty masks of popcount `k`, in increasing numeric order.
    pub fn masks_of_size(self, k: usize) -> LevelIter {
        LevelIter::new(self.0, k)
    }
}

impl fmt::Display for Arity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// A subset `I` of `{1, ..., n}`; bit `i - 1` is set iff `i` is in `I`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubsetMask(u32);

impl SubsetMask {
    pub const EMPTY: SubsetMask = SubsetMask(0);

    pub const fn from_bits(bits: u32) -> Self {
        SubsetMask(bits)
    }

    /// Builds a mask from 1-based indices. Index 0 or indices above 32 are rejected.
    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Result<Self> {
        let mut bits = 0u32;
        for i in indices {
            if i == 0 || i > 32 {
                return Err(Error::Range { value: i, n: 32 });
            }
            bits |= 1 << (i - 1);
        }
        Ok(SubsetMask(bits))
    }

    /// The singleton `{i}` (1-based).
    pub fn singleton(i: usize) -> Self {
        debug_assert!((1..=32).contains(&i));
        SubsetMask(1 << (i - 1))
    }

    pub const fn bits(self) -> u32 {
        self.0
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Cardinality `|I|`.
    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub const fn contains(self, i: usize) -> bool {
        i >= 1 && i <= 32 && self.0 & (1 << (i - 1)) != 0
    }

    pub const fn is_subset_of(self, other: SubsetMask) -> bool {
        self.0 & !other.0 == 0
    }

    /// True when every index fits in arity `n`.
    pub fn fits(self, n: Arity) -> bool {
        (self.0 as u64) < (1u64 << n.get())
    }

    pub fn with(self, i: usize) -> Self {
        SubsetMask(self.0 | (1 << (i - 1)))
    }

    /// Sorted 1-based indices.
    pub fn indices(self) -> Vec<usize> {
        (0..32)
            .filter(|b| self.0 & (1 << b) != 0)
            .map(|b| b + 1)
            .collect()
    }
}

impl fmt::Display for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("∅");
        }
        let parts: Vec<String> = self.indices().iter().map(usize::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Iterates masks of a fixed popcount in increasing order (Gosper's hack).
pub struct LevelIter {
    next: Option<u64>,
    limit: u64,
}

impl LevelIter {
    fn new(n: usize, k: usize) -> Self {
        let limit = 1u64 << n;
        let next = if k == 0 || k > n {
            None
        } else {
            Some((1u64 << k) - 1)
        };
        LevelIter { next, limit }
    }
}

impl Iterator for LevelIter {
    type Item = SubsetMask;

    fn next(&mut self) -> Option<SubsetMask> {
        let cur = self.next?;
        let low = cur & cur.wrapping_neg();
        let ripple = cur + low;
        let succ = (((ripple ^ cur) >> 2) / low) | ripple;
        self.next = (succ < self.limit).then_some(succ);
        Some(SubsetMask(cur as u32))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arity_bounds() {
        assert!(Arity::new(0).is_err());
        assert!(Arity::new(20).is_ok());
        assert!(matches!(
            Arity::new(21),
            Err(Error::Arity { n: 21, max: 20 })
        ));
        assert!(Arity::with_max(25, 25).is_ok());
        assert!(Arity::with_max(31, 64).is_err());
    }

    #[test]
    fn mask_display_and_indices() {
        let m = SubsetMask::from_indices([3, 1]).unwrap();
        assert_eq!(m.bits(), 0b101);
        assert_eq!(m.indices(), vec![1, 3]);
        assert_eq!(m.to_string(), "{1,3}");
        assert_eq!(SubsetMask::EMPTY.to_string(), "∅");
        assert!(SubsetMask::from_indices([0]).is_err());
    }

    #[test]
    fn level_iteration_matches_filter() {
        for n in 1..=8 {
            let a = Arity::new(n).unwrap();
            for k in 0..=n + 1 {
                let fast: Vec<u32> = a.masks_of_size(k).map(SubsetMask::bits).collect();
                let slow: Vec<u32> = (1u32..1 << n)
                    .filter(|m| m.count_ones() as usize == k)
                    .collect();
                assert_eq!(fast, slow, "n={n} k={k}");
            }
        }
    }
}
