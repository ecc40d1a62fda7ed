//! Characteristic sets: collections of nonempty subsets of `{1..n}`.
//!
//! Every expression `E` over `n` variables is equivalent to the union of the
//! atoms `G_I` for `I` in a unique collection `S` not containing the empty
//! set. [`charset`] computes `S` by structural recursion: variables map to
//! upsets, union and intersection map to member-wise union and intersection,
//! and complement maps to the nonempty masks outside the child.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::mask::{Arity, SubsetMask};

/// Largest arity for which the dense bit-array storage is chosen by default.
pub const DENSE_MAX_ARITY: usize = 16;

/// Storage strategy for a [`CharSet`]. Both behave identically.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Representation {
    Sparse,
    Dense,
}

impl Representation {
    pub fn default_for(n: Arity) -> Self {
        if n.get() <= DENSE_MAX_ARITY {
            Representation::Dense
        } else {
            Representation::Sparse
        }
    }
}

#[derive(Clone, Debug)]
enum Storage {
    Sparse(HashSet<SubsetMask>),
    Dense { words: Vec<u64>, len: usize },
}

/// A set of nonempty [`SubsetMask`]s for a fixed arity.
///
/// The empty mask is never a member. Equality compares members only, not
/// the storage strategy.
#[derive(Clone, Debug)]
pub struct CharSet {
    arity: Arity,
    storage: Storage,
}

impl CharSet {
    pub fn empty(n: Arity) -> Self {
        Self::empty_with(n, Representation::default_for(n))
    }

    pub fn empty_with(n: Arity, repr: Representation) -> Self {
        let storage = match repr {
            Representation::Sparse => Storage::Sparse(HashSet::new()),
            Representation::Dense => Storage::Dense {
                words: vec![0; n.powerset_len().div_ceil(64)],
                len: 0,
            },
        };
        CharSet { arity: n, storage }
    }

    /// `P({1..n}) \ {∅}`.
    pub fn nonempty_subsets(n: Arity) -> Self {
        CharSet::empty(n).compl()
    }

    /// `S_I = { J : I ⊆ J, J ≠ ∅ }`.
    pub fn upset(i: SubsetMask, n: Arity) -> Self {
        Self::upset_with(i, n, Representation::default_for(n))
    }

    pub fn upset_with(i: SubsetMask, n: Arity, repr: Representation) -> Self {
        debug_assert!(i.fits(n));
        let mut s = CharSet::empty_with(n, repr);
        let free = n.full_mask().bits() & !i.bits();
        // walk every submask of the free bits
        let mut sub = free;
        loop {
            let m = SubsetMask::from_bits(i.bits() | sub);
            if !m.is_empty() {
                s.insert(m);
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & free;
        }
        s
    }

    /// Builds a charset from explicit masks, rejecting `∅` and out-of-range masks.
    /// Duplicates collapse.
    pub fn from_masks<I: IntoIterator<Item = SubsetMask>>(n: Arity, masks: I) -> Result<Self> {
        let mut s = CharSet::empty(n);
        for m in masks {
            if m.is_empty() || !m.fits(n) {
                return Err(Error::InvalidMask {
                    mask: m.bits(),
                    n: n.get(),
                });
            }
            s.insert(m);
        }
        Ok(s)
    }

    /// Inverse of [`CharSet::serialize`].
    pub fn from_serialized(n: Arity, subsets: &[Vec<usize>]) -> Result<Self> {
        let masks = subsets
            .iter()
            .map(|s| SubsetMask::from_indices(s.iter().copied()))
            .collect::<Result<Vec<_>>>()?;
        Self::from_masks(n, masks)
    }

    fn insert(&mut self, m: SubsetMask) {
        debug_assert!(!m.is_empty());
        match &mut self.storage {
            Storage::Sparse(set) => {
                set.insert(m);
            }
            Storage::Dense { words, len } => {
                let (w, b) = (m.bits() as usize / 64, m.bits() % 64);
                if words[w] & (1 << b) == 0 {
                    words[w] |= 1 << b;
                    *len += 1;
                }
            }
        }
    }

    pub fn arity(&self) -> Arity {
        self.arity
    }

    pub fn representation(&self) -> Representation {
        match self.storage {
            Storage::Sparse(_) => Representation::Sparse,
            Storage::Dense { .. } => Representation::Dense,
        }
    }

    pub fn to_representation(&self, repr: Representation) -> Self {
        if self.representation() == repr {
            return self.clone();
        }
        let mut out = CharSet::empty_with(self.arity, repr);
        for m in self.iter() {
            out.insert(m);
        }
        out
    }

    pub fn len(&self) -> usize {
        match &self.storage {
            Storage::Sparse(set) => set.len(),
            Storage::Dense { len, .. } => *len,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, m: SubsetMask) -> bool {
        match &self.storage {
            Storage::Sparse(set) => set.contains(&m),
            Storage::Dense { words, .. } => {
                let bits = m.bits() as usize;
                bits < words.len() * 64 && words[bits / 64] & (1 << (bits % 64)) != 0
            }
        }
    }

    /// Members in unspecified order.
    pub fn iter(&self) -> Box<dyn Iterator<Item = SubsetMask> + '_> {
        match &self.storage {
            Storage::Sparse(set) => Box::new(set.iter().copied()),
            Storage::Dense { words, .. } => {
                Box::new(words.iter().enumerate().flat_map(|(w, &word)| {
                    (0..64u32)
                        .filter(move |b| word & (1 << b) != 0)
                        .map(move |b| SubsetMask::from_bits(w as u32 * 64 + b))
                }))
            }
        }
    }

    /// Members in ascending numeric order.
    pub fn sorted(&self) -> Vec<SubsetMask> {
        let mut v: Vec<SubsetMask> = self.iter().collect();
        v.sort_unstable();
        v
    }

    /// Canonical serialization: members ascending by mask value, each as
    /// sorted 1-based indices.
    pub fn serialize(&self) -> Vec<Vec<usize>> {
        self.sorted().into_iter().map(SubsetMask::indices).collect()
    }

    /// `counts[k]` is the number of members of cardinality `k` (`counts.len() == n + 1`).
    pub fn level_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.arity.get() + 1];
        for m in self.iter() {
            counts[m.len()] += 1;
        }
        counts
    }

    fn check_same_arity(&self, other: &CharSet) -> Result<()> {
        if self.arity != other.arity {
            return Err(Error::ArityMismatch {
                left: self.arity.get(),
                right: other.arity.get(),
            });
        }
        Ok(())
    }

    pub fn union(&self, other: &CharSet) -> Result<CharSet> {
        self.check_same_arity(other)?;
        if let (Storage::Dense { words: a, .. }, Storage::Dense { words: b, .. }) =
            (&self.storage, &other.storage)
        {
            return Ok(self.dense_from(a.iter().zip(b).map(|(x, y)| x | y).collect()));
        }
        let mut out = self.clone();
        for m in other.iter() {
            out.insert(m);
        }
        Ok(out)
    }

    pub fn inter(&self, other: &CharSet) -> Result<CharSet> {
        self.check_same_arity(other)?;
        if let (Storage::Dense { words: a, .. }, Storage::Dense { words: b, .. }) =
            (&self.storage, &other.storage)
        {
            return Ok(self.dense_from(a.iter().zip(b).map(|(x, y)| x & y).collect()));
        }
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut out = CharSet::empty_with(self.arity, self.representation());
        for m in small.iter().filter(|&m| large.contains(m)) {
            out.insert(m);
        }
        Ok(out)
    }

    /// Nonempty masks not in `self`. The empty mask is always excluded.
    pub fn compl(&self) -> CharSet {
        match &self.storage {
            Storage::Dense { words, .. } => {
                let total = self.arity.powerset_len();
                let mut flipped: Vec<u64> = words.iter().map(|w| !w).collect();
                if !total.is_multiple_of(64) {
                    let last = flipped.len() - 1;
                    flipped[last] &= (1u64 << (total % 64)) - 1;
                }
                flipped[0] &= !1;
                self.dense_from(flipped)
            }
            Storage::Sparse(_) => {
                let mut out = CharSet::empty_with(self.arity, Representation::Sparse);
                for bits in 1..self.arity.powerset_len() as u32 {
                    let m = SubsetMask::from_bits(bits);
                    if !self.contains(m) {
                        out.insert(m);
                    }
                }
                out
            }
        }
    }

    fn dense_from(&self, words: Vec<u64>) -> CharSet {
        let len = words.iter().map(|w| w.count_ones() as usize).sum();
        CharSet {
            arity: self.arity,
            storage: Storage::Dense { words, len },
        }
    }
}

impl PartialEq for CharSet {
    fn eq(&self, other: &Self) -> bool {
        self.arity == other.arity
            && self.len() == other.len()
            && self.iter().all(|m| other.contains(m))
    }
}

impl Eq for CharSet {}

impl fmt::Display for CharSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("∅");
        }
        let parts: Vec<String> = self.sorted().iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Compiles expressions to characteristic sets for a fixed arity, caching
/// the per-variable upsets `S_{i}`.
pub struct CharsetCompiler {
    arity: Arity,
    repr: Representation,
    upsets: Vec<Option<CharSet>>,
}

impl CharsetCompiler {
    pub fn new(n: Arity) -> Self {
        Self::with_representation(n, Representation::default_for(n))
    }

    pub fn with_representation(n: Arity, repr: Representation) -> Self {
        CharsetCompiler {
            arity: n,
            repr,
            upsets: vec![None; n.get()],
        }
    }

    pub fn arity(&self) -> Arity {
        self.arity
    }

    fn var_upset(&mut self, i: usize) -> &CharSet {
        let (n, repr) = (self.arity, self.repr);
        self.upsets[i - 1]
            .get_or_insert_with(|| CharSet::upset_with(SubsetMask::singleton(i), n, repr))
    }

    pub fn compile(&mut self, e: &Expr) -> Result<CharSet> {
        e.check_arity(self.arity)?;
        Ok(self.compile_checked(e))
    }

    fn compile_checked(&mut self, e: &Expr) -> CharSet {
        match e {
            Expr::Empty => CharSet::empty_with(self.arity, self.repr),
            Expr::Var(i) => self.var_upset(*i).clone(),
            Expr::Union(l, r) => {
                let (l, r) = (self.compile_checked(l), self.compile_checked(r));
                l.union(&r).expect("operands share the compiler arity")
            }
            Expr::Inter(l, r) => {
                let (l, r) = (self.compile_checked(l), self.compile_checked(r));
                l.inter(&r).expect("operands share the compiler arity")
            }
            Expr::Compl(inner) => self.compile_checked(inner).compl(),
        }
    }
}

/// The characteristic set of `e` over `n` variables.
///
/// Fails only if `e` mentions a variable above `n`.
pub fn charset(e: &Expr, n: Arity) -> Result<CharSet> {
    CharsetCompiler::new(n).compile(e)
}

/// Semantic equivalence: equal characteristic sets.
pub fn equivalent(e1: &Expr, e2: &Expr, n: Arity) -> Result<bool> {
    let mut c = CharsetCompiler::new(n);
    Ok(c.compile(e1)? == c.compile(e2)?)
}
