//! Deciding inclusion-exclusion-likeness and computing the coefficients.
//!
//! An expression is inclusion-exclusion-like when `|E(A)| = Σ_k c_k·i_{n,k}(A)`
//! for fixed integers `c_k` and every sequence `A`. That holds exactly when its
//! characteristic set is a union of whole cardinality levels: whenever it
//! contains one subset of size `k`, it contains all `C(n, k)` of them. The
//! coefficients then only depend on the set `C` of levels present.

use std::collections::BTreeSet;
use std::fmt;

use crate::binomial::{binom, pow2, sign};
use crate::charset::CharSet;
use crate::error::{Error, Result};
use crate::mask::{Arity, SubsetMask};

/// A subset of `{1..n}` interpreted as allowed cardinalities.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CardinalitySet {
    arity: Arity,
    members: BTreeSet<usize>,
}

impl CardinalitySet {
    pub fn new<I: IntoIterator<Item = usize>>(n: Arity, members: I) -> Result<Self> {
        let members: BTreeSet<usize> = members.into_iter().collect();
        if let Some(&bad) = members.iter().find(|&&k| k == 0 || k > n.get()) {
            return Err(Error::Range {
                value: bad,
                n: n.get(),
            });
        }
        Ok(CardinalitySet { arity: n, members })
    }

    pub fn empty(n: Arity) -> Self {
        CardinalitySet {
            arity: n,
            members: BTreeSet::new(),
        }
    }

    /// `{m, ..., n}`.
    pub fn at_least(m: usize, n: Arity) -> Result<Self> {
        check_level(m, n)?;
        Self::new(n, m..=n.get())
    }

    pub fn evens(n: Arity) -> Self {
        Self::new(n, (2..=n.get()).step_by(2)).expect("levels lie in 1..=n")
    }

    pub fn odds(n: Arity) -> Self {
        Self::new(n, (1..=n.get()).step_by(2)).expect("levels lie in 1..=n")
    }

    /// Cardinalities of the members of `s`.
    pub fn of_charset(s: &CharSet) -> Self {
        let members = s
            .level_counts()
            .iter()
            .enumerate()
            .filter(|&(_, &c)| c > 0)
            .map(|(k, _)| k)
            .collect();
        CardinalitySet {
            arity: s.arity(),
            members,
        }
    }

    pub fn arity(&self) -> Arity {
        self.arity
    }

    pub fn contains(&self, k: usize) -> bool {
        self.members.contains(&k)
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn min(&self) -> Option<usize> {
        self.members.first().copied()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.members.iter().copied().collect()
    }
}

fn check_level(m: usize, n: Arity) -> Result<()> {
    if m == 0 || m > n.get() {
        return Err(Error::Range {
            value: m,
            n: n.get(),
        });
    }
    Ok(())
}

/// Exact coefficients `c_1..c_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoeffVector(Vec<i64>);

impl CoeffVector {
    pub fn new(c: Vec<i64>) -> Self {
        CoeffVector(c)
    }

    pub fn zeros(n: Arity) -> Self {
        CoeffVector(vec![0; n.get()])
    }

    /// `c_k` for `k` in `1..=n`.
    pub fn get(&self, k: usize) -> i64 {
        self.0[k - 1]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<i64> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

impl fmt::Display for CoeffVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IelDecision {
    IsLike {
        cardinalities: CardinalitySet,
        coeffs: CoeffVector,
    },
    /// `witness_in ∈ S`, `witness_out ∉ S`, and both have the same size.
    NotLike {
        witness_in: SubsetMask,
        witness_out: SubsetMask,
    },
}

impl IelDecision {
    pub fn is_like(&self) -> bool {
        matches!(self, IelDecision::IsLike { .. })
    }

    pub fn coeffs(&self) -> Option<&CoeffVector> {
        match self {
            IelDecision::IsLike { coeffs, .. } => Some(coeffs),
            IelDecision::NotLike { .. } => None,
        }
    }
}

/// Checks the level condition on `s`.
///
/// On failure the witness is taken at the smallest incomplete level: the
/// numerically smallest member and non-member of that size.
pub fn decide_iel(s: &CharSet) -> IelDecision {
    let n = s.arity();
    let counts = s.level_counts();
    for (k, &count) in counts.iter().enumerate().skip(1) {
        let level_size =
            binom(n.get() as u64, k as u64).expect("C(n, k) fits for n <= 30") as usize;
        if count == 0 || count == level_size {
            continue;
        }
        let mut witness_in = None;
        let mut witness_out = None;
        for m in n.masks_of_size(k) {
            let slot = if s.contains(m) {
                &mut witness_in
            } else {
                &mut witness_out
            };
            slot.get_or_insert(m);
            if witness_in.is_some() && witness_out.is_some() {
                break;
            }
        }
        return IelDecision::NotLike {
            witness_in: witness_in.expect("level is nonempty"),
            witness_out: witness_out.expect("level is incomplete"),
        };
    }
    let cardinalities = CardinalitySet::of_charset(s);
    let coeffs = coefficients(&cardinalities).expect("coefficients fit for n <= 30");
    IelDecision::IsLike {
        cardinalities,
        coeffs,
    }
}

/// `c_k = Σ_{j=1}^{k} (−1)^{k−j} C(k, j) [j ∈ C]`.
pub fn coefficients(levels: &CardinalitySet) -> Result<CoeffVector> {
    let n = levels.arity().get();
    (1..=n)
        .map(|k| {
            (1..=k)
                .filter(|&j| levels.contains(j))
                .try_fold(0i64, |acc, j| {
                    let term = sign(k - j) * binom(k as u64, j as u64)?;
                    acc.checked_add(term).ok_or(Error::Overflow)
                })
        })
        .collect::<Result<Vec<_>>>()
        .map(CoeffVector)
}

/// Closed form for "belongs to at least `m` of the sets":
/// `c_k = (−1)^{k−m} C(k−1, k−m)` for `k ≥ m`, zero below.
pub fn family_at_least(m: usize, n: Arity) -> Result<CoeffVector> {
    check_level(m, n)?;
    (1..=n.get())
        .map(|k| {
            if k < m {
                Ok(0)
            } else {
                Ok(sign(k - m) * binom((k - 1) as u64, (k - m) as u64)?)
            }
        })
        .collect::<Result<Vec<_>>>()
        .map(CoeffVector)
}

/// Closed form for "belongs to an even, nonzero number of the sets":
/// `c_k = (−1)^k (2^{k−1} − 1)`.
pub fn family_even(n: Arity) -> Result<CoeffVector> {
    (1..=n.get())
        .map(|k| Ok(sign(k) * (pow2(k - 1)? - 1)))
        .collect::<Result<Vec<_>>>()
        .map(CoeffVector)
}

/// Closed form for "belongs to an odd number of the sets":
/// `c_k = (−1)^{k−1} 2^{k−1}`.
pub fn family_odd(n: Arity) -> Result<CoeffVector> {
    (1..=n.get())
        .map(|k| Ok(sign(k - 1) * pow2(k - 1)?))
        .collect::<Result<Vec<_>>>()
        .map(CoeffVector)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charset::charset;
    use crate::parser::parse;

    fn ar(n: usize) -> Arity {
        Arity::new(n).unwrap()
    }

    fn decide(text: &str, n: usize) -> IelDecision {
        decide_iel(&charset(&parse(text, ar(n)).unwrap(), ar(n)).unwrap())
    }

    #[test]
    fn pairwise_intersections_are_like() {
        match decide("(X1&X2)|(X1&X3)|(X2&X3)", 3) {
            IelDecision::IsLike {
                cardinalities,
                coeffs,
            } => {
                assert_eq!(cardinalities.to_vec(), vec![2, 3]);
                assert_eq!(coeffs.as_slice(), &[0, 1, -2]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn partial_union_is_not_like() {
        assert_eq!(
            decide("X1 | X2", 3),
            IelDecision::NotLike {
                witness_in: SubsetMask::singleton(1),
                witness_out: SubsetMask::singleton(3),
            }
        );
    }

    #[test]
    fn witness_uses_smallest_incomplete_level() {
        // level 1 holds only {1}
        match decide("X1 | (X2 & X3)", 3) {
            IelDecision::NotLike {
                witness_in,
                witness_out,
            } => {
                assert_eq!(witness_in, SubsetMask::singleton(1));
                assert_eq!(witness_out, SubsetMask::singleton(2));
            }
            other => panic!("{other:?}"),
        }
        // level 1 complete, level 2 partial: smallest member {1,2}, smallest non-member {1,3}
        match decide("(X1|X2|X3) & !(X1&X3) & !(X2&X3) | (X1&X2&X3)", 3) {
            IelDecision::NotLike {
                witness_in,
                witness_out,
            } => {
                assert_eq!(witness_in.indices(), vec![1, 2]);
                assert_eq!(witness_out.indices(), vec![1, 3]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn empty_and_full() {
        for n in 1..=6 {
            match decide("0", n) {
                IelDecision::IsLike {
                    cardinalities,
                    coeffs,
                } => {
                    assert!(cardinalities.is_empty());
                    assert!(coeffs.is_zero());
                    assert_eq!(coeffs.len(), n);
                }
                other => panic!("{other:?}"),
            }
        }
        let full = decide_iel(&CharSet::nonempty_subsets(ar(4)));
        assert_eq!(full.coeffs().unwrap().as_slice(), &[1, -1, 1, -1]);
    }

    #[test]
    fn coefficient_examples() {
        let n3 = ar(3);
        assert_eq!(
            coefficients(&CardinalitySet::new(n3, [2, 3]).unwrap())
                .unwrap()
                .as_slice(),
            &[0, 1, -2]
        );
        assert_eq!(
            coefficients(&CardinalitySet::new(ar(5), 1..=5).unwrap())
                .unwrap()
                .as_slice(),
            &[1, -1, 1, -1, 1]
        );
        assert_eq!(
            coefficients(&CardinalitySet::empty(ar(4)))
                .unwrap()
                .as_slice(),
            &[0, 0, 0, 0]
        );
        assert_eq!(
            coefficients(&CardinalitySet::new(ar(4), [2, 4]).unwrap())
                .unwrap()
                .as_slice(),
            &[0, 1, -3, 7]
        );
        assert!(CardinalitySet::new(n3, [0]).is_err());
        assert!(CardinalitySet::new(n3, [4]).is_err());
    }

    #[test]
    fn family_examples() {
        assert_eq!(
            family_at_least(1, ar(4)).unwrap().as_slice(),
            &[1, -1, 1, -1]
        );
        assert_eq!(
            family_at_least(2, ar(4)).unwrap().as_slice(),
            &[0, 1, -2, 3]
        );
        assert_eq!(family_at_least(3, ar(3)).unwrap().as_slice(), &[0, 0, 1]);
        assert!(matches!(
            family_at_least(0, ar(3)),
            Err(Error::Range { .. })
        ));
        assert!(matches!(
            family_at_least(4, ar(3)),
            Err(Error::Range { .. })
        ));
        assert_eq!(family_even(ar(4)).unwrap().as_slice(), &[0, 1, -3, 7]);
        assert_eq!(family_odd(ar(4)).unwrap().as_slice(), &[1, -2, 4, -8]);
        assert_eq!(family_even(ar(1)).unwrap().as_slice(), &[0]);
    }

    #[test]
    fn coefficients_bounded_and_zero_padded() {
        for n in 1..=12 {
            let n = ar(n);
            for bits in 0u32..1 << n.get() {
                let levels =
                    CardinalitySet::new(n, (1..=n.get()).filter(|k| bits & (1 << (k - 1)) != 0))
                        .unwrap();
                let c = coefficients(&levels).unwrap();
                for k in 1..=n.get() {
                    assert!(c.get(k).unsigned_abs() <= 1 << k);
                }
                if let Some(lo) = levels.min() {
                    assert!((1..lo).all(|k| c.get(k) == 0));
                    assert_eq!(c.get(lo), 1);
                }
            }
        }
    }
}
