//! Brute-force evaluation on concrete finite set sequences.
//!
//! Complements are always taken relative to `U = A_1 ∪ … ∪ A_n`. The
//! signature of an element `x ∈ U` is the mask `{k : x ∈ A_k}`; membership
//! in `F_S(A)` is a lookup of that mask in `S`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::Rng;

use crate::analyzer::CoeffVector;
use crate::binomial::binom;
use crate::charset::CharSet;
use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::mask::{Arity, SubsetMask};

pub type ElementId = u32;

pub type ElementSet = BTreeSet<ElementId>;

/// A sequence `(A_1, ..., A_n)` of finite sets.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SetSequence {
    arity: Arity,
    sets: Vec<ElementSet>,
}

impl SetSequence {
    /// Arity is the number of sets, checked against the default cap.
    pub fn new(sets: Vec<ElementSet>) -> Result<Self> {
        let arity = Arity::new(sets.len())?;
        Ok(SetSequence { arity, sets })
    }

    pub fn with_max(sets: Vec<ElementSet>, max_arity: usize) -> Result<Self> {
        let arity = Arity::with_max(sets.len(), max_arity)?;
        Ok(SetSequence { arity, sets })
    }

    pub fn from_vecs(sets: Vec<Vec<ElementId>>) -> Result<Self> {
        Self::new(sets.into_iter().map(|s| s.into_iter().collect()).collect())
    }

    /// Parses a JSON array of integer arrays, e.g. `[[1,2],[2,3],[3]]`.
    pub fn from_json(text: &str, max_arity: usize) -> Result<Self> {
        let raw: Vec<Vec<ElementId>> = serde_json::from_str(text)?;
        Self::with_max(
            raw.into_iter().map(|s| s.into_iter().collect()).collect(),
            max_arity,
        )
    }

    pub fn to_json(&self) -> String {
        let raw: Vec<Vec<ElementId>> = self
            .sets
            .iter()
            .map(|s| s.iter().copied().collect())
            .collect();
        serde_json::to_string(&raw).expect("integer arrays serialize")
    }

    /// Each element of `1..=universe` joins each set independently with probability 1/2.
    pub fn random<R: Rng + ?Sized>(n: Arity, universe: u32, rng: &mut R) -> Self {
        let sets = (0..n.get())
            .map(|_| (1..=universe).filter(|_| rng.gen_bool(0.5)).collect())
            .collect();
        SetSequence { arity: n, sets }
    }

    pub fn arity(&self) -> Arity {
        self.arity
    }

    /// `A_k` for `k` in `1..=n`.
    pub fn set(&self, k: usize) -> &ElementSet {
        &self.sets[k - 1]
    }

    pub fn sets(&self) -> &[ElementSet] {
        &self.sets
    }

    /// `U = A_1 ∪ … ∪ A_n`.
    pub fn universe(&self) -> ElementSet {
        self.sets.iter().flatten().copied().collect()
    }

    /// Signature of every element of `U`. Every mask is nonzero.
    pub fn signatures(&self) -> BTreeMap<ElementId, SubsetMask> {
        let mut sig: BTreeMap<ElementId, SubsetMask> = BTreeMap::new();
        for (k, set) in self.sets.iter().enumerate() {
            for &x in set {
                let m = sig.entry(x).or_default();
                *m = m.with(k + 1);
            }
        }
        sig
    }

    /// `G_I(A)`: elements whose signature is exactly `i`.
    pub fn atom(&self, i: SubsetMask) -> ElementSet {
        self.signatures()
            .into_iter()
            .filter(|&(_, m)| m == i)
            .map(|(x, _)| x)
            .collect()
    }
}

/// Formats a set as `{1,2,3}`, or `∅`.
pub fn format_set(s: &ElementSet) -> String {
    if s.is_empty() {
        return "∅".into();
    }
    let parts: Vec<String> = s.iter().map(u32::to_string).collect();
    format!("{{{}}}", parts.join(","))
}

impl fmt::Display for SetSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.sets.iter().map(format_set).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Non-negative per-level statistics indexed `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StatVector(Vec<u64>);

impl StatVector {
    pub fn new(values: Vec<u64>) -> Self {
        StatVector(values)
    }

    /// Value at level `k` in `1..=n`.
    pub fn get(&self, k: usize) -> u64 {
        self.0[k - 1]
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for StatVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u64::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// The value of `e` on `a`.
pub fn eval_expr(e: &Expr, a: &SetSequence) -> Result<ElementSet> {
    e.check_arity(a.arity)?;
    let universe = a.universe();
    Ok(eval_in(e, a, &universe))
}

fn eval_in(e: &Expr, a: &SetSequence, universe: &ElementSet) -> ElementSet {
    match e {
        Expr::Empty => ElementSet::new(),
        Expr::Var(i) => a.set(*i).clone(),
        Expr::Union(l, r) => &eval_in(l, a, universe) | &eval_in(r, a, universe),
        Expr::Inter(l, r) => &eval_in(l, a, universe) & &eval_in(r, a, universe),
        Expr::Compl(inner) => universe - &eval_in(inner, a, universe),
    }
}

fn check_arity(left: Arity, right: Arity) -> Result<()> {
    if left != right {
        return Err(Error::ArityMismatch {
            left: left.get(),
            right: right.get(),
        });
    }
    Ok(())
}

/// `F_S(A) = { x ∈ U : signature(x) ∈ S }`.
pub fn eval_charset(s: &CharSet, a: &SetSequence) -> Result<ElementSet> {
    check_arity(s.arity(), a.arity)?;
    Ok(a.signatures()
        .into_iter()
        .filter(|&(_, m)| s.contains(m))
        .map(|(x, _)| x)
        .collect())
}

/// `i_{n,k}(A)`, the sum over all `k`-subsets `I` of `|∩_{i∈I} A_i|`.
///
/// Computed from signatures: an element whose signature has `p` members lies
/// in exactly `C(p, k)` of the `k`-wise intersections.
pub fn i_vector(a: &SetSequence) -> StatVector {
    let n = a.arity.get();
    let mut values = vec![0u64; n];
    for m in a.signatures().values() {
        let p = m.len() as u64;
        for (k, v) in values.iter_mut().enumerate().take(m.len()) {
            *v += binom(p, k as u64 + 1).expect("C(p, k) fits for n <= 30") as u64;
        }
    }
    StatVector(values)
}

/// `σ_{n,k}(A)`, the number of elements lying in exactly `k` of the sets.
pub fn sigma_vector(a: &SetSequence) -> StatVector {
    let mut values = vec![0u64; a.arity.get()];
    for m in a.signatures().values() {
        values[m.len() - 1] += 1;
    }
    StatVector(values)
}

/// `|G_I(A)|` for every mask `I`, indexed by mask value (`len == 2^n`).
///
/// Entry 0 is always zero: elements outside `U` have no signature.
pub fn atom_sizes(a: &SetSequence) -> Vec<usize> {
    let mut sizes = vec![0; a.arity.powerset_len()];
    for m in a.signatures().values() {
        sizes[m.bits() as usize] += 1;
    }
    sizes
}

/// The sequence with `A_k = {1}` for `k ∈ i_set` and `∅` otherwise.
pub fn indicator_sequence(i_set: SubsetMask, n: Arity) -> Result<SetSequence> {
    if i_set.is_empty() {
        return Err(Error::EmptyIndex);
    }
    if !i_set.fits(n) {
        return Err(Error::InvalidMask {
            mask: i_set.bits(),
            n: n.get(),
        });
    }
    let sets = (1..=n.get())
        .map(|k| {
            if i_set.contains(k) {
                ElementSet::from([1])
            } else {
                ElementSet::new()
            }
        })
        .collect();
    Ok(SetSequence { arity: n, sets })
}

/// `Σ_k c_k · stats_k`, exactly.
pub fn dot(c: &CoeffVector, stats: &StatVector) -> Result<i64> {
    c.as_slice()
        .iter()
        .zip(stats.as_slice())
        .try_fold(0i64, |acc, (&ck, &v)| {
            let v = i64::try_from(v).map_err(|_| Error::Overflow)?;
            acc.checked_add(ck.checked_mul(v).ok_or(Error::Overflow)?)
                .ok_or(Error::Overflow)
        })
}

/// Whether `|F_S(A)| = Σ_k c_k · i_{n,k}(A)` holds on `a`.
pub fn check_identity(s: &CharSet, c: &CoeffVector, a: &SetSequence) -> Result<bool> {
    check_arity(s.arity(), a.arity)?;
    if c.len() != a.arity.get() {
        return Err(Error::ArityMismatch {
            left: c.len(),
            right: a.arity.get(),
        });
    }
    let lhs = i64::try_from(eval_charset(s, a)?.len()).map_err(|_| Error::Overflow)?;
    Ok(lhs == dot(c, &i_vector(a))?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charset::charset;
    use crate::parser::parse;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn ar(n: usize) -> Arity {
        Arity::new(n).unwrap()
    }

    fn seq(sets: &[&[u32]]) -> SetSequence {
        SetSequence::from_vecs(sets.iter().map(|s| s.to_vec()).collect()).unwrap()
    }

    fn set(xs: &[u32]) -> ElementSet {
        xs.iter().copied().collect()
    }

    /// Direct definition: every k-subset of indices, intersect, count.
    fn i_vector_naive(a: &SetSequence) -> Vec<u64> {
        let n = a.arity().get();
        let mut out = vec![0u64; n];
        for bits in 1u32..1 << n {
            let idx = SubsetMask::from_bits(bits).indices();
            let mut inter = a.set(idx[0]).clone();
            for &i in &idx[1..] {
                inter = &inter & a.set(i);
            }
            out[idx.len() - 1] += inter.len() as u64;
        }
        out
    }

    #[test]
    fn eval_expr_examples() {
        let a = seq(&[&[1, 2], &[2, 3], &[3]]);
        let e = parse("X1 | X2", ar(3)).unwrap();
        assert_eq!(eval_expr(&e, &a).unwrap(), set(&[1, 2, 3]));

        let b = seq(&[&[1], &[2], &[]]);
        let e = parse("!X1", ar(3)).unwrap();
        assert_eq!(eval_expr(&e, &b).unwrap(), set(&[2]));

        assert!(eval_expr(&Expr::Empty, &a).unwrap().is_empty());
        assert!(eval_expr(&Expr::var(4), &a).is_err());
    }

    #[test]
    fn eval_charset_examples() {
        let sf = charset(&parse("(X1&X2)|(X1&X3)|(X2&X3)", ar(3)).unwrap(), ar(3)).unwrap();
        let a = seq(&[&[1], &[1], &[2]]);
        assert_eq!(eval_charset(&sf, &a).unwrap(), set(&[1]));
        assert!(eval_charset(&CharSet::empty(ar(3)), &a).unwrap().is_empty());
        assert_eq!(
            eval_charset(&CharSet::nonempty_subsets(ar(3)), &a).unwrap(),
            a.universe()
        );
        assert!(matches!(
            eval_charset(&CharSet::empty(ar(2)), &a),
            Err(Error::ArityMismatch { .. })
        ));
    }

    #[test]
    fn statistics_examples() {
        let e2 = indicator_sequence(SubsetMask::singleton(2), ar(3)).unwrap();
        assert_eq!(e2.to_string(), "(∅,{1},∅)");
        assert_eq!(i_vector(&e2).as_slice(), &[1, 0, 0]);

        let pair = indicator_sequence(SubsetMask::from_bits(0b101), ar(3)).unwrap();
        assert_eq!(i_vector(&pair).as_slice(), &[2, 1, 0]);
        assert_eq!(sigma_vector(&pair).as_slice(), &[0, 1, 0]);

        let a = seq(&[&[1, 2], &[2, 3], &[3]]);
        assert_eq!(sigma_vector(&a).as_slice(), &[1, 2, 0]);
        assert_eq!(i_vector(&a).as_slice(), &[5, 2, 0]);

        let none = seq(&[&[], &[], &[]]);
        assert_eq!(i_vector(&none).as_slice(), &[0, 0, 0]);
        assert_eq!(sigma_vector(&none).as_slice(), &[0, 0, 0]);
    }

    #[test]
    fn sigma_matches_atom_enumeration() {
        let a = seq(&[&[1, 2], &[2, 3], &[3]]);
        let mut by_level = [0u64; 3];
        for bits in 1u32..8 {
            let m = SubsetMask::from_bits(bits);
            by_level[m.len() - 1] += a.atom(m).len() as u64;
        }
        assert_eq!(sigma_vector(&a).as_slice(), &by_level);
    }

    #[test]
    fn indicator_sequences() {
        let full = indicator_sequence(SubsetMask::from_bits(0b111), ar(3)).unwrap();
        assert_eq!(full, seq(&[&[1], &[1], &[1]]));
        assert!(matches!(
            indicator_sequence(SubsetMask::EMPTY, ar(3)),
            Err(Error::EmptyIndex)
        ));
        assert!(indicator_sequence(SubsetMask::from_bits(0b1000), ar(3)).is_err());
    }

    #[test]
    fn check_identity_examples() {
        let n = ar(3);
        let sf = charset(&parse("(X1&X2)|(X1&X3)|(X2&X3)", n).unwrap(), n).unwrap();
        let c = CoeffVector::new(vec![0, 1, -2]);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let a = SetSequence::random(n, 10, &mut rng);
            assert!(check_identity(&sf, &c, &a).unwrap());
            assert!(check_identity(&CharSet::empty(n), &CoeffVector::zeros(n), &a).unwrap());
        }

        let se = charset(&parse("X1 | X2", n).unwrap(), n).unwrap();
        let a2 = indicator_sequence(SubsetMask::singleton(2), n).unwrap();
        let a3 = indicator_sequence(SubsetMask::singleton(3), n).unwrap();
        for c1 in -3..=3 {
            for c2 in -3..=3 {
                for c3 in -3..=3 {
                    let c = CoeffVector::new(vec![c1, c2, c3]);
                    let ok2 = check_identity(&se, &c, &a2).unwrap();
                    let ok3 = check_identity(&se, &c, &a3).unwrap();
                    assert!(!(ok2 && ok3));
                }
            }
        }

        assert!(check_identity(&sf, &CoeffVector::new(vec![0, 1]), &a2).is_err());
        assert!(check_identity(&CharSet::empty(ar(2)), &c, &a2).is_err());
    }

    #[test]
    fn signatures_partition_universe() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let n = ar(rng.gen_range(1..=6));
            let a = SetSequence::random(n, 12, &mut rng);
            let sig = a.signatures();
            assert!(sig.values().all(|m| !m.is_empty() && m.fits(n)));
            let mut covered = ElementSet::new();
            let mut total = 0;
            for bits in 1u32..1 << n.get() {
                let g = a.atom(SubsetMask::from_bits(bits));
                total += g.len();
                covered.extend(g);
            }
            assert_eq!(covered, a.universe());
            assert_eq!(total, a.universe().len());
        }
    }

    #[test]
    fn i_vector_matches_naive() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..300 {
            let n = ar(rng.gen_range(1..=6));
            let a = SetSequence::random(n, rng.gen_range(0..=12), &mut rng);
            assert_eq!(i_vector(&a).as_slice(), i_vector_naive(&a).as_slice());
        }
    }

    #[test]
    fn json_round_trip() {
        let a = SetSequence::from_json("[[1,2],[2,3],[3]]", 20).unwrap();
        assert_eq!(a.arity().get(), 3);
        assert_eq!(a.to_json(), "[[1,2],[2,3],[3]]");
        assert!(SetSequence::from_json("[]", 20).is_err());
        assert!(SetSequence::from_json("[[1,-2]]", 20).is_err());
        assert!(SetSequence::from_json("[[1],[2],[3]]", 2).is_err());
    }
}
