//! Exact binomial coefficients and the binomial transform pair.
//!
//! All arithmetic is checked; overflow is reported as [`Error::Overflow`].

use crate::error::{Error, Result};

/// `C(m, k)`, zero when `k > m`.
pub fn binom(m: u64, k: u64) -> Result<i64> {
    if k > m {
        return Ok(0);
    }
    let k = k.min(m - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc == C(m, i), and C(m, i) * (m - i) == C(m, i + 1) * (i + 1)
        acc = acc.checked_mul((m - i) as u128).ok_or(Error::Overflow)? / (i as u128 + 1);
        if acc > i64::MAX as u128 {
            return Err(Error::Overflow);
        }
    }
    Ok(acc as i64)
}

/// `a_k = Σ_{j ≥ k} C(j, k) b_j` for `k = 0..len`.
pub fn forward_transform(b: &[i64]) -> Result<Vec<i64>> {
    transform(b, false)
}

/// `b_k = Σ_{j ≥ k} (−1)^{j−k} C(j, k) a_j` for `k = 0..len`; inverse of
/// [`forward_transform`].
pub fn inverse_transform(a: &[i64]) -> Result<Vec<i64>> {
    transform(a, true)
}

fn transform(input: &[i64], alternating: bool) -> Result<Vec<i64>> {
    let len = input.len();
    (0..len)
        .map(|k| {
            (k..len).try_fold(0i64, |acc, j| {
                let mut term = binom(j as u64, k as u64)?
                    .checked_mul(input[j])
                    .ok_or(Error::Overflow)?;
                if alternating && (j - k) % 2 == 1 {
                    term = term.checked_neg().ok_or(Error::Overflow)?;
                }
                acc.checked_add(term).ok_or(Error::Overflow)
            })
        })
        .collect()
}

/// `2^e` as a checked `i64`.
pub(crate) fn pow2(e: usize) -> Result<i64> {
    1i64.checked_shl(e as u32)
        .filter(|_| e < 63)
        .ok_or(Error::Overflow)
}

/// `(−1)^e`.
pub(crate) fn sign(e: usize) -> i64 {
    if e.is_multiple_of(2) {
        1
    } else {
        -1
    }
}
