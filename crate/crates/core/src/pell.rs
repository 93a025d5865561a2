//! Exact Pell numbers and the binomial identity behind the annulus bound:
//! `sum_{k=0}^{m} C(2m, m+k) P_k^2 = 2^{3(m-1)}`.

use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

/// Pell number `P_k` with `P_0 = 0`, `P_1 = 1`, `P_k = 2 P_{k-1} + P_{k-2}`.
pub fn pell(k: usize) -> BigUint {
    pell_sequence(k).pop().expect("sequence is nonempty")
}

/// `P_0, ..., P_k`.
pub fn pell_sequence(k: usize) -> Vec<BigUint> {
    let mut out = Vec::with_capacity(k + 1);
    out.push(BigUint::zero());
    if k >= 1 {
        out.push(BigUint::one());
    }
    for i in 2..=k {
        let next = &out[i - 1] * 2u32 + &out[i - 2];
        out.push(next);
    }
    out
}

/// Exact binomial coefficient by the multiplicative formula; each partial
/// product is itself a binomial coefficient so the division is exact.
pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Left-hand side `sum_{k=0}^{m} C(2m, m+k) P_k^2`.
pub fn pell_binomial_sum(m: usize) -> BigUint {
    let p = pell_sequence(m);
    (0..=m)
        .map(|k| binomial(2 * m, m + k) * &p[k] * &p[k])
        .sum()
}

/// Checks the identity exactly for a given `m >= 1`.
pub fn pell_identity_check(m: usize) -> bool {
    if m == 0 {
        return false;
    }
    pell_binomial_sum(m) == BigUint::one() << (3 * (m - 1))
}

/// `2^{3(1-m)} C(2m, m+k) P_k^2` for `1 <= k <= m`. Over `k` these weights
/// sum to one. The exact integer is rounded once and then scaled by a power
/// of two, which is exact.
pub fn annulus_weight(m: usize, k: usize) -> f64 {
    assert!(m >= 1 && (1..=m).contains(&k), "need 1 <= k <= m");
    let pk = pell(k);
    let num = binomial(2 * m, m + k) * &pk * &pk;
    let den = (BigUint::one() << (3 * (m - 1))).to_f64().unwrap_or(f64::INFINITY);
    num.to_f64().unwrap_or(f64::INFINITY) / den
}
