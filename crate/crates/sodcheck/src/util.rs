//! Small exact-arithmetic helpers.

/// Binomial coefficient C(n, k) as an exact u64; panics on overflow.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        assert!(acc <= u64::MAX as u128, "binomial overflow");
    }
    acc as u64
}

/// C(n, k) for possibly-negative n in the "count of monomials" reading:
/// zero whenever n < k or either argument is negative.
pub fn binomial_i(n: i64, k: i64) -> u64 {
    if n < 0 || k < 0 {
        return 0;
    }
    binomial(n as u64, k as u64)
}
