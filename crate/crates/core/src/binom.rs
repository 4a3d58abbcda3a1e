//! Exact binomial coefficients.
//!
//! Two tables back everything in the crate: a lazily grown Pascal triangle of
//! `BigUint` for closed-form evaluation, and a fixed `u128` triangle for
//! ranking k-sets over ground sets of at most 128 elements.

use std::sync::RwLock;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use once_cell::sync::Lazy;

/// Largest ground set handled by the `u128` table.
pub const SMALL_LIMIT: u32 = 128;

/// Rows above this are computed multiplicatively instead of being memoized.
const PASCAL_ROWS: u64 = 256;

static PASCAL: Lazy<RwLock<Vec<Vec<BigUint>>>> = Lazy::new(|| RwLock::new(vec![vec![BigUint::one()]]));

static SMALL: Lazy<Vec<Vec<u128>>> = Lazy::new(|| {
    let rows = SMALL_LIMIT as usize + 1;
    let mut table = vec![vec![0u128; rows]; rows];
    for n in 0..rows {
        table[n][0] = 1;
        for k in 1..=n {
            // C(128, 64) < 2^125, so no row overflows.
            table[n][k] = table[n - 1][k - 1] + if k < n { table[n - 1][k] } else { 0 };
        }
    }
    table
});

/// `C(n, k)` as an exact big integer; zero when `k > n`.
pub fn binom(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    if n > PASCAL_ROWS {
        return binom_multiplicative(n, k);
    }
    let (n, k) = (n as usize, k as usize);
    {
        let table = PASCAL.read().expect("pascal table poisoned");
        if n < table.len() {
            return table[n][k].clone();
        }
    }
    let mut table = PASCAL.write().expect("pascal table poisoned");
    while table.len() <= n {
        let prev = table.last().expect("row 0 always present");
        let m = prev.len();
        let mut row = Vec::with_capacity(m + 1);
        row.push(BigUint::one());
        for j in 1..m {
            row.push(&prev[j - 1] + &prev[j]);
        }
        row.push(BigUint::one());
        table.push(row);
    }
    table[n][k].clone()
}

fn binom_multiplicative(n: u64, k: u64) -> BigUint {
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// `C(n, k)` with the usual conventions for out-of-range arguments: zero when
/// `n < 0`, `k < 0` or `k > n`.
pub fn binom_i(n: i64, k: i64) -> BigUint {
    if n < 0 || k < 0 || k > n {
        BigUint::zero()
    } else {
        binom(n as u64, k as u64)
    }
}

/// Signed variant of [`binom_i`], convenient inside alternating sums.
pub fn binom_z(n: i64, k: i64) -> BigInt {
    BigInt::from(binom_i(n, k))
}

/// `C(n, k)` for `n <= 128` from the fixed table; zero when `k > n`.
///
/// Panics if `n > 128`.
pub fn binom_u128(n: u32, k: u32) -> u128 {
    assert!(n <= SMALL_LIMIT, "binom_u128 supports n <= {SMALL_LIMIT}, got {n}");
    if k > n {
        0
    } else {
        SMALL[n as usize][k as usize]
    }
}

/// Signed-argument version of [`binom_u128`].
pub fn binom_u128_i(n: i64, k: i64) -> u128 {
    if n < 0 || k < 0 || k > n {
        0
    } else {
        binom_u128(n as u32, k as u32)
    }
}
