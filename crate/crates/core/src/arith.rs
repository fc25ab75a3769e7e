//! Big-integer binomials and factorial products.
//!
//! `binom(a, b)` follows the generalized convention: it vanishes for `b < 0`
//! and equals the falling factorial `a (a-1) ... (a-b+1) / b!` otherwise,
//! for every integer `a` including negative ones.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Generalized binomial coefficient.
///
/// The running value after step `k` is `binom(a, k + 1)`, which is always an
/// integer, so each step's division is exact.
pub fn binom(a: i64, b: i64) -> BigInt {
    if b < 0 {
        return BigInt::zero();
    }
    if (0..b).contains(&a) {
        return BigInt::zero();
    }
    // binom(a, b) = binom(a, a - b) for a >= b >= 0
    let b = if a >= 0 && b > a - b { a - b } else { b };
    if let Some(v) = binom_small(a, b) {
        return BigInt::from(v);
    }
    let mut acc = BigInt::one();
    for k in 0..b {
        acc *= a - k;
        let (q, r) = acc.div_rem(&BigInt::from(k + 1));
        assert!(r.is_zero(), "inexact division computing binom({a}, {b})");
        acc = q;
    }
    acc
}

/// Same recurrence in checked `i128`; `None` on overflow.
fn binom_small(a: i64, b: i64) -> Option<i128> {
    let mut acc: i128 = 1;
    for k in 0..b {
        acc = acc.checked_mul(i128::from(a) - i128::from(k))?;
        let den = i128::from(k) + 1;
        assert!(acc % den == 0, "inexact division computing binom({a}, {b})");
        acc /= den;
    }
    Some(acc)
}

/// `1! * 2! * ... * (d-1)!`; equals 1 for `d = 1`.
pub fn factorial_superproduct(d: usize) -> Result<BigInt> {
    if d < 1 {
        return Err(Error::domain("factorial_superproduct requires d >= 1"));
    }
    let mut fact = BigInt::one();
    let mut acc = BigInt::one();
    for k in 1..d {
        fact *= k;
        acc *= &fact;
    }
    Ok(acc)
}

/// Divides `num` by `den`, failing if there is a remainder.
pub fn exact_div(num: &BigInt, den: &BigInt, context: &'static str) -> Result<BigInt> {
    if den.is_zero() {
        return Err(Error::InexactDivision { context });
    }
    let (q, r) = num.div_rem(den);
    if r.is_zero() {
        Ok(q)
    } else {
        Err(Error::InexactDivision { context })
    }
}

/// `(-1)^e` applied to `x`.
pub(crate) fn signed(x: BigInt, exponent: u64) -> BigInt {
    if exponent.is_multiple_of(2) {
        x
    } else {
        -x
    }
}
