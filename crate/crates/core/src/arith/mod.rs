//! Integer-exact primitives shared by both passes.

mod dioph;
mod guard;
mod interval;
mod quad;
mod ratio;

pub use dioph::{dioph_appr, DiophApprox};
pub use guard::{overflow_bound_log2, overflow_guard};
pub use interval::IntInterval;
pub use quad::quad_ineq_z;
pub use ratio::Ratio;

use crate::{Error, Result};

/// Signed integer wide enough for every intermediate of the free-variable pass.
pub type WideInt = i128;

const ISQRT_LIMIT: i128 = 1 << 126;

/// `⌊√n⌋` for `0 <= n < 2^126`.
pub fn isqrt(n: WideInt) -> Result<WideInt> {
    if !(0..ISQRT_LIMIT).contains(&n) {
        return Err(Error::Range(format!(
            "isqrt argument {n} outside [0, 2^126)"
        )));
    }
    Ok(isqrt_u128(n as u128) as i128)
}

/// `⌊√n⌋` for any `u128`.
///
/// A hardware square root gives a starting point accurate to ~2^-52; one
/// Newton step brings it within one unit and the final loops make the result
/// exact whatever the float rounding was.
pub fn isqrt_u128(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    let mut r = (n as f64).sqrt() as u128;
    if r == 0 {
        r = 1;
    }
    r = (r + n / r) / 2;
    while r.checked_mul(r).is_none_or(|sq| sq > n) {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).is_some_and(|sq| sq <= n) {
        r += 1;
    }
    r
}

pub fn isqrt_u64(n: u64) -> u64 {
    isqrt_u128(n as u128) as u64
}

/// Largest `r` with `r^3 <= n`.
pub fn icbrt_u128(n: u128) -> u128 {
    if n < 8 {
        return u128::from(n > 0);
    }
    let mut r = (n as f64).cbrt() as u128;
    let cube = |r: u128| r.checked_mul(r).and_then(|s| s.checked_mul(r));
    while cube(r).is_none_or(|c| c > n) {
        r -= 1;
    }
    while cube(r + 1).is_some_and(|c| c <= n) {
        r += 1;
    }
    r
}

/// The representative of `a` modulo `q` in `[0, q)`.
pub fn mod_nonneg(a: WideInt, q: WideInt) -> Result<WideInt> {
    if q <= 0 {
        return Err(Error::domain(format!("modulus must be positive, got {q}")));
    }
    Ok(a.rem_euclid(q))
}

pub fn sgn(a: WideInt) -> i32 {
    a.signum() as i32
}

/// Largest integer `<= n` congruent to `a` modulo `q`.
pub fn flcong(n: WideInt, a: WideInt, q: WideInt) -> Result<WideInt> {
    Ok(n - mod_nonneg(n - a, q)?)
}

#[inline]
pub(crate) fn floor_div(a: i128, b: i128) -> i128 {
    // div_euclid rounds toward -inf only for positive divisors
    if b < 0 {
        (-a).div_euclid(-b)
    } else {
        a.div_euclid(b)
    }
}

#[inline]
pub(crate) fn ceil_div(a: i128, b: i128) -> i128 {
    -floor_div(-a, b)
}
