//! Truncated Möbius divisor sums `D(n; a) = Σ_{d | n, d <= a} μ(d)`.

use crate::{Error, Result};

/// A nonnegative threshold `num/den`. Comparisons against it are done by
/// cross-multiplication, so `x/r` needs no division.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Threshold {
    num: u128,
    den: u128,
}

impl Threshold {
    pub fn int(a: u128) -> Self {
        Threshold { num: a, den: 1 }
    }

    pub fn ratio(num: u128, den: u128) -> Result<Self> {
        if den == 0 {
            return Err(Error::domain("threshold with zero denominator"));
        }
        Ok(Threshold { num, den })
    }

    /// `d > a`
    #[inline]
    fn below(&self, d: u128) -> bool {
        d.checked_mul(self.den).is_none_or(|v| v > self.num)
    }

    /// `excluded · a >= n`
    #[inline]
    fn covers(&self, excluded: u128, n: u128) -> bool {
        excluded.saturating_mul(self.num) >= n * self.den
    }
}

/// `D(n; a)` from the factorization of `n`.
///
/// `factors` must list `(prime, exponent)` with strictly increasing primes
/// and exponents `>= 1`; only the primes matter.
pub fn facto_sum_mu(factors: &[(u64, u32)], a: Threshold) -> Result<i64> {
    validate(factors)?;
    let primes: smallvec::SmallVec<[u64; 16]> = factors.iter().map(|&(p, _)| p).collect();
    Ok(facto_sum_mu_counted(&primes, a).0)
}

/// `D(n; a)` for `n` with the given distinct primes (ascending). No checks.
pub fn facto_sum_mu_radical(primes: &[u64], a: Threshold) -> i64 {
    facto_sum_mu_counted(primes, a).0
}

/// Like [`facto_sum_mu_radical`], also returning the number of recursion
/// nodes visited.
pub fn facto_sum_mu_counted(primes: &[u64], a: Threshold) -> (i64, u64) {
    let radical: u128 = primes.iter().map(|&p| p as u128).product();
    let mut nodes = 0;
    let value = descend(primes, 1, 1, &a, radical, &mut nodes);
    (value, nodes)
}

/// `Σ μ(e)` over squarefree `e` built from `primes` with `chosen · e <= a`.
/// `excluded` is the product of primes already ruled out, so every candidate
/// `chosen · e` divides `radical / excluded`.
fn descend(
    primes: &[u64],
    chosen: u128,
    excluded: u128,
    a: &Threshold,
    radical: u128,
    nodes: &mut u64,
) -> i64 {
    *nodes += 1;
    if a.below(chosen) {
        return 0;
    }
    let Some((&p, rest)) = primes.split_last() else {
        return 1;
    };
    // every remaining divisor fits and they cancel
    if a.covers(excluded, radical) {
        return 0;
    }
    let p = p as u128;
    descend(rest, chosen, excluded * p, a, radical, nodes)
        - descend(rest, chosen * p, excluded, a, radical, nodes)
}

fn validate(factors: &[(u64, u32)]) -> Result<()> {
    for (i, &(p, e)) in factors.iter().enumerate() {
        if p < 2 {
            return Err(Error::Validation(format!("entry {i}: {p} is not a prime")));
        }
        if e < 1 {
            return Err(Error::Validation(format!(
                "entry {i}: exponent of {p} is {e}"
            )));
        }
        if i > 0 && factors[i - 1].0 >= p {
            return Err(Error::Validation(format!(
                "entry {i}: primes not strictly increasing"
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sieve::{seg_factor, seg_mu};
    use proptest::prelude::*;

    /// Direct enumeration of divisors `d <= num/den`.
    fn oracle(n: u64, num: u128, den: u128, mu: &[i8]) -> i64 {
        (1..=n)
            .filter(|d| n.is_multiple_of(*d) && (*d as u128) * den <= num)
            .map(|d| mu[d as usize] as i64)
            .sum()
    }

    fn mu_table(n: u64) -> Vec<i8> {
        let mut t = vec![0];
        t.extend(seg_mu(1, n - 1).mu);
        t
    }

    #[test]
    fn examples() {
        let mu = mu_table(100);
        assert_eq!(oracle(12, 3, 1, &mu), -1);
        assert_eq!(
            facto_sum_mu(&[(2, 2), (3, 1)], Threshold::int(3)).unwrap(),
            -1
        );
        assert_eq!(facto_sum_mu(&[], Threshold::int(5)).unwrap(), 1);
        assert_eq!(
            facto_sum_mu(&[(2, 1), (3, 1), (5, 1)], Threshold::int(30)).unwrap(),
            0
        );
        assert_eq!(facto_sum_mu(&[], Threshold::int(0)).unwrap(), 0);
    }

    #[test]
    fn malformed_factorizations_are_rejected() {
        for bad in [
            &[(3u64, 1u32), (2, 1)][..],
            &[(2, 0)],
            &[(2, 1), (2, 1)],
            &[(1, 1)],
        ] {
            assert!(
                matches!(
                    facto_sum_mu(bad, Threshold::int(10)),
                    Err(Error::Validation(_))
                ),
                "{bad:?}"
            );
        }
        assert!(matches!(Threshold::ratio(1, 0), Err(Error::Domain(_))));
    }

    #[test]
    fn full_sum_vanishes() {
        let seg = seg_factor(2, 9_998);
        for n in 2..=10_000u64 {
            assert_eq!(
                facto_sum_mu(seg.get(n), Threshold::int(n as u128)).unwrap(),
                0,
                "n = {n}"
            );
        }
    }

    #[test]
    fn matches_enumeration_small() {
        let limit = 20_000u64;
        let mu = mu_table(2 * limit + 1);
        let seg = seg_factor(1, limit - 1);
        for n in 1..=limit {
            for a in [0, 1, n / 3, n - 1, n, 2 * n] {
                let got = facto_sum_mu(seg.get(n), Threshold::int(a as u128)).unwrap();
                assert_eq!(got, oracle(n, a as u128, 1, &mu), "n = {n}, a = {a}");
            }
        }
    }

    #[test]
    fn rational_threshold_compares_exactly() {
        // D(12; 100/37): 100/37 ≈ 2.70, so d ∈ {1, 2}
        let a = Threshold::ratio(100, 37).unwrap();
        assert_eq!(facto_sum_mu(&[(2, 2), (3, 1)], a).unwrap(), 0);
        // a exactly 3 = 111/37 admits d = 3
        let a = Threshold::ratio(111, 37).unwrap();
        assert_eq!(facto_sum_mu(&[(2, 2), (3, 1)], a).unwrap(), -1);
    }

    proptest! {
        #[test]
        fn rational_thresholds_match_enumeration(n in 1u64..5000, num in 0u128..20_000, den in 1u128..50) {
            let mu = mu_table(5000);
            let seg = seg_factor(n, 0);
            let got = facto_sum_mu(seg.get(n), Threshold::ratio(num, den).unwrap()).unwrap();
            prop_assert_eq!(got, oracle(n, num, den, &mu));
        }

        #[test]
        fn bounded_by_divisor_count(n in 2u64..1_000_000, a in 0u128..2_000_000) {
            let seg = seg_factor(n, 0);
            let f = seg.get(n);
            let v = facto_sum_mu(f, Threshold::int(a)).unwrap();
            prop_assert!(v.unsigned_abs() <= 1 << f.len());
        }
    }
}
