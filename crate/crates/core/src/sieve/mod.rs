//! Segmented sieves of Eratosthenes: primality flags, Möbius values and full
//! factorizations over windows `[n, n + Δ]`, plus a compact bit encoding of
//! prime lists.

mod factor;
mod mu;
mod packed;
mod wheel;

pub use factor::{seg_factor, sub_seg_sieve_fac, FactorList, FactorSieve, FactorizationSegment};
pub use mu::{seg_mu, seg_mu_with, MuSegment, MuSieve};
pub use packed::{pack_factors, unpack_factors, PackedFactors};

use crate::arith::isqrt_u64;

/// Optional speed-ups; every combination produces identical output.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SieveOptions {
    /// Start each window from a precomputed pattern for the primes up to 11.
    pub wheel: bool,
    /// Detect a leftover large prime from a sum of `⌈log₄ p⌉` instead of the
    /// product of the small primes found (Möbius sieve only).
    pub log_sum: bool,
}

impl SieveOptions {
    pub const FAST: SieveOptions = SieveOptions {
        wheel: true,
        log_sum: true,
    };
}

/// `flags[j]` is true iff `base + j` is prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeFlags {
    pub base: u64,
    pub flags: Vec<bool>,
}

impl PrimeFlags {
    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.flags
            .iter()
            .enumerate()
            .filter(|(_, &f)| f)
            .map(move |(j, _)| self.base + j as u64)
    }
}

/// Primality flags for `[1, n]`.
pub fn simple_sieve(n: u64) -> PrimeFlags {
    let len = n as usize;
    let mut flags = vec![true; len];
    if len > 0 {
        flags[0] = false;
    }
    let mut p = 2usize;
    while p * p <= len {
        if flags[p - 1] {
            for k in (p * p..=len).step_by(p) {
                flags[k - 1] = false;
            }
        }
        p += 1;
    }
    PrimeFlags { base: 1, flags }
}

pub fn primes_up_to(n: u64) -> Vec<u64> {
    simple_sieve(n).primes().collect()
}

/// Primality flags for `[n, n + delta]`.
pub fn seg_primes(n: u64, delta: u64) -> PrimeFlags {
    seg_primes_with(n, delta, SieveOptions::default())
}

pub fn seg_primes_with(n: u64, delta: u64, opts: SieveOptions) -> PrimeFlags {
    let hi = n + delta;
    let primes = primes_up_to(isqrt_u64(hi));
    let len = delta as usize + 1;
    let mut flags = vec![true; len];
    let skip = if opts.wheel {
        wheel::fill_coprime(n, &mut flags);
        for p in wheel::WHEEL_PRIMES {
            if (n..=hi).contains(&p) {
                flags[(p - n) as usize] = true;
            }
        }
        wheel::WHEEL_PRIMES.len()
    } else {
        0
    };
    for &p in &primes[skip.min(primes.len())..] {
        let first = (p * p).max(n.div_ceil(p) * p);
        if first > hi {
            continue;
        }
        for k in ((first - n) as usize..len).step_by(p as usize) {
            flags[k] = false;
        }
    }
    for m in n..=hi.min(1) {
        flags[(m - n) as usize] = false;
    }
    PrimeFlags { base: n, flags }
}


#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn all_options() -> [SieveOptions; 4] {
        [
            SieveOptions {
                wheel: false,
                log_sum: false,
            },
            SieveOptions {
                wheel: true,
                log_sum: false,
            },
            SieveOptions {
                wheel: false,
                log_sum: true,
            },
            SieveOptions {
                wheel: true,
                log_sum: true,
            },
        ]
    }

    #[test]
    fn simple_sieve_examples() {
        assert_eq!(primes_up_to(10), vec![2, 3, 5, 7]);
        assert!(primes_up_to(1).is_empty());
        assert_eq!(primes_up_to(2), vec![2]);
        let brute: Vec<u64> = (1..2000).filter(|&n| oracle::is_prime(n)).collect();
        assert_eq!(primes_up_to(1999), brute);
    }

    #[test]
    fn seg_primes_examples() {
        let brute: Vec<u64> = (90..=100).filter(|&n| oracle::is_prime(n)).collect();
        assert_eq!(brute, vec![97]);
        for opts in all_options() {
            assert_eq!(
                seg_primes_with(90, 10, opts).primes().collect::<Vec<_>>(),
                brute
            );
            assert_eq!(seg_primes_with(0, 1, opts).primes().count(), 0);
            assert_eq!(
                seg_primes_with(2, 0, opts).primes().collect::<Vec<_>>(),
                vec![2]
            );
            assert_eq!(
                seg_primes_with(0, 30, opts).primes().collect::<Vec<_>>(),
                vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
            );
        }
    }

    #[test]
    fn seg_primes_matches_simple_sieve_on_random_windows() {
        let full = simple_sieve(10_000_000);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let delta = rng.gen_range(0..50_000u64);
            let n = rng.gen_range(0..=10_000_000 - delta);
            for opts in [SieveOptions::default(), SieveOptions::FAST] {
                let seg = seg_primes_with(n, delta, opts);
                for (j, &f) in seg.flags.iter().enumerate() {
                    let m = n + j as u64;
                    let expect = m >= 1 && full.flags[(m - 1) as usize];
                    assert_eq!(f, expect, "m = {m}");
                }
            }
        }
    }
}
