//! Pairs `(m1, m2)` with `max(m1, m2) > v`, via streaming prefix sums of
//! truncated divisor sums, and the brute-force Mertens sum.

use rayon::prelude::*;
use smallvec::SmallVec;

use crate::arith::isqrt_u128;
use crate::divisor_sum::{facto_sum_mu_radical, Threshold};
use crate::prefix::prefix_sums;
use crate::sieve::{FactorSieve, MuSegment, MuSieve, SieveOptions};
use crate::{Error, Result};

/// `M(x)` by summing a Möbius sieve.
pub fn brute_m(x: u64) -> i64 {
    const TASK: u64 = 1 << 22;
    if x == 0 {
        return 0;
    }
    let sieve = MuSieve::new(x, SieveOptions::FAST);
    (0..x.div_ceil(TASK))
        .into_par_iter()
        .map(|t| sieve.sum(t * TASK + 1, ((t + 1) * TASK).min(x)))
        .sum()
}

/// `sums[j] = Σ_{r <= r0 + j} D(r; x/r)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrefixSumWindow {
    pub r0: u64,
    pub sums: Vec<i64>,
}

impl PrefixSumWindow {
    pub fn get(&self, r: u64) -> i64 {
        self.sums[(r - self.r0) as usize]
    }

    pub fn last(&self) -> i64 {
        *self.sums.last().expect("windows are never empty")
    }
}

/// Produces [`PrefixSumWindow`]s for a fixed `x`, reusing the sieving primes.
#[derive(Debug, Clone)]
pub struct Sarr {
    x: u128,
    sieve: FactorSieve,
    block: usize,
}

impl Sarr {
    /// Windows may reach up to `max_r`.
    pub fn new(x: u128, max_r: u64) -> Self {
        let block = (isqrt_u128(max_r as u128) as usize).max(1 << 14);
        Sarr {
            x,
            sieve: FactorSieve::new(max_r),
            block,
        }
    }

    /// Window `[r0, r0 + delta]` continuing from `s0 = Σ_{r < r0} D(r; x/r)`.
    ///
    /// Blocks are factored and summed in parallel; the result is the same
    /// for any thread count.
    pub fn window(&self, r0: u64, delta: u64, s0: i64) -> PrefixSumWindow {
        assert!(r0 >= 1);
        let mut sums = vec![0i64; delta as usize + 1];
        sums.par_chunks_mut(self.block)
            .enumerate()
            .for_each(|(i, chunk)| {
                let lo = r0 + (i * self.block) as u64;
                let seg = self.sieve.factor(lo, chunk.len() as u64 - 1);
                for (j, (slot, f)) in chunk.iter_mut().zip(&seg.factors).enumerate() {
                    let r = lo + j as u64;
                    let primes: SmallVec<[u64; 16]> = f.iter().map(|&(p, _)| p).collect();
                    let a = Threshold::ratio(self.x, r as u128).expect("r >= 1");
                    *slot = facto_sum_mu_radical(&primes, a);
                }
            });
        prefix_sums(&mut sums, s0, self.block);
        PrefixSumWindow { r0, sums }
    }
}

/// One-off window; see [`Sarr::window`].
pub fn sarr(x: u128, r0: u64, delta: u64, s0: i64) -> PrefixSumWindow {
    Sarr::new(x, r0 + delta).window(r0, delta, s0)
}

/// Segment lengths for [`large_nonfree_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NonfreeOptions {
    /// Möbius segment length minus one; default `⌈√max(u, x/v)⌉`.
    pub delta: Option<u64>,
    /// Each prefix-sum window covers this many Möbius segment lengths.
    pub window_mult: u64,
}

impl Default for NonfreeOptions {
    fn default() -> Self {
        NonfreeOptions {
            delta: None,
            window_mult: 1,
        }
    }
}

/// The two parts of the sum; the total is `squares + 2·cross`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NonfreeParts {
    /// `Σ_{v < m <= u} μ(m)²⌊x/m²⌋`
    pub squares: i128,
    /// `Σ_{v < m1 <= u} Σ_{m2 < m1} μ(m1)μ(m2)⌊x/(m1·m2)⌋`
    pub cross: i128,
}

impl NonfreeParts {
    pub fn total(&self) -> i128 {
        self.squares + 2 * self.cross
    }
}

/// `Σ μ(m1)μ(m2)⌊x/(m1·m2)⌋` over `m1, m2 <= u` with `max(m1, m2) > v`.
pub fn large_nonfree(x: u128, v: u64, u: u64) -> Result<i128> {
    Ok(large_nonfree_with(x, v, u, NonfreeOptions::default())?.total())
}

pub fn large_nonfree_with(x: u128, v: u64, u: u64, opts: NonfreeOptions) -> Result<NonfreeParts> {
    if v > u {
        return Err(Error::domain(format!("need v <= u, got v = {v}, u = {u}")));
    }
    if (u as u128) * (u as u128) > x {
        return Err(Error::domain(format!("need u <= √x, got u = {u}")));
    }
    let mut parts = NonfreeParts {
        squares: 0,
        cross: 0,
    };
    if v == u {
        return Ok(parts);
    }
    let max_r = x / (v as u128 + 1);
    if max_r >= 1 << 62 {
        return Err(Error::Range(format!(
            "x/v = {max_r} too large for the prefix-sum windows"
        )));
    }
    let delta = match opts.delta {
        Some(d) if d >= 1 => d,
        Some(_) => return Err(Error::domain("segment length must be positive")),
        None => isqrt_ceil(max_r.max(u as u128)) as u64,
    };
    let window = opts.window_mult.max(1) * (delta + 1) - 1;

    let sarr = Sarr::new(x, max_r as u64 + window + 1);
    let mus = MuSieve::new(u, SieveOptions::FAST);
    let mut r0 = (x / (u as u128 + 1)) as u64 + 1;
    let mut s = sarr.window(r0, window, 1);
    let mut n0 = u + 1;
    let mut mu = MuSegment {
        base: n0,
        mu: Vec::new(),
    };
    let mut sigma = 0i128;
    for n in (v + 1..=u).rev() {
        if n < n0 {
            n0 = n0.saturating_sub(delta + 1).max(1);
            mu = mus.segment(n0, delta.min(u - n0));
        }
        let m = mu.get(n) as i128;
        if m == 0 {
            continue;
        }
        let n128 = n as u128;
        let q = (x / (n128 * n128)) as i128;
        sigma += m * q;
        let xn = (x / n128) as u64;
        while xn > r0 + window {
            r0 += window + 1;
            s = sarr.window(r0, window, s.last());
        }
        parts.cross += m * (s.get(xn) as i128 - sigma);
        parts.squares += q;
    }
    Ok(parts)
}

fn isqrt_ceil(n: u128) -> u128 {
    let r = isqrt_u128(n);
    if r * r == n {
        r
    } else {
        r + 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sieve::seg_mu;

    fn mu_table(n: u64) -> Vec<i8> {
        let mut t = vec![0];
        t.extend(seg_mu(1, n.max(1) - 1).mu);
        t
    }

    /// The defining double sum, term by term.
    fn triple_loop(x: u128, v: u64, u: u64) -> i128 {
        let mu = mu_table(u);
        let mut total = 0i128;
        for m1 in 1..=u {
            for m2 in 1..=u {
                if m1.max(m2) > v {
                    total += (mu[m1 as usize] * mu[m2 as usize]) as i128
                        * (x / (m1 as u128 * m2 as u128)) as i128;
                }
            }
        }
        total
    }

    /// `D(r; x/r)` by listing divisors.
    fn d_direct(x: u128, r: u64, mu: &[i8]) -> i64 {
        (1..=r)
            .filter(|b| r.is_multiple_of(*b) && (*b as u128) * (r as u128) <= x)
            .map(|b| mu[b as usize] as i64)
            .sum()
    }

    #[test]
    fn brute_m_values() {
        assert_eq!(brute_m(1), 1);
        assert_eq!(brute_m(10), -1);
        let mu = mu_table(5000);
        let mut running = 0;
        for x in 1..5000u64 {
            running += mu[x as usize] as i64;
            assert_eq!(brute_m(x), running, "x = {x}");
        }
        assert_eq!(brute_m(10_000_000), 1037);
    }

    #[test]
    fn sarr_examples() {
        let mu = mu_table(200);
        let s0: i64 = (1..=10).map(|r| d_direct(100, r, &mu)).sum();
        let w = sarr(100, 11, 0, s0);
        assert_eq!(w.sums, vec![s0 + d_direct(100, 11, &mu)]);
        assert_eq!(sarr(12345, 1, 0, 0).sums, vec![1]);
    }

    #[test]
    fn sarr_matches_direct_divisor_sums() {
        let x = 1_000_000u128;
        let mu = mu_table(20_000);
        let w = sarr(x, 1, 19_999, 0);
        let mut running = 0;
        for r in 1..=20_000u64 {
            running += d_direct(x, r, &mu);
            assert_eq!(w.get(r), running, "r = {r}");
        }
    }

    #[test]
    fn sarr_resumes() {
        let x = 10u128.pow(9);
        let whole = sarr(x, 500, 2 * 40_000 + 1, 7);
        let first = sarr(x, 500, 40_000, 7);
        let second = sarr(x, 500 + 40_001, 40_000, first.last());
        let joined: Vec<i64> = first.sums.iter().chain(&second.sums).copied().collect();
        assert_eq!(whole.sums, joined);
    }

    #[test]
    fn nonfree_examples() {
        assert_eq!(large_nonfree(100, 3, 10).unwrap(), triple_loop(100, 3, 10));
        assert_eq!(large_nonfree(100, 10, 10).unwrap(), 0);
        let v = (1e6f64).powf(0.4) as u64;
        assert_eq!(
            large_nonfree(1_000_000, v, 1000).unwrap(),
            triple_loop(1_000_000, v, 1000)
        );
    }

    #[test]
    fn nonfree_rejects_bad_ranges() {
        assert!(matches!(large_nonfree(100, 11, 10), Err(Error::Domain(_))));
        assert!(matches!(large_nonfree(100, 3, 11), Err(Error::Domain(_))));
    }

    #[test]
    fn nonfree_matches_triple_loop() {
        for x in [1000u128, 10_000, 100_000, 1_000_000] {
            let u = isqrt_u128(x) as u64;
            let v = (x as f64).powf(0.4) as u64;
            assert_eq!(
                large_nonfree(x, v, u).unwrap(),
                triple_loop(x, v, u),
                "x = {x}"
            );
        }
        for x in 2..300u128 {
            let u = isqrt_u128(x) as u64;
            for v in 1..=u {
                assert_eq!(
                    large_nonfree(x, v, u).unwrap(),
                    triple_loop(x, v, u),
                    "x = {x}, v = {v}"
                );
            }
        }
    }

    #[test]
    fn square_part_matches_direct_sum() {
        let (x, v, u) = (10u128.pow(8), 1000u64, 10_000u64);
        let mu = mu_table(u);
        let direct: i128 = (v + 1..=u)
            .map(|m| (mu[m as usize] as i128).pow(2) * (x / (m as u128).pow(2)) as i128)
            .sum();
        assert_eq!(
            large_nonfree_with(x, v, u, NonfreeOptions::default())
                .unwrap()
                .squares,
            direct
        );
    }

    #[test]
    fn segment_sizes_do_not_matter() {
        let (x, v) = (3 * 10u128.pow(7) + 17, 700u64);
        let u = isqrt_u128(x) as u64;
        let reference = large_nonfree(x, v, u).unwrap();
        for delta in [1, 2, 37, 1000, 6000, 50_000] {
            for window_mult in [1, 3] {
                let opts = NonfreeOptions {
                    delta: Some(delta),
                    window_mult,
                };
                assert_eq!(
                    large_nonfree_with(x, v, u, opts).unwrap().total(),
                    reference,
                    "Δ = {delta}"
                );
            }
        }
    }
}
