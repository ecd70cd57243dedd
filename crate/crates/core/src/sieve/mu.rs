use super::wheel::{ceil_log4, copy_periodic, mu_wheel, WHEEL_PRIMES};
use super::{primes_up_to, SieveOptions};
use crate::arith::isqrt_u64;

const BLOCK: usize = 1 << 18;

/// `mu[j] = μ(base + j)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MuSegment {
    pub base: u64,
    pub mu: Vec<i8>,
}

impl MuSegment {
    /// `μ(n)`; panics if `n` is outside the segment.
    pub fn get(&self, n: u64) -> i8 {
        self.mu[(n - self.base) as usize]
    }

    /// Last argument covered.
    pub fn last(&self) -> u64 {
        self.base + self.mu.len() as u64 - 1
    }
}

/// Bit 7 of a packed sieve byte: parity of the number of small primes found.
pub(crate) const PARITY: u8 = 0x80;
/// Bit 6: a square of a prime divides the entry.
pub(crate) const SQUARE: u8 = 0x40;
/// Bits 0..6: `Σ ⌈log₄ p⌉` over the small primes found. This stays below 64
/// for any `n < 2^64` because `⌈log₄ p⌉ <= log₂ p`.
const LOG_MASK: u8 = 0x3f;

/// Möbius sieve with the sieving primes computed once, for any window ending
/// at or below `max_n`.
#[derive(Debug, Clone)]
pub struct MuSieve {
    primes: Vec<u64>,
    max_n: u64,
    opts: SieveOptions,
}

impl MuSieve {
    pub fn new(max_n: u64, opts: SieveOptions) -> Self {
        MuSieve {
            primes: primes_up_to(isqrt_u64(max_n)),
            max_n,
            opts,
        }
    }

    pub fn max_n(&self) -> u64 {
        self.max_n
    }

    /// `μ(n0..=n0+delta)`.
    pub fn segment(&self, n0: u64, delta: u64) -> MuSegment {
        let mut mu = vec![0; delta as usize + 1];
        self.fill(n0, &mut mu);
        MuSegment { base: n0, mu }
    }

    /// Writes `μ(n0 + j)` into `out[j]`.
    pub fn fill(&self, n0: u64, out: &mut [i8]) {
        self.check_window(n0, out.len());
        let block = BLOCK.min(out.len());
        if self.opts.log_sum {
            let mut packed = vec![0u8; block];
            for (i, chunk) in out.chunks_mut(BLOCK).enumerate() {
                let lo = n0 + (i * BLOCK) as u64;
                let packed = &mut packed[..chunk.len()];
                self.sieve_packed(lo, packed);
                decode_packed(lo, packed, |k, m| chunk[k] = m);
            }
        } else {
            let mut smooth = vec![0u64; block];
            for (i, chunk) in out.chunks_mut(BLOCK).enumerate() {
                let lo = n0 + (i * BLOCK) as u64;
                self.sieve_product(lo, chunk, &mut smooth[..chunk.len()]);
            }
        }
    }

    /// `Σ μ(n)` for `lo <= n <= hi`.
    pub fn sum(&self, lo: u64, hi: u64) -> i64 {
        if lo > hi {
            return 0;
        }
        let len = hi - lo + 1;
        self.check_window(lo, len as usize);
        if !self.opts.log_sum {
            return self.segment(lo, len - 1).mu.iter().map(|&m| m as i64).sum();
        }
        let mut packed = vec![0u8; BLOCK.min(len as usize)];
        let mut total = 0i64;
        let mut start = lo;
        while start <= hi {
            let n = (hi - start + 1).min(BLOCK as u64) as usize;
            let packed = &mut packed[..n];
            self.sieve_packed(start, packed);
            total += sum_packed(start, packed);
            start += n as u64;
        }
        total
    }

    fn check_window(&self, n0: u64, len: usize) {
        assert!(n0 >= 1, "Möbius sieve starts at 1");
        assert!(
            n0 - 1 + len as u64 <= self.max_n,
            "window exceeds sieve range"
        );
    }

    /// Strikes every sieving prime and prime square into the packed bytes of
    /// `[lo, lo + acc.len())`.
    fn sieve_packed(&self, lo: u64, acc: &mut [u8]) {
        let len = acc.len();
        let hi = lo + len as u64 - 1;
        let (skip, square_skip) = if self.opts.wheel {
            copy_periodic(&mu_wheel().packed, lo, acc);
            (
                WHEEL_PRIMES.len().min(self.primes.len()),
                2.min(self.primes.len()),
            )
        } else {
            acc.fill(0);
            (0, 0)
        };
        for &p in &self.primes[skip..] {
            if p > hi {
                break;
            }
            let add = PARITY | ceil_log4(p);
            let step = p as usize;
            let mut k = (lo.div_ceil(p) * p - lo) as usize;
            while k < len {
                acc[k] = acc[k].wrapping_add(add);
                k += step;
            }
        }
        for &p in &self.primes[square_skip..] {
            let sq = p * p;
            if sq > hi {
                break;
            }
            let step = sq as usize;
            let mut k = (lo.div_ceil(sq) * sq - lo) as usize;
            while k < len {
                acc[k] |= SQUARE;
                k += step;
            }
        }
    }

    /// Plain variant: signs in `out`, product of the small primes found in
    /// `smooth`, compared with `n` at the end.
    fn sieve_product(&self, lo: u64, out: &mut [i8], smooth: &mut [u64]) {
        let len = out.len();
        let hi = lo + len as u64 - 1;
        let (skip, square_skip) = if self.opts.wheel {
            copy_periodic(&mu_wheel().sign, lo, out);
            copy_periodic(&mu_wheel().prod, lo, smooth);
            (
                WHEEL_PRIMES.len().min(self.primes.len()),
                2.min(self.primes.len()),
            )
        } else {
            out.fill(1);
            smooth.fill(1);
            (0, 0)
        };
        for &p in &self.primes[skip..] {
            if p > hi {
                break;
            }
            let step = p as usize;
            let mut k = (lo.div_ceil(p) * p - lo) as usize;
            while k < len {
                out[k] = -out[k];
                smooth[k] *= p;
                k += step;
            }
        }
        for &p in &self.primes[square_skip..] {
            let sq = p * p;
            if sq > hi {
                break;
            }
            let step = sq as usize;
            let mut k = (lo.div_ceil(sq) * sq - lo) as usize;
            while k < len {
                out[k] = 0;
                k += step;
            }
        }
        for (k, (m, &s)) in out.iter_mut().zip(smooth.iter()).enumerate() {
            if s != lo + k as u64 {
                *m = -*m;
            }
        }
    }
}

/// For squarefree `n` the small primes satisfy `Σ ⌈log₄ p⌉ >= ⌈log₄ n⌉` when
/// they are all of `n`, and `Σ ⌈log₄ p⌉ <= log₂(n/P) < log₄ n` when a prime
/// `P > √n` is missing.
#[inline]
fn mu_from_packed(a: u8, target: u8) -> i8 {
    let odd = (a >> 7) ^ u8::from(a & LOG_MASK < target);
    let nonzero = 1 - ((a >> 6) & 1) as i8;
    (1 - 2 * odd as i8) * nonzero
}

/// Calls `emit(j, μ(lo + j))` for every packed byte.
fn decode_packed(lo: u64, acc: &[u8], mut emit: impl FnMut(usize, i8)) {
    let hi = lo + acc.len() as u64 - 1;
    let (t_lo, t_hi) = (ceil_log4(lo), ceil_log4(hi));
    for (k, &a) in acc.iter().enumerate() {
        let target = if t_lo == t_hi {
            t_lo
        } else {
            ceil_log4(lo + k as u64)
        };
        emit(k, mu_from_packed(a, target));
    }
}

fn sum_packed(lo: u64, acc: &[u8]) -> i64 {
    let hi = lo + acc.len() as u64 - 1;
    let t_lo = ceil_log4(lo);
    if t_lo == ceil_log4(hi) {
        // chunks keep the i16 partial sums from overflowing
        acc.chunks(1 << 14)
            .map(|c| {
                c.iter()
                    .map(|&a| mu_from_packed(a, t_lo) as i16)
                    .sum::<i16>() as i64
            })
            .sum()
    } else {
        let mut total = 0;
        decode_packed(lo, acc, |_, m| total += m as i64);
        total
    }
}

/// `μ(n0..=n0+delta)`.
pub fn seg_mu(n0: u64, delta: u64) -> MuSegment {
    seg_mu_with(n0, delta, SieveOptions::default())
}

pub fn seg_mu_with(n0: u64, delta: u64, opts: SieveOptions) -> MuSegment {
    MuSieve::new(n0 + delta, opts).segment(n0, delta)
}
