use smallvec::SmallVec;

use super::{primes_up_to, seg_primes};
use crate::arith::isqrt_u64;

/// `(prime, exponent)` pairs in increasing prime order.
pub type FactorList = SmallVec<[(u64, u32); 8]>;

/// `factors[j]` is the factorization of `base + j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorizationSegment {
    pub base: u64,
    pub factors: Vec<FactorList>,
}

impl FactorizationSegment {
    pub fn get(&self, n: u64) -> &FactorList {
        &self.factors[(n - self.base) as usize]
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }
}

/// Factorization of `[n, n + delta]` restricted to primes `<= m`, and the
/// part `Π[j]` of `n + j` those primes account for.
///
/// The primes are produced in blocks of `⌊√m⌋` so that only one block is held
/// at a time.
pub fn sub_seg_sieve_fac(n: u64, delta: u64, m: u64) -> (FactorizationSegment, Vec<u64>) {
    assert!(n >= 1 && m >= 2);
    let mut seg = FactorizationSegment {
        base: n,
        factors: vec![FactorList::new(); delta as usize + 1],
    };
    let mut smooth = vec![1u64; delta as usize + 1];
    let block = isqrt_u64(m).max(1);
    let mut start = 2;
    while start <= m {
        let end = (start + block - 1).min(m);
        for p in seg_primes(start, end - start).primes() {
            strike(p, &mut seg, &mut smooth);
        }
        start = end + 1;
    }
    (seg, smooth)
}

/// Complete factorization of every integer in `[n, n + delta]`.
pub fn seg_factor(n: u64, delta: u64) -> FactorizationSegment {
    FactorSieve::new(n + delta).factor(n, delta)
}

/// Factorization sieve with the primes up to `√max_n` computed once.
#[derive(Debug, Clone)]
pub struct FactorSieve {
    primes: Vec<u64>,
    max_n: u64,
}

impl FactorSieve {
    pub fn new(max_n: u64) -> Self {
        FactorSieve {
            primes: primes_up_to(isqrt_u64(max_n)),
            max_n,
        }
    }

    pub fn factor(&self, n: u64, delta: u64) -> FactorizationSegment {
        assert!(n >= 1, "factorization starts at 1");
        assert!(n + delta <= self.max_n, "window exceeds sieve range");
        let hi = n + delta;
        let mut seg = FactorizationSegment {
            base: n,
            factors: vec![FactorList::new(); delta as usize + 1],
        };
        let mut smooth = vec![1u64; delta as usize + 1];
        let bound = isqrt_u64(hi);
        for &p in self.primes.iter().take_while(|&&p| p <= bound) {
            strike(p, &mut seg, &mut smooth);
        }
        for (j, (list, s)) in seg.factors.iter_mut().zip(&smooth).enumerate() {
            let value = n + j as u64;
            if *s != value {
                list.push((value / s, 1));
            }
        }
        seg
    }
}

fn strike(p: u64, seg: &mut FactorizationSegment, smooth: &mut [u64]) {
    let n = seg.base;
    let len = smooth.len();
    let first = (n.div_ceil(p) * p - n) as usize;
    for k in (first..len).step_by(p as usize) {
        let mut rest = (n + k as u64) / p;
        let mut e = 1;
        let mut pe = p;
        while rest.is_multiple_of(p) {
            rest /= p;
            e += 1;
            pe *= p;
        }
        seg.factors[k].push((p, e));
        smooth[k] *= pe;
    }
}
