//! Periodic start patterns for the primes up to 11.

use std::sync::OnceLock;

use super::mu::{PARITY, SQUARE};

pub(crate) const WHEEL_PRIMES: [u64; 5] = [2, 3, 5, 7, 11];
/// `2³·3²·5·7·11`
pub(crate) const WHEEL: usize = 27_720;

pub(crate) struct MuWheel {
    pub sign: Vec<i8>,
    pub prod: Vec<u64>,
    /// Packed byte per residue, see `sieve::mu::PARITY`.
    pub packed: Vec<u8>,
}

pub(crate) fn ceil_log4(n: u64) -> u8 {
    let ceil_log2 = if n <= 1 {
        0
    } else {
        64 - (n - 1).leading_zeros()
    };
    ceil_log2.div_ceil(2) as u8
}

pub(crate) fn mu_wheel() -> &'static MuWheel {
    static CELL: OnceLock<MuWheel> = OnceLock::new();
    CELL.get_or_init(|| {
        let mut w = MuWheel {
            sign: vec![1; WHEEL],
            prod: vec![1; WHEEL],
            packed: vec![0; WHEEL],
        };
        for r in 0..WHEEL {
            for p in WHEEL_PRIMES {
                if (r as u64).is_multiple_of(p) {
                    w.sign[r] = -w.sign[r];
                    w.prod[r] *= p;
                    w.packed[r] = w.packed[r].wrapping_add(PARITY | ceil_log4(p));
                }
            }
            if r % 4 == 0 || r % 9 == 0 {
                w.sign[r] = 0;
                w.packed[r] |= SQUARE;
            }
        }
        w
    })
}

fn coprime_wheel() -> &'static [bool] {
    static CELL: OnceLock<Vec<bool>> = OnceLock::new();
    CELL.get_or_init(|| {
        (0..WHEEL as u64)
            .map(|r| WHEEL_PRIMES.iter().all(|p| r % p != 0))
            .collect()
    })
}

/// `out[j] = pattern[(start + j) mod WHEEL]`
pub(crate) fn copy_periodic<T: Copy>(pattern: &[T], start: u64, out: &mut [T]) {
    let mut r = (start % WHEEL as u64) as usize;
    let mut done = 0;
    while done < out.len() {
        let take = (WHEEL - r).min(out.len() - done);
        out[done..done + take].copy_from_slice(&pattern[r..r + take]);
        done += take;
        r = 0;
    }
}

pub(crate) fn fill_coprime(start: u64, out: &mut [bool]) {
    copy_periodic(coprime_wheel(), start, out);
}
