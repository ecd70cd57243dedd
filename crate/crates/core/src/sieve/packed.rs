/// A list of primes in two equal-length bit strings.
///
/// A prime `p` with `k = ⌊log₂ p⌋` occupies `k` bits in each string: in `a` a
/// field `10…0` marking where it starts, in `b` the low bits `p - 2^k`. The
/// leading bit of `p` is implicit, so a squarefree `n` costs at most
/// `2·log₂ n` bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct PackedFactors {
    pub a: u128,
    pub b: u128,
}

impl PackedFactors {
    /// Number of bits used in each string.
    pub fn bit_len(&self) -> u32 {
        128 - self.a.leading_zeros()
    }

    pub fn is_empty(&self) -> bool {
        self.a == 0
    }

    /// Primes in insertion order, read from the high end.
    pub fn ascending(&self) -> Ascending {
        Ascending {
            a: self.a,
            b: self.b,
            top: self.bit_len(),
        }
    }

    /// Primes in reverse insertion order, read from the low end.
    pub fn descending(&self) -> Descending {
        Descending {
            a: self.a,
            b: self.b,
        }
    }
}

pub struct Ascending {
    a: u128,
    b: u128,
    top: u32,
}

impl Iterator for Ascending {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        if self.top == 0 {
            return None;
        }
        // the field's marker is bit top-1; the next marker (if any) bounds it
        let rest = self.a & ((1u128 << (self.top - 1)) - 1);
        let next_top = 128 - rest.leading_zeros();
        let k = self.top - next_top;
        let low = (self.b >> next_top) & ((1u128 << k) - 1);
        self.a = rest;
        self.top = next_top;
        Some(((1u128 << k) + low) as u64)
    }
}

pub struct Descending {
    a: u128,
    b: u128,
}

impl Iterator for Descending {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        if self.a == 0 {
            return None;
        }
        let k = self.a.trailing_zeros() + 1;
        let low = self.b & ((1u128 << k) - 1);
        self.a >>= k;
        self.b >>= k;
        Some(((1u128 << k) + low) as u64)
    }
}

/// Packs primes (each `>= 2`) in the given order. Panics if the fields do not
/// fit in 128 bits.
pub fn pack_factors(primes: &[u64]) -> PackedFactors {
    let mut out = PackedFactors::default();
    for &p in primes {
        assert!(p >= 2, "not a prime: {p}");
        let k = 63 - p.leading_zeros();
        assert!(out.bit_len() + k <= 128, "packed factors overflow 128 bits");
        out.a = (out.a << k) | (1u128 << (k - 1));
        out.b = (out.b << k) | (p as u128 - (1u128 << k));
    }
    out
}

pub fn unpack_factors(packed: &PackedFactors) -> Vec<u64> {
    packed.ascending().collect()
}
