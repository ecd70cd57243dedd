use crate::arith::{flcong, mod_nonneg, IntInterval, WideInt};
use crate::{Error, Result};

/// Partial sums of `g` on `[-b, b)` split by residue class.
#[derive(Debug, Clone)]
pub struct CongruenceTables {
    b: WideInt,
    q: WideInt,
    /// `prefix[n + b] = Σ_{-b <= k <= n, k ≡ n (mod q)} g(k)`
    prefix: Vec<i64>,
    /// `rho[r] = Σ_{a0·n ≡ r (mod q)} g(n)`
    rho: Vec<i64>,
    /// `sigma[r] = Σ_{q-r < j < q} rho[j]`, for `0 <= r <= q`
    sigma: Vec<i64>,
}

/// Builds the tables for weights `g` (with `g[i]` the weight of offset
/// `i - b`) and the class map `n ↦ a0·n mod q`, which must be a bijection
/// (`gcd(a0, q) = 1`).
pub fn sum_table(g: &[i8], b: WideInt, a0: WideInt, q: WideInt) -> Result<CongruenceTables> {
    if q < 1 || q > 2 * b {
        return Err(Error::domain(format!(
            "modulus q = {q} outside [1, 2b] with b = {b}"
        )));
    }
    assert_eq!(g.len() as WideInt, 2 * b, "weights must cover [-b, b)");
    let qs = q as usize;
    let mut prefix = Vec::with_capacity(g.len());
    for (i, &w) in g.iter().enumerate() {
        let before = if i >= qs { prefix[i - qs] } else { 0 };
        prefix.push(before + w as i64);
    }
    let mut rho = vec![0i64; qs];
    let mut r = mod_nonneg(a0 * (b - q), q)?;
    let a0_mod = mod_nonneg(a0, q)?;
    for &total in &prefix[g.len() - qs..] {
        rho[r as usize] = total;
        r = (r + a0_mod) % q;
    }
    let mut sigma = vec![0i64; qs + 1];
    for r in 1..qs {
        sigma[r + 1] = sigma[r] + rho[qs - r];
    }
    Ok(CongruenceTables {
        b,
        q,
        prefix,
        rho,
        sigma,
    })
}

impl CongruenceTables {
    pub fn q(&self) -> WideInt {
        self.q
    }

    pub fn rho(&self, r: WideInt) -> i64 {
        self.rho[r as usize]
    }

    pub fn sigma(&self, r: WideInt) -> i64 {
        self.sigma[r as usize]
    }

    fn at(&self, n: WideInt) -> i64 {
        self.prefix[(n + self.b) as usize]
    }

    /// `Σ g(n)` over `n ∈ iv ∩ [-b, b)` with `n ≡ r (mod q)`.
    pub fn sum_inter(&self, r: WideInt, iv: &IntInterval) -> i64 {
        let Some((lo, hi)) = iv.bounds() else {
            return 0;
        };
        let q = self.q;
        let top = hi.map_or(self.b - 1, |h| h.min(self.b - 1));
        let last = flcong(top, r, q).expect("q >= 1");
        if last < -self.b {
            return 0;
        }
        match lo {
            Some(lo) => {
                let before = flcong(lo - 1, r, q).expect("q >= 1");
                if before > last {
                    0
                } else if before >= -self.b {
                    self.at(last) - self.at(before)
                } else {
                    self.at(last)
                }
            }
            None => self.at(last),
        }
    }
}

/// `Σ g(n)` over the nonzero multiples `n` of `q` in `[-b, b)` with
/// `sign_delta · n < 0`.
pub fn ray_sum(g: &[i8], q: WideInt, b: WideInt, sign_delta: i32) -> i64 {
    let at = |n: WideInt| g[(n + b) as usize] as i64;
    match sign_delta {
        s if s < 0 => (1..=(b - 1) / q).map(|k| at(k * q)).sum(),
        s if s > 0 => (1..=b / q).map(|k| at(-k * q)).sum(),
        _ => 0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gcd(a: i128, b: i128) -> i128 {
        if b == 0 {
            a.abs()
        } else {
            gcd(b, a % b)
        }
    }

    fn brute_inter(g: &[i8], b: i128, r: i128, q: i128, iv: &IntInterval) -> i64 {
        (-b..b)
            .filter(|&n| iv.contains(n) && (n - r).rem_euclid(q) == 0)
            .map(|n| g[(n + b) as usize] as i64)
            .sum()
    }

    #[test]
    fn single_class() {
        let g = vec![1i8; 8];
        let t = sum_table(&g, 4, 0, 1).unwrap();
        assert_eq!(t.rho(0), 8);
        assert_eq!(t.sigma(1), 0);
        assert_eq!(t.sum_inter(0, &IntInterval::All), 8);
        assert_eq!(t.sum_inter(0, &IntInterval::Empty), 0);
    }

    #[test]
    fn three_classes() {
        let g = vec![1i8; 6];
        let t = sum_table(&g, 3, 1, 3).unwrap();
        assert_eq!((t.rho(0), t.rho(1), t.rho(2)), (2, 2, 2));
        let counts: Vec<usize> = (0..3)
            .map(|r| (-3i128..3).filter(|n| (n - r).rem_euclid(3) == 0).count())
            .collect();
        assert_eq!(counts, vec![2, 2, 2]);
    }

    #[test]
    fn sum_inter_example() {
        let g = vec![1i8; 8];
        let t = sum_table(&g, 4, 1, 2).unwrap();
        assert_eq!(t.sum_inter(1, &IntInterval::bounded(0, 3)), 2);
        assert_eq!(brute_inter(&g, 4, 1, 2, &IntInterval::bounded(0, 3)), 2);
    }

    #[test]
    fn ray_examples() {
        let g = vec![1i8; 10];
        assert_eq!(ray_sum(&g, 2, 5, -1), 2);
        assert_eq!(ray_sum(&g, 2, 5, 1), 2);
        assert_eq!(ray_sum(&g, 2, 5, 0), 0);
    }

    #[test]
    fn modulus_too_large() {
        assert!(matches!(sum_table(&[1, 1], 1, 1, 3), Err(Error::Domain(_))));
    }

    fn arb_interval() -> impl Strategy<Value = IntInterval> {
        prop_oneof![
            Just(IntInterval::Empty),
            Just(IntInterval::All),
            (-40i128..40).prop_map(IntInterval::AtMost),
            (-40i128..40).prop_map(IntInterval::AtLeast),
            (-40i128..40, -40i128..40).prop_map(|(a, b)| IntInterval::bounded(a, b)),
        ]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(2000))]

        #[test]
        fn tables_match_enumeration(
            b in 1i128..30,
            seed in proptest::collection::vec(-1i8..=1, 60),
            a0 in -50i128..50,
            q_raw in 1i128..60,
            r in -100i128..100,
            iv in arb_interval(),
        ) {
            let q = 1 + (q_raw - 1) % (2 * b);
            let mut a0 = a0;
            while gcd(a0, q) != 1 {
                a0 += 1;
            }
            let g = &seed[..(2 * b) as usize];
            let t = sum_table(g, b, a0, q).unwrap();
            let total: i64 = g.iter().map(|&w| w as i64).sum();
            prop_assert_eq!((0..q).map(|r| t.rho(r)).sum::<i64>(), total);
            for r in 0..q {
                let direct: i64 = (-b..b).filter(|n| (a0 * n - r).rem_euclid(q) == 0).map(|n| g[(n + b) as usize] as i64).sum();
                prop_assert_eq!(t.rho(r), direct);
            }
            prop_assert_eq!(t.sigma(0), 0);
            prop_assert_eq!(t.sigma(1), 0);
            for r in 1..q {
                prop_assert_eq!(t.sigma(r + 1) - t.sigma(r), t.rho(q - r));
            }
            prop_assert_eq!(t.sum_inter(r, &iv), brute_inter(g, b, r, q, &iv));
        }

        #[test]
        fn ray_matches_enumeration(b in 1i128..40, q in 1i128..40, s in -1i32..=1, seed in proptest::collection::vec(-1i8..=1, 80)) {
            let g = &seed[..(2 * b) as usize];
            let direct: i64 = (-b..b)
                .filter(|&n| n != 0 && n % q == 0 && (s as i128) * n < 0)
                .map(|n| g[(n + b) as usize] as i64)
                .sum();
            prop_assert_eq!(ray_sum(g, q, b, s), direct);
        }
    }
}
