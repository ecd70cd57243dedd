use super::{ceil_div, floor_div, isqrt, IntInterval, WideInt};
use crate::{Error, Result};

/// Integer solutions of a quadratic inequality.
///
/// For `a < 0` the result is `{x ∈ ℤ : ax² + bx + c >= 0}`; for `a > 0` it is
/// `{x ∈ ℤ : ax² + bx + c < 0}`. Both sets are runs of consecutive integers.
/// Only `isqrt` and integer division are used.
pub fn quad_ineq_z(a: WideInt, b: WideInt, c: WideInt) -> Result<IntInterval> {
    if a == 0 {
        return Err(Error::domain(
            "quad_ineq_z needs a nonzero leading coefficient",
        ));
    }
    let disc = b * b - 4 * a * c;
    if disc < 0 {
        return Ok(IntInterval::Empty);
    }
    let root = isqrt(disc)?;
    // Normalize to a positive leading coefficient so that the roots come out
    // ordered: the real roots are (b' ± √disc) / 2a' with a' = |a|, b' = -b·sgn(a).
    let (two_a, minus_b) = if a > 0 { (2 * a, -b) } else { (-2 * a, b) };
    let interval = if a < 0 {
        // closed: between the roots inclusive
        IntInterval::bounded(
            ceil_div(minus_b - root, two_a),
            floor_div(minus_b + root, two_a),
        )
    } else if root * root != disc {
        // irrational roots: nothing lands exactly on a root
        IntInterval::bounded(
            ceil_div(minus_b - root, two_a),
            floor_div(minus_b + root, two_a),
        )
    } else {
        // rational roots are excluded by the strict inequality
        IntInterval::bounded(
            floor_div(minus_b - root, two_a) + 1,
            ceil_div(minus_b + root, two_a) - 1,
        )
    };
    Ok(interval)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn scan(a: i128, b: i128, c: i128, n: i128) -> bool {
        let v = a * n * n + b * n + c;
        if a < 0 {
            v >= 0
        } else {
            v < 0
        }
    }

    #[test]
    fn examples() {
        assert_eq!(quad_ineq_z(1, 0, -4).unwrap(), IntInterval::bounded(-1, 1));
        assert_eq!(quad_ineq_z(1, 0, 4).unwrap(), IntInterval::Empty);
        assert_eq!(quad_ineq_z(-1, 0, 4).unwrap(), IntInterval::bounded(-2, 2));
        // oracle: the same sets by enumeration over [-5, 5]
        let members = |a, b, c| {
            (-5i128..=5)
                .filter(|&n| scan(a, b, c, n))
                .collect::<Vec<_>>()
        };
        assert_eq!(members(1, 0, -4), vec![-1, 0, 1]);
        assert_eq!(members(-1, 0, 4), vec![-2, -1, 0, 1, 2]);
    }

    #[test]
    fn zero_leading_coefficient_is_rejected() {
        assert!(matches!(quad_ineq_z(0, 1, 1), Err(Error::Domain(_))));
    }

    #[test]
    fn double_root() {
        // (x-3)^2 < 0 never; -(x-3)^2 >= 0 only at 3
        assert_eq!(quad_ineq_z(1, -6, 9).unwrap(), IntInterval::Empty);
        assert_eq!(quad_ineq_z(-1, 6, -9).unwrap(), IntInterval::bounded(3, 3));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100_000))]

        #[test]
        fn matches_exhaustive_scan(
            a in (-1000i128..=1000).prop_filter("nonzero", |a| *a != 0),
            b in -1_000_000i128..=1_000_000,
            c in -1_000_000i128..=1_000_000,
        ) {
            let iv = quad_ineq_z(a, b, c).unwrap();
            for n in -10_000i128..=10_000 {
                prop_assert_eq!(iv.contains(n), scan(a, b, c, n), "n = {}", n);
            }
        }
    }

    #[test]
    fn full_scan_small_coefficients() {
        for a in [-3i128, -2, -1, 1, 2, 3] {
            for b in -12i128..=12 {
                for c in -12i128..=12 {
                    let iv = quad_ineq_z(a, b, c).unwrap();
                    for n in -30i128..=30 {
                        assert_eq!(iv.contains(n), scan(a, b, c, n), "a={a} b={b} c={c} n={n}");
                    }
                }
            }
        }
    }
}
