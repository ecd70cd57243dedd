use super::{floor_div, Ratio, WideInt};

/// A rational approximation `a0/q` to some `α` with `q <= Q` and
/// `|α - a0/q| <= 1/(qQ)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DiophApprox {
    pub a0: WideInt,
    /// Inverse of `a0` modulo `q`, in `[0, q)` (0 when `q = 1`).
    pub a0_inv: WideInt,
    pub q: WideInt,
    /// Sign of `α - a0/q`.
    pub sign: i32,
}

/// Continued-fraction approximation of an exact rational `alpha` with
/// denominator at most `q_max`.
///
/// Runs Euclid's algorithm on the integer pair behind `alpha`, tracking the
/// last two convergents. The inverse of `a0` falls out of the determinant
/// identity `p·q₋ - p₋·q = ±1`.
pub fn dioph_appr(alpha: Ratio, q_max: WideInt) -> DiophApprox {
    assert!(q_max >= 1, "dioph_appr needs Q >= 1");
    let (mut num, mut den) = (alpha.num(), alpha.den());
    let mut b = floor_div(num, den);
    let (mut p, mut q) = (b, 1i128);
    let (mut p_prev, mut q_prev) = (1i128, 0i128);
    let mut s: i128 = 1;

    while q <= q_max {
        let rem = num - b * den;
        if rem == 0 {
            return DiophApprox {
                a0: p,
                a0_inv: (-s * q_prev).rem_euclid(q),
                q,
                sign: 0,
            };
        }
        // α ← 1/(α - b)
        (num, den) = (den, rem);
        b = num / den;
        let (p_next, q_next) = (b * p + p_prev, b * q + q_prev);
        (p_prev, q_prev) = (p, q);
        (p, q) = (p_next, q_next);
        s = -s;
    }
    DiophApprox {
        a0: p_prev,
        a0_inv: (s * q).rem_euclid(q_prev),
        q: q_prev,
        sign: -s as i32,
    }
}
