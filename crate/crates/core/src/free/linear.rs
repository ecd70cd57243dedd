use crate::arith::{floor_div, Ratio, WideInt};

/// `Σ_m Σ_n f(m)g(n)(⌊α0 + α1·m⌋ + ⌊α2·n⌋)` over offsets `m ∈ [-a, a)` and
/// `n ∈ [-b, b)`, with `f[i]` the weight of `m = i - a` and likewise for `g`.
pub fn linear_sum(
    f: &[i8],
    g: &[i8],
    a: WideInt,
    b: WideInt,
    alpha0: Ratio,
    alpha1: Ratio,
    alpha2: Ratio,
) -> WideInt {
    assert_eq!(f.len() as WideInt, 2 * a);
    assert_eq!(g.len() as WideInt, 2 * b);
    let (c0, c1, den) = if alpha0.den() == alpha1.den() {
        (alpha0.num(), alpha1.num(), alpha0.den())
    } else {
        (
            alpha0.num() * alpha1.den(),
            alpha1.num() * alpha0.den(),
            alpha0.den() * alpha1.den(),
        )
    };
    let mut s1 = 0;
    let mut s10 = 0;
    for (i, &w) in f.iter().enumerate() {
        if w != 0 {
            let m = i as WideInt - a;
            s1 += w as WideInt * floor_div(c0 + c1 * m, den);
            s10 += w as WideInt;
        }
    }
    let mut s2 = 0;
    let mut s20 = 0;
    for (i, &w) in g.iter().enumerate() {
        if w != 0 {
            let n = i as WideInt - b;
            s2 += w as WideInt * floor_div(alpha2.num() * n, alpha2.den());
            s20 += w as WideInt;
        }
    }
    s1 * s20 + s10 * s2
}
